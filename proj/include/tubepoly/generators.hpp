#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tubepoly/bodies.hpp"
#include "tubepoly/interval.hpp"
#include "tubepoly/poly.hpp"

namespace tubepoly {

enum class FamilyKind { m_ball, m_ballcyl, m_cube, m_cubecyl, w_ball, w_ballcyl, w_cube, w_cubecyl };

/// Entire generating function of a regular family.
///
/// M families are Steiner generators (all coefficients positive); W families are
/// Weyl generators in even powers of t with alternating signs. `param` is q for
/// M_ballcyl and the Weyl index p (0 for infinity) for W families.
struct SeriesFamily {
    FamilyKind kind = FamilyKind::m_ball;
    long param = 0;

    static SeriesFamily m_ball() { return {FamilyKind::m_ball, 0}; }
    static SeriesFamily m_ballcyl(long q);
    static SeriesFamily m_cube() { return {FamilyKind::m_cube, 0}; }
    static SeriesFamily m_cubecyl() { return {FamilyKind::m_cubecyl, 0}; }
    static SeriesFamily weyl(FamilyKind kind, WeylIndex p);

    /// Accepts e.g. "M_ball", "M_ballcyl(4)", "W_cube(inf)", "W_ballcyl(5)"; a bare W tag means infinity.
    static SeriesFamily parse(std::string_view tag);
    std::string tag() const;
    bool is_weyl() const;
    WeylIndex index() const { return WeylIndex{param}; }
    bool operator==(const SeriesFamily& o) const { return kind == o.kind && param == o.param; }
};

class TailBoundError : public std::runtime_error {
public:
    TailBoundError(const std::string& what, long minimal_terms)
        : std::runtime_error(what), minimal_(minimal_terms) {}
    /// Smallest truncation for which the bound is available, or -1 if none was found.
    long minimal_terms() const { return minimal_; }

private:
    long minimal_;
};

class NoClosedFormError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Taylor coefficient of t^k.
PiScalar series_coeff(const SeriesFamily& f, long k);

/// n!/((n-k)! n^k), zero for k > n.
mpq_class jensen_multiplier(long n, long k);
PiPoly jensen_poly(const SeriesFamily& f, long n);
/// Explicit coefficient stream a_0, a_1, ...; needs at least n+1 entries.
PiPoly jensen_poly(const std::vector<PiScalar>& a, long n);

/// 1/((p+2)(p+4)...(p+2l)).
mpq_class laguerre_multiplier(long p, long l);
/// Termwise product; the result has the length of the shorter input.
std::vector<PiScalar> apply_multipliers(const std::vector<PiScalar>& stream, const std::vector<PiScalar>& mult);
std::vector<PiScalar> coefficient_stream(const SeriesFamily& f, long terms);

/// Partial sum of the first N terms plus a geometric tail bound. The bound is
/// used only when the term ratio is below one and non-increasing on [N, 2N].
ComplexInterval truncated_eval(const SeriesFamily& f, long terms, double re, double im, long bits);

bool has_closed_form(const SeriesFamily& f);
ComplexInterval closed_form_eval(const SeriesFamily& f, double re, double im, long bits);
/// J_1 by its power series with a tail bound.
ComplexInterval bessel_j1(const ComplexInterval& z);

/// Kronrod estimate of the integral representation of M_ballcyl(q) or W_ballcyl(p).
/// The enclosure radius is the quadrature error estimate, not a proof.
ComplexInterval integral_rep_eval(const SeriesFamily& f, double re, double im, double quad_tol = 1e-12);

/// Generator and Jensen order of a regular body's Steiner polynomial.
std::pair<SeriesFamily, long> steiner_family(const BodySpec& body);
/// Generator and Jensen order of the Weyl polynomial of a regular body's boundary.
std::pair<SeriesFamily, long> weyl_family(const BodySpec& body, WeylIndex p);

}  // namespace tubepoly
