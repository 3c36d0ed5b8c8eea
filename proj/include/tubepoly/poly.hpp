#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tubepoly/interval.hpp"
#include "tubepoly/scalars.hpp"

namespace tubepoly {

/// Dense polynomial in t with PiScalar coefficients; index = power of t.
/// The stored leading coefficient is nonzero unless the polynomial is zero.
class PiPoly {
public:
    PiPoly() = default;
    explicit PiPoly(std::vector<PiScalar> coeffs);
    static PiPoly constant(PiScalar c);
    /// c * t^k
    static PiPoly monomial(PiScalar c, std::size_t k);

    const std::vector<PiScalar>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    /// Coefficient of t^k (zero beyond the degree).
    PiScalar coeff(std::size_t k) const;
    /// Multiplicity of the root t = 0.
    std::size_t low_order() const;

    PiPoly operator-() const;
    PiPoly& operator+=(const PiPoly& b);
    PiPoly& operator-=(const PiPoly& b);
    PiPoly operator*(const PiPoly& b) const;
    PiPoly scaled(const PiScalar& s) const;
    /// Divides by t^k; the low coefficients must vanish.
    PiPoly shifted_down(std::size_t k) const;
    /// Multiplies by t^k.
    PiPoly shifted_up(std::size_t k) const;

    bool operator==(const PiPoly& b) const { return c_ == b.c_; }
    bool operator!=(const PiPoly& b) const { return !(*this == b); }

    /// Exact value at an element of the coefficient field.
    PiScalar eval(const PiScalar& at) const;
    /// Enclosure at a complex point.
    ComplexInterval eval(const ComplexInterval& at, long bits) const;
    ComplexInterval eval(double re, double im, long bits) const;

    std::string to_string() const;
    std::vector<std::string> coeff_strings() const;
    static PiPoly from_coeff_strings(const std::vector<std::string>& s);

private:
    std::vector<PiScalar> c_;
    void trim();
};

PiPoly operator+(PiPoly a, const PiPoly& b);
PiPoly operator-(PiPoly a, const PiPoly& b);

enum class PolyArithKind { add, sub, mul };
PiPoly poly_arith(const PiPoly& a, const PiPoly& b, PolyArithKind kind);

PiPoly derivative(const PiPoly& a);
/// (P(t)+P(-t))/2 and (P(t)-P(-t))/2.
std::pair<PiPoly, PiPoly> even_odd_parts(const PiPoly& a);
/// Bilinear product with t^k * t^l -> Gamma(k/2+1)Gamma(l/2+1)/Gamma((k+l)/2+1) t^(k+l).
PiPoly m_product(const PiPoly& a, const PiPoly& b);
/// A(lambda * t).
PiPoly scale_arg(const PiPoly& a, const PiScalar& lambda);
/// Coefficient-wise enclosures at the given precision.
std::vector<Interval> numeric_coeffs(const PiPoly& a, long bits);

}  // namespace tubepoly
