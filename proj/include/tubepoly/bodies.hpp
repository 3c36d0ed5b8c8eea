#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tubepoly/poly.hpp"

namespace tubepoly {

enum class BodyKind { ball, cube, adjoint, product };

/// Parse error in the body language; position is a 0-based character offset.
class BodyParseError : public std::invalid_argument {
public:
    BodyParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Immutable expression tree of convex bodies.
///
///   body := "ball:" n | "cube:" n | "adj(" body "," q ")" | "prod(" body "," body {"," body} ")"
///
/// Ball(n) is the unit ball of R^n, Cube(n) is [-1,1]^n, Adjoint(b, q) embeds b
/// into q additional dimensions and Product is the Cartesian product.
class BodySpec {
public:
    static BodySpec ball(long n);
    static BodySpec cube(long n);
    static BodySpec adjoint(BodySpec b, long q);
    static BodySpec product(BodySpec a, BodySpec b);
    static BodySpec parse(std::string_view text);

    BodyKind kind() const { return node_->kind; }
    /// Leaf dimension for balls and cubes.
    long dim() const { return node_->n; }
    /// Extra dimensions of an adjoint.
    long q() const { return node_->n; }
    /// Child of an adjoint, left factor of a product.
    const BodySpec& left() const { return node_->children.at(0); }
    const BodySpec& right() const { return node_->children.at(1); }

    long ambient_dim() const;
    long intrinsic_dim() const;
    /// True when no adjoint appears anywhere in the tree.
    bool solid() const;

    std::string to_string() const;
    bool operator==(const BodySpec& b) const { return to_string() == b.to_string(); }

private:
    struct Node {
        BodyKind kind;
        long n;
        std::vector<BodySpec> children;
    };
    std::shared_ptr<const Node> node_;
    explicit BodySpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

struct SteinerResult {
    BodySpec body;
    long ambient_dim;
    PiPoly poly;

    PiScalar s(std::size_t k) const { return poly.coeff(k); }
};

SteinerResult steiner(const BodySpec& body);

/// v_0..v_n with s_k = C(n,k) v_{n-k}.
struct CrossMeasures {
    std::vector<PiScalar> v;
};

CrossMeasures cross_measures(const SteinerResult& s);

/// Index of a Weyl polynomial: a positive integer or infinity.
struct WeylIndex {
    long p = 0;  // 0 encodes infinity

    static WeylIndex infinite() { return {}; }
    static WeylIndex finite(long p);
    bool is_infinite() const { return p == 0; }
    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(p); }
    static WeylIndex parse(std::string_view s);
};

struct WeylData {
    long surface_dim;
    std::vector<PiScalar> w;  // w_0, w_2, ..., w_{2[n/2]}
    WeylIndex index;
    PiPoly poly;  // even polynomial in t
};

/// Weyl coefficients of the boundary surface of a body in R^(n+1).
std::vector<PiScalar> weyl_coeffs(const SteinerResult& s);
/// 1/((p+2)(p+4)...(p+2l)) for finite p, 1 for p = infinity.
mpq_class weyl_index_factor(WeylIndex p, long l);
WeylData weyl_poly(std::vector<PiScalar> w, WeylIndex p, long surface_dim);
WeylData weyl_poly(const SteinerResult& s, WeylIndex p);
/// Odd part of S divided by t.
PiPoly weyl1_from_steiner(const SteinerResult& s);
/// (S(t)-S(0))/t and its reflection t -> -t.
std::pair<PiPoly, PiPoly> half_tube_polys(const SteinerResult& s);

/// sum_k C(n,k) v_{n-k} t^k for n = v.size()-1.
PiPoly steiner_from_cross_measures(const std::vector<PiScalar>& v);
/// sum_l (n+1)!/(2^l l! (n-2l)!) v_{n-2l} t^(2l) for a surface of dimension n.
PiPoly weyl_infinity_from_cross_measures(const std::vector<PiScalar>& v, long n);

/// The four regular families admitting renormalization.
enum class RegularKind { ball, ballcyl, cube, cubecyl };
struct RegularFamily {
    RegularKind kind;
    long n;  // dimension of the generating leaf
    long q;  // adjoint codimension (0 for solid bodies)
};

class NotRegularError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::optional<RegularFamily> regular_family(const BodySpec& body);

/// Steiner polynomial with volume prefactor, the t^q factor and the scaling t -> t/n removed.
PiPoly renormalized_steiner(const SteinerResult& s);
/// Weyl polynomial of index p divided by the surface volume and evaluated at t/(i n).
/// Regular surfaces: boundary of Ball(n+1), Cube(n+1), Adjoint(Ball(n),1), Adjoint(Cube(n),1).
PiPoly renormalized_weyl(const SteinerResult& s, WeylIndex p);

}  // namespace tubepoly
