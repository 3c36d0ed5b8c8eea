#include "tubepoly/bodies.hpp"

#include <cctype>

namespace tubepoly {

BodySpec BodySpec::ball(long n) {
    if (n < 1) throw std::invalid_argument("ball dimension must be >= 1");
    return BodySpec(std::make_shared<const Node>(Node{BodyKind::ball, n, {}}));
}

BodySpec BodySpec::cube(long n) {
    if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
    return BodySpec(std::make_shared<const Node>(Node{BodyKind::cube, n, {}}));
}

BodySpec BodySpec::adjoint(BodySpec b, long q) {
    if (q < 1) throw std::invalid_argument("adjoint codimension must be >= 1");
    return BodySpec(std::make_shared<const Node>(Node{BodyKind::adjoint, q, {std::move(b)}}));
}

BodySpec BodySpec::product(BodySpec a, BodySpec b) {
    return BodySpec(std::make_shared<const Node>(Node{BodyKind::product, 0, {std::move(a), std::move(b)}}));
}

long BodySpec::ambient_dim() const {
    switch (kind()) {
        case BodyKind::ball:
        case BodyKind::cube: return dim();
        case BodyKind::adjoint: return left().ambient_dim() + q();
        case BodyKind::product: return left().ambient_dim() + right().ambient_dim();
    }
    return 0;
}

long BodySpec::intrinsic_dim() const {
    switch (kind()) {
        case BodyKind::ball:
        case BodyKind::cube: return dim();
        case BodyKind::adjoint: return left().intrinsic_dim();
        case BodyKind::product: return left().intrinsic_dim() + right().intrinsic_dim();
    }
    return 0;
}

bool BodySpec::solid() const { return ambient_dim() == intrinsic_dim(); }

std::string BodySpec::to_string() const {
    switch (kind()) {
        case BodyKind::ball: return "ball:" + std::to_string(dim());
        case BodyKind::cube: return "cube:" + std::to_string(dim());
        case BodyKind::adjoint: return "adj(" + left().to_string() + "," + std::to_string(q()) + ")";
        case BodyKind::product: return "prod(" + left().to_string() + "," + right().to_string() + ")";
    }
    return {};
}

namespace {

class BodyParser {
public:
    explicit BodyParser(std::string_view s) : s_(s) {}

    BodySpec parse_all() {
        BodySpec b = body();
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return b;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw BodyParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    long positive_int() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a positive integer");
        if (pos_ - start > 6) throw BodyParseError("integer too large", start);
        const long v = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (v < 1) throw BodyParseError("dimension must be >= 1", start);
        return v;
    }

    BodySpec body() {
        skip();
        if (eat_word("ball")) {
            expect(':');
            return BodySpec::ball(positive_int());
        }
        if (eat_word("cube")) {
            expect(':');
            return BodySpec::cube(positive_int());
        }
        if (eat_word("adj")) {
            expect('(');
            BodySpec b = body();
            expect(',');
            const long q = positive_int();
            expect(')');
            return BodySpec::adjoint(std::move(b), q);
        }
        if (eat_word("prod")) {
            expect('(');
            BodySpec acc = body();
            expect(',');
            acc = BodySpec::product(std::move(acc), body());
            skip();
            while (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                acc = BodySpec::product(std::move(acc), body());
                skip();
            }
            expect(')');
            return acc;
        }
        fail("expected 'ball', 'cube', 'adj' or 'prod'");
    }
};

PiPoly adjoint_poly(const PiPoly& s, long q) {
    std::vector<PiScalar> r(s.coeffs().size() + static_cast<std::size_t>(q));
    for (std::size_t k = 0; k < s.coeffs().size(); ++k)
        r[k + static_cast<std::size_t>(q)] = s.coeffs()[k] * gamma_multiplier(static_cast<long>(k), q);
    return PiPoly(std::move(r));
}

PiPoly steiner_poly(const BodySpec& b) {
    switch (b.kind()) {
        case BodyKind::ball: {
            const long n = b.dim();
            const PiScalar w = omega(n);
            std::vector<PiScalar> c;
            for (long k = 0; k <= n; ++k) c.push_back(w * PiScalar(binomial(n, k)));
            return PiPoly(std::move(c));
        }
        case BodyKind::cube: {
            const PiPoly seg(std::vector<PiScalar>{PiScalar(2L), PiScalar(2L)});
            PiPoly acc = seg;
            for (long i = 1; i < b.dim(); ++i) acc = m_product(acc, seg);
            return acc;
        }
        case BodyKind::adjoint: return adjoint_poly(steiner_poly(b.left()), b.q());
        case BodyKind::product: return m_product(steiner_poly(b.left()), steiner_poly(b.right()));
    }
    throw std::logic_error("unknown body kind");
}

}  // namespace

BodySpec BodySpec::parse(std::string_view text) { return BodyParser(text).parse_all(); }

SteinerResult steiner(const BodySpec& body) { return {body, body.ambient_dim(), steiner_poly(body)}; }

CrossMeasures cross_measures(const SteinerResult& s) {
    const long n = s.ambient_dim;
    CrossMeasures cm;
    cm.v.resize(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k)
        cm.v[static_cast<std::size_t>(n - k)] = s.s(static_cast<std::size_t>(k)) / PiScalar(binomial(n, k));
    return cm;
}

WeylIndex WeylIndex::finite(long p) {
    if (p < 1) throw std::invalid_argument("Weyl index must be a positive integer or infinity");
    return {p};
}

WeylIndex WeylIndex::parse(std::string_view s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinite();
    std::size_t used = 0;
    long p = 0;
    try {
        p = std::stol(std::string(s), &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid Weyl index '" + std::string(s) + "'");
    }
    if (used != s.size()) throw std::invalid_argument("invalid Weyl index '" + std::string(s) + "'");
    return finite(p);
}

std::vector<PiScalar> weyl_coeffs(const SteinerResult& s) {
    const long n = s.ambient_dim - 1;
    if (n < 0) throw std::invalid_argument("weyl_coeffs: ambient dimension must be >= 1");
    std::vector<PiScalar> w;
    const PiScalar g0 = gamma_half(1);  // Gamma(3/2)
    for (long l = 0; 2 * l <= n; ++l) {
        // 2^l Gamma(l+3/2)/Gamma(3/2) s_{2l+1}
        const PiScalar f = PiScalar(mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(l))) * gamma_half(2 * l + 1) / g0;
        w.push_back(f * s.s(static_cast<std::size_t>(2 * l + 1)));
    }
    return w;
}

mpq_class weyl_index_factor(WeylIndex p, long l) {
    if (p.is_infinite()) return 1;
    // 2^-l Gamma(p/2+1)/Gamma(p/2+l+1)
    const PiScalar f = gamma_half(p.p) / gamma_half(p.p + 2 * l) / PiScalar(mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(l)));
    return *f.as_rational();
}

WeylData weyl_poly(std::vector<PiScalar> w, WeylIndex p, long surface_dim) {
    if (w.empty()) throw std::invalid_argument("weyl_poly: empty coefficient list");
    std::vector<PiScalar> c(2 * w.size() - 1);
    for (std::size_t l = 0; l < w.size(); ++l) c[2 * l] = w[l] * PiScalar(weyl_index_factor(p, static_cast<long>(l)));
    return {surface_dim, std::move(w), p, PiPoly(std::move(c))};
}

WeylData weyl_poly(const SteinerResult& s, WeylIndex p) { return weyl_poly(weyl_coeffs(s), p, s.ambient_dim - 1); }

PiPoly weyl1_from_steiner(const SteinerResult& s) {
    if (s.ambient_dim < 1) throw std::invalid_argument("weyl1_from_steiner: ambient dimension must be >= 1");
    return even_odd_parts(s.poly).second.shifted_down(1);
}

std::pair<PiPoly, PiPoly> half_tube_polys(const SteinerResult& s) {
    PiPoly plus = (s.poly - PiPoly::constant(s.s(0))).shifted_down(1);
    PiPoly minus = scale_arg(plus, PiScalar(-1L));
    return {std::move(plus), std::move(minus)};
}

PiPoly steiner_from_cross_measures(const std::vector<PiScalar>& v) {
    const long n = static_cast<long>(v.size()) - 1;
    std::vector<PiScalar> c(v.size());
    for (long k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = PiScalar(binomial(n, k)) * v[static_cast<std::size_t>(n - k)];
    return PiPoly(std::move(c));
}

PiPoly weyl_infinity_from_cross_measures(const std::vector<PiScalar>& v, long n) {
    if (static_cast<long>(v.size()) < n + 1) throw std::invalid_argument("weyl_infinity_from_cross_measures: too few measures");
    std::vector<PiScalar> c(static_cast<std::size_t>(n + 1));
    for (long l = 0; 2 * l <= n; ++l) {
        const mpq_class f = factorial(n + 1) / (mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(l)) * factorial(l) * factorial(n - 2 * l));
        c[static_cast<std::size_t>(2 * l)] = PiScalar(f) * v[static_cast<std::size_t>(n - 2 * l)];
    }
    return PiPoly(std::move(c));
}

std::optional<RegularFamily> regular_family(const BodySpec& body) {
    switch (body.kind()) {
        case BodyKind::ball: return RegularFamily{RegularKind::ball, body.dim(), 0};
        case BodyKind::cube: return RegularFamily{RegularKind::cube, body.dim(), 0};
        case BodyKind::adjoint: {
            const BodySpec& c = body.left();
            if (c.kind() == BodyKind::ball) return RegularFamily{RegularKind::ballcyl, c.dim(), body.q()};
            if (c.kind() == BodyKind::cube && body.q() == 1) return RegularFamily{RegularKind::cubecyl, c.dim(), 1};
            return std::nullopt;
        }
        case BodyKind::product: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

PiScalar pow2(long n) { return PiScalar(mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(n))); }

}  // namespace

PiPoly renormalized_steiner(const SteinerResult& s) {
    auto fam = regular_family(s.body);
    if (!fam) throw NotRegularError("renormalization needs a ball, cube or squeezed cylinder, got " + s.body.to_string());
    const long n = fam->n;
    PiScalar prefactor;
    switch (fam->kind) {
        case RegularKind::ball: prefactor = omega(n); break;
        case RegularKind::ballcyl: prefactor = omega(n) * omega(fam->q); break;
        case RegularKind::cube: prefactor = pow2(n); break;
        case RegularKind::cubecyl: prefactor = pow2(n) * omega(1); break;
    }
    PiPoly m = s.poly.shifted_down(static_cast<std::size_t>(fam->q)).scaled(prefactor.inverse());
    return scale_arg(m, PiScalar(mpq_class(1, n)));
}

PiPoly renormalized_weyl(const SteinerResult& s, WeylIndex p) {
    auto fam = regular_family(s.body);
    if (!fam || fam->q > 1) throw NotRegularError("Weyl renormalization needs a regular surface, got " + s.body.to_string());
    const long n = s.ambient_dim - 1;
    if (n < 1) throw NotRegularError("Weyl renormalization needs surface dimension >= 1");
    WeylData wd = weyl_poly(s, p);
    const PiScalar vol = wd.w.at(0);
    std::vector<PiScalar> c(wd.poly.coeffs().size());
    for (std::size_t k = 0; k < c.size(); k += 2) {
        const long l = static_cast<long>(k / 2);
        PiScalar f = PiScalar(mpq_class(1)) / (vol * PiScalar(mpq_class(n)).pow(2 * l));
        if (l % 2 == 1) f = -f;
        c[k] = wd.poly.coeffs()[k] * f;
    }
    return PiPoly(std::move(c));
}

}  // namespace tubepoly
