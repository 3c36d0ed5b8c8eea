#include "tubepoly/generators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>

namespace tubepoly {

SeriesFamily SeriesFamily::m_ballcyl(long q) {
    if (q < 1) throw std::invalid_argument("M_ballcyl: q must be >= 1");
    return {FamilyKind::m_ballcyl, q};
}

SeriesFamily SeriesFamily::weyl(FamilyKind kind, WeylIndex p) {
    switch (kind) {
        case FamilyKind::w_ball:
        case FamilyKind::w_ballcyl:
        case FamilyKind::w_cube:
        case FamilyKind::w_cubecyl: return {kind, p.p};
        default: throw std::invalid_argument("SeriesFamily::weyl: not a Weyl family");
    }
}

bool SeriesFamily::is_weyl() const {
    return kind == FamilyKind::w_ball || kind == FamilyKind::w_ballcyl || kind == FamilyKind::w_cube ||
           kind == FamilyKind::w_cubecyl;
}

namespace {

const char* base_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::m_ball: return "M_ball";
        case FamilyKind::m_ballcyl: return "M_ballcyl";
        case FamilyKind::m_cube: return "M_cube";
        case FamilyKind::m_cubecyl: return "M_cubecyl";
        case FamilyKind::w_ball: return "W_ball";
        case FamilyKind::w_ballcyl: return "W_ballcyl";
        case FamilyKind::w_cube: return "W_cube";
        case FamilyKind::w_cubecyl: return "W_cubecyl";
    }
    return "";
}

}  // namespace

std::string SeriesFamily::tag() const {
    std::string s = base_name(kind);
    if (kind == FamilyKind::m_ballcyl) s += "(" + std::to_string(param) + ")";
    if (is_weyl()) s += "(" + index().to_string() + ")";
    return s;
}

SeriesFamily SeriesFamily::parse(std::string_view tag) {
    std::string t;
    for (char c : tag)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    std::string name = t, arg;
    const auto open = t.find('(');
    if (open != std::string::npos) {
        if (t.back() != ')') throw std::invalid_argument("family tag: missing ')' in " + t);
        name = t.substr(0, open);
        arg = t.substr(open + 1, t.size() - open - 2);
    }
    static const std::pair<const char*, FamilyKind> names[] = {
        {"M_ball", FamilyKind::m_ball},       {"M_ballcyl", FamilyKind::m_ballcyl}, {"M_cube", FamilyKind::m_cube},
        {"M_cubecyl", FamilyKind::m_cubecyl}, {"W_ball", FamilyKind::w_ball},       {"W_ballcyl", FamilyKind::w_ballcyl},
        {"W_cube", FamilyKind::w_cube},       {"W_cubecyl", FamilyKind::w_cubecyl},
    };
    for (const auto& [nm, kind] : names) {
        if (name != nm) continue;
        SeriesFamily f{kind, 0};
        if (kind == FamilyKind::m_ballcyl) {
            if (arg.empty()) throw std::invalid_argument("family tag: M_ballcyl needs q");
            return m_ballcyl(WeylIndex::parse(arg).p);
        }
        if (f.is_weyl()) {
            f.param = arg.empty() ? 0 : WeylIndex::parse(arg).p;
            return f;
        }
        if (!arg.empty()) throw std::invalid_argument("family tag: " + name + " takes no parameter");
        return f;
    }
    throw std::invalid_argument("unknown family tag: " + std::string(tag));
}

mpq_class laguerre_multiplier(long p, long l) {
    if (p < 1 || l < 0) throw std::invalid_argument("laguerre_multiplier: need p >= 1, l >= 0");
    mpz_class d = 1;
    for (long i = 1; i <= l; ++i) d *= p + 2 * i;
    return mpq_class(mpz_class(1), d);
}

PiScalar series_coeff(const SeriesFamily& f, long k) {
    if (k < 0) throw std::invalid_argument("series_coeff: negative index");
    const mpq_class kf = factorial(k);
    switch (f.kind) {
        case FamilyKind::m_ball: return PiScalar(mpq_class(1) / kf);
        case FamilyKind::m_ballcyl:
            return gamma_half(f.param) * gamma_half(k) / (gamma_half(k + f.param) * PiScalar(kf));
        case FamilyKind::m_cube: {
            const mpq_class half_pow(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(k));
            return PiScalar::monomial(half_pow, k) / (gamma_half(k) * PiScalar(kf));
        }
        case FamilyKind::m_cubecyl: {
            const mpq_class half_pow(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(k));
            return gamma_half(1) * PiScalar::monomial(half_pow, k) / (gamma_half(k + 1) * PiScalar(kf));
        }
        default: break;
    }
    if (k % 2 == 1) return PiScalar(0);
    const long l = k / 2;
    const mpq_class sgn_l = (l % 2 == 0) ? mpq_class(1) : mpq_class(-1);
    const mpq_class half_l(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(l));
    PiScalar c;
    switch (f.kind) {
        case FamilyKind::w_ball: c = PiScalar(mpq_class(sgn_l * half_l / factorial(l))); break;
        case FamilyKind::w_ballcyl: {
            mpz_class dfac = 1;
            for (long i = 1; i <= 2 * l - 1; i += 2) dfac *= i;
            c = PiScalar(mpq_class(sgn_l / mpq_class(dfac)));
            break;
        }
        case FamilyKind::w_cube: c = PiScalar::monomial(sgn_l * half_l / factorial(2 * l + 1), 2 * l); break;
        case FamilyKind::w_cubecyl: c = PiScalar::monomial(sgn_l * half_l / factorial(2 * l), 2 * l); break;
        default: break;
    }
    if (!f.index().is_infinite()) c = c * PiScalar(laguerre_multiplier(f.param, l));
    return c;
}

mpq_class jensen_multiplier(long n, long k) {
    if (n < 1 || k < 0) throw std::invalid_argument("jensen_multiplier: need n >= 1, k >= 0");
    if (k > n) return 0;
    mpq_class r = 1;
    for (long i = 1; i < k; ++i) r *= mpq_class(n - i, n);
    return r;
}

std::vector<PiScalar> coefficient_stream(const SeriesFamily& f, long terms) {
    std::vector<PiScalar> out;
    for (long k = 0; k < terms; ++k) out.push_back(series_coeff(f, k));
    return out;
}

PiPoly jensen_poly(const std::vector<PiScalar>& a, long n) {
    if (n < 1) throw std::invalid_argument("jensen_poly: n must be >= 1");
    if (static_cast<long>(a.size()) < n + 1) throw std::invalid_argument("jensen_poly: stream shorter than n+1");
    std::vector<PiScalar> c;
    for (long k = 0; k <= n; ++k) c.push_back(a[static_cast<std::size_t>(k)] * PiScalar(jensen_multiplier(n, k)));
    return PiPoly(std::move(c));
}

PiPoly jensen_poly(const SeriesFamily& f, long n) { return jensen_poly(coefficient_stream(f, n + 1), n); }

std::vector<PiScalar> apply_multipliers(const std::vector<PiScalar>& stream, const std::vector<PiScalar>& mult) {
    std::vector<PiScalar> out;
    const std::size_t n = std::min(stream.size(), mult.size());
    for (std::size_t k = 0; k < n; ++k) out.push_back(stream[k] * mult[k]);
    return out;
}

namespace {

constexpr long kTailSearchCap = 1L << 13;

Interval abs_coeff(const SeriesFamily& f, long k, long bits) { return numeric_eval(series_coeff(f, k), bits).abs(); }

// Upper bound rho of |a_{k+s}/a_k| |z|^s over k in [first, last]. Accepted when
// rho < 1 and the ratios do not grow from the first to the second half of the
// window; the tail beyond the window is assumed to stay below rho.
std::optional<double> tail_ratio(const SeriesFamily& f, long first, long last, long step, const Interval& az, long bits) {
    const Interval azs = az.pow(step);
    const long mid = first + (last - first) / 2;
    double lo_half = 0, hi_half = 0;
    for (long k = first; k <= last; k += step) {
        const Interval r = abs_coeff(f, k + step, bits) / abs_coeff(f, k, bits) * azs;
        const double hi = r.hi_d();
        if (!(hi < 1)) return std::nullopt;
        (k <= mid ? lo_half : hi_half) = std::max(k <= mid ? lo_half : hi_half, hi);
    }
    if (hi_half > lo_half) return std::nullopt;
    return lo_half;
}

long first_nonzero_from(const SeriesFamily& f, long n) { return (f.is_weyl() && n % 2 == 1) ? n + 1 : n; }

}  // namespace

ComplexInterval truncated_eval(const SeriesFamily& f, long terms, double re, double im, long bits) {
    if (terms < 1) throw std::invalid_argument("truncated_eval: need at least one term");
    const long prec = bits + 16;
    const ComplexInterval z = ComplexInterval::from_doubles(re, im, prec);
    ComplexInterval sum(prec);
    for (long k = terms - 1; k >= 0; --k) {
        sum *= z;
        sum.re += numeric_eval(series_coeff(f, k), prec);
    }
    if (re == 0 && im == 0) return sum;
    const long step = f.is_weyl() ? 2 : 1;
    const Interval az = Interval::from_double(std::hypot(re, im), prec).widened(std::hypot(re, im) * 1e-15);
    const long k0 = first_nonzero_from(f, terms);
    auto rho = tail_ratio(f, k0, std::max(k0, 2 * terms), step, az, 64);
    if (!rho) {
        long minimal = -1;
        for (long n = terms + 1; n <= kTailSearchCap; n = n < 64 ? n + 1 : n + n / 8) {
            const long kn = first_nonzero_from(f, n);
            if (tail_ratio(f, kn, std::max(kn, 2 * n), step, az, 64)) {
                minimal = n;
                break;
            }
        }
        throw TailBoundError("truncated_eval: tail bound unavailable for " + f.tag() + " with " + std::to_string(terms) +
                                 " terms; minimal terms " + std::to_string(minimal),
                             minimal);
    }
    const Interval one(1, prec);
    const Interval lead = abs_coeff(f, k0, prec) * az.pow(k0);
    const Interval tail = lead / (one - Interval::from_double(*rho, prec));
    return sum.widened(tail.hi_d());
}

bool has_closed_form(const SeriesFamily& f) {
    switch (f.kind) {
        case FamilyKind::m_ball: return true;
        case FamilyKind::m_ballcyl: return f.param == 4;
        case FamilyKind::w_ball: return f.param == 0 || f.param == 1 || f.param == 2;
        case FamilyKind::w_cube:
        case FamilyKind::w_cubecyl: return f.param == 0;
        default: return false;
    }
}

ComplexInterval bessel_j1(const ComplexInterval& z) {
    const mpfr_prec_t prec = z.prec();
    ComplexInterval half = z * Interval(mpq_class(1, 2), prec);
    ComplexInterval w = -(half.sqr());  // -(z/2)^2
    ComplexInterval term = half;
    ComplexInterval sum = term;
    const double aw = w.abs_upper();
    const double eps = std::ldexp(1.0, -static_cast<int>(prec));
    for (long l = 0;; ++l) {
        const double rho = aw / static_cast<double>((l + 1) * (l + 2));
        const double t = term.abs_upper();
        if (rho <= 0.5 && t * rho / (1 - rho) <= eps * std::max(sum.abs_lower(), 1e-300)) {
            // subsequent ratios decrease, so the tail is geometric
            return sum.widened(t * rho / (1 - rho));
        }
        if (l > 100000) throw std::runtime_error("bessel_j1: argument too large");
        term *= w;
        term = term * (Interval(1, prec) / Interval((l + 1) * (l + 2), prec));
        sum += term;
    }
}

ComplexInterval closed_form_eval(const SeriesFamily& f, double re, double im, long bits) {
    if (!has_closed_form(f)) throw NoClosedFormError("no closed form registered for " + f.tag());
    const double az = std::hypot(re, im);
    if (az == 0) return ComplexInterval::from_doubles(1, 0, bits);
    const long extra = az < 1 ? static_cast<long>(std::ceil(-std::log2(az))) * 8 : 0;
    const long prec = bits + 32 + std::min<long>(extra, 4096);
    const ComplexInterval z = ComplexInterval::from_doubles(re, im, prec);
    auto cst = [prec](long v) { return ComplexInterval(Interval(v, prec), Interval(prec)); };
    switch (f.kind) {
        case FamilyKind::m_ball: return z.exp();
        case FamilyKind::m_ballcyl: {
            const ComplexInterval z2 = z.sqr();
            ComplexInterval num = (z2 * Interval(2, prec) - z * Interval(6, prec) + cst(6)) * z.exp() + z2 - cst(6);
            return num * Interval(4, prec) / z2.sqr();
        }
        case FamilyKind::w_ball:
            if (f.param == 0) return (-(z.sqr()) * Interval(mpq_class(1, 2), prec)).exp();
            if (f.param == 1) return z.sin() / z;
            return bessel_j1(z) * Interval(2, prec) / z;
        case FamilyKind::w_cube:
        case FamilyKind::w_cubecyl: {
            const Interval c = (Interval::pi(prec) / Interval(2, prec)).sqrt();
            const ComplexInterval cz = z * c;
            return f.kind == FamilyKind::w_cube ? cz.sin() / cz : cz.cos();
        }
        default: break;
    }
    throw NoClosedFormError("no closed form registered for " + f.tag());
}

ComplexInterval integral_rep_eval(const SeriesFamily& f, double re, double im, double quad_tol) {
    const bool m = f.kind == FamilyKind::m_ballcyl;
    if (!m && !(f.kind == FamilyKind::w_ballcyl && !f.index().is_infinite()))
        throw std::invalid_argument("integral_rep_eval: needs M_ballcyl(q) or W_ballcyl(p) with finite p");
    const double q = static_cast<double>(f.param);
    const std::complex<double> z(re, im);
    // xi = 1 - u^2 turns (1-xi^2)^(q/2-1) d xi into 2 u^(q-1) (2-u^2)^(q/2-1) du.
    auto integrand = [&](double u) {
        const double xi = 1 - u * u;
        const double w = 2 * std::pow(u, q - 1) * std::pow(2 - u * u, q / 2 - 1) * xi;
        return w * (m ? std::exp(xi * z) : std::cos(xi * z));
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double err_re = 0, err_im = 0;
    const double vr = GK::integrate([&](double u) { return integrand(u).real(); }, 0.0, 1.0, 15, quad_tol, &err_re);
    const double vi = GK::integrate([&](double u) { return integrand(u).imag(); }, 0.0, 1.0, 15, quad_tol, &err_im);
    const double scale = std::max(1.0, std::hypot(vr, vi));
    const double err = q * std::max(err_re, err_im) * scale;
    if (!(err <= 1e3 * quad_tol * q * scale)) throw QuadratureError("integral_rep_eval: tolerance not reached", err);
    ComplexInterval out = ComplexInterval::from_doubles(q * vr, q * vi, 53);
    return out.widened(std::max(err, 4 * std::numeric_limits<double>::epsilon() * q * std::hypot(vr, vi)));
}

std::pair<SeriesFamily, long> steiner_family(const BodySpec& body) {
    const auto fam = regular_family(body);
    if (!fam) throw NotRegularError("no generating family for " + body.to_string());
    switch (fam->kind) {
        case RegularKind::ball: return {SeriesFamily::m_ball(), fam->n};
        case RegularKind::ballcyl: return {SeriesFamily::m_ballcyl(fam->q), fam->n};
        case RegularKind::cube: return {SeriesFamily::m_cube(), fam->n};
        case RegularKind::cubecyl: return {SeriesFamily::m_cubecyl(), fam->n};
    }
    throw NotRegularError("no generating family for " + body.to_string());
}

std::pair<SeriesFamily, long> weyl_family(const BodySpec& body, WeylIndex p) {
    const auto fam = regular_family(body);
    if (!fam || fam->q > 1) throw NotRegularError("no Weyl generating family for " + body.to_string());
    const long surface = body.ambient_dim() - 1;
    FamilyKind k = FamilyKind::w_ball;
    switch (fam->kind) {
        case RegularKind::ball: k = FamilyKind::w_ball; break;
        case RegularKind::ballcyl: k = FamilyKind::w_ballcyl; break;
        case RegularKind::cube: k = FamilyKind::w_cube; break;
        case RegularKind::cubecyl: k = FamilyKind::w_cubecyl; break;
    }
    return {SeriesFamily::weyl(k, p), surface};
}

}  // namespace tubepoly
