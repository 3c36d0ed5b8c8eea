#include "tubepoly/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace tubepoly {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::dissipative: return "Dissipative";
        case Verdict::conservative: return "Conservative";
        case Verdict::not_dissipative: return "NotDissipative";
        case Verdict::not_conservative: return "NotConservative";
        case Verdict::degenerate_input: return "DegenerateInput";
    }
    return "DegenerateInput";
}

bool is_negative(Verdict v) { return v == Verdict::not_dissipative || v == Verdict::not_conservative; }

namespace {

bool is_zero_v(const mpq_class& x) { return sgn(x) == 0; }
bool is_zero_v(const PiScalar& x) { return x.is_zero(); }

template <class T>
T at(const std::vector<T>& r, std::size_t j) {
    return j < r.size() ? r[j] : T(0);
}

// Routh first column; Delta_k is the product of the first k pivots.
// Returns false on a vanishing pivot.
template <class T>
bool routh_dets(const std::vector<T>& a, std::vector<T>& dets) {
    const std::size_t n = a.size() - 1;
    std::vector<T> r0, r1;
    for (std::size_t k = 0; k <= n; k += 2) r0.push_back(a[k]);
    for (std::size_t k = 1; k <= n; k += 2) r1.push_back(a[k]);
    dets.clear();
    T prod(1);
    for (std::size_t i = 1; i <= n; ++i) {
        const T piv = at(r1, 0);
        if (is_zero_v(piv)) return false;
        prod = prod * piv;
        dets.push_back(prod);
        if (i == n) break;
        const T ratio = at(r0, 0) / piv;
        const std::size_t len = std::max(r0.size(), r1.size());
        std::vector<T> r2;
        for (std::size_t j = 0; j + 1 < len; ++j) r2.push_back(at(r0, j + 1) - ratio * at(r1, j + 1));
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return true;
}

template <class T>
T det_gauss(std::vector<std::vector<T>> m) {
    const std::size_t k = m.size();
    T det(1);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && is_zero_v(m[p][c])) ++p;
        if (p == k) return T(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            if (is_zero_v(m[r][c])) continue;
            const T f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < k; ++j) m[r][j] = m[r][j] - f * m[c][j];
        }
    }
    return det;
}

template <class T>
std::vector<T> minors_t(const std::vector<T>& a) {
    const long n = static_cast<long>(a.size()) - 1;
    auto coef = [&](long idx) { return (idx >= 0 && idx <= n) ? a[static_cast<std::size_t>(idx)] : T(0); };
    std::vector<T> out;
    for (long k = 1; k <= n; ++k) {
        std::vector<std::vector<T>> m(static_cast<std::size_t>(k), std::vector<T>(static_cast<std::size_t>(k), T(0)));
        for (long i = 1; i <= k; ++i)
            for (long j = 1; j <= k; ++j) m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = coef(2 * j - i);
        out.push_back(det_gauss(std::move(m)));
    }
    return out;
}

// Fraction-free path for coefficients in Q(sqrt(pi)): after clearing
// denominators every coefficient lies in Z[x], x = sqrt(pi), and Bareiss
// elimination yields the leading minors with exact divisions only.
using ZPoly = std::vector<mpz_class>;  // ascending powers of x

void ztrim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ztrim(a);
    return a;
}

// b divides a in Z[x]
ZPoly zdiv(ZPoly a, const ZPoly& b) {
    ztrim(a);
    if (a.empty()) return {};
    if (b.size() == 1 && b[0] == 1) return a;
    ZPoly q(a.size() - b.size() + 1, mpz_class(0));
    for (std::size_t s = q.size(); s-- > 0;) {
        mpz_divexact(q[s].get_mpz_t(), a[s + b.size() - 1].get_mpz_t(), b.back().get_mpz_t());
        for (std::size_t i = 0; i < b.size(); ++i) mpz_submul(a[s + i].get_mpz_t(), q[s].get_mpz_t(), b[i].get_mpz_t());
    }
    return q;
}

using ZMatrix = std::vector<std::vector<ZPoly>>;

void bareiss_step(ZMatrix& m, std::size_t c, const ZPoly& prev) {
    const std::size_t k = m.size();
    for (std::size_t i = c + 1; i < k; ++i)
        for (std::size_t j = c + 1; j < k; ++j)
            m[i][j] = zdiv(zsub(zmul(m[i][j], m[c][c]), zmul(m[i][c], m[c][j])), prev);
}

ZPoly zdet(ZMatrix m) {
    const std::size_t k = m.size();
    ZPoly prev{mpz_class(1)};
    bool flip = false;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && m[p][c].empty()) ++p;
        if (p == k) return {};
        if (p != c) {
            std::swap(m[p], m[c]);
            flip = !flip;
        }
        bareiss_step(m, c, prev);
        prev = m[c][c];
    }
    ZPoly d = m[k - 1][k - 1];
    if (flip)
        for (auto& x : d) x = -x;
    return d;
}

struct Cleared {
    std::vector<ZPoly> a;
    PiScalar scale;  // a[i] = scale * input[i]
};

Cleared clear_denominators(const std::vector<PiScalar>& in) {
    std::vector<PiLaurent> dens;
    for (const auto& x : in)
        if (!x.den().is_one() && std::find(dens.begin(), dens.end(), x.den()) == dens.end()) dens.push_back(x.den());
    PiLaurent d_all(mpq_class(1));
    for (const auto& d : dens) d_all = d_all * d;
    std::vector<PiLaurent> nums;
    for (const auto& x : in) {
        PiLaurent t = x.num();
        for (const auto& d : dens)
            if (d != x.den()) t = t * d;
        nums.push_back(std::move(t));
    }
    long low = 0;
    bool first = true;
    mpz_class l(1);
    for (const auto& t : nums) {
        if (t.is_zero()) continue;
        low = first ? t.low_exp() : std::min(low, t.low_exp());
        first = false;
        for (const auto& term : t.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), term.coeff.get_den_mpz_t());
    }
    Cleared out;
    for (const auto& t : nums) {
        ZPoly z;
        if (!t.is_zero()) {
            z.assign(static_cast<std::size_t>(t.high_exp() - low + 1), mpz_class(0));
            for (const auto& term : t.terms()) {
                const mpq_class v = term.coeff * l;
                z[static_cast<std::size_t>(term.half_exp - low)] = v.get_num();
            }
        }
        out.a.push_back(std::move(z));
    }
    out.scale = PiScalar(d_all) * PiScalar::monomial(mpq_class(l), -low);
    return out;
}

PiScalar from_zpoly(const ZPoly& z) {
    std::vector<mpq_class> c(z.begin(), z.end());
    return PiScalar(PiLaurent::from_dense(c, 0));
}

std::vector<PiScalar> hurwitz_fraction_free(const std::vector<PiScalar>& a) {
    const std::size_t n = a.size() - 1;
    const Cleared cl = clear_denominators(a);
    auto coef = [&](long idx) { return (idx >= 0 && idx <= static_cast<long>(n)) ? cl.a[static_cast<std::size_t>(idx)] : ZPoly{}; };
    ZMatrix h(n, std::vector<ZPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = coef(2 * static_cast<long>(j) - static_cast<long>(i) + 1);
    std::vector<ZPoly> minors;
    ZMatrix m = h;
    ZPoly prev{mpz_class(1)};
    std::size_t k = 0;
    for (; k < n && !m[k][k].empty(); ++k) {
        minors.push_back(m[k][k]);
        bareiss_step(m, k, prev);
        prev = m[k][k];
    }
    // a vanishing leading minor stops the sweep; the rest are computed one by one
    for (; k < n; ++k) {
        ZMatrix sub(k + 1);
        for (std::size_t i = 0; i <= k; ++i) sub[i].assign(h[i].begin(), h[i].begin() + static_cast<long>(k + 1));
        minors.push_back(zdet(std::move(sub)));
    }
    std::vector<PiScalar> out;
    PiScalar sk(1L);
    for (const auto& z : minors) {
        sk *= cl.scale;
        out.push_back(from_zpoly(z) / sk);
    }
    return out;
}

bool all_rational(const std::vector<PiScalar>& a) {
    return std::all_of(a.begin(), a.end(), [](const PiScalar& x) { return x.is_rational(); });
}

template <class T>
std::vector<T> hurwitz_t(const std::vector<T>& a) {
    if (a.empty()) throw std::invalid_argument("hurwitz_determinants: empty input");
    if (is_zero_v(a[0])) throw std::invalid_argument("hurwitz_determinants: leading coefficient is zero");
    std::vector<T> d;
    if (a.size() == 1) return d;
    if (routh_dets(a, d)) return d;
    return minors_t(a);
}

// Exact Delta_1..Delta_n; rational input runs Routh over Q, anything else the
// fraction-free elimination.
std::vector<PiScalar> hurwitz_exact(const std::vector<PiScalar>& a, std::string* method = nullptr) {
    if (a.empty()) throw std::invalid_argument("hurwitz_determinants: empty input");
    if (a[0].is_zero()) throw std::invalid_argument("hurwitz_determinants: leading coefficient is zero");
    if (a.size() == 1) return {};
    std::vector<PiScalar> out;
    if (all_rational(a)) {
        std::vector<mpq_class> q;
        for (const auto& x : a) q.push_back(*x.as_rational());
        std::vector<mpq_class> d;
        const bool routh_ok = routh_dets(q, d);
        if (!routh_ok) d = minors_t(q);
        if (method) *method = routh_ok ? "routh-rational" : "hurwitz-minors-rational";
        for (const auto& x : d) out.emplace_back(x);
        return out;
    }
    if (method) *method = "bareiss-exact";
    return hurwitz_fraction_free(a);
}

struct IntervalRouth {
    std::vector<Interval> dets;
    std::size_t resolved = 0;  // pivots with a definite sign
};

IntervalRouth routh_interval(const std::vector<Interval>& a, long bits) {
    const auto prec = static_cast<mpfr_prec_t>(bits);
    const std::size_t n = a.size() - 1;
    const Interval zero(prec);
    auto get = [&](const std::vector<Interval>& r, std::size_t j) -> const Interval& { return j < r.size() ? r[j] : zero; };
    std::vector<Interval> r0, r1;
    for (std::size_t k = 0; k <= n; k += 2) r0.push_back(a[k]);
    for (std::size_t k = 1; k <= n; k += 2) r1.push_back(a[k]);
    IntervalRouth out;
    Interval prod(1, prec);
    for (std::size_t i = 1; i <= n; ++i) {
        const Interval piv = get(r1, 0);
        if (piv.contains_zero()) break;
        prod *= piv;
        out.dets.push_back(prod);
        ++out.resolved;
        if (i == n) break;
        const Interval ratio = get(r0, 0) / piv;
        const std::size_t len = std::max(r0.size(), r1.size());
        std::vector<Interval> r2;
        r2.reserve(len);
        for (std::size_t j = 0; j + 1 < len; ++j) r2.push_back(get(r0, j + 1) - ratio * get(r1, j + 1));
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return out;
}

struct DetOutcome {
    std::vector<DeterminantValue> dets;
    std::optional<long> first_nonpositive;
    bool first_is_zero = false;
    std::string method;
    long bits = 0;
    std::vector<std::string> notes;
};

void locate_first(DetOutcome& out, const std::function<bool(long)>& required) {
    for (std::size_t k = 0; k < out.dets.size(); ++k) {
        const long idx = static_cast<long>(k) + 1;
        if (!required(idx) || !out.dets[k].resolved) continue;
        if (out.dets[k].sign <= 0) {
            out.first_nonpositive = idx;
            out.first_is_zero = out.dets[k].sign == 0;
            return;
        }
    }
}

DetOutcome exact_signs(const std::vector<PiScalar>& a, const std::function<bool(long)>& required) {
    DetOutcome out;
    for (const auto& x : hurwitz_exact(a, &out.method)) out.dets.push_back({x.to_string(), static_cast<int>(sign_of(x)), true, true});
    locate_first(out, required);
    return out;
}

DetOutcome interval_signs(const std::vector<PiScalar>& a, const std::function<bool(long)>& required,
                          const ClassifyOptions& opts) {
    const PiPoly as_poly(std::vector<PiScalar>(a.rbegin(), a.rend()));
    const std::size_t n = a.size() - 1;
    for (long bits = opts.start_bits; bits <= opts.max_bits; bits *= 2) {
        std::vector<Interval> c = numeric_coeffs(as_poly, bits);
        std::reverse(c.begin(), c.end());
        const IntervalRouth r = routh_interval(c, bits);
        DetOutcome out;
        out.method = "routh-interval";
        out.bits = bits;
        for (std::size_t k = 0; k < n; ++k) {
            if (k < r.resolved) {
                const Interval& d = r.dets[k];
                out.dets.push_back({d.to_string(12), d.positive() ? 1 : -1, false, true});
            } else {
                out.dets.push_back({"unresolved", 0, false, false});
            }
        }
        locate_first(out, required);
        bool decided = out.first_nonpositive.has_value();
        if (!decided) {
            decided = true;
            for (std::size_t k = 0; k < n; ++k)
                if (required(static_cast<long>(k) + 1) && !out.dets[k].resolved) decided = false;
        }
        if (decided) return out;
    }
    DetOutcome out = exact_signs(a, required);
    out.notes.push_back("interval enclosures undecided up to " + std::to_string(opts.max_bits) + " bits; exact fallback");
    return out;
}

DetOutcome determinant_signs(const std::vector<PiScalar>& a, const ClassifyOptions& opts) {
    const long n = static_cast<long>(a.size()) - 1;
    const bool lc = opts.lienard_chipart;
    const std::function<bool(long)> required = [lc](long k) { return !lc || (k % 2 == 1); };
    DeterminantMode mode = opts.mode;
    if (mode == DeterminantMode::automatic) {
        const bool rational = all_rational(a);
        mode = ((rational && n <= 64) || n <= 12) ? DeterminantMode::exact : DeterminantMode::interval;
    }
    DetOutcome out = mode == DeterminantMode::exact ? exact_signs(a, required) : interval_signs(a, required, opts);
    if (lc) out.notes.push_back("Lienard-Chipart: odd-indexed determinants decide");
    return out;
}

void attach_witnesses(ClassificationReport& rep, const PiPoly& q, long bits, bool by_abs_re) {
    if (q.degree() < 1) return;
    RootSet rs;
    try {
        rs = find_roots(q, {bits, 0});
    } catch (const RootError& e) {
        rs = e.partial();
        rep.annotations.push_back("root solver did not converge; witnesses are unpolished");
    }
    auto key = [by_abs_re](const Root& r) { return by_abs_re ? std::fabs(r.re) : r.re; };
    std::sort(rs.roots.begin(), rs.roots.end(), [&](const Root& x, const Root& y) {
        return key(x) != key(y) ? key(x) > key(y) : x.im < y.im;
    });
    const std::size_t keep = std::min<std::size_t>(4, rs.roots.size());
    rep.witnesses.assign(rs.roots.begin(), rs.roots.begin() + static_cast<long>(keep));
}

// First index with a coefficient that is not strictly positive.
std::optional<std::size_t> first_nonpositive_coeff(const std::vector<PiScalar>& a, std::size_t step = 1) {
    for (std::size_t k = 0; k < a.size(); k += step)
        if (sign_of(a[k]) != Sign::positive) return k;
    return std::nullopt;
}

void copy_outcome(ClassificationReport& rep, DetOutcome&& d) {
    rep.determinants = std::move(d.dets);
    rep.method = d.method;
    rep.bits = d.bits;
    rep.failing_index = d.first_nonpositive;
    for (auto& s : d.notes) rep.annotations.push_back(std::move(s));
}

}  // namespace

std::vector<PiScalar> hurwitz_determinants(const std::vector<PiScalar>& a) { return hurwitz_exact(a); }
std::vector<mpq_class> hurwitz_determinants(const std::vector<mpq_class>& a) {
    std::vector<mpq_class> c(a);
    for (auto& x : c) x.canonicalize();
    return hurwitz_t(c);
}

std::vector<PiScalar> hurwitz_minors(const std::vector<PiScalar>& a) {
    if (a.empty()) throw std::invalid_argument("hurwitz_minors: empty input");
    return minors_t(a);
}

namespace {

std::vector<PiScalar> augment_even(const std::vector<PiScalar>& a_even) {
    const long m = static_cast<long>(a_even.size()) - 1;
    std::vector<PiScalar> full;
    for (long l = 0; l <= m; ++l) {
        full.push_back(a_even[static_cast<std::size_t>(l)]);
        if (l < m) full.push_back(a_even[static_cast<std::size_t>(l)] * PiScalar(m - l));
    }
    return full;
}

}  // namespace

std::vector<PiScalar> conservativeness_determinants(const std::vector<PiScalar>& a_even) {
    if (a_even.empty()) throw std::invalid_argument("conservativeness_determinants: empty input");
    if (a_even[0].is_zero()) throw std::invalid_argument("conservativeness_determinants: leading coefficient is zero");
    return hurwitz_exact(augment_even(a_even));
}

std::vector<PiScalar> leading_first(const PiPoly& p) {
    std::vector<PiScalar> a(p.coeffs().rbegin(), p.coeffs().rend());
    return a;
}

ClassificationReport classify_dissipative(const PiPoly& p, const ClassifyOptions& opts) {
    if (p.is_zero()) throw std::invalid_argument("classify_dissipative: zero polynomial");
    ClassificationReport rep;
    rep.criterion = "dissipative";
    const std::size_t m = p.low_order();
    rep.degenerate_order = static_cast<long>(m);
    PiPoly q = p.shifted_down(m);
    if (m > 0) rep.annotations.push_back("factor t^" + std::to_string(m) + " removed; cofactor classified");
    if (q.degree() == 0) {
        rep.method = "trivial";
        rep.verdict = m > 0 ? Verdict::degenerate_input : Verdict::dissipative;
        rep.reason = m > 0 ? "only roots at zero" : "no roots";
        return rep;
    }
    std::vector<PiScalar> a = leading_first(q);
    if (sign_of(a[0]) == Sign::negative) {
        for (auto& x : a) x = -x;
        q = -q;
        rep.annotations.push_back("leading coefficient made positive");
    }
    const auto bad = first_nonpositive_coeff(a);
    copy_outcome(rep, determinant_signs(a, opts));
    if (bad) {
        rep.verdict = Verdict::not_dissipative;
        rep.reason = "necessary condition";
        rep.annotations.push_back("coefficient of t^" + std::to_string(a.size() - 1 - *bad) + " is not positive");
    } else if (rep.failing_index) {
        rep.verdict = Verdict::not_dissipative;
        rep.reason = rep.determinants[static_cast<std::size_t>(*rep.failing_index - 1)].sign == 0 ? "boundary" : "determinant";
    } else {
        rep.verdict = Verdict::dissipative;
    }
    if (opts.numeric_witness || (is_negative(rep.verdict) && !rep.failing_index))
        attach_witnesses(rep, q, opts.witness_bits, false);
    return rep;
}

ClassificationReport classify_conservative(const PiPoly& p, const ClassifyOptions& opts) {
    if (p.is_zero()) throw std::invalid_argument("classify_conservative: zero polynomial");
    for (std::size_t k = 1; k < p.coeffs().size(); k += 2)
        if (!p.coeffs()[k].is_zero()) throw std::invalid_argument("classify_conservative: polynomial is not even");
    ClassificationReport rep;
    rep.criterion = "conservative";
    PiPoly q = p;
    if (q.degree() == 0) {
        rep.method = "trivial";
        rep.verdict = Verdict::conservative;
        rep.reason = "no roots";
        return rep;
    }
    std::vector<PiScalar> a_even;
    for (long k = q.degree(); k >= 0; k -= 2) a_even.push_back(q.coeff(static_cast<std::size_t>(k)));
    if (sign_of(a_even[0]) == Sign::negative) {
        for (auto& x : a_even) x = -x;
        q = -q;
        rep.annotations.push_back("leading coefficient made positive");
    }
    const auto bad = first_nonpositive_coeff(a_even);
    copy_outcome(rep, determinant_signs(augment_even(a_even), opts));
    if (bad) {
        rep.verdict = Verdict::not_conservative;
        rep.reason = "necessary condition";
        rep.annotations.push_back("coefficient of t^" + std::to_string(2 * (a_even.size() - 1 - *bad)) + " is not positive");
    } else if (rep.failing_index) {
        rep.verdict = Verdict::not_conservative;
        rep.reason = rep.determinants[static_cast<std::size_t>(*rep.failing_index - 1)].sign == 0 ? "boundary" : "determinant";
    } else {
        rep.verdict = Verdict::conservative;
    }
    if (opts.numeric_witness || (is_negative(rep.verdict) && !rep.failing_index))
        attach_witnesses(rep, q, opts.witness_bits, true);
    return rep;
}

ClassificationReport hermite_biehler_check(const PiPoly& p, long bits) {
    if (p.is_zero()) throw std::invalid_argument("hermite_biehler_check: zero polynomial");
    ClassificationReport rep;
    rep.criterion = "dissipative";
    rep.method = "hermite-biehler";
    rep.bits = bits;
    PiPoly q = p;
    if (sign_of(q.coeffs().back()) == Sign::negative) q = -q;
    if (q.degree() == 0) {
        rep.verdict = Verdict::dissipative;
        rep.reason = "no roots";
        return rep;
    }
    if (first_nonpositive_coeff(q.coeffs())) {
        rep.verdict = Verdict::not_dissipative;
        rep.reason = "necessary condition";
        attach_witnesses(rep, q, bits, false);
        return rep;
    }
    const auto [e, o] = even_odd_parts(q);
    std::vector<std::pair<double, int>> pts;
    std::string why;
    auto collect = [&](const PiPoly& f, int src) {
        if (f.degree() < 1) return;
        const RootSet rs = find_roots(f, {bits, 0});
        for (const auto& r : rs.roots) {
            if (std::fabs(r.re) > 1e-8 * (1 + std::hypot(r.re, r.im)) && why.empty()) why = "root off the imaginary axis";
            pts.emplace_back(r.im, src);
        }
    };
    collect(e, 0);
    pts.emplace_back(0.0, 1);
    collect(o.shifted_down(1), 1);
    std::sort(pts.begin(), pts.end());
    for (std::size_t k = 0; k + 1 < pts.size() && why.empty(); ++k) {
        const double gap = pts[k + 1].first - pts[k].first;
        if (gap <= 1e-8 * (1 + std::fabs(pts[k].first))) why = "multiple root on the imaginary axis";
        else if (pts[k].second == pts[k + 1].second) why = "roots do not interlace";
    }
    if (why.empty()) {
        rep.verdict = Verdict::dissipative;
    } else {
        rep.verdict = Verdict::not_dissipative;
        rep.reason = why;
        attach_witnesses(rep, q, bits, false);
    }
    return rep;
}

LogConcavityResult log_concavity_check(const std::vector<PiScalar>& v, bool products) {
    for (const auto& x : v)
        if (sign_of(x) == Sign::negative) throw std::invalid_argument("log_concavity_check: negative entry");
    LogConcavityResult res;
    const long n = static_cast<long>(v.size());
    for (long k = 1; k + 1 < n; ++k) {
        const auto& a = v[static_cast<std::size_t>(k)];
        if (sign_of(a * a - v[static_cast<std::size_t>(k - 1)] * v[static_cast<std::size_t>(k + 1)]) == Sign::negative) {
            res.pass = false;
            res.failing_index = k;
            return res;
        }
    }
    if (!products) return res;
    for (long p = 0; p < n; ++p)
        for (long s = p + 2; s < n; ++s)
            for (long q = p + 1; 2 * q <= p + s; ++q) {
                const long r = p + s - q;
                const PiScalar d = v[static_cast<std::size_t>(q)] * v[static_cast<std::size_t>(r)] -
                                   v[static_cast<std::size_t>(p)] * v[static_cast<std::size_t>(s)];
                if (sign_of(d) == Sign::negative) {
                    res.pass = false;
                    res.failing_product = std::vector<long>{p, q, r, s};
                    return res;
                }
            }
    return res;
}

bool LowDimReport::all_pass() const {
    return std::all_of(inequalities.begin(), inequalities.end(), [](const Inequality& i) { return i.pass; });
}

LowDimReport low_dim_implications(const std::vector<PiScalar>& v, long n, bool weyl) {
    LowDimReport rep;
    rep.n = n;
    rep.weyl = weyl;
    const std::size_t need = static_cast<std::size_t>(weyl ? n + 2 : n + 1);
    if (weyl ? (n != 4 && n != 5) : (n < 2 || n > 5)) throw std::invalid_argument("low_dim_implications: unsupported dimension");
    if (v.size() != need) throw std::invalid_argument("low_dim_implications: expected " + std::to_string(need) + " measures");
    auto V = [&](std::size_t k) -> const PiScalar& { return v[k]; };
    auto add = [&](std::string label, PiScalar lhs, PiScalar rhs) {
        const bool ok = sign_of(lhs - rhs) == Sign::positive;
        rep.inequalities.push_back({std::move(label), std::move(lhs), std::move(rhs), ok});
    };
    const PiScalar zero(0);
    if (weyl) {
        if (n == 4) add("3v2^2 > v0v4", PiScalar(3) * V(2) * V(2), V(0) * V(4));
        else add("5v3^2 > 3v1v5", PiScalar(5) * V(3) * V(3), PiScalar(3) * V(1) * V(5));
        return rep;
    }
    switch (n) {
        case 2: add("v1v2 > 0", V(1) * V(2), zero); break;
        case 3: add("9v1v2 > v0v3", PiScalar(9) * V(1) * V(2), V(0) * V(3)); break;
        case 4:
            add("6v1v2 > v0v3", PiScalar(6) * V(1) * V(2), V(0) * V(3));
            add("6v1v2v3 > v0v3^2 + v1^2v4", PiScalar(6) * V(1) * V(2) * V(3), V(0) * V(3) * V(3) + V(1) * V(1) * V(4));
            break;
        case 5:
            add("5v1v2 > v0v3", PiScalar(5) * V(1) * V(2), V(0) * V(3));
            add("100v1v2v3 + v0v1v5 > 20v0v3^2 + 25v1^2v4", PiScalar(100) * V(1) * V(2) * V(3) + V(0) * V(1) * V(5),
                PiScalar(20) * V(0) * V(3) * V(3) + PiScalar(25) * V(1) * V(1) * V(4));
            add("2500v1v2v3v4 + 100v0v2v3v5 + 50v0v1v4v5 > 625v1^2v4^2 + 500v0v3^2v4 + 500v1v2^2v5 + v0^2v5^2",
                PiScalar(2500) * V(1) * V(2) * V(3) * V(4) + PiScalar(100) * V(0) * V(2) * V(3) * V(5) +
                    PiScalar(50) * V(0) * V(1) * V(4) * V(5),
                PiScalar(625) * V(1) * V(1) * V(4) * V(4) + PiScalar(500) * V(0) * V(3) * V(3) * V(4) +
                    PiScalar(500) * V(1) * V(2) * V(2) * V(5) + V(0) * V(0) * V(5) * V(5));
            break;
    }
    return rep;
}

PiPoly steiner_shape(const std::vector<mpq_class>& v) {
    const long n = static_cast<long>(v.size()) - 1;
    std::vector<PiScalar> c;
    for (long k = 0; k <= n; ++k) c.emplace_back(mpq_class(binomial(n, k) * v[static_cast<std::size_t>(n - k)]));
    return PiPoly(std::move(c));
}

namespace {

// Signs of Delta_1..Delta_K in long double; 0 marks a vanishing pivot.
std::vector<int> approx_signs(const std::vector<long double>& a, std::size_t upto) {
    const std::size_t n = a.size() - 1;
    std::vector<long double> r0, r1;
    for (std::size_t k = 0; k <= n; k += 2) r0.push_back(a[k]);
    for (std::size_t k = 1; k <= n; k += 2) r1.push_back(a[k]);
    auto get = [](const std::vector<long double>& r, std::size_t j) { return j < r.size() ? r[j] : 0.0L; };
    std::vector<int> out;
    int s = 1;
    for (std::size_t i = 1; i <= std::min(n, upto); ++i) {
        const long double piv = get(r1, 0);
        if (piv == 0) {
            out.push_back(0);
            return out;
        }
        if (piv < 0) s = -s;
        out.push_back(s);
        const long double ratio = get(r0, 0) / piv;
        const std::size_t len = std::max(r0.size(), r1.size());
        std::vector<long double> r2;
        for (std::size_t j = 0; j + 1 < len; ++j) r2.push_back(get(r0, j + 1) - ratio * get(r1, j + 1));
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return out;
}

}  // namespace

SearchResult search_counterexample(long n, std::uint64_t seed, long budget, std::optional<long> target_index) {
    if (n < 1) throw std::invalid_argument("search_counterexample: n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SearchResult res;
    const std::size_t upto = target_index ? static_cast<std::size_t>(*target_index) : static_cast<std::size_t>(n);
    std::vector<double> logr(static_cast<std::size_t>(n));
    for (long c = 0; c < budget; ++c) {
        res.candidates = c + 1;
        // Non-increasing log ratios: either one kink or a sorted random profile.
        const double base = -3 + 6 * unit(rng);
        if (unit(rng) < 0.7) {
            const long j = 1 + static_cast<long>(unit(rng) * static_cast<double>(std::min<long>(12, std::max<long>(1, n - 1))));
            const double drop = -8 * unit(rng);
            for (long k = 0; k < n; ++k) logr[static_cast<std::size_t>(k)] = base + (k >= j ? drop : 0.0);
        } else {
            const double spread = 8 * unit(rng);
            for (auto& x : logr) x = base - spread * unit(rng);
            std::sort(logr.begin(), logr.end(), std::greater<>());
        }
        // ratios v_k / v_{k-1}, exactly representable and non-increasing
        std::vector<double> ratio(logr.size());
        for (std::size_t k = 0; k < ratio.size(); ++k) ratio[k] = std::exp(logr[k]);
        for (std::size_t k = 1; k < ratio.size(); ++k) ratio[k] = std::min(ratio[k], ratio[k - 1]);

        std::vector<long double> a(static_cast<std::size_t>(n + 1));
        long double lv = 0;
        long double mx = 0;
        for (long k = 0; k <= n; ++k) {
            if (k > 0) lv += std::log(static_cast<long double>(ratio[static_cast<std::size_t>(k - 1)]));
            a[static_cast<std::size_t>(k)] = lv + std::log(static_cast<long double>(binomial(n, k).get_d()));
            mx = std::max(mx, a[static_cast<std::size_t>(k)]);
        }
        for (auto& x : a) x = std::exp(x - mx);
        const std::vector<int> s = approx_signs(a, upto);
        bool hit = false;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (target_index && static_cast<long>(k) + 1 != *target_index) continue;
            if (s[k] <= 0) hit = true;
        }
        if (!hit) continue;

        std::vector<mpq_class> v{mpq_class(1)};
        for (std::size_t k = 0; k < ratio.size(); ++k) v.push_back(v.back() * mpq_class(ratio[k]));
        std::vector<mpq_class> lead;
        for (long k = 0; k <= n; ++k) lead.push_back(binomial(n, k) * v[static_cast<std::size_t>(k)]);
        const std::vector<mpq_class> d = hurwitz_determinants(lead);
        std::optional<long> fail;
        for (std::size_t k = 0; k < d.size(); ++k) {
            if (target_index && static_cast<long>(k) + 1 != *target_index) continue;
            if (sgn(d[k]) <= 0) {
                fail = static_cast<long>(k) + 1;
                break;
            }
        }
        if (!fail) continue;
        std::vector<PiScalar> vs(v.begin(), v.end());
        if (!log_concavity_check(vs).pass) continue;
        res.witness = Counterexample{std::move(v), *fail, d, c + 1};
        return res;
    }
    return res;
}

}  // namespace tubepoly
