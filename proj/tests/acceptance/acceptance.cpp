// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tubepoly/bodies.hpp"
#include "tubepoly/generators.hpp"
#include "tubepoly/oracle.hpp"
#include "tubepoly/roots.hpp"
#include "tubepoly/stability.hpp"

using namespace tubepoly;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::mt19937_64& rng() {
    static std::mt19937_64 g(0x5eed2024);
    return g;
}

PiPoly from_coeffs(std::vector<PiScalar> c) { return PiPoly(std::move(c)); }

// ---- 1
Outcome exact_synthesis() {
    const auto t0 = Clock::now();
    for (long n = 1; n <= 10; ++n) {
        std::vector<PiScalar> b;
        for (long k = 0; k <= n; ++k) b.push_back(omega(n) * PiScalar(binomial(n, k)));
        if (steiner(BodySpec::ball(n)).poly != from_coeffs(b)) return {false, "ball mismatch at n=" + std::to_string(n)};

        std::vector<PiScalar> q;
        for (long k = 0; k <= n; ++k) {
            const PiScalar c = PiScalar(mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(n)) * factorial(n) /
                                        (factorial(n - k) * factorial(k))) *
                               (PiScalar::sqrt_pi() / PiScalar(2)).pow(k) / gamma_half(k);
            q.push_back(c);
        }
        const PiPoly cube = steiner(BodySpec::cube(n)).poly;
        if (cube != from_coeffs(q)) return {false, "cube closed form mismatch at n=" + std::to_string(n)};
        const PiPoly seg = PiPoly(std::vector<PiScalar>{PiScalar(2), PiScalar(2)});
        PiPoly m = seg;
        for (long k = 1; k < n; ++k) m = m_product(m, seg);
        if (cube != m) return {false, "cube M-product mismatch at n=" + std::to_string(n)};
    }
    const double dt = seconds_since(t0);
    return {dt < 1.0, "n<=10 balls and cubes exact; " + std::to_string(dt) + " s (limit 1 s)"};
}

// ---- 2
Outcome squeezed_cylinders() {
    for (long n = 1; n <= 10; ++n) {
        const PiPoly b = steiner(BodySpec::adjoint(BodySpec::ball(n), 1)).poly;
        const PiPoly q = steiner(BodySpec::adjoint(BodySpec::cube(n), 1)).poly;
        if (!b.coeff(0).is_zero() || !q.coeff(0).is_zero()) return {false, "nonzero s_0 at n=" + std::to_string(n)};
        for (long k = 0; k <= n; ++k) {
            const PiScalar nk(factorial(n) / (factorial(n - k) * factorial(k)));
            const PiScalar wb = omega(n) * nk * PiScalar::sqrt_pi() * gamma_half(k) / gamma_half(k + 1);
            const PiScalar wq = PiScalar(mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(n))) * nk * PiScalar::sqrt_pi() /
                                gamma_half(k + 1) * (PiScalar::sqrt_pi() / PiScalar(2)).pow(k);
            if (b.coeff(static_cast<std::size_t>(k + 1)) != wb)
                return {false, "ball cylinder s_" + std::to_string(k + 1) + " at n=" + std::to_string(n)};
            if (q.coeff(static_cast<std::size_t>(k + 1)) != wq)
                return {false, "cube cylinder s_" + std::to_string(k + 1) + " at n=" + std::to_string(n)};
        }
    }
    return {true, "n<=10 coefficients exact"};
}

// ---- 3
std::vector<PiScalar> random_log_concave(long len) {
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    std::vector<double> lr(static_cast<std::size_t>(len - 1));
    for (auto& x : lr) x = u(rng());
    std::sort(lr.begin(), lr.end(), std::greater<>());
    std::vector<mpq_class> r;
    for (double x : lr) r.emplace_back(std::exp2(x));
    for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k] >= r[k - 1]) r[k] = r[k - 1] * mpq_class(255, 256);
    mpq_class cur(std::exp2(u(rng())));
    std::vector<PiScalar> v{PiScalar(cur)};
    for (const auto& x : r) {
        cur *= x;
        v.emplace_back(cur);
    }
    return v;
}

Outcome low_dimensions() {
    const auto t0 = Clock::now();
    long fails = 0;
    std::string first;
    for (long n = 2; n <= 5; ++n)
        for (int i = 0; i < 500; ++i) {
            const auto v = random_log_concave(n + 1);
            if (!log_concavity_check(v).pass) return {false, "generator produced a non-log-concave sequence"};
            if (classify_dissipative(steiner_from_cross_measures(v)).verdict != Verdict::dissipative) {
                if (!fails++) first = "Steiner n=" + std::to_string(n);
            }
            if (n >= 4) {
                const auto w = random_log_concave(n + 2);
                if (classify_conservative(weyl_infinity_from_cross_measures(w, n)).verdict != Verdict::conservative)
                    if (!fails++) first = "Weyl n=" + std::to_string(n);
            }
        }
    const double dt = seconds_since(t0);
    std::string d = std::to_string(fails) + " failures in 2000 Steiner + 1000 Weyl samples; " + std::to_string(dt) + " s (limit 30 s)";
    if (fails) d += "; first: " + first;
    return {fails == 0 && dt < 30, d};
}

// ---- 4
Outcome explicit_roots() {
    double worst = 0;
    for (long n = 2; n <= 12; ++n) {
        const auto got = find_roots(weyl_poly(steiner(BodySpec::ball(n + 1)), WeylIndex::finite(1)).poly);
        const auto want = ball_weyl1_roots(n);
        if (got.roots.size() != want.size()) return {false, "root count at n=" + std::to_string(n)};
        std::vector<std::complex<double>> g;
        for (const auto& z : got.roots) g.emplace_back(z.re, z.im);
        std::sort(g.begin(), g.end(), [](auto a, auto b) { return a.imag() < b.imag(); });
        for (std::size_t k = 0; k < g.size(); ++k)
            worst = std::max(worst, std::abs(g[k] - std::complex<double>(want[k].re, want[k].im)));
    }
    std::ostringstream os;
    os << "max deviation " << worst << " (limit 1e-9)";
    return {worst < 1e-9, os.str()};
}

// ---- 5
Outcome truncated_exponential() {
    std::vector<PiScalar> c;
    for (long k = 0; k <= 5; ++k) c.emplace_back(mpq_class(1) / factorial(k));
    const PiPoly e5(c);
    const auto rep = classify_dissipative(e5);
    const auto rs = find_roots(e5);
    bool pair = false;
    std::ostringstream os;
    for (const auto& z : rs.roots)
        if (z.re > 0 && z.im > 0)
            for (const auto& w : rs.roots)
                if (std::abs(w.re - z.re) < 1e-12 && std::abs(w.im + z.im) < 1e-12) {
                    pair = true;
                    os << "pair " << z.re << " +- " << z.im << "i; ";
                }
    os << "verdict " << to_string(rep.verdict);
    if (rep.failing_index) os << " at Delta_" << *rep.failing_index;
    return {pair && rep.verdict == Verdict::not_dissipative, os.str()};
}

// ---- 6
Outcome counterexample_30() {
    const auto t0 = Clock::now();
    const auto res = search_counterexample(30, 1, 100000, 5);
    const double dt = seconds_since(t0);
    if (!res.witness) return {false, "no witness in " + std::to_string(res.candidates) + " candidates"};
    const auto& w = *res.witness;
    std::vector<PiScalar> v(w.v.begin(), w.v.end());
    bool positive = std::all_of(w.v.begin(), w.v.end(), [](const mpq_class& x) { return sgn(x) > 0; });
    const auto d = hurwitz_determinants(leading_first(steiner_from_cross_measures(v)));
    const bool neg = d.size() >= 5 && sign_of(d[4]) == Sign::negative;
    const bool ok = positive && log_concavity_check(v).pass && neg && dt < 60;
    return {ok, "witness after " + std::to_string(w.candidates) + " candidates, Delta_5 < 0 exact; " + std::to_string(dt) +
                    " s (limit 60 s)"};
}

// ---- 7
Outcome negative_weyl() {
    const auto t0 = Clock::now();
    long found = 0;
    for (long n = 2; n <= 400 && !found; ++n) {
        const auto w = weyl_poly(steiner(BodySpec::adjoint(BodySpec::ball(n), 1)), WeylIndex::finite(5));
        if (classify_conservative(w.poly).verdict == Verdict::not_conservative) found = n;
    }
    const double t_scan = seconds_since(t0);
    long bad = 0;
    for (long p : {1L, 2L, 4L})
        for (long n = 2; n <= 100; ++n) {
            const auto w = weyl_poly(steiner(BodySpec::adjoint(BodySpec::ball(n), 1)), WeylIndex::finite(p));
            if (classify_conservative(w.poly).verdict != Verdict::conservative && !bad) bad = p * 1000 + n;
        }
    const double dt = seconds_since(t0);
    std::string d = found ? "p=5 NotConservative at n=" + std::to_string(found) : "p=5 Conservative for every n<=400";
    d += bad ? "; p=" + std::to_string(bad / 1000) + " fails at n=" + std::to_string(bad % 1000)
             : "; p=1,2,4 Conservative for n<=100";
    d += "; p=5 scan " + std::to_string(t_scan) + " s, total " + std::to_string(dt) + " s (limit 300 s)";
    return {found && !bad && dt < 300, d};
}

// ---- 8
Outcome negative_steiner() {
    const auto t0 = Clock::now();
    long found = 0;
    double best = -1e300;
    long best_n = 0;
    for (long n = 1; n <= 400 && !found; ++n) {
        const PiPoly s = steiner(BodySpec::adjoint(BodySpec::ball(n), 5)).poly;
        ClassifyOptions o;
        o.numeric_witness = n % 25 == 0 || n == 400;
        auto rep = classify_dissipative(s, o);
        if (is_negative(rep.verdict) && !o.numeric_witness) {
            o.numeric_witness = true;
            rep = classify_dissipative(s, o);
        }
        for (const auto& z : rep.witnesses) {
            if (z.re > best) {
                best = z.re;
                best_n = n;
            }
            if (z.re > 0) found = n;
        }
    }
    std::ostringstream os;
    if (found)
        os << "right-half-plane witness at n=" << found;
    else
        os << "no right-half-plane witness for n<=400; largest witnessed Re " << best << " at n=" << best_n;
    os << "; " << seconds_since(t0) << " s";
    return {found > 0, os.str()};
}

// ---- 9
Outcome generator_consistency() {
    for (long n = 1; n <= 10; ++n) {
        for (const BodySpec& b : {BodySpec::ball(n), BodySpec::cube(n), BodySpec::adjoint(BodySpec::ball(n), 1),
                                  BodySpec::adjoint(BodySpec::ball(n), 2), BodySpec::adjoint(BodySpec::ball(n), 5),
                                  BodySpec::adjoint(BodySpec::cube(n), 1)}) {
            const auto [f, order] = steiner_family(b);
            if (jensen_poly(f, order) != renormalized_steiner(steiner(b)))
                return {false, "Steiner mismatch for " + b.to_string()};
        }
        for (WeylIndex p : {WeylIndex::finite(1), WeylIndex::finite(2), WeylIndex::finite(5), WeylIndex::infinite()})
            for (const BodySpec& b : {BodySpec::ball(n + 1), BodySpec::cube(n + 1), BodySpec::adjoint(BodySpec::ball(n), 1),
                                      BodySpec::adjoint(BodySpec::cube(n), 1)}) {
                const auto [f, order] = weyl_family(b, p);
                if (jensen_poly(f, order) != renormalized_weyl(steiner(b), p))
                    return {false, "Weyl mismatch for " + b.to_string() + " p=" + p.to_string()};
            }
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> pts;
    while (pts.size() < 20) {
        const std::complex<double> z(5 * u(rng()), 5 * u(rng()));
        if (std::abs(z) <= 5) pts.push_back(z);
    }
    const std::vector<SeriesFamily> closed{SeriesFamily::m_ball(), SeriesFamily::m_ballcyl(4),
                                           SeriesFamily::weyl(FamilyKind::w_ball, WeylIndex::infinite()),
                                           SeriesFamily::weyl(FamilyKind::w_ball, WeylIndex::finite(1)),
                                           SeriesFamily::weyl(FamilyKind::w_ball, WeylIndex::finite(2)),
                                           SeriesFamily::weyl(FamilyKind::w_cube, WeylIndex::infinite()),
                                           SeriesFamily::weyl(FamilyKind::w_cubecyl, WeylIndex::infinite())};
    double worst_cf = 0, worst_ir = 0;
    for (const auto& z : pts) {
        for (const auto& f : closed) {
            const auto a = closed_form_eval(f, z.real(), z.imag(), 128);
            const auto b = truncated_eval(f, 120, z.real(), z.imag(), 128);
            worst_cf = std::max(worst_cf, std::hypot(a.re.mid_d() - b.re.mid_d(), a.im.mid_d() - b.im.mid_d()));
        }
        for (long q : {1L, 2L, 4L})
            for (const auto& f : {SeriesFamily::m_ballcyl(q), SeriesFamily::weyl(FamilyKind::w_ballcyl, WeylIndex::finite(q))}) {
                const auto a = integral_rep_eval(f, z.real(), z.imag());
                const auto b = truncated_eval(f, 120, z.real(), z.imag(), 128);
                worst_ir = std::max(worst_ir, std::hypot(a.re.mid_d() - b.re.mid_d(), a.im.mid_d() - b.im.mid_d()));
            }
    }
    std::ostringstream os;
    os << "Jensen = renormalized for n<=10; closed forms max error " << worst_cf << " (limit 1e-10); integrals max error "
       << worst_ir << " (limit 1e-8)";
    return {worst_cf <= 1e-10 && worst_ir <= 1e-8, os.str()};
}

// ---- 10
void enumerate_bodies(long d, std::vector<BodySpec>& out) {
    out.push_back(BodySpec::ball(d));
    out.push_back(BodySpec::cube(d));
    for (long q = 1; q < d; ++q) {
        std::vector<BodySpec> inner;
        enumerate_bodies(d - q, inner);
        for (auto& b : inner) out.push_back(BodySpec::adjoint(b, q));
    }
    for (long d1 = 1; d1 < d; ++d1) {
        std::vector<BodySpec> a, b;
        enumerate_bodies(d1, a);
        enumerate_bodies(d - d1, b);
        for (const auto& x : a)
            for (const auto& y : b) out.push_back(BodySpec::product(x, y));
    }
}

Outcome geometry_oracle() {
    const auto t0 = Clock::now();
    std::vector<BodySpec> bodies;
    for (long d = 1; d <= 4; ++d) enumerate_bodies(d, bodies);
    long runs = 0, fails = 0;
    double worst = 0;
    std::string first;
    std::uint64_t seed = 1000;
    for (const auto& b : bodies) {
        const PiPoly s = steiner(b).poly;
        for (double t : {0.25, 0.5, 1.0}) {
            const auto e = mc_tube_volume(b, t, 1000000, seed++);
            const double exact = s.eval(t, 0, 64).re.mid_d();
            const double z = std::abs(e.mean - exact) / e.std_error;
            worst = std::max(worst, z);
            ++runs;
            if (z > 4 && !fails++) first = b.to_string() + " t=" + std::to_string(t);
        }
    }
    std::ostringstream os;
    os << bodies.size() << " bodies, " << runs << " estimates, " << fails << " beyond 4 sigma, max |z| " << worst << "; "
       << seconds_since(t0) << " s";
    if (fails) os << "; first: " << first;
    return {fails == 0, os.str()};
}

// ---- 11
PiScalar random_positive_scalar() {
    std::uniform_int_distribution<long> num(1, 40), den(1, 12), kind(0, 2);
    mpq_class r(num(rng()), den(rng()));
    r.canonicalize();
    PiScalar s(r);
    if (kind(rng()) == 1) s *= PiScalar::pi();
    if (kind(rng()) == 2) s *= PiScalar::sqrt_pi();
    return s;
}

Outcome cross_validation() {
    long decisive = 0, disagree = 0, equiv_fail = 0, positive = 0;
    std::uniform_int_distribution<long> deg(1, 8), half(1, 4), mode(0, 2);
    for (int i = 0; i < 200; ++i) {
        PiPoly p;
        if (mode(rng()) == 0) {
            // product of stable or nearly stable factors
            p = PiPoly::constant(1);
            while (p.degree() < deg(rng())) {
                const PiScalar b = random_positive_scalar() / PiScalar(8), c = random_positive_scalar();
                p = p * PiPoly(std::vector<PiScalar>{c, b, PiScalar(1)});
            }
        } else {
            std::vector<PiScalar> c;
            const long d = deg(rng());
            for (long k = 0; k <= d; ++k) c.push_back(random_positive_scalar());
            p = PiPoly(c);
        }
        const auto ex = classify_dissipative(p).verdict;
        const auto nv = classify_numeric(find_roots(p));
        if (nv == NumericVerdict::dissipative || nv == NumericVerdict::neither) {
            ++decisive;
            const bool want = nv == NumericVerdict::dissipative;
            if (want != (ex == Verdict::dissipative)) ++disagree;
            positive += want;
        }
    }
    for (int i = 0; i < 200; ++i) {
        PiPoly w;
        const long m = half(rng());
        if (mode(rng()) == 0) {
            w = PiPoly::constant(random_positive_scalar());
            for (long l = 0; l < m; ++l) w = w * PiPoly(std::vector<PiScalar>{random_positive_scalar(), PiScalar(0), PiScalar(1)});
        } else {
            std::vector<PiScalar> c(static_cast<std::size_t>(2 * m + 1), PiScalar(0));
            for (long l = 0; l <= m; ++l) c[static_cast<std::size_t>(2 * l)] = random_positive_scalar();
            w = PiPoly(c);
        }
        const auto ex = classify_conservative(w).verdict;
        const auto nv = classify_numeric(find_roots(w));
        if (nv == NumericVerdict::conservative || nv == NumericVerdict::neither) {
            ++decisive;
            if ((nv == NumericVerdict::conservative) != (ex == Verdict::conservative)) ++disagree;
            positive += nv == NumericVerdict::conservative;
        }
        const bool a = ex == Verdict::conservative;
        const bool b = classify_dissipative(w + derivative(w)).verdict == Verdict::dissipative;
        if (a != b) ++equiv_fail;
    }
    std::ostringstream os;
    os << decisive << " decisive numeric verdicts (" << positive << " stable), " << disagree << " disagreements; W vs W+W' mismatches " << equiv_fail;
    return {disagree == 0 && equiv_fail == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    app.add_option("--criterion,-c", only, "Run only these criteria (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> all{
        {"exact synthesis of balls and cubes", exact_synthesis},
        {"squeezed-cylinder coefficients", squeezed_cylinders},
        {"low-dimension inequalities", low_dimensions},
        {"explicit Weyl roots of balls", explicit_roots},
        {"truncated exponential", truncated_exponential},
        {"n=30 counterexample", counterexample_30},
        {"negative Weyl case", negative_weyl},
        {"negative Steiner case", negative_steiner},
        {"generator consistency", generator_consistency},
        {"geometry oracle", geometry_oracle},
        {"criterion cross-validation", cross_validation},
    };
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
        Outcome o;
        try {
            o = all[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %-36s %s  %s\n", k, all[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
