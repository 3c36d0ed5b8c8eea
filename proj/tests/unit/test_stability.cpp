#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "tubepoly/bodies.hpp"
#include "tubepoly/stability.hpp"

using namespace tubepoly;
using testsupport::ratio;
using testsupport::uniform;

namespace {

PiPoly poly(std::initializer_list<const char*> c) {
    std::vector<std::string> s(c.begin(), c.end());
    return PiPoly::from_coeff_strings(s);
}

std::vector<PiScalar> sv(std::initializer_list<long> v) { return std::vector<PiScalar>(v.begin(), v.end()); }

// Laplace expansion; only for small matrices.
mpq_class laplace(const std::vector<std::vector<mpq_class>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    mpq_class d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpq_class>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpq_class> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            sub.push_back(row);
        }
        const mpq_class t = m[0][j] * laplace(sub);
        d += (j % 2 == 0) ? t : mpq_class(-t);
    }
    return d;
}

// Delta_k straight from the Hurwitz matrix definition.
mpq_class hurwitz_oracle(const std::vector<mpq_class>& a, long k) {
    const long n = static_cast<long>(a.size()) - 1;
    std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(k), std::vector<mpq_class>(static_cast<std::size_t>(k)));
    for (long i = 1; i <= k; ++i)
        for (long j = 1; j <= k; ++j) {
            const long idx = 2 * j - i;
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = (idx >= 0 && idx <= n) ? a[static_cast<std::size_t>(idx)] : mpq_class(0);
        }
    return laplace(m);
}

std::vector<mpq_class> random_positive(long n) {
    std::vector<mpq_class> a;
    for (long k = 0; k <= n; ++k) a.push_back(ratio(uniform(1, 30), uniform(1, 6)));
    return a;
}

// v_k with non-increasing ratios, strictly log-concave
std::vector<mpq_class> random_log_concave(long len) {
    std::vector<mpq_class> r;
    for (long k = 0; k < len - 1; ++k) r.push_back(ratio(uniform(1, 60), uniform(1, 12)));
    std::sort(r.begin(), r.end(), [](const mpq_class& x, const mpq_class& y) { return x > y; });
    for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k] >= r[k - 1]) r[k] = r[k - 1] * mpq_class(9, 10);
    std::vector<mpq_class> v{ratio(uniform(1, 9), uniform(1, 9))};
    for (const auto& x : r) v.push_back(v.back() * x);
    return v;
}

PiPoly from_rational(const std::vector<mpq_class>& leading_first_coeffs) {
    std::vector<PiScalar> c(leading_first_coeffs.rbegin(), leading_first_coeffs.rend());
    return PiPoly(c);
}

}  // namespace

TEST_CASE("Hurwitz determinants: fixed examples") {
    const auto d = hurwitz_determinants(sv({1, 2, 2, 1}));
    CHECK(d == sv({2, 3, 3}));
    CHECK(hurwitz_determinants(sv({1, 1, 1})) == sv({1, 1}));
    CHECK(hurwitz_determinants(sv({3})).empty());
    CHECK_THROWS(hurwitz_determinants(std::vector<PiScalar>{}));
    CHECK_THROWS(hurwitz_determinants(sv({0, 1})));
}

TEST_CASE("Hurwitz determinants agree with the matrix definition") {
    for (int i = 0; i < 60; ++i) {
        const long n = uniform(1, 7);
        std::vector<mpq_class> a = random_positive(n);
        if (i % 5 == 0) a[static_cast<std::size_t>(uniform(1, n))] = 0;
        const auto d = hurwitz_determinants(a);
        REQUIRE(d.size() == static_cast<std::size_t>(n));
        for (long k = 1; k <= n; ++k) CHECK(d[static_cast<std::size_t>(k - 1)] == hurwitz_oracle(a, k));
        const std::vector<PiScalar> ap(a.begin(), a.end());
        const auto m = hurwitz_minors(ap);
        for (long k = 1; k <= n; ++k) CHECK(m[static_cast<std::size_t>(k - 1)] == PiScalar(hurwitz_oracle(a, k)));
    }
    // vanishing Routh pivot
    const std::vector<mpq_class> ones(5, mpq_class(1));
    const auto d = hurwitz_determinants(ones);
    for (long k = 1; k <= 4; ++k) CHECK(d[static_cast<std::size_t>(k - 1)] == hurwitz_oracle(ones, k));
}

TEST_CASE("last determinant factors through the constant term") {
    for (int i = 0; i < 20; ++i) {
        const auto a = random_positive(5);
        const auto d = hurwitz_determinants(a);
        CHECK(d[4] == a[5] * d[3]);
    }
}

TEST_CASE("dissipative classification") {
    for (long n = 1; n <= 6; ++n) {
        const auto r = classify_dissipative(steiner(BodySpec::ball(n)).poly);
        CHECK(r.verdict == Verdict::dissipative);
        CHECK(r.determinants.size() == static_cast<std::size_t>(n));
    }
    std::vector<PiScalar> e5;
    for (long k = 0; k <= 5; ++k) e5.emplace_back(mpq_class(1) / factorial(k));
    const auto r5 = classify_dissipative(PiPoly(e5));
    CHECK(r5.verdict == Verdict::not_dissipative);
    REQUIRE(r5.failing_index);
    // Delta_3 vanishes exactly, Delta_4 = Delta_5 = -1/5400
    CHECK(*r5.failing_index == 3);
    CHECK(r5.reason == "boundary");
    CHECK(r5.determinants[3].text == "-1/5400");
    CHECK(r5.determinants[4].sign == -1);

    const auto sq = classify_dissipative(steiner(BodySpec::parse("adj(ball:2,1)")).poly);
    CHECK(sq.verdict == Verdict::dissipative);
    CHECK(sq.degenerate_order == 1);

    CHECK(classify_dissipative(PiPoly::monomial(1, 3)).verdict == Verdict::degenerate_input);
    CHECK(classify_dissipative(PiPoly::constant(5)).verdict == Verdict::dissipative);
    CHECK_THROWS(classify_dissipative(PiPoly()));

    const auto gap = classify_dissipative(poly({"1", "0", "1"}));
    CHECK(gap.verdict == Verdict::not_dissipative);
    CHECK(gap.reason == "necessary condition");
    CHECK(gap.failing_index);

    const auto axis = classify_dissipative(poly({"1", "1", "1", "1"}));  // (t^2+1)(t+1)
    CHECK(axis.verdict == Verdict::not_dissipative);
    CHECK(axis.reason == "boundary");
    CHECK(*axis.failing_index == 2);

    const auto neg = classify_dissipative(poly({"-1", "-2", "-1"}));
    CHECK(neg.verdict == Verdict::dissipative);
}

TEST_CASE("negative verdicts always carry evidence") {
    for (int i = 0; i < 100; ++i) {
        const long n = uniform(1, 8);
        std::vector<mpq_class> a;
        for (long k = 0; k <= n; ++k) a.push_back(ratio(uniform(-3, 30), uniform(1, 5)));
        if (sgn(a[0]) == 0) a[0] = 1;
        const auto r = classify_dissipative(from_rational(a));
        if (is_negative(r.verdict)) CHECK((r.failing_index.has_value() || !r.witnesses.empty()));
    }
}

TEST_CASE("interval and exact determinant paths agree") {
    for (int i = 0; i < 40; ++i) {
        const long n = uniform(2, 9);
        std::vector<PiScalar> c;
        for (long k = 0; k <= n; ++k) c.push_back(testsupport::random_scalar(false) * testsupport::random_scalar(false));
        if (c.back().is_zero()) c.back() = PiScalar::pi();
        const PiPoly p(c);
        ClassifyOptions ex, iv, lc;
        ex.mode = DeterminantMode::exact;
        iv.mode = DeterminantMode::interval;
        lc.lienard_chipart = true;
        const auto a = classify_dissipative(p, ex);
        const auto b = classify_dissipative(p, iv);
        CHECK(a.verdict == b.verdict);
        CHECK(a.verdict == classify_dissipative(p, lc).verdict);
        CHECK(b.determinants.size() == a.determinants.size());
    }
}

TEST_CASE("conservativeness determinants") {
    CHECK(conservativeness_determinants(sv({1, 1})) == sv({1, 1}));
    for (int i = 0; i < 20; ++i) {
        const PiScalar a0(uniform(1, 9)), a2(uniform(1, 9)), a4(uniform(1, 9));
        const auto d = conservativeness_determinants({a0, a2, a4});
        REQUIRE(d.size() == 4);
        CHECK(d[0] == PiScalar(2) * a0);
        CHECK(d[2] == a0 * (a2 * a2 - PiScalar(4) * a0 * a4));
        CHECK(d[3] == a4 * d[2]);
    }
}

TEST_CASE("conservative classification") {
    CHECK(classify_conservative(poly({"4*pi", "0", "4*pi"})).verdict == Verdict::conservative);
    for (WeylIndex p : {WeylIndex::finite(1), WeylIndex::finite(2), WeylIndex::finite(3), WeylIndex::infinite()})
        CHECK(classify_conservative(weyl_poly(steiner(BodySpec::cube(5)), p).poly).verdict == Verdict::conservative);
    CHECK_THROWS(classify_conservative(poly({"1", "1"})));
    CHECK_THROWS(classify_conservative(PiPoly()));
    const auto dbl = classify_conservative(poly({"1", "0", "2", "0", "1"}));  // (t^2+1)^2
    CHECK(dbl.verdict == Verdict::not_conservative);
    CHECK(dbl.failing_index);
    CHECK(classify_conservative(poly({"0", "0", "1", "0", "1"})).reason == "necessary condition");
    CHECK(classify_conservative(poly({"1", "0", "-1"})).verdict == Verdict::not_conservative);
}

TEST_CASE("W conservative iff W + W' dissipative") {
    for (int i = 0; i < 80; ++i) {
        const long m = uniform(1, 4);
        std::vector<PiScalar> c(static_cast<std::size_t>(2 * m + 1), PiScalar(0));
        for (long l = 0; l <= m; ++l) c[static_cast<std::size_t>(2 * l)] = PiScalar(ratio(uniform(1, 40), uniform(1, 8)));
        const PiPoly w(c);
        const bool cons = classify_conservative(w).verdict == Verdict::conservative;
        const bool diss = classify_dissipative(w + derivative(w)).verdict == Verdict::dissipative;
        CHECK(cons == diss);
    }
}

TEST_CASE("Hermite-Biehler interlacing") {
    CHECK(hermite_biehler_check(poly({"1", "3", "3", "1"})).verdict == Verdict::dissipative);
    CHECK(hermite_biehler_check(poly({"1", "1", "1"})).verdict == Verdict::dissipative);
    std::vector<PiScalar> e5;
    for (long k = 0; k <= 5; ++k) e5.emplace_back(mpq_class(1) / factorial(k));
    const auto r = hermite_biehler_check(PiPoly(e5));
    CHECK(r.verdict == Verdict::not_dissipative);
    CHECK(!r.witnesses.empty());
    for (int i = 0; i < 40; ++i) {
        const auto a = random_positive(uniform(1, 6));
        const PiPoly p = from_rational(a);
        const auto exact = classify_dissipative(p);
        if (exact.reason == "boundary") continue;
        CHECK(hermite_biehler_check(p).verdict == exact.verdict);
    }
}

TEST_CASE("log-concavity") {
    CHECK(log_concavity_check(sv({2, 2, 2, 2})).pass);
    const auto f = log_concavity_check(sv({1, 1, 2}));
    CHECK_FALSE(f.pass);
    CHECK(*f.failing_index == 1);
    CHECK(log_concavity_check(cross_measures(steiner(BodySpec::cube(2))).v).pass);
    CHECK_THROWS(log_concavity_check(sv({1, -1, 1})));
    for (int i = 0; i < 20; ++i) {
        const auto v = random_log_concave(uniform(3, 8));
        CHECK(log_concavity_check(std::vector<PiScalar>(v.begin(), v.end()), true).pass);
    }
    // log-concave in the middle triples but, with a zero entry, not a product inequality
    const auto p = log_concavity_check(sv({1, 0, 0, 1}), true);
    CHECK_FALSE(p.pass);
    CHECK(p.failing_product);
}

TEST_CASE("low-dimension inequalities match the Hurwitz signs") {
    for (int i = 0; i < 150; ++i) {
        const long n = uniform(3, 5);
        std::vector<mpq_class> v;
        for (long k = 0; k <= n; ++k) v.push_back(ratio(uniform(1, 40), uniform(1, 10)));
        std::vector<mpq_class> a;
        for (long k = 0; k <= n; ++k) a.push_back(binomial(n, k) * v[static_cast<std::size_t>(k)]);
        const auto d = hurwitz_determinants(a);
        const auto rep = low_dim_implications(std::vector<PiScalar>(v.begin(), v.end()), n);
        REQUIRE(rep.inequalities.size() == static_cast<std::size_t>(n - 2));
        for (std::size_t j = 0; j < rep.inequalities.size(); ++j) {
            CAPTURE(n);
            CAPTURE(rep.inequalities[j].label);
            CHECK(rep.inequalities[j].pass == (sgn(d[j + 1]) > 0));
        }
    }
}

TEST_CASE("Weyl-mode inequalities match the conservativeness determinants") {
    for (int i = 0; i < 100; ++i) {
        const long n = uniform(4, 5);
        std::vector<PiScalar> v;
        for (long k = 0; k <= n + 1; ++k) v.emplace_back(ratio(uniform(1, 40), uniform(1, 10)));
        const PiPoly w = weyl_infinity_from_cross_measures(v, n);
        const auto rep = low_dim_implications(v, n, true);
        CHECK(rep.all_pass() == (classify_conservative(w).verdict == Verdict::conservative));
    }
}

TEST_CASE("low-dimension examples") {
    CHECK(low_dim_implications(sv({3, 3, 3, 3}), 3).all_pass());
    const auto b5 = cross_measures(steiner(BodySpec::ball(5))).v;
    CHECK(low_dim_implications(b5, 4, true).all_pass());
    for (int i = 0; i < 50; ++i) {
        const auto v = random_log_concave(6);
        CHECK(low_dim_implications(std::vector<PiScalar>(v.begin(), v.end()), 5).all_pass());
    }
    CHECK_THROWS(low_dim_implications(sv({1, 1, 1}), 3));
    CHECK_THROWS(low_dim_implications(sv({1, 1, 1, 1, 1, 1, 1}), 6));
}

TEST_CASE("counterexample search") {
    const auto none = search_counterexample(3, 7, 3000);
    CHECK_FALSE(none.witness);
    CHECK(none.candidates == 3000);
    const auto hit = search_counterexample(30, 11, 20000, 5);
    REQUIRE(hit.witness);
    const auto& w = *hit.witness;
    CHECK(w.failing_index == 5);
    CHECK(sgn(w.determinants[4]) < 0);
    CHECK(log_concavity_check(std::vector<PiScalar>(w.v.begin(), w.v.end())).pass);
    std::vector<mpq_class> a;
    for (long k = 0; k <= 30; ++k) a.push_back(binomial(30, k) * w.v[static_cast<std::size_t>(k)]);
    CHECK(hurwitz_oracle(a, 5) == w.determinants[4]);
    CHECK(classify_dissipative(steiner_shape(w.v)).verdict == Verdict::not_dissipative);
}
