#include <cmath>
#include <complex>

#include "doctest.h"
#include "support.hpp"
#include "tubepoly/generators.hpp"

using namespace tubepoly;

namespace {

using ld = long double;
const ld kPi = 3.141592653589793238462643383279502884L;

ld fact(long k) { return std::tgamma(static_cast<ld>(k) + 1); }
ld dfact_odd(long l) {  // (2l-1)!!
    ld r = 1;
    for (long j = 1; j <= 2 * l - 1; j += 2) r *= j;
    return r;
}

ld oracle_coeff(const SeriesFamily& f, long k) {
    const ld kk = static_cast<ld>(k);
    switch (f.kind) {
        case FamilyKind::m_ball: return 1 / fact(k);
        case FamilyKind::m_ballcyl: {
            const ld q = static_cast<ld>(f.param);
            return std::tgamma(q / 2 + 1) * std::tgamma(kk / 2 + 1) / (std::tgamma((kk + q) / 2 + 1) * fact(k));
        }
        case FamilyKind::m_cube: return std::pow(std::sqrt(kPi) / 2, kk) / (std::tgamma(kk / 2 + 1) * fact(k));
        case FamilyKind::m_cubecyl:
            return std::tgamma(1.5L) * std::pow(std::sqrt(kPi) / 2, kk) / (std::tgamma((kk + 1) / 2 + 1) * fact(k));
        default: break;
    }
    if (k % 2) return 0;
    const long l = k / 2;
    const ld sgn = (l % 2) ? -1 : 1;
    ld base = 0;
    switch (f.kind) {
        case FamilyKind::w_ball: base = sgn * std::pow(0.5L, static_cast<ld>(l)) / fact(l); break;
        case FamilyKind::w_ballcyl: base = sgn / dfact_odd(l); break;
        case FamilyKind::w_cube: base = sgn * std::pow(kPi / 2, static_cast<ld>(l)) / fact(2 * l + 1); break;
        case FamilyKind::w_cubecyl: base = sgn * std::pow(kPi / 2, static_cast<ld>(l)) / fact(2 * l); break;
        default: break;
    }
    if (f.param > 0)
        for (long j = 1; j <= l; ++j) base /= static_cast<ld>(f.param + 2 * j);
    return base;
}

bool overlaps(const Interval& a, const Interval& b) { return mpfr_cmp(a.lo(), b.hi()) <= 0 && mpfr_cmp(b.lo(), a.hi()) <= 0; }

std::vector<SeriesFamily> all_families() {
    std::vector<SeriesFamily> v{SeriesFamily::m_ball(), SeriesFamily::m_ballcyl(1), SeriesFamily::m_ballcyl(4),
                                SeriesFamily::m_cube(), SeriesFamily::m_cubecyl()};
    for (FamilyKind k : {FamilyKind::w_ball, FamilyKind::w_ballcyl, FamilyKind::w_cube, FamilyKind::w_cubecyl})
        for (long p : {0L, 1L, 2L, 5L}) v.push_back(SeriesFamily::weyl(k, p == 0 ? WeylIndex::infinite() : WeylIndex::finite(p)));
    return v;
}

}  // namespace

TEST_CASE("family tags") {
    for (const auto& f : all_families()) CHECK(SeriesFamily::parse(f.tag()) == f);
    CHECK(SeriesFamily::parse("W_cube") == SeriesFamily::weyl(FamilyKind::w_cube, WeylIndex::infinite()));
    CHECK(SeriesFamily::parse("M_ballcyl(4)").tag() == "M_ballcyl(4)");
    CHECK(SeriesFamily::parse("W_ball(inf)").tag() == "W_ball(inf)");
    CHECK_THROWS(SeriesFamily::parse("M_ballcyl"));
    CHECK_THROWS(SeriesFamily::parse("M_sphere"));
    CHECK_THROWS(SeriesFamily::parse("W_ball(0)"));
}

TEST_CASE("Taylor coefficients match the closed formulas") {
    for (const auto& f : all_families())
        for (long k = 0; k <= 14; ++k) {
            CAPTURE(f.tag());
            CAPTURE(k);
            const double want = static_cast<double>(oracle_coeff(f, k));
            CHECK(to_double(series_coeff(f, k)) == doctest::Approx(want).epsilon(1e-12));
        }
    CHECK(series_coeff(SeriesFamily::m_ballcyl(4), 1) == PiScalar(mpq_class(8, 15)));
    CHECK(series_coeff(SeriesFamily::m_ballcyl(4), 2) == PiScalar(mpq_class(1, 6)));
}

TEST_CASE("Jensen and Laguerre multipliers") {
    CHECK(jensen_multiplier(5, 0) == 1);
    CHECK(jensen_multiplier(5, 2) == mpq_class(4, 5));
    CHECK(jensen_multiplier(3, 4) == 0);
    CHECK(laguerre_multiplier(3, 0) == 1);
    CHECK(laguerre_multiplier(3, 2) == mpq_class(1, 35));
    const auto inf = coefficient_stream(SeriesFamily::weyl(FamilyKind::w_ball, WeylIndex::infinite()), 12);
    const auto p3 = coefficient_stream(SeriesFamily::weyl(FamilyKind::w_ball, WeylIndex::finite(3)), 12);
    std::vector<PiScalar> mult;
    for (long k = 0; k < 12; ++k) mult.emplace_back(k % 2 ? mpq_class(0) : laguerre_multiplier(3, k / 2));
    const auto prod = apply_multipliers(inf, mult);
    for (long k = 0; k < 12; ++k)
        if (k % 2 == 0) CHECK(prod[static_cast<std::size_t>(k)] == p3[static_cast<std::size_t>(k)]);
    CHECK(apply_multipliers(inf, std::vector<PiScalar>(3, PiScalar(1))).size() == 3);
}

TEST_CASE("Jensen polynomials") {
    const PiPoly j3 = jensen_poly(SeriesFamily::m_cube(), 3);
    CHECK(j3 == PiPoly::from_coeff_strings({"1", "1", "1/12*pi", "1/162*pi"}));
    std::vector<PiScalar> e;
    for (long k = 0; k <= 4; ++k) e.emplace_back(mpq_class(1) / factorial(k));
    CHECK(jensen_poly(e, 4) == jensen_poly(SeriesFamily::m_ball(), 4));
    CHECK_THROWS(jensen_poly(e, 5));
}

TEST_CASE("Jensen polynomials of regular families are renormalized Steiner polynomials") {
    for (long n = 1; n <= 6; ++n) {
        for (const BodySpec& b : {BodySpec::ball(n), BodySpec::cube(n), BodySpec::adjoint(BodySpec::ball(n), 1),
                                  BodySpec::adjoint(BodySpec::ball(n), 3), BodySpec::adjoint(BodySpec::cube(n), 1)}) {
            CAPTURE(b.to_string());
            const auto [fam, order] = steiner_family(b);
            CHECK(jensen_poly(fam, order) == renormalized_steiner(steiner(b)));
        }
    }
    CHECK_THROWS_AS(steiner_family(BodySpec::parse("prod(ball:1,cube:1)")), NotRegularError);
}

TEST_CASE("Jensen polynomials of regular Weyl families are renormalized Weyl polynomials") {
    for (long n = 2; n <= 6; ++n)
        for (WeylIndex p : {WeylIndex::finite(1), WeylIndex::finite(2), WeylIndex::infinite()})
            for (const BodySpec& b : {BodySpec::ball(n), BodySpec::cube(n), BodySpec::adjoint(BodySpec::ball(n - 1), 1),
                                      BodySpec::adjoint(BodySpec::cube(n - 1), 1)}) {
                CAPTURE(b.to_string());
                CAPTURE(p.to_string());
                const auto [fam, order] = weyl_family(b, p);
                CHECK(jensen_poly(fam, order) == renormalized_weyl(steiner(b), p));
            }
}

TEST_CASE("closed forms") {
    const double pts[][2] = {{0.3, 0.0}, {-1.2, 0.7}, {2.5, -1.5}, {1e-3, 2e-3}, {0.0, 3.0}};
    for (const auto& z : pts) {
        const std::complex<double> c(z[0], z[1]);
        const auto e = closed_form_eval(SeriesFamily::m_ball(), z[0], z[1], 128);
        CHECK(e.re.mid_d() == doctest::Approx(std::exp(c).real()));
        CHECK(e.im.mid_d() == doctest::Approx(std::exp(c).imag()));
        const auto sinc = closed_form_eval(SeriesFamily::weyl(FamilyKind::w_ball, WeylIndex::finite(1)), z[0], z[1], 128);
        CHECK(sinc.re.mid_d() == doctest::Approx((std::sin(c) / c).real()));
        for (const auto& f : all_families()) {
            if (!has_closed_form(f)) continue;
            CAPTURE(f.tag());
            const auto cf = closed_form_eval(f, z[0], z[1], 128);
            const auto tr = truncated_eval(f, 80, z[0], z[1], 128);
            CHECK(std::abs(cf.re.mid_d() - tr.re.mid_d()) <= 1e-12 * (1 + std::abs(cf.re.mid_d())));
            CHECK(std::abs(cf.im.mid_d() - tr.im.mid_d()) <= 1e-12 * (1 + std::abs(cf.im.mid_d())));
        }
    }
    CHECK(closed_form_eval(SeriesFamily::m_ballcyl(4), 0, 0, 128).contains(1, 0));
    CHECK(has_closed_form(SeriesFamily::m_ballcyl(4)));
    CHECK_FALSE(has_closed_form(SeriesFamily::m_cube()));
    CHECK_THROWS_AS(closed_form_eval(SeriesFamily::m_cube(), 1, 0, 128), NoClosedFormError);
}

TEST_CASE("truncated evaluation encloses the series") {
    const auto e = truncated_eval(SeriesFamily::m_ball(), 40, 1.0, 0.0, 128);
    CHECK(e.re.mid_d() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(overlaps(e.re, closed_form_eval(SeriesFamily::m_ball(), 1, 0, 128).re));
    CHECK(e.re.width_d() < 1e-30);
    try {
        (void)truncated_eval(SeriesFamily::m_ball(), 3, 10, 0, 128);
        FAIL("expected a tail bound failure");
    } catch (const TailBoundError& err) {
        CHECK(err.minimal_terms() > 3);
        CHECK_NOTHROW(truncated_eval(SeriesFamily::m_ball(), err.minimal_terms(), 10, 0, 128));
    }
}

TEST_CASE("Bessel J1") {
    for (double x : {0.1, 1.0, 3.7, 10.0}) {
        const auto j = bessel_j1(ComplexInterval::from_doubles(x, 0, 128));
        CHECK(j.re.mid_d() == doctest::Approx(std::cyl_bessel_j(1.0, x)).epsilon(1e-12));
        CHECK(j.im.contains(0.0));
    }
}

TEST_CASE("integral representations") {
    const double pts[][2] = {{0.5, 0.0}, {-2.0, 1.0}, {1.0, -3.0}};
    for (const auto& z : pts) {
        const auto q4 = integral_rep_eval(SeriesFamily::m_ballcyl(4), z[0], z[1]);
        const auto cf = closed_form_eval(SeriesFamily::m_ballcyl(4), z[0], z[1], 128);
        CHECK(q4.re.mid_d() == doctest::Approx(cf.re.mid_d()).epsilon(1e-9));
        CHECK(q4.im.mid_d() == doctest::Approx(cf.im.mid_d()).epsilon(1e-9));
        for (long q : {1L, 2L, 3L}) {
            const auto a = integral_rep_eval(SeriesFamily::m_ballcyl(q), z[0], z[1]);
            const auto b = truncated_eval(SeriesFamily::m_ballcyl(q), 80, z[0], z[1], 128);
            CHECK(a.re.mid_d() == doctest::Approx(b.re.mid_d()).epsilon(1e-8));
            const auto w = integral_rep_eval(SeriesFamily::weyl(FamilyKind::w_ballcyl, WeylIndex::finite(q)), z[0], z[1]);
            const auto wt = truncated_eval(SeriesFamily::weyl(FamilyKind::w_ballcyl, WeylIndex::finite(q)), 80, z[0], z[1], 128);
            CHECK(w.re.mid_d() == doctest::Approx(wt.re.mid_d()).epsilon(1e-8));
            CHECK(w.im.mid_d() == doctest::Approx(wt.im.mid_d()).epsilon(1e-8));
        }
    }
    CHECK_THROWS(integral_rep_eval(SeriesFamily::m_cube(), 1, 0));
    CHECK_THROWS(integral_rep_eval(SeriesFamily::weyl(FamilyKind::w_ballcyl, WeylIndex::infinite()), 1, 0));
}
