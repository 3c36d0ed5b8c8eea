#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tubepoly/poly.hpp"
#include "tubepoly/scalars.hpp"

namespace testsupport {

using tubepoly::PiPoly;
using tubepoly::PiScalar;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline mpq_class ratio(long a, long b) {
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}

inline mpq_class small_rational() {
    long d = uniform(1, 9);
    return ratio(uniform(-9, 9), d);
}

/// Random element c_0 + c_1 sqrt(pi) + c_2 pi, optionally divided by a similar nonzero element.
inline PiScalar random_scalar(bool allow_ratio = true) {
    auto lin = [] {
        PiScalar s(small_rational());
        s += PiScalar::monomial(small_rational(), 1);
        s += PiScalar::monomial(small_rational(), 2);
        return s;
    };
    PiScalar a = lin();
    if (allow_ratio && uniform(0, 2) == 0) {
        PiScalar b = lin();
        if (!b.is_zero()) a /= b;
    }
    return a;
}

inline PiPoly random_poly(long max_deg) {
    std::vector<PiScalar> c;
    const long d = uniform(0, max_deg);
    for (long k = 0; k <= d; ++k) c.push_back(random_scalar(false));
    return PiPoly(c);
}

/// Gamma(k/2 + 1) in long double from the recursion, independent of the library.
inline long double gamma_half_ld(long k) {
    long double g = (k % 2 == 0) ? 1.0L : std::sqrt(static_cast<long double>(M_PI)) / 2;
    for (long j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) g *= static_cast<long double>(j) / 2;
    return g;
}

inline bool close(double a, double b, double rel = 1e-12) { return std::fabs(a - b) <= rel * (1 + std::fabs(b)); }

}  // namespace testsupport
