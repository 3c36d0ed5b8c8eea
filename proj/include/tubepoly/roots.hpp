#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tubepoly/poly.hpp"

namespace tubepoly {

struct Root {
    double re = 0;
    double im = 0;
    std::string re_text;  // decimal rendering at the solver precision
    std::string im_text;
    /// Certified upper bound on |P(z)| at the reported point.
    double residual_bound = 0;
    /// The disc of this radius around z contains a root of P.
    double inclusion_radius = 0;
    bool cluster = false;
};

struct RootSet {
    std::vector<Root> roots;
    /// max_k |a_k| / |a_n|.
    double scale = 1;
    long bits = 0;
    int iterations = 0;
    bool converged = true;
};

class RootError : public std::runtime_error {
public:
    RootError(const std::string& what, RootSet partial) : std::runtime_error(what), partial_(std::move(partial)) {}
    const RootSet& partial() const { return partial_; }

private:
    RootSet partial_;
};

struct RootOptions {
    long bits = 128;
    /// 0 selects a cap proportional to the degree.
    int max_iterations = 0;
};

/// Aberth-Ehrlich simultaneous iteration started on Newton-polygon circles,
/// coefficients taken at 3x the target precision, then per-root Newton
/// polishing and interval certification of the residuals. Roots are returned
/// sorted by real part, then imaginary part.
RootSet find_roots(const PiPoly& p, const RootOptions& opts = {});

enum class NumericVerdict { dissipative, conservative, neither, inconclusive };
std::string to_string(NumericVerdict v);

/// dissipative: every Re z < -tol(1+|z|); conservative: every |Re z| <= tol(1+|z|)
/// with pairwise separation above the same band; neither: some Re z > tol(1+|z|).
NumericVerdict classify_numeric(const RootSet& r, double tol = 1e-9);

/// i tan(k pi/(n+1)) for 1 <= |k| <= n/2, ordered by imaginary part.
std::vector<Root> ball_weyl1_roots(long n, long bits = 128);

/// "re,im,residual" rows with a header line.
std::string roots_csv(const RootSet& r);

}  // namespace tubepoly
