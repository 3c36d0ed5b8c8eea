#pragma once

#include <cstdint>
#include <vector>

#include "tubepoly/bodies.hpp"

namespace tubepoly {

/// Euclidean distance from x to the body; coordinates follow the tree order
/// (left factor first, adjoint extra coordinates last).
double body_distance(const BodySpec& body, const std::vector<double>& x);

struct McEstimate {
    double mean = 0;
    double std_error = 0;
    long samples = 0;
    long hits = 0;
    std::uint64_t seed = 0;
    double box_volume = 0;
    double elapsed_seconds = 0;
};

struct McOptions {
    long max_dim = 8;
    /// 0 uses the hardware concurrency.
    unsigned threads = 0;
    long chunk = 1L << 15;
};

/// Hit-or-miss estimate of Vol(V + tB) over the box [-1-t, 1+t]^N. The result
/// depends only on (body, t, samples, seed, chunk), not on the thread count.
McEstimate mc_tube_volume(const BodySpec& body, double t, long samples, std::uint64_t seed, const McOptions& opts = {});

}  // namespace tubepoly
