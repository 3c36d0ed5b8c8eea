#include "tubepoly/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace tubepoly {

namespace {

// Squared distance of the coordinate block starting at x.
double dist2(const BodySpec& b, const double* x) {
    switch (b.kind()) {
        case BodyKind::ball: {
            double r2 = 0;
            for (long i = 0; i < b.dim(); ++i) r2 += x[i] * x[i];
            const double d = std::max(std::sqrt(r2) - 1.0, 0.0);
            return d * d;
        }
        case BodyKind::cube: {
            double s = 0;
            for (long i = 0; i < b.dim(); ++i) {
                const double e = std::max(std::fabs(x[i]) - 1.0, 0.0);
                s += e * e;
            }
            return s;
        }
        case BodyKind::adjoint: {
            const long m = b.left().ambient_dim();
            double s = dist2(b.left(), x);
            for (long i = 0; i < b.q(); ++i) s += x[m + i] * x[m + i];
            return s;
        }
        case BodyKind::product: return dist2(b.left(), x) + dist2(b.right(), x + b.left().ambient_dim());
    }
    return 0;
}

}  // namespace

double body_distance(const BodySpec& body, const std::vector<double>& x) {
    if (static_cast<long>(x.size()) != body.ambient_dim())
        throw std::invalid_argument("body_distance: point has dimension " + std::to_string(x.size()) + ", body needs " +
                                    std::to_string(body.ambient_dim()));
    return std::sqrt(dist2(body, x.data()));
}

McEstimate mc_tube_volume(const BodySpec& body, double t, long samples, std::uint64_t seed, const McOptions& opts) {
    const long dim = body.ambient_dim();
    if (dim > opts.max_dim)
        throw std::invalid_argument("mc_tube_volume: ambient dimension " + std::to_string(dim) + " exceeds the cap " +
                                    std::to_string(opts.max_dim));
    if (!(t > 0)) throw std::invalid_argument("mc_tube_volume: t must be positive");
    if (samples < 1000) throw std::invalid_argument("mc_tube_volume: need at least 1000 samples");
    if (opts.chunk < 1) throw std::invalid_argument("mc_tube_volume: chunk must be positive");

    const auto start = std::chrono::steady_clock::now();
    const double half = 1 + t;
    const double t2 = t * t;
    const long nchunks = (samples + opts.chunk - 1) / opts.chunk;
    std::vector<long> hits(static_cast<std::size_t>(nchunks), 0);
    std::atomic<long> next{0};

    auto worker = [&]() {
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (long c = next++; c < nchunks; c = next++) {
            std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                             static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) >> 32)};
            std::mt19937_64 rng(ss);
            std::uniform_real_distribution<double> u(-half, half);
            const long count = std::min(opts.chunk, samples - c * opts.chunk);
            long h = 0;
            for (long s = 0; s < count; ++s) {
                for (auto& v : x) v = u(rng);
                if (dist2(body, x.data()) <= t2) ++h;
            }
            hits[static_cast<std::size_t>(c)] = h;
        }
    };
    unsigned nt = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<long>(nt, nchunks));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    McEstimate e;
    e.samples = samples;
    e.seed = seed;
    for (long h : hits) e.hits += h;
    e.box_volume = std::pow(2 * half, static_cast<double>(dim));
    const double p = static_cast<double>(e.hits) / static_cast<double>(samples);
    e.mean = e.box_volume * p;
    e.std_error = e.box_volume * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    e.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return e;
}

}  // namespace tubepoly
