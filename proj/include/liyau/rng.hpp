#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "liyau/graph.hpp"

namespace liyau {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream per (seed, index): results do not depend on how work is
// split across workers.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

// exp(N(0, sigma^2)) per vertex. The normal draw is clamped to
// min(2.5 sigma, 8) so that extreme contrasts (up to e^16) stay well above
// the roundoff floor of the dense eigensolver.
inline VertexFunction random_positive(const WeightedGraph& g, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, sigma);
    const double cap = std::min(2.5 * sigma, 8.0);
    VertexFunction u(g.size());
    for (auto& v : u) v = std::exp(std::clamp(nd(rng), -cap, cap));
    return u;
}

// 1 at one vertex, eps elsewhere; strictly positive so that log u stays finite.
inline VertexFunction dirac_like(const WeightedGraph& g, int x, double eps = 1e-12) {
    VertexFunction u(g.size(), eps);
    g.check_vertex(x);
    u[x] = 1.0;
    return u;
}

}  // namespace liyau
