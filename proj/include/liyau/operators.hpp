#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liyau/graph.hpp"
#include "liyau/upsilon.hpp"

namespace liyau {

// Generalized Laplacian: Delta u(x) = (1/mu(x)) sum_{y~x} w_xy (u(y) - u(x)).
double laplacian(const WeightedGraph& g, const VertexFunction& u, int x);

// Carre du champ Gamma(u,w)(x) = (Delta(uw) - u Delta w - w Delta u)(x) / 2.
double gamma(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& w, int x);
inline double gamma(const WeightedGraph& g, const VertexFunction& u, int x) {
    return gamma(g, u, u, x);
}

// Iterated form Gamma2(u)(x) = (Delta Gamma(u) - 2 Gamma(u, Delta u))(x) / 2.
double gamma2(const WeightedGraph& g, const VertexFunction& u, int x);

// Psi_H(u)(x) = (1/mu(x)) sum_{y~x} w_xy H(u(y) - u(x)).
// Differences must lie in H's domain; violations name the offending edge.
double psi(const WeightedGraph& g, const ScalarField& H, const VertexFunction& u, int x);

// Bregman-type remainder Lambda_H(w,z) = H(w) - H(z) - H'(z)(w - z).
double bregman(const ScalarField& H, double w, double z);

// Whole-graph fields.
VertexFunction laplacian_field(const WeightedGraph& g, const VertexFunction& u);
VertexFunction psi_field(const WeightedGraph& g, const ScalarField& H, const VertexFunction& u);
// Fast paths for the two field evaluations that dominate every experiment.
VertexFunction psi_upsilon_field(const WeightedGraph& g, const VertexFunction& v);
VertexFunction psi_upsilon_prime_field(const WeightedGraph& g, const VertexFunction& v);
double psi_upsilon(const WeightedGraph& g, const VertexFunction& v, int x);
double psi_upsilon_prime(const WeightedGraph& g, const VertexFunction& v, int x);

// BFS distance in edge count; nullopt if y is unreachable from x.
std::optional<int> graph_distance(const WeightedGraph& g, int x, int y);

// One line of the identity report: the worst absolute residual over all
// vertices, scaled by max(1, magnitude of the participating terms).
struct IdentityResidual {
    std::string name;
    double residual = 0.0;  // scaled
    double scale = 1.0;
};

struct IdentityReport {
    std::vector<IdentityResidual> items;
    double max_residual() const;
};

// Checks, for a positive u, the discrete chain-rule identities:
//   - the fundamental identity for H in {y^2/2, sqrt(y), -log y},
//   - Delta(u^2) = 2u Delta u + 2 Gamma(u),
//   - 2 sqrt(u) Delta sqrt(u) = Delta u - 2 Gamma(sqrt u),
//   - Delta u / u = Delta log u + Psi_Upsilon(log u),
//   - Delta(u^a)/(a u^a) = Delta log u + Psi_{Upsilon_a}(log u)/a for
//     a in {1/4, 1/2, 3/4},
//   - Psi_Upsilon(log u) - 2 Psi_{Upsilon_{1/2}}(log u) = 2 Gamma(sqrt u)/u.
IdentityReport verify_identities(const WeightedGraph& g, const VertexFunction& u);

inline double scaled_residual(double lhs, double rhs, double extra_scale = 0.0) {
    double s = std::max({1.0, std::abs(lhs), std::abs(rhs), extra_scale});
    return std::abs(lhs - rhs) / s;
}

}  // namespace liyau
