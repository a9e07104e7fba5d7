#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "liyau/cd_function.hpp"
#include "liyau/graph.hpp"
#include "liyau/presets.hpp"

namespace liyau {

// alpha-deformed Laplacian: L_0(v) = -Delta v; for alpha in (0,1),
// L_alpha(v)(x) = -(1/alpha) Psi_{Upsilon'}(alpha v)(x).
double l_alpha(const WeightedGraph& g, double alpha, const VertexFunction& v, int x);
VertexFunction l_alpha_field(const WeightedGraph& g, double alpha, const VertexFunction& v);

// C_alpha(v)(x) = (1/mu(x)) sum_{y~x} w_xy e^{alpha(v(y)-v(x))}
//                 (Psi_{Upsilon'}(v)(y) - Psi_{Upsilon'}(v)(x));
// C_0 coincides exactly with Delta Psi_{Upsilon'}(v).
double c_alpha(const WeightedGraph& g, double alpha, const VertexFunction& v, int x);

// The condition CD_alpha(F;0) at x asks: whenever L_alpha(v) has a positive
// local maximum at x, C_alpha(v)(x) >= F(Lv(x)). A CDCheckProblem fixes the
// graph, base vertex, alpha and candidate F; candidate v live on the 2-ball
// of x with v(x) pinned to 0 (everything involved only depends on v there).
struct CDCheckProblem {
    const WeightedGraph* graph = nullptr;
    int x = -1;
    double alpha = 0.0;
    CDFunction F;
    std::vector<int> free_vertices;  // 2-ball of x minus x itself

    CDCheckProblem(const WeightedGraph& g, int base, double a, CDFunction f);
    // Lift values on free_vertices to a full vertex function (0 elsewhere).
    VertexFunction lift(const std::vector<double>& free_values) const;
};

struct Margin {
    double value = std::numeric_limits<double>::quiet_NaN();  // C_alpha - F(Lv)
    bool feasible = false;
    double lv = 0.0;                 // Lv(x)
    double l_alpha_at_x = 0.0;
    std::vector<double> l_alpha_neighbors;
};

// Feasibility: L_alpha(v)(x) > 1e-12 and L_alpha(v)(x) >= L_alpha(v)(y) for
// every neighbor (non-strict, tolerance 0). value is NaN when Lv(x) < 0
// (outside F's domain; only possible for infeasible v).
Margin margin(const CDCheckProblem& p, const VertexFunction& v);

struct SearchBudget {
    int samples = 10000;
    int descent_steps = 200;
};

struct SearchResult {
    Margin best;
    VertexFunction witness;      // full vertex function
    long long feasible_count = 0;
    bool violation_found = false;  // best feasible margin < -1e-8
};

// Seeded random falsifier: samples free values uniformly in [-S,S] with S
// swept over {1,2,5,10,20}, keeps feasible candidates, then refines the best
// by coordinate descent with projection back to feasibility by rescaling.
// Deterministic given the seed; absence of a violation is evidence, never a
// certificate.
SearchResult search_violation(const CDCheckProblem& p, SearchBudget budget, std::uint64_t seed);

// Parametric counterexample families. Both return the graph and the function:
// star(3) with v = (0, t, -t, -t) and its tree extension where each added
// leaf copies its parent's value, so that C_0(v)(x*) = 6 - e^t - 5 e^{-t}.
enum class FamilyKind { Star, HexagonPatch };
struct FamilyInstance {
    PresetGraph preset;
    VertexFunction v;
    int base;  // x*
};
FamilyInstance family(FamilyKind kind, double t);

// Lattice witness achieving equality in the Ricci-flat CD bound: on the
// 2-ball of the origin of Z^d set v(0) = a mu0/(2d), v = 0 at distance 1 and
// v = gamma at distance 2, with gamma chosen so Lv is constant over the
// origin's closed neighborhood. Then Delta Psi_{Upsilon'}(v)(0) = F(Lv(0))
// with F = ricci_flat(2d, mu0).
struct TightnessWitness {
    PresetGraph ball;      // Z-ball(d, 2) with measure mu0
    VertexFunction v;
    int origin;
    double lv0;            // = a
    double lhs;            // Delta Psi_{Upsilon'}(v)(0)
    double rhs;            // F(Lv(0))
    double residual;       // |lhs - rhs|
};
TightnessWitness tightness_witness(int d, double mu0, double a);

// Cutoff variant of the CD inequality on a Ricci-flat graph: when
// M = psi * L_alpha(v) has a positive local maximum at x*,
//   C_alpha(v)(x*) >= F_alpha(Lv(x*))
//                     - L_alpha(v)(x*)/mu0 * sum_y e^{v(y)-v(x*)} |psi(x*)-psi(y)|/psi(y).
struct CutoffCheck {
    bool applicable = false;  // the local-max precondition held
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // lhs - rhs
};
CutoffCheck cutoff_cd_check(const WeightedGraph& g, double alpha, const VertexFunction& psi,
                            const VertexFunction& v, int x_star);

// Neighbor-sum bound: if Delta(u^alpha)(x*) < 0 on a D-regular neighborhood,
// then sum_{y~x*} u(y) <= D^{1/alpha} u(x*). Returns slack rhs - lhs (>= 0
// when the hypothesis holds), or NaN if the hypothesis fails.
double d_power_bound_slack(const WeightedGraph& g, double alpha, const VertexFunction& u,
                           int x_star);

// One-dimensional lattice decomposition at a vertex with neighbors y_1, y_2:
//   Delta Psi_{Upsilon'}(v)(x) >= 2 e^{-Lv/2} Upsilon(Lv) + Theta(v)(x),
//   Theta(v)(x) = sum_j e^{v(y_j)-v(x)} (e^{-Lv(y_j)} - 1 + Lv(x)).
// Requires unit weights, mu == 1 and degree 2 at x and its neighbors.
double theta_z(const WeightedGraph& g, const VertexFunction& v, int x);
struct ThetaCheck {
    double decomposition_slack;  // DeltaPsi - 2e^{-Lv/2} Y(Lv) - Theta  (>= 0)
    double theta_lower_slack;    // Theta - 2e^{-Lv/2}(Lv-1), when Lv >= 1 (else NaN)
};
ThetaCheck theta_inequality_check(const WeightedGraph& g, const VertexFunction& v, int x);

}  // namespace liyau
