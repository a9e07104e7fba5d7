#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liyau/graph.hpp"

namespace liyau {

// Local maps eta_1..eta_D : N(x) -> V witnessing flatness at a vertex x,
// where N(x) = {x} + neighbors(x). Conditions:
//   (i)   eta_i(y) ~ y,
//   (ii)  eta_i(y) != eta_j(y) for i != j,
//   (iii) the multisets {eta_i(eta_j(x))}_j and {eta_j(eta_i(x))}_j agree
//         for every i.
// Stored per base vertex; a structure need not cover the whole graph (lattice
// balls only carry maps where the targets exist).
struct RicciFlatStructure {
    int degree = 0;
    // eta[x][i] maps y in N(x) to a vertex; absent key = structure not
    // defined at x.
    std::map<int, std::vector<std::map<int, int>>> eta;

    bool defined_at(int x) const { return eta.count(x) != 0; }
};

struct RicciFlatReport {
    bool pass = false;
    std::string detail;              // first violation, empty when passing
    std::vector<int> star_of;        // the permutation i -> i*, when it exists
    double sum_property_residual = 0.0;
};

// Verifies conditions (i)-(iii) at x, then the derived properties: the sum
// identity sum_j u(eta_i(eta_j(x))) = sum_j u(eta_j(eta_i(x))) on random u,
// and existence/uniqueness/bijectivity of i* with eta_i(eta_{i*}(x)) = x.
// Requires the graph to be D-regular at x and its neighbors.
RicciFlatReport verify_ricci_flat(const WeightedGraph& g, const RicciFlatStructure& s, int x,
                                  int random_trials = 100, std::uint64_t seed = 12345);

struct EtaSearchResult {
    bool found = false;
    bool budget_exhausted = false;
    RicciFlatStructure structure;  // maps only at the searched vertex
    long long nodes_visited = 0;
};

// Deterministic backtracking search for eta maps at x. Each eta_i restricted
// to a fixed y is forced to be a bijection from {1..D} onto the neighbors of
// y, so the search runs over per-vertex bijections pruned by (iii).
// node_budget bounds the number of search-tree nodes.
EtaSearchResult find_eta_maps(const WeightedGraph& g, int x, long long node_budget = 2'000'000);

}  // namespace liyau
