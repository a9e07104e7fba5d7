#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liyau/graph.hpp"
#include "liyau/ricci_flat.hpp"

namespace liyau {

// Named graph builders. Grammar: name or name(p1,p2,...), e.g.
//   two-point | triangle | path3 | complete(4) | star(3) | hexagon-patch |
//   cycle(6) | prism | Z-ball(1,8) | tauZ-ball(1,5,0.5)
struct GraphPreset {
    std::string name;
    std::vector<double> params;
};

GraphPreset parse_preset(const std::string& text);

struct PresetGraph {
    WeightedGraph graph;
    // Ricci-flat witness where one is canonical (lattice balls, cycles,
    // complete graphs); for the prism it is found by search.
    std::optional<RicciFlatStructure> structure;
    // Lattice balls only: l1 norm of each vertex and the ball radius, so
    // callers can restrict statements to vertices whose k-ball is interior.
    std::vector<int> l1;
    int radius = -1;
    int dim = 0;
    // Vertices whose full `depth`-ball lies inside the built ball.
    std::vector<int> interior(int depth) const;
    bool is_lattice() const { return radius >= 0; }
};

PresetGraph build_preset(const GraphPreset& p);
PresetGraph build_preset(const std::string& text);

// Lattice ball helpers used directly by solvers and experiments.
// Vertices are named "c1,...,cd"; mu is constant mu0.
PresetGraph build_lattice_ball(int d, int r, double mu0);

std::vector<std::string> preset_names();

}  // namespace liyau
