#include "liyau/ricci_flat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace liyau {

namespace {

std::vector<int> closed_neighborhood(const WeightedGraph& g, int x) {
    std::vector<int> n{x};
    for (const auto& nb : g.neighbors(x)) n.push_back(nb.to);
    return n;
}

void require_regular_at(const WeightedGraph& g, int x, int D,
                        const std::vector<int>& where) {
    for (int y : where) {
        if (g.degree(y) != D)
            throw std::invalid_argument("vertex " + g.name_of(y) + " has degree " +
                                        std::to_string(g.degree(y)) + ", expected " +
                                        std::to_string(D) + " (not regular near " +
                                        g.name_of(x) + ")");
    }
}

}  // namespace

RicciFlatReport verify_ricci_flat(const WeightedGraph& g, const RicciFlatStructure& s, int x,
                                  int random_trials, std::uint64_t seed) {
    RicciFlatReport rep;
    g.check_vertex(x);
    const int D = s.degree;
    if (D <= 0) {
        rep.detail = "structure has no maps";
        return rep;
    }
    auto nx = closed_neighborhood(g, x);
    require_regular_at(g, x, D, nx);

    auto it = s.eta.find(x);
    if (it == s.eta.end()) {
        rep.detail = "structure not defined at " + g.name_of(x);
        return rep;
    }
    const auto& maps = it->second;
    if (static_cast<int>(maps.size()) != D) {
        rep.detail = "expected " + std::to_string(D) + " maps at " + g.name_of(x);
        return rep;
    }

    // totality on N(x), (i) adjacency, (ii) injectivity across i at fixed y
    for (int y : nx) {
        for (int i = 0; i < D; ++i) {
            auto e = maps[i].find(y);
            if (e == maps[i].end()) {
                rep.detail = "eta_" + std::to_string(i + 1) + " undefined at " + g.name_of(y);
                return rep;
            }
            if (!g.has_edge(y, e->second)) {
                rep.detail = "(i) fails: eta_" + std::to_string(i + 1) + "(" + g.name_of(y) +
                             ") = " + g.name_of(e->second) + " is not adjacent";
                return rep;
            }
            for (int jj = 0; jj < i; ++jj) {
                if (maps[jj].at(y) == e->second) {
                    rep.detail = "(ii) fails: eta_" + std::to_string(jj + 1) + " and eta_" +
                                 std::to_string(i + 1) + " collide at " + g.name_of(y);
                    return rep;
                }
            }
        }
    }

    // (iii) multiset equality of eta_i(eta_j(x)) and eta_j(eta_i(x)) over j.
    // Every eta_j(x) is a neighbor of x, so the maps at x cover both steps.
    for (int i = 0; i < D; ++i) {
        std::vector<int> a, b;
        for (int j = 0; j < D; ++j) {
            a.push_back(maps[i].at(maps[j].at(x)));
            b.push_back(maps[j].at(maps[i].at(x)));
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
            rep.detail = "(iii) fails: second-step multisets differ for i=" +
                         std::to_string(i + 1);
            return rep;
        }
    }

    // Sum property on random u (follows from (iii) but is checked on its own).
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < random_trials; ++trial) {
        VertexFunction u(g.size());
        for (auto& v : u) v = unif(rng);
        for (int i = 0; i < D; ++i) {
            double sa = 0.0, sb = 0.0;
            for (int j = 0; j < D; ++j) {
                sa += u[maps[i].at(maps[j].at(x))];
                sb += u[maps[j].at(maps[i].at(x))];
            }
            rep.sum_property_residual = std::max(rep.sum_property_residual, std::abs(sa - sb));
        }
    }
    if (rep.sum_property_residual > 1e-12) {
        rep.detail = "sum property fails with residual " +
                     std::to_string(rep.sum_property_residual);
        return rep;
    }

    // i -> i*: unique index with eta_i(eta_{i*}(x)) = x, and a permutation.
    rep.star_of.assign(D, -1);
    for (int i = 0; i < D; ++i) {
        for (int k = 0; k < D; ++k) {
            if (maps[i].at(maps[k].at(x)) == x) {
                if (rep.star_of[i] >= 0) {
                    rep.detail = "i* not unique for i=" + std::to_string(i + 1);
                    return rep;
                }
                rep.star_of[i] = k;
            }
        }
        if (rep.star_of[i] < 0) {
            rep.detail = "no i* with eta_i(eta_{i*}(x)) = x for i=" + std::to_string(i + 1);
            return rep;
        }
    }
    std::vector<int> sorted = rep.star_of;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < D; ++i) {
        if (sorted[i] != i) {
            rep.detail = "i -> i* is not a permutation";
            return rep;
        }
    }

    rep.pass = true;
    return rep;
}

namespace {

struct EtaSearch {
    const WeightedGraph& g;
    int x;
    int D;
    std::vector<int> nx;                      // N(x), nx[0] = x
    std::vector<std::vector<int>> choices;    // neighbors of each y in nx
    std::vector<std::vector<int>> perm;       // current bijection per y (index into choices)
    long long budget;
    long long nodes = 0;
    bool found = false;
    RicciFlatStructure out;

    EtaSearch(const WeightedGraph& gg, int xx, long long b) : g(gg), x(xx), budget(b) {
        D = g.degree(x);
        nx = closed_neighborhood(g, x);
        for (int y : nx) {
            std::vector<int> c;
            for (const auto& nb : g.neighbors(y)) c.push_back(nb.to);
            std::sort(c.begin(), c.end());  // deterministic given vertex ordering
            choices.push_back(c);
        }
    }

    int eta(int i, int pos) const { return choices[pos][perm[pos][i]]; }

    int pos_of(int y) const {
        for (size_t p = 0; p < nx.size(); ++p)
            if (nx[p] == y) return static_cast<int>(p);
        return -1;
    }

    // Sound partial pruning of (iii): with only some positions assigned, the
    // assigned entries of either multiset may exceed the other only by as many
    // elements as unassigned positions can still contribute.
    bool consistent(size_t filled) {
        for (int i = 0; i < D; ++i) {
            int pi = pos_of(eta(i, 0));
            if (pi < 0 || static_cast<size_t>(pi) >= filled) continue;
            std::vector<int> a, b;
            int remaining = 0;
            for (int j = 0; j < D; ++j) {
                int pj = pos_of(eta(j, 0));
                if (pj >= 0 && static_cast<size_t>(pj) < filled) {
                    a.push_back(eta(i, pj));
                    b.push_back(eta(j, pi));
                } else {
                    ++remaining;  // this j still adds one element to each side
                }
            }
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (filled == nx.size()) {
                if (a != b) return false;
                continue;
            }
            // surplus of a over b (and vice versa) must fit in the remaining slots
            int surplus_a = 0, surplus_b = 0;
            size_t ia = 0, ib = 0;
            while (ia < a.size() && ib < b.size()) {
                if (a[ia] == b[ib]) { ++ia; ++ib; }
                else if (a[ia] < b[ib]) { ++surplus_a; ++ia; }
                else { ++surplus_b; ++ib; }
            }
            surplus_a += static_cast<int>(a.size() - ia);
            surplus_b += static_cast<int>(b.size() - ib);
            if (surplus_a > remaining || surplus_b > remaining) return false;
        }
        return true;
    }

    bool run() {
        perm.assign(nx.size(), {});
        return place(0);
    }

    bool place(size_t pos) {
        if (++nodes > budget) return false;
        if (pos == nx.size()) {
            if (!consistent(nx.size())) return false;
            found = true;
            out.degree = D;
            auto& maps = out.eta[x];
            maps.assign(D, {});
            for (int i = 0; i < D; ++i)
                for (size_t p = 0; p < nx.size(); ++p) maps[i][nx[p]] = eta(i, static_cast<int>(p));
            return true;
        }
        std::vector<int> p(D);
        std::iota(p.begin(), p.end(), 0);
        do {
            perm[pos] = p;
            if (pos + 1 == nx.size() || consistent(pos + 1)) {
                if (place(pos + 1)) return true;
                if (nodes > budget) return false;
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return false;
    }
};

}  // namespace

EtaSearchResult find_eta_maps(const WeightedGraph& g, int x, long long node_budget) {
    g.check_vertex(x);
    const int D = g.degree(x);
    // regularity on N(x) plus the second neighborhood
    std::vector<int> reach{x};
    for (const auto& nb : g.neighbors(x)) {
        reach.push_back(nb.to);
        for (const auto& nb2 : g.neighbors(nb.to)) reach.push_back(nb2.to);
    }
    std::sort(reach.begin(), reach.end());
    reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
    require_regular_at(g, x, D, reach);

    EtaSearch search(g, x, node_budget);
    EtaSearchResult res;
    res.found = search.run();
    res.nodes_visited = search.nodes;
    res.budget_exhausted = search.nodes > node_budget;
    if (res.found) res.structure = std::move(search.out);
    return res;
}

}  // namespace liyau
