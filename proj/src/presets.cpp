#include "liyau/presets.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace liyau {

GraphPreset parse_preset(const std::string& text) {
    GraphPreset p;
    auto open = text.find('(');
    if (open == std::string::npos) {
        p.name = text;
        return p;
    }
    if (text.back() != ')') throw std::invalid_argument("malformed preset: " + text);
    p.name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        p.params.push_back(std::stod(tok));
    }
    return p;
}

std::vector<int> PresetGraph::interior(int depth) const {
    std::vector<int> out;
    if (!is_lattice()) {
        for (int x = 0; x < graph.size(); ++x) out.push_back(x);
        return out;
    }
    for (int x = 0; x < graph.size(); ++x)
        if (l1[x] <= radius - depth) out.push_back(x);
    return out;
}

namespace {

int require_int(double v, const char* what) {
    int n = static_cast<int>(std::llround(v));
    if (std::abs(v - n) > 1e-9) throw std::invalid_argument(std::string(what) + " must be an integer");
    return n;
}

std::string coord_name(const std::vector<int>& c) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s;
}

PresetGraph two_point() {
    PresetGraph pg;
    pg.graph.add_vertex("x1");
    pg.graph.add_vertex("x2");
    pg.graph.add_edge("x1", "x2", 1.0);
    return pg;
}

PresetGraph triangle() {
    PresetGraph pg;
    pg.graph.add_vertex("x*");
    pg.graph.add_vertex("x1");
    pg.graph.add_vertex("x2");
    pg.graph.add_edge("x*", "x1", 1.0);
    pg.graph.add_edge("x*", "x2", 1.0);
    pg.graph.add_edge("x1", "x2", 1.0);
    return pg;
}

// Path on three vertices with mu equal to the degree: mu(x*) = 2, mu(x_i) = 1.
PresetGraph path3() {
    PresetGraph pg;
    pg.graph.add_vertex("x1");
    pg.graph.add_vertex("x*");
    pg.graph.add_vertex("x2");
    pg.graph.add_edge("x1", "x*", 1.0);
    pg.graph.add_edge("x*", "x2", 1.0);
    pg.graph.set_mu_degree();
    return pg;
}

PresetGraph complete(int n) {
    if (n < 2) throw std::invalid_argument("complete(n) needs n >= 2");
    PresetGraph pg;
    for (int i = 0; i < n; ++i) pg.graph.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pg.graph.add_edge(i, j, 1.0);
    // Cayley graph of Z_n with generators 1..n-1: eta_i(y) = y + i (mod n).
    RicciFlatStructure s;
    s.degree = n - 1;
    for (int x = 0; x < n; ++x) {
        auto& maps = s.eta[x];
        maps.assign(n - 1, {});
        std::vector<int> nx{x};
        for (const auto& nb : pg.graph.neighbors(x)) nx.push_back(nb.to);
        for (int i = 1; i < n; ++i)
            for (int y : nx) maps[i - 1][y] = (y + i) % n;
    }
    pg.structure = std::move(s);
    return pg;
}

PresetGraph star(int k) {
    if (k < 1) throw std::invalid_argument("star(k) needs k >= 1");
    PresetGraph pg;
    pg.graph.add_vertex("x*");
    for (int i = 1; i <= k; ++i) {
        pg.graph.add_vertex("x" + std::to_string(i));
        pg.graph.add_edge(0, i, 1.0);
    }
    return pg;
}

// The 10-vertex tree cut out of the hexagonal tiling: a 3-star whose leaves
// each carry two extra pendant vertices.
PresetGraph hexagon_patch() {
    PresetGraph pg;
    pg.graph.add_vertex("x*");
    for (int j = 1; j <= 3; ++j) {
        pg.graph.add_vertex("x" + std::to_string(j));
        pg.graph.add_edge("x*", "x" + std::to_string(j), 1.0);
    }
    for (int j = 1; j <= 3; ++j) {
        for (int k = 1; k <= 2; ++k) {
            std::string id = "x" + std::to_string(j) + std::to_string(k);
            pg.graph.add_vertex(id);
            pg.graph.add_edge("x" + std::to_string(j), id, 1.0);
        }
    }
    return pg;
}

PresetGraph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle(n) needs n >= 3");
    PresetGraph pg;
    for (int i = 0; i < n; ++i) pg.graph.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < n; ++i) pg.graph.add_edge(i, (i + 1) % n, 1.0);
    RicciFlatStructure s;
    s.degree = 2;
    for (int x = 0; x < n; ++x) {
        auto& maps = s.eta[x];
        maps.assign(2, {});
        std::vector<int> nx{x, (x + 1) % n, (x + n - 1) % n};
        for (int y : nx) {
            maps[0][y] = (y + 1) % n;      // clockwise
            maps[1][y] = (y + n - 1) % n;  // counterclockwise
        }
    }
    pg.structure = std::move(s);
    return pg;
}

// Triangular prism: triangles {A,B,E} and {C,D,F} joined by A-C, B-D, E-F.
// The eta maps come from a deterministic search rather than a transcription.
PresetGraph prism() {
    PresetGraph pg;
    for (const char* v : {"A", "B", "C", "D", "E", "F"}) pg.graph.add_vertex(v);
    auto e = [&](const char* a, const char* b) { pg.graph.add_edge(a, b, 1.0); };
    e("A", "B");
    e("B", "E");
    e("A", "E");
    e("C", "D");
    e("D", "F");
    e("C", "F");
    e("A", "C");
    e("B", "D");
    e("E", "F");
    RicciFlatStructure s;
    s.degree = 3;
    for (int x = 0; x < pg.graph.size(); ++x) {
        auto found = find_eta_maps(pg.graph, x);
        if (!found.found) throw std::runtime_error("prism eta search failed unexpectedly");
        s.eta[x] = found.structure.eta.at(x);
    }
    pg.structure = std::move(s);
    return pg;
}

}  // namespace

PresetGraph build_lattice_ball(int d, int r, double mu0) {
    if (d < 1 || r < 1) throw std::invalid_argument("lattice ball needs d >= 1, r >= 1");
    if (!(mu0 > 0.0)) throw std::invalid_argument("lattice ball needs mu0 > 0");
    PresetGraph pg;
    pg.radius = r;
    pg.dim = d;

    // enumerate |x|_1 <= r in lexicographic order
    std::vector<std::vector<int>> pts;
    std::vector<int> cur(d, 0);
    std::function<void(int, int)> gen = [&](int i, int budget) {
        if (i == d) {
            pts.push_back(cur);
            return;
        }
        for (int c = -budget; c <= budget; ++c) {
            cur[i] = c;
            gen(i + 1, budget - std::abs(c));
        }
    };
    gen(0, r);

    std::map<std::vector<int>, int> idx;
    for (const auto& p : pts) {
        int id = pg.graph.add_vertex(coord_name(p));
        idx[p] = id;
        int l1 = 0;
        for (int c : p) l1 += std::abs(c);
        pg.l1.push_back(l1);
        pg.graph.set_mu(id, mu0);
    }
    for (const auto& p : pts) {
        for (int i = 0; i < d; ++i) {
            auto q = p;
            q[i] += 1;
            auto it = idx.find(q);
            if (it != idx.end()) pg.graph.add_edge(idx.at(p), it->second, 1.0);
        }
    }

    // Canonical maps eta_j(y) = y + e_j, eta_{j+d}(y) = y - e_j, defined at
    // every vertex whose 2-ball lies inside the built ball.
    RicciFlatStructure s;
    s.degree = 2 * d;
    for (size_t pi = 0; pi < pts.size(); ++pi) {
        if (pg.l1[pi] > r - 2) continue;
        auto& maps = s.eta[static_cast<int>(pi)];
        maps.assign(2 * d, {});
        std::vector<std::vector<int>> nx{pts[pi]};
        for (int i = 0; i < d; ++i) {
            auto q = pts[pi];
            q[i] += 1;
            nx.push_back(q);
            q[i] -= 2;
            nx.push_back(q);
        }
        for (const auto& y : nx) {
            for (int j = 0; j < d; ++j) {
                auto q = y;
                q[j] += 1;
                maps[j][idx.at(y)] = idx.at(q);
                q[j] -= 2;
                maps[j + d][idx.at(y)] = idx.at(q);
            }
        }
    }
    pg.structure = std::move(s);
    return pg;
}

PresetGraph build_preset(const GraphPreset& p) {
    const auto& a = p.params;
    auto need = [&](size_t n) {
        if (a.size() != n)
            throw std::invalid_argument("preset " + p.name + " expects " + std::to_string(n) +
                                        " parameter(s)");
    };
    if (p.name == "two-point") { need(0); return two_point(); }
    if (p.name == "triangle") { need(0); return triangle(); }
    if (p.name == "path3") { need(0); return path3(); }
    if (p.name == "complete") { need(1); return complete(require_int(a[0], "n")); }
    if (p.name == "star") { need(1); return star(require_int(a[0], "k")); }
    if (p.name == "hexagon-patch") { need(0); return hexagon_patch(); }
    if (p.name == "cycle") { need(1); return cycle(require_int(a[0], "n")); }
    if (p.name == "prism") { need(0); return prism(); }
    if (p.name == "Z-ball") {
        if (a.size() == 2) return build_lattice_ball(require_int(a[0], "d"), require_int(a[1], "r"), 1.0);
        need(3);
        return build_lattice_ball(require_int(a[0], "d"), require_int(a[1], "r"), a[2]);
    }
    if (p.name == "tauZ-ball") {
        need(3);
        double tau = a[2];
        if (!(tau > 0.0)) throw std::invalid_argument("tauZ-ball needs tau > 0");
        return build_lattice_ball(require_int(a[0], "d"), require_int(a[1], "r"), tau * tau);
    }
    throw std::invalid_argument("unknown preset: " + p.name);
}

PresetGraph build_preset(const std::string& text) { return build_preset(parse_preset(text)); }

std::vector<std::string> preset_names() {
    return {"two-point",     "triangle", "path3", "complete(n)", "star(k)",
            "hexagon-patch", "cycle(n)", "prism", "Z-ball(d,r[,mu0])",
            "tauZ-ball(d,r,tau)"};
}

}  // namespace liyau
