#include "liyau/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace liyau {

int WeightedGraph::add_vertex(const std::string& id) {
    if (index_.count(id)) throw std::invalid_argument("duplicate vertex id: " + id);
    int idx = static_cast<int>(names_.size());
    names_.push_back(id);
    index_.emplace(id, idx);
    adj_.emplace_back();
    mu_.push_back(1.0);
    return idx;
}

void WeightedGraph::add_edge(const std::string& u, const std::string& v, double w) {
    add_edge(index_of(u), index_of(v), w);
}

void WeightedGraph::add_edge(int u, int v, double w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + names_[u]);
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("edge weight must be positive and finite: " + names_[u] +
                                    "-" + names_[v]);
    if (has_edge(u, v))
        throw std::invalid_argument("duplicate edge " + names_[u] + "-" + names_[v]);
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
    ++edge_count_;
}

void WeightedGraph::set_mu(int x, double m) {
    check_vertex(x);
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("mu must be positive and finite at " + names_[x]);
    mu_[x] = m;
}

void WeightedGraph::set_mu(const std::string& id, double m) { set_mu(index_of(id), m); }

void WeightedGraph::set_mu_unit() { std::fill(mu_.begin(), mu_.end(), 1.0); }

void WeightedGraph::set_mu_degree() {
    for (int x = 0; x < size(); ++x) {
        double s = 0.0;
        for (const auto& nb : adj_[x]) s += nb.w;
        if (!(s > 0.0))
            throw std::invalid_argument("mu=degree requires every vertex to have an edge");
        mu_[x] = s;
    }
}

const std::vector<WeightedGraph::Neighbor>& WeightedGraph::neighbors(int x) const {
    check_vertex(x);
    return adj_[x];
}

double WeightedGraph::mu(int x) const {
    check_vertex(x);
    return mu_[x];
}

int WeightedGraph::degree(int x) const {
    check_vertex(x);
    return static_cast<int>(adj_[x].size());
}

int WeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::domain_error("unknown vertex: " + id);
    return it->second;
}

const std::string& WeightedGraph::name_of(int x) const {
    check_vertex(x);
    return names_[x];
}

bool WeightedGraph::has_edge(int u, int v) const {
    for (const auto& nb : adj_[u])
        if (nb.to == v) return true;
    return false;
}

double WeightedGraph::weight(int u, int v) const {
    for (const auto& nb : adj_[u])
        if (nb.to == v) return nb.w;
    throw std::domain_error("no edge " + names_[u] + "-" + names_[v]);
}

bool WeightedGraph::is_connected() const {
    if (size() == 0) return true;
    std::vector<char> seen(size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (const auto& nb : adj_[x]) {
            if (!seen[nb.to]) {
                seen[nb.to] = 1;
                ++count;
                q.push_back(nb.to);
            }
        }
    }
    return count == size();
}

std::optional<int> WeightedGraph::regular_degree() const {
    if (size() == 0) return std::nullopt;
    int d = degree(0);
    for (int x = 1; x < size(); ++x)
        if (degree(x) != d) return std::nullopt;
    return d;
}

double WeightedGraph::mu_max() const {
    double m = 0.0;
    for (double v : mu_) m = std::max(m, v);
    return m;
}

double WeightedGraph::w_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (int x = 0; x < size(); ++x)
        for (const auto& nb : adj_[x]) m = std::min(m, nb.w);
    return m;
}

void WeightedGraph::check_vertex(int x) const {
    if (x < 0 || x >= size())
        throw std::domain_error("vertex index out of range: " + std::to_string(x));
}

void require_total(const WeightedGraph& g, const VertexFunction& u, const char* what) {
    if (static_cast<int>(u.size()) != g.size())
        throw std::invalid_argument(std::string(what) +
                                    ": function must be total on the vertex set");
}

void require_positive(const WeightedGraph& g, const VertexFunction& u, const char* what) {
    require_total(g, u, what);
    for (int x = 0; x < g.size(); ++x)
        if (!(u[x] > 0.0))
            throw std::domain_error(std::string(what) + ": function must be positive, fails at " +
                                    g.name_of(x));
}

}  // namespace liyau
