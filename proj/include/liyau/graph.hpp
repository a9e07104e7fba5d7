#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace liyau {

// A function on the vertex set, stored dense over vertex indices.
using VertexFunction = std::vector<double>;

// Finite undirected graph with symmetric positive edge weights w_xy and a
// positive vertex measure mu. Vertex ids are opaque strings mapped to dense
// indices at construction; the numeric kernels run on indices only. Each
// undirected edge stores the same weight value in both adjacency lists.
class WeightedGraph {
public:
    struct Neighbor {
        int to;
        double w;
    };

    int add_vertex(const std::string& id);
    void add_edge(const std::string& u, const std::string& v, double w);
    void add_edge(int u, int v, double w);

    void set_mu(int x, double m);
    void set_mu(const std::string& id, double m);
    void set_mu_unit();
    void set_mu_degree();  // mu(x) = sum_{y ~ x} w_xy

    int size() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edge_count_; }
    const std::vector<Neighbor>& neighbors(int x) const;
    double mu(int x) const;
    int degree(int x) const;

    bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }
    int index_of(const std::string& id) const;  // throws std::domain_error if unknown
    const std::string& name_of(int x) const;
    const std::vector<std::string>& names() const { return names_; }

    bool has_edge(int u, int v) const;
    double weight(int u, int v) const;  // throws if not adjacent

    bool is_connected() const;
    // Degree if the graph is regular, nullopt otherwise.
    std::optional<int> regular_degree() const;

    double mu_max() const;
    double w_min() const;

    void check_vertex(int x) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<double> mu_;
    int edge_count_ = 0;
};

// Throws std::invalid_argument unless u is total on g's vertex set.
void require_total(const WeightedGraph& g, const VertexFunction& u, const char* what);

// Throws std::domain_error unless u > 0 everywhere.
void require_positive(const WeightedGraph& g, const VertexFunction& u, const char* what);

}  // namespace liyau
