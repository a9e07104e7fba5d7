#include "liyau/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "liyau/presets.hpp"

namespace liyau {

using nlohmann::json;

namespace {

std::string id_of(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw std::invalid_argument("vertex id must be a string");
}

}  // namespace

WeightedGraph graph_from_json(const std::string& text) {
    json j = json::parse(text);
    WeightedGraph g;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::invalid_argument("graph json: missing \"vertices\" array");
    for (const auto& v : j["vertices"]) g.add_vertex(id_of(v));

    std::set<std::pair<int, int>> seen;
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            int u = g.index_of(id_of(e.at("u")));
            int v = g.index_of(id_of(e.at("v")));
            double w = e.contains("w") ? e["w"].get<double>() : 1.0;
            auto key = std::minmax(u, v);
            if (seen.count(key)) {
                bool conflicting = g.has_edge(u, v) && g.weight(u, v) != w;
                throw std::invalid_argument(
                    std::string(conflicting ? "asymmetric duplicate edge " : "duplicate edge ") +
                    g.name_of(u) + "-" + g.name_of(v));
            }
            seen.insert(key);
            g.add_edge(u, v, w);
        }
    }

    if (!j.contains("mu") || (j["mu"].is_string() && j["mu"] == "unit")) {
        g.set_mu_unit();
    } else if (j["mu"].is_string() && j["mu"] == "degree") {
        g.set_mu_degree();
    } else if (j["mu"].is_object()) {
        for (auto it = j["mu"].begin(); it != j["mu"].end(); ++it)
            g.set_mu(it.key(), it.value().get<double>());
    } else {
        throw std::invalid_argument("graph json: \"mu\" must be a map, \"unit\" or \"degree\"");
    }
    return g;
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json(ss.str());
}

std::string graph_to_json(const WeightedGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = json::array();
    for (const auto& name : g.names()) j["vertices"].push_back(name);
    j["edges"] = json::array();
    for (int x = 0; x < g.size(); ++x) {
        for (const auto& nb : g.neighbors(x)) {
            if (nb.to > x)
                j["edges"].push_back({{"u", g.name_of(x)}, {"v", g.name_of(nb.to)}, {"w", nb.w}});
        }
    }
    nlohmann::ordered_json mu;
    for (int x = 0; x < g.size(); ++x) mu[g.name_of(x)] = g.mu(x);
    j["mu"] = mu;
    return j.dump(2);
}

WeightedGraph resolve_graph_spec(const std::string& spec) {
    if (spec.rfind("preset:", 0) == 0) return build_preset(parse_preset(spec.substr(7))).graph;
    return load_graph_file(spec);
}

}  // namespace liyau
