// pybind11 surface over the core: graphs, operators, CD-functions, relaxation
// functions, heat flow and the estimate checks.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "liyau/cd_function.hpp"
#include "liyau/cd_verifier.hpp"
#include "liyau/estimates.hpp"
#include "liyau/graph_io.hpp"
#include "liyau/heat.hpp"
#include "liyau/operators.hpp"
#include "liyau/presets.hpp"
#include "liyau/relaxation.hpp"
#include "liyau/ricci_flat.hpp"
#include "liyau/rng.hpp"
#include "liyau/upsilon.hpp"

namespace py = pybind11;
using namespace liyau;

namespace {

std::shared_ptr<const WeightedGraph> graph_from_spec(const std::string& spec) {
    return std::make_shared<const WeightedGraph>(resolve_graph_spec(spec));
}

py::dict identity_report_to_dict(const IdentityReport& rep) {
    py::dict d;
    for (const auto& item : rep.items) d[py::str(item.name)] = item.residual;
    d["max"] = rep.max_residual();
    return d;
}

py::dict estimate_to_dict(const EstimateReport& rep) {
    py::dict d;
    d["experiment"] = rep.experiment;
    d["statement"] = rep.statement;
    d["min_slack"] = rep.min_slack;
    d["fd_budget"] = rep.fd_budget;
    d["tolerance"] = rep.tolerance;
    d["pass"] = rep.pass();
    d["argmin_t"] = rep.argmin_t;
    d["argmin_vertex"] = rep.argmin_vertex;
    d["samples"] = rep.samples;
    return d;
}

}  // namespace

PYBIND11_MODULE(_liyau, m) {
    m.doc() = "Heat-equation laboratory on weighted graphs: discrete operators, "
              "curvature conditions, relaxation functions and Harnack-type estimates.";

    py::class_<WeightedGraph, std::shared_ptr<WeightedGraph>>(m, "WeightedGraph")
        .def(py::init<>())
        .def("add_vertex", &WeightedGraph::add_vertex)
        .def("add_edge",
             py::overload_cast<const std::string&, const std::string&, double>(
                 &WeightedGraph::add_edge))
        .def("set_mu", py::overload_cast<const std::string&, double>(&WeightedGraph::set_mu))
        .def("set_mu_degree", &WeightedGraph::set_mu_degree)
        .def("size", &WeightedGraph::size)
        .def("edge_count", &WeightedGraph::edge_count)
        .def("names", &WeightedGraph::names)
        .def("index_of", &WeightedGraph::index_of)
        .def("mu", py::overload_cast<int>(&WeightedGraph::mu, py::const_))
        .def("degree", &WeightedGraph::degree)
        .def("is_connected", &WeightedGraph::is_connected)
        .def("to_json", [](const WeightedGraph& g) { return graph_to_json(g); });

    m.def("graph", &graph_from_spec,
          "Build a graph from 'preset:name(args)' or load a JSON file.");
    m.def("graph_from_json", [](const std::string& text) {
        return std::make_shared<const WeightedGraph>(graph_from_json(text));
    });
    m.def("preset_names", &preset_names);

    m.def("laplacian", [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& u,
                          const std::string& x) { return laplacian(*g, u, g->index_of(x)); });
    m.def("gamma", [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& u,
                      const std::string& x) { return gamma(*g, u, g->index_of(x)); });
    m.def("gamma2", [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& u,
                       const std::string& x) { return gamma2(*g, u, g->index_of(x)); });
    m.def("psi_upsilon", [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& v,
                            const std::string& x) { return psi_upsilon(*g, v, g->index_of(x)); });
    m.def("upsilon", [](double z) { return upsilon(z); });
    m.def("g_alpha", [](double a, double z) { return g_alpha(a, z); });
    m.def("identities", [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& u) {
        return identity_report_to_dict(verify_identities(*g, u));
    });
    m.def("graph_distance",
          [](std::shared_ptr<const WeightedGraph> g, const std::string& x, const std::string& y) {
              auto d = graph_distance(*g, g->index_of(x), g->index_of(y));
              return d ? py::cast(*d) : py::cast<py::object>(py::none());
          });

    py::class_<CDFunction>(m, "CDFunction")
        .def_readonly("name", &CDFunction::name)
        .def("__call__", [](const CDFunction& f, double x) { return f.eval(x); })
        .def_readonly("nu", &CDFunction::nu)
        .def_readonly("gamma_rate", &CDFunction::gamma_rate)
        .def_readonly("a_star", &CDFunction::a_star);
    m.def("cd", &make_cd, "CD-function from a spec string, e.g. 'ricci_flat(D=2,mu0=1)'.");
    m.def("cd_verify", [](const CDFunction& f) {
        auto rep = verify_cd(f);
        py::dict d;
        d["pass"] = rep.pass();
        d["f0_ok"] = rep.f0_ok;
        d["monotone_ok"] = rep.monotone_ok;
        d["integrable_heuristic"] = rep.integrable_heuristic;
        d["detail"] = rep.detail;
        return d;
    });
    m.def("eta_root", &eta_root);

    py::class_<RelaxationFunction>(m, "RelaxationFunction")
        .def(py::init<CDFunction>())
        .def("__call__", &RelaxationFunction::value)
        .def("value_numeric", &RelaxationFunction::value_numeric)
        .def("tail", &RelaxationFunction::tail)
        .def("scaled", &RelaxationFunction::scaled);

    py::class_<HeatTrajectory>(m, "HeatTrajectory")
        .def_readonly("times", &HeatTrajectory::times)
        .def_readonly("values", &HeatTrajectory::values)
        .def_readonly("method", &HeatTrajectory::method)
        .def("mass_drift", &HeatTrajectory::mass_drift);
    m.def("solve_heat", [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& u0,
                           const std::vector<double>& ts) { return solve_spectral(g, u0, ts); });
    m.def("solve_heat_rk",
          [](std::shared_ptr<const WeightedGraph> g, const VertexFunction& u0,
             const std::vector<double>& ts, double tol) { return solve_rk(g, u0, ts, tol); },
          py::arg("g"), py::arg("u0"), py::arg("times"), py::arg("tol") = 1e-10);
    m.def("random_positive", [](std::shared_ptr<const WeightedGraph> g, double sigma,
                                std::uint64_t seed) { return random_positive(*g, sigma, seed); });

    m.def("l_alpha", [](std::shared_ptr<const WeightedGraph> g, double a,
                        const VertexFunction& v, const std::string& x) {
        return l_alpha(*g, a, v, g->index_of(x));
    });
    m.def("c_alpha", [](std::shared_ptr<const WeightedGraph> g, double a,
                        const VertexFunction& v, const std::string& x) {
        return c_alpha(*g, a, v, g->index_of(x));
    });
    m.def("cd_margin", [](const std::string& graph_spec, const std::string& x, double alpha,
                          const std::string& f_spec, const VertexFunction& v) {
        auto g = graph_from_spec(graph_spec);
        CDCheckProblem prob(*g, g->index_of(x), alpha, make_cd(f_spec));
        Margin mg = margin(prob, v);
        py::dict d;
        d["value"] = mg.value;
        d["feasible"] = mg.feasible;
        d["lv"] = mg.lv;
        return d;
    });
    m.def("search_violation",
          [](const std::string& graph_spec, const std::string& x, double alpha,
             const std::string& f_spec, int samples, std::uint64_t seed) {
              auto g = graph_from_spec(graph_spec);
              CDCheckProblem prob(*g, g->index_of(x), alpha, make_cd(f_spec));
              auto res = search_violation(prob, {samples, 100}, seed);
              py::dict d;
              d["best_margin"] = res.best.value;
              d["feasible_count"] = res.feasible_count;
              d["violation_found"] = res.violation_found;
              d["witness"] = res.witness;
              return d;
          },
          py::arg("graph"), py::arg("x"), py::arg("alpha"), py::arg("f"),
          py::arg("samples") = 10000, py::arg("seed") = 0);
    m.def("tightness_residual", [](int d, double mu0, double a) {
        return tightness_witness(d, mu0, a).residual;
    });
    m.def("star_family_value", [](double t) {
        auto inst = family(FamilyKind::Star, t);
        return c_alpha(inst.preset.graph, 0.0, inst.v, inst.base);
    });

    m.def("liyau_min_slack",
          [](const std::string& graph_spec, const std::string& f_spec, double alpha, int samples,
             std::uint64_t seed) {
              auto g = graph_from_spec(graph_spec);
              std::vector<int> verts(g->size());
              for (int i = 0; i < g->size(); ++i) verts[i] = i;
              auto rep = liyau_sweep(g, verts, make_cd(f_spec), alpha, samples,
                                     geometric_grid(1e-3, 10.0, 100), seed);
              return estimate_to_dict(rep);
          },
          py::arg("graph"), py::arg("f"), py::arg("alpha") = 0.0, py::arg("samples") = 20,
          py::arg("seed") = 0);
    m.def("harnack_min_slack",
          [](const std::string& graph_spec, const std::string& f_spec, double alpha,
             int instances, std::uint64_t seed) {
              auto g = graph_from_spec(graph_spec);
              return estimate_to_dict(harnack_sweep(g, make_cd(f_spec), alpha, instances, seed));
          },
          py::arg("graph"), py::arg("f"), py::arg("alpha") = 0.0, py::arg("instances") = 30,
          py::arg("seed") = 0);
    m.def("sharpness_gap", [](double ratio) {
        return sharpness_two_point(ratio, geometric_grid(0.01, 5.0, 200)).max_relative_gap;
    });
}
