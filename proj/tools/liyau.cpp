// Command-line front end: graphs, CD-functions, relaxation functions, heat
// flow and the estimate experiments, with CSV output and a JSON summary on
// stdout. Exit codes: 0 pass/informational, 1 verdict fail, 2 usage or
// domain error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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

using json = nlohmann::ordered_json;
using namespace liyau;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LIYAU_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

// "a,b,c" or "geom:lo:hi:n"
std::vector<double> parse_times(const std::string& spec) {
    if (spec.rfind("geom:", 0) == 0) {
        std::stringstream ss(spec.substr(5));
        std::string lo, hi, n;
        std::getline(ss, lo, ':');
        std::getline(ss, hi, ':');
        std::getline(ss, n, ':');
        return geometric_grid(std::stod(lo), std::stod(hi), std::stoi(n));
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty time list");
    return out;
}

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const std::string& path, const std::string& header) {
        if (path.empty()) return;
        out.open(path);
        if (!out) throw std::invalid_argument("cannot open output file: " + path);
        out << header << "\n";
    }
    bool active() { return out.is_open(); }
};

VertexFunction parse_u0(const WeightedGraph& g, const std::string& spec) {
    if (spec.rfind("const:", 0) == 0) {
        double v = std::stod(spec.substr(6));
        if (!(v > 0.0)) throw std::invalid_argument("const initial data must be positive");
        return VertexFunction(g.size(), v);
    }
    if (spec.rfind("random:", 0) == 0) {
        std::stringstream ss(spec.substr(7));
        std::string sigma, seed;
        std::getline(ss, sigma, ':');
        std::getline(ss, seed, ':');
        return random_positive(g, std::stod(sigma), seed.empty() ? 0 : std::stoull(seed));
    }
    if (spec.rfind("dirac:", 0) == 0) {
        return dirac_like(g, g.index_of(spec.substr(6)));
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open initial-data file: " + spec);
    json j = json::parse(in);
    VertexFunction u(g.size());
    for (auto it = j.begin(); it != j.end(); ++it) u[g.index_of(it.key())] = it.value();
    return u;
}

json estimate_json(const EstimateReport& rep, std::uint64_t seed) {
    json j;
    j["experiment"] = rep.experiment;
    j["statement"] = rep.statement;
    j["min_slack"] = rep.min_slack;
    j["fd_budget"] = rep.fd_budget;
    j["tolerance"] = rep.tolerance;
    j["verdict"] = rep.pass() ? "pass" : "fail";
    j["argmin_t"] = rep.argmin_t;
    j["argmin_vertex"] = rep.argmin_vertex;
    j["samples"] = rep.samples;
    j["seed"] = seed;
    return j;
}

int emit(const json& j, bool pass) {
    std::cout << j.dump(2) << "\n";
    return pass ? 0 : 1;
}

std::vector<int> eval_vertices(const PresetGraph& pg, bool interior_only) {
    if (interior_only && pg.is_lattice()) return pg.interior(2);
    std::vector<int> v(pg.graph.size());
    for (int i = 0; i < pg.graph.size(); ++i) v[i] = i;
    return v;
}

PresetGraph resolve_preset_graph(const std::string& spec) {
    if (spec.rfind("preset:", 0) == 0) return build_preset(spec.substr(7));
    PresetGraph pg;
    pg.graph = load_graph_file(spec);
    return pg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for heat flow and curvature bounds on weighted graphs"};
    app.require_subcommand(1);

    std::string graph_spec, f_spec = "two_point", g_spec2, out_path, u0_spec = "random:2:0";
    std::string times_spec = "geom:1e-3:10:200", x_id, op_name = "sum";
    double alpha = 0.0, at_value = 1.0, scale_a = 1.0, scale_b = 1.0, ratio = 1e9, horizon = 2.0;
    int samples = 100, instances = 100, budget = 10000, jobs = 1, n_data = 20, dim = 1;
    std::uint64_t seed = default_seed();
    std::vector<int> radii{4, 8, 16};
    std::vector<double> taus{1.0, 0.3, 0.1, 0.03};

    // graph {show, export}
    auto* graph_cmd = app.add_subcommand("graph", "inspect or export a graph");
    auto* graph_show = graph_cmd->add_subcommand("show", "print a graph summary");
    graph_show->add_option("--graph", graph_spec, "preset:name(args) or JSON file")->required();
    auto* graph_export = graph_cmd->add_subcommand("export", "write the graph JSON");
    graph_export->add_option("--graph", graph_spec)->required();
    graph_export->add_option("--out", out_path)->required();

    // cd {eval, verify, combine}
    auto* cd_cmd = app.add_subcommand("cd", "CD-function catalog");
    auto* cd_eval = cd_cmd->add_subcommand("eval", "evaluate F at a point");
    cd_eval->add_option("--f", f_spec)->required();
    cd_eval->add_option("--at", at_value)->required();
    auto* cd_verify_cmd = cd_cmd->add_subcommand("verify", "check the CD-function properties");
    cd_verify_cmd->add_option("--f", f_spec)->required();
    auto* cd_combine = cd_cmd->add_subcommand("combine", "sum/min/scale of catalog entries");
    cd_combine->add_option("--op", op_name, "sum|min|scale")->required();
    cd_combine->add_option("--f", f_spec)->required();
    cd_combine->add_option("--g", g_spec2, "second operand for sum/min");
    cd_combine->add_option("--a", scale_a, "outer factor for scale");
    cd_combine->add_option("--b", scale_b, "argument factor for scale");
    cd_combine->add_option("--at", at_value, "evaluation point");

    // relax {eval, check-ode, asymptotics}
    auto* relax_cmd = app.add_subcommand("relax", "relaxation function phi = G^{-1}");
    auto* relax_eval = relax_cmd->add_subcommand("eval", "evaluate phi on a time list");
    relax_eval->add_option("--f", f_spec)->required();
    relax_eval->add_option("--t", times_spec, "comma list or geom:lo:hi:n")->required();
    relax_eval->add_option("--out", out_path, "CSV (t, phi, residual)");
    auto* relax_ode = relax_cmd->add_subcommand("check-ode", "residual of phi' + F(phi) = 0");
    relax_ode->add_option("--f", f_spec)->required();
    relax_ode->add_option("--t", times_spec);
    auto* relax_asym = relax_cmd->add_subcommand("asymptotics", "small/large time behavior");
    relax_asym->add_option("--f", f_spec)->required();

    // heat solve
    auto* heat_cmd = app.add_subcommand("heat", "heat flow");
    auto* heat_solve = heat_cmd->add_subcommand("solve", "sample u(t, .)");
    heat_solve->add_option("--graph", graph_spec)->required();
    heat_solve->add_option("--u0", u0_spec, "const:v | random:sigma[:seed] | dirac:vertex | file");
    heat_solve->add_option("--times", times_spec);
    heat_solve->add_option("--out", out_path, "CSV (t, vertex, u)");

    // cd-check
    auto* cd_check = app.add_subcommand("cd-check", "falsifier for the CD inequality at a vertex");
    cd_check->add_option("--graph", graph_spec)->required();
    cd_check->add_option("--x", x_id)->required();
    cd_check->add_option("--alpha", alpha);
    cd_check->add_option("--f", f_spec)->required();
    cd_check->add_option("--budget", budget);
    cd_check->add_option("--seed", seed);

    // check {liyau, dharnack, harnack, local, limit, sharpness}
    auto* check_cmd = app.add_subcommand("check", "estimate experiments");
    auto* chk_liyau = check_cmd->add_subcommand("liyau", "phi(t) - L_alpha(log u) >= 0");
    auto* chk_dh = check_cmd->add_subcommand("dharnack", "differential Harnack slack");
    for (CLI::App* c : {chk_liyau, chk_dh}) {
        c->add_option("--graph", graph_spec)->required();
        c->add_option("--f", f_spec)->required();
        c->add_option("--alpha", alpha);
        c->add_option("--samples", samples);
        c->add_option("--seed", seed);
        c->add_option("--times", times_spec);
        c->add_option("--jobs", jobs);
        c->add_option("--out", out_path, "CSV (experiment, t, x, slack)");
    }
    auto* chk_h = check_cmd->add_subcommand("harnack", "two-time chained comparison");
    chk_h->add_option("--graph", graph_spec)->required();
    chk_h->add_option("--f", f_spec)->required();
    chk_h->add_option("--alpha", alpha);
    chk_h->add_option("--instances", instances);
    chk_h->add_option("--seed", seed);
    chk_h->add_option("--out", out_path);
    auto* chk_local = check_cmd->add_subcommand("local", "lattice ball estimate");
    chk_local->add_option("--d", dim);
    chk_local->add_option("--radii", radii);
    chk_local->add_option("--alpha", alpha);
    chk_local->add_option("--horizon", horizon);
    chk_local->add_option("--data", n_data);
    chk_local->add_option("--seed", seed);
    auto* chk_limit = check_cmd->add_subcommand("limit", "scaled-lattice sweep");
    chk_limit->add_option("--taus", taus);
    chk_limit->add_option("--t", times_spec, "flow sample times");
    chk_limit->add_option("--data", n_data);
    chk_limit->add_option("--seed", seed);
    auto* chk_sharp = check_cmd->add_subcommand("sharpness", "two-point sharpness gap");
    chk_sharp->add_option("--ratio", ratio);
    chk_sharp->add_option("--t", times_spec);

    // identities
    auto* ident = app.add_subcommand("identities", "chain-rule identity residuals");
    ident->add_option("--graph", graph_spec)->required();
    ident->add_option("--samples", samples);
    ident->add_option("--seed", seed);

    // ricci {verify, find}
    auto* ricci_cmd = app.add_subcommand("ricci", "flat-structure verification and search");
    auto* ricci_verify = ricci_cmd->add_subcommand("verify", "verify the preset structure");
    ricci_verify->add_option("--graph", graph_spec)->required();
    ricci_verify->add_option("--x", x_id, "restrict to one vertex");
    auto* ricci_find = ricci_cmd->add_subcommand("find", "search eta maps at a vertex");
    ricci_find->add_option("--graph", graph_spec)->required();
    ricci_find->add_option("--x", x_id)->required();
    ricci_find->add_option("--budget", budget);

    auto* presets_cmd = app.add_subcommand("list-presets", "graph and CD-function catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*graph_show) {
            auto pg = resolve_preset_graph(graph_spec);
            json j;
            j["vertices"] = pg.graph.size();
            j["edges"] = pg.graph.edge_count();
            j["connected"] = pg.graph.is_connected();
            auto rd = pg.graph.regular_degree();
            j["regular_degree"] = rd ? json(*rd) : json(nullptr);
            j["mu_max"] = pg.graph.mu_max();
            j["w_min"] = pg.graph.w_min();
            if (pg.is_lattice()) j["lattice_radius"] = pg.radius;
            return emit(j, true);
        }
        if (*graph_export) {
            auto pg = resolve_preset_graph(graph_spec);
            std::ofstream out(out_path);
            if (!out) throw std::invalid_argument("cannot open " + out_path);
            out << graph_to_json(pg.graph) << "\n";
            json j;
            j["written"] = out_path;
            return emit(j, true);
        }

        if (*cd_eval) {
            CDFunction f = make_cd(f_spec);
            json j;
            j["f"] = f.name;
            j["at"] = at_value;
            j["value"] = f.eval(at_value);
            return emit(j, true);
        }
        if (*cd_verify_cmd) {
            CDFunction f = make_cd(f_spec);
            auto rep = verify_cd(f);
            json j;
            j["f"] = f.name;
            j["f0_ok"] = rep.f0_ok;
            j["nonneg_ok"] = rep.nonneg_ok;
            j["monotone_ok"] = rep.monotone_ok;
            j["integrable_heuristic"] = rep.integrable_heuristic;
            j["integrable_hint"] = rep.integrable_hint;
            if (!rep.detail.empty()) j["detail"] = rep.detail;
            if (!std::isnan(rep.first_violation)) j["first_violation"] = rep.first_violation;
            j["verdict"] = rep.pass() ? "pass" : "fail";
            return emit(j, rep.pass());
        }
        if (*cd_combine) {
            CDFunction f1 = make_cd(f_spec);
            CDFunction out;
            if (op_name == "scale") {
                out = combine(CombineOp::Scale, f1, nullptr, scale_a, scale_b);
            } else {
                if (g_spec2.empty())
                    throw std::invalid_argument("combine " + op_name + " needs --g");
                CDFunction f2 = make_cd(g_spec2);
                out = combine(op_name == "sum" ? CombineOp::Sum : CombineOp::Min, f1, &f2);
            }
            json j;
            j["f"] = out.name;
            j["value_at"] = at_value;
            j["value"] = out.eval(at_value);
            j["verdict"] = "pass";  // combine re-verifies and throws on failure
            return emit(j, true);
        }

        if (*relax_eval) {
            CDFunction f = make_cd(f_spec);
            RelaxationFunction phi(f);
            auto ts = parse_times(times_spec);
            CsvWriter csv(out_path, "t,phi,residual");
            double worst = 0.0;
            json rows = json::array();
            for (double t : ts) {
                double p = phi.value(t);
                double res = ode_residual(phi, {t});
                worst = std::max(worst, res);
                if (csv.active())
                    csv.out << fmt17(t) << "," << fmt17(p) << "," << fmt17(res) << "\n";
                if (ts.size() <= 16) rows.push_back({{"t", t}, {"phi", p}, {"residual", res}});
            }
            json j;
            j["f"] = f.name;
            j["points"] = ts.size();
            j["max_ode_residual"] = worst;
            if (!rows.empty()) j["values"] = rows;
            return emit(j, true);
        }
        if (*relax_ode) {
            CDFunction f = make_cd(f_spec);
            RelaxationFunction phi(f);
            double res = ode_residual(phi, parse_times(times_spec));
            json j;
            j["f"] = f.name;
            j["statement"] = "phi'(t) + F(phi(t)) = 0";
            j["max_residual"] = res;
            j["verdict"] = res <= 1e-6 ? "pass" : "fail";
            return emit(j, res <= 1e-6);
        }
        if (*relax_asym) {
            CDFunction f = make_cd(f_spec);
            RelaxationFunction phi(f);
            auto rep = asymptotics_report(phi, f.nu, f.gamma_rate);
            json j;
            j["f"] = f.name;
            j["small_t"]["applicable"] = rep.small_t_applicable;
            j["small_t"]["ratios"] = rep.small_t_ratios;
            j["small_t"]["pass"] = rep.small_t_pass;
            j["large_t"]["applicable"] = rep.large_t_applicable;
            j["large_t"]["ratios"] = rep.large_t_ratios;
            j["large_t"]["pass"] = rep.large_t_pass;
            if (!rep.large_t_applicable) j["large_t"]["observed_decay_rate"] = rep.observed_decay_rate;
            bool ok = (!rep.small_t_applicable || rep.small_t_pass) &&
                      (!rep.large_t_applicable || rep.large_t_pass);
            j["verdict"] = ok ? "pass" : "fail";
            return emit(j, ok);
        }

        if (*heat_solve) {
            auto pg = resolve_preset_graph(graph_spec);
            auto g = std::make_shared<const WeightedGraph>(pg.graph);
            VertexFunction u0 = parse_u0(*g, u0_spec);
            auto ts = parse_times(times_spec);
            auto traj = solve_spectral(g, u0, ts);
            CsvWriter csv(out_path, "t,vertex,u");
            if (csv.active()) {
                for (size_t i = 0; i < ts.size(); ++i)
                    for (int x = 0; x < g->size(); ++x)
                        csv.out << fmt17(ts[i]) << "," << g->name_of(x) << ","
                                << fmt17(traj.values[i][x]) << "\n";
            }
            json j;
            j["graph"] = graph_spec;
            j["times"] = ts.size();
            j["mass_drift"] = traj.mass_drift();
            j["method"] = traj.method;
            return emit(j, true);
        }

        if (*cd_check) {
            auto pg = resolve_preset_graph(graph_spec);
            CDCheckProblem prob(pg.graph, pg.graph.index_of(x_id), alpha, make_cd(f_spec));
            auto res = search_violation(prob, {budget, 200}, seed);
            json j;
            j["statement"] = "C_alpha(v)(x) >= F(Lv(x)) at positive local maxima of L_alpha(v)";
            j["best_margin"] = res.best.value;
            j["feasible_count"] = res.feasible_count;
            j["violation_found"] = res.violation_found;
            json witness;
            for (int x = 0; x < pg.graph.size(); ++x)
                witness[pg.graph.name_of(x)] = res.witness.empty() ? 0.0 : res.witness[x];
            j["witness_v"] = witness;
            j["budget"] = budget;
            j["seed"] = seed;
            j["verdict"] = res.violation_found ? "violation" : "no violation found";
            return emit(j, !res.violation_found);
        }

        if (*chk_liyau || *chk_dh) {
            bool differential = static_cast<bool>(*chk_dh);
            auto pg = resolve_preset_graph(graph_spec);
            auto g = std::make_shared<const WeightedGraph>(pg.graph);
            auto verts = eval_vertices(pg, true);
            auto ts = parse_times(times_spec);
            CDFunction F = make_cd(f_spec);
            CsvWriter csv(out_path, "experiment,t,x,slack");
            RowSink sink;
            if (csv.active() && jobs == 1) {
                std::string name = differential ? "dharnack" : "liyau";
                sink = [&csv, name](int s, double t, const std::string& x, double slack) {
                    csv.out << name << "[" << s << "]," << fmt17(t) << "," << x << ","
                            << fmt17(slack) << "\n";
                };
            }
            EstimateReport rep;
            if (jobs <= 1) {
                rep = differential
                          ? differential_harnack_sweep(g, verts, F, alpha, samples, ts, seed, sink)
                          : liyau_sweep(g, verts, F, alpha, samples, ts, seed, sink);
            } else {
                // workers cover disjoint sample-index ranges; each sample
                // draws from a stream keyed by (seed, index), so the merged
                // result is byte-identical to the serial sweep
                std::vector<EstimateReport> parts(jobs);
                std::vector<std::thread> pool;
                int per = (samples + jobs - 1) / jobs;
                for (int w = 0; w < jobs; ++w) {
                    pool.emplace_back([&, w]() {
                        int lo = w * per, hi = std::min(samples, (w + 1) * per);
                        if (lo >= hi) return;
                        parts[w] = differential
                                       ? differential_harnack_sweep(g, verts, F, alpha, hi - lo,
                                                                    ts, seed, {}, lo)
                                       : liyau_sweep(g, verts, F, alpha, hi - lo, ts, seed, {},
                                                     lo);
                    });
                }
                for (auto& th : pool) th.join();
                rep = parts[0];
                for (int w = 1; w < jobs; ++w) {
                    if (parts[w].samples == 0) continue;
                    if (parts[w].min_slack < rep.min_slack) {
                        rep.min_slack = parts[w].min_slack;
                        rep.argmin_t = parts[w].argmin_t;
                        rep.argmin_vertex = parts[w].argmin_vertex;
                        rep.argmin_sample = parts[w].argmin_sample;
                    }
                    rep.fd_budget = std::max(rep.fd_budget, parts[w].fd_budget);
                    rep.samples += parts[w].samples;
                }
            }
            return emit(estimate_json(rep, seed), rep.pass());
        }
        if (*chk_h) {
            auto pg = resolve_preset_graph(graph_spec);
            auto g = std::make_shared<const WeightedGraph>(pg.graph);
            auto rep = harnack_sweep(g, make_cd(f_spec), alpha, instances, seed);
            return emit(estimate_json(rep, seed), rep.pass());
        }
        if (*chk_local) {
            auto rep = local_liyau_check(dim, radii, alpha, horizon, n_data, seed);
            json j;
            j["experiment"] = "local";
            j["statement"] = rep.statement;
            j["radii"] = rep.radii;
            j["s_plus"] = rep.s_plus;
            j["r_times_s"] = rep.r_times_s;
            j["verdict"] = rep.bounded ? "bounded" : "unbounded trend";
            j["seed"] = seed;
            return emit(j, rep.bounded);
        }
        if (*chk_limit) {
            std::vector<double> fts = parse_times(times_spec == "geom:1e-3:10:200"
                                                      ? std::string("1e-4,0.01,0.1")
                                                      : times_spec);
            auto rep = continuum_sweep(taus, fts, n_data, seed);
            json j;
            j["experiment"] = "limit";
            j["statement"] = rep.statement;
            json rows = json::array();
            for (const auto& r : rep.rows) {
                rows.push_back({{"tau", r.tau},
                                {"dev_tau_reading", r.dev_tau_reading},
                                {"dev_tau2_reading", r.dev_tau2_reading},
                                {"margin_tau", r.margin_tau},
                                {"margin_tau2", r.margin_tau2},
                                {"margin_classical", r.margin_classical}});
            }
            j["rows"] = rows;
            j["tau_reading_valid"] = rep.tau_reading_valid;
            j["tau2_reading_valid"] = rep.tau2_reading_valid;
            j["classical_valid"] = rep.classical_valid;
            bool ok = rep.tau_reading_valid || rep.tau2_reading_valid;
            j["verdict"] = ok ? "pass" : "fail";
            j["seed"] = seed;
            return emit(j, ok);
        }
        if (*chk_sharp) {
            auto ts = parse_times(times_spec == "geom:1e-3:10:200" ? std::string("geom:0.01:5:200")
                                                                   : times_spec);
            auto rep = sharpness_two_point(ratio, ts);
            json j;
            j["experiment"] = "sharpness";
            j["statement"] = "w(t) <= phi(t) with (phi-w)/phi small at large initial ratio";
            j["ratio"] = ratio;
            j["max_relative_gap"] = rep.max_relative_gap;
            j["one_sided"] = rep.one_sided;
            j["verdict"] = rep.one_sided ? "pass" : "fail";
            return emit(j, rep.one_sided);
        }

        if (*ident) {
            auto pg = resolve_preset_graph(graph_spec);
            double worst = 0.0;
            json per_identity;
            for (int i = 0; i < samples; ++i) {
                VertexFunction u = random_positive(pg.graph, 2.0, derive_seed(seed, i));
                auto rep = verify_identities(pg.graph, u);
                for (const auto& item : rep.items) {
                    double cur = per_identity.contains(item.name)
                                     ? per_identity[item.name].get<double>()
                                     : 0.0;
                    per_identity[item.name] = std::max(cur, item.residual);
                }
                worst = std::max(worst, rep.max_residual());
            }
            json j;
            j["graph"] = graph_spec;
            j["samples"] = samples;
            j["residuals"] = per_identity;
            j["max_residual"] = worst;
            j["verdict"] = worst <= 1e-12 ? "pass" : "fail";
            return emit(j, worst <= 1e-12);
        }

        if (*ricci_verify) {
            auto pg = resolve_preset_graph(graph_spec);
            if (!pg.structure)
                throw std::invalid_argument("no canonical flat structure for this graph");
            json results = json::array();
            bool all = true;
            for (int x = 0; x < pg.graph.size(); ++x) {
                if (!x_id.empty() && pg.graph.index_of(x_id) != x) continue;
                if (!pg.structure->defined_at(x)) continue;
                auto rep = verify_ricci_flat(pg.graph, *pg.structure, x);
                if (!rep.pass) all = false;
                results.push_back({{"x", pg.graph.name_of(x)},
                                   {"pass", rep.pass},
                                   {"detail", rep.detail}});
            }
            json j;
            j["graph"] = graph_spec;
            j["results"] = results;
            j["verdict"] = all ? "pass" : "fail";
            return emit(j, all);
        }
        if (*ricci_find) {
            auto pg = resolve_preset_graph(graph_spec);
            auto res = find_eta_maps(pg.graph, pg.graph.index_of(x_id), budget);
            json j;
            j["graph"] = graph_spec;
            j["x"] = x_id;
            j["found"] = res.found;
            j["nodes_visited"] = res.nodes_visited;
            if (!res.found) j["note"] = res.budget_exhausted ? "not found within budget"
                                                             : "no structure exists at this vertex"
                                                               " for any assignment";
            if (res.found) {
                json maps = json::array();
                const auto& at = res.structure.eta.at(pg.graph.index_of(x_id));
                for (const auto& eta_i : at) {
                    json one;
                    for (const auto& [y, t] : eta_i)
                        one[pg.graph.name_of(y)] = pg.graph.name_of(t);
                    maps.push_back(one);
                }
                j["eta"] = maps;
            }
            return emit(j, true);
        }

        if (*presets_cmd) {
            json j;
            j["graphs"] = preset_names();
            j["cd_functions"] = {
                "two_point  ->  2 sinh a  (two-point graph)",
                "two_point_alpha(alpha=)  ->  2 sinh((1-alpha) a)",
                "quadratic(c=)  ->  c a^2",
                "power(c=,p=)  ->  c a^p",
                "lambda(lambda=)  ->  exp(-(1-l)a/2)(l e^{(1-l)a} + (1-l)e^{-l a} - 1)",
                "path3  ->  e^{-a}(e^a - e^{-a})^2 / 2  (3-path endpoints)",
                "triangle_raw  ->  2(e^{a/2} + 1 - 2e^{-a/2})  [not a CD-function]",
                "triangle_minorant  ->  4 sinh(a/2)",
                "complete(D=,mu0=,alpha=)  ->  complete-graph bound  [not CD for D >= 2]",
                "ricci_flat(D=,mu0=)  ->  flat-graph bound via Upsilon",
                "ricci_flat_alpha(D=,mu0=,alpha=)",
                "tau_lattice(d=,tau=)  ->  ricci_flat(2d, tau^2)"};
            j["experiments"] = {"check liyau", "check dharnack", "check harnack", "check local",
                                "check limit", "check sharpness", "cd-check", "identities",
                                "ricci verify", "ricci find"};
            return emit(j, true);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand executed\n";
    return 2;
}
