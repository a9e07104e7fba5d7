#include "liyau/cd_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

#include "liyau/operators.hpp"
#include "liyau/rng.hpp"

namespace liyau {

double l_alpha(const WeightedGraph& g, double alpha, const VertexFunction& v, int x) {
    if (alpha < 0.0 || alpha >= 1.0) throw std::domain_error("l_alpha needs alpha in [0,1)");
    if (alpha == 0.0) return -laplacian(g, v, x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.w * std::expm1(alpha * (v[nb.to] - v[x]));
    return -s / (alpha * g.mu(x));
}

VertexFunction l_alpha_field(const WeightedGraph& g, double alpha, const VertexFunction& v) {
    VertexFunction out(g.size());
    for (int x = 0; x < g.size(); ++x) out[x] = l_alpha(g, alpha, v, x);
    return out;
}

double c_alpha(const WeightedGraph& g, double alpha, const VertexFunction& v, int x) {
    if (alpha < 0.0 || alpha >= 1.0) throw std::domain_error("c_alpha needs alpha in [0,1)");
    require_total(g, v, "c_alpha");
    g.check_vertex(x);
    // Psi_{Upsilon'}(v) at x and its neighbors
    double px = psi_upsilon_prime(g, v, x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) {
        double py = psi_upsilon_prime(g, v, nb.to);
        double w = alpha == 0.0 ? 1.0 : std::exp(alpha * (v[nb.to] - v[x]));
        s += nb.w * w * (py - px);
    }
    return s / g.mu(x);
}

CDCheckProblem::CDCheckProblem(const WeightedGraph& g, int base, double a, CDFunction f)
    : graph(&g), x(base), alpha(a), F(std::move(f)) {
    if (a < 0.0 || a >= 1.0) throw std::domain_error("CDCheckProblem needs alpha in [0,1)");
    g.check_vertex(base);
    // BFS 2-ball of x, excluding x itself (its value is pinned to 0)
    std::vector<int> dist(g.size(), -1);
    dist[base] = 0;
    std::deque<int> q{base};
    while (!q.empty()) {
        int a2 = q.front();
        q.pop_front();
        if (dist[a2] == 2) continue;
        for (const auto& nb : g.neighbors(a2)) {
            if (dist[nb.to] < 0) {
                dist[nb.to] = dist[a2] + 1;
                q.push_back(nb.to);
            }
        }
    }
    for (int y = 0; y < g.size(); ++y)
        if (y != base && dist[y] > 0) free_vertices.push_back(y);
}

VertexFunction CDCheckProblem::lift(const std::vector<double>& free_values) const {
    if (free_values.size() != free_vertices.size())
        throw std::invalid_argument("lift: wrong number of free values");
    VertexFunction v(graph->size(), 0.0);
    for (size_t i = 0; i < free_vertices.size(); ++i) v[free_vertices[i]] = free_values[i];
    return v;
}

Margin margin(const CDCheckProblem& p, const VertexFunction& v) {
    const WeightedGraph& g = *p.graph;
    Margin m;
    m.l_alpha_at_x = l_alpha(g, p.alpha, v, p.x);
    m.lv = -laplacian(g, v, p.x);
    bool max_ok = true;
    for (const auto& nb : g.neighbors(p.x)) {
        double ly = l_alpha(g, p.alpha, v, nb.to);
        m.l_alpha_neighbors.push_back(ly);
        if (!(m.l_alpha_at_x >= ly)) max_ok = false;
    }
    m.feasible = (m.l_alpha_at_x > 1e-12) && max_ok;
    if (m.lv >= 0.0) m.value = c_alpha(g, p.alpha, v, p.x) - p.F.eval(m.lv);
    return m;
}

namespace {

// Penalized objective for descent: the margin plus a hinge on the
// feasibility constraints, so gradients remain informative off the cone.
double descent_objective(const CDCheckProblem& p, const std::vector<double>& free_values,
                         bool& feasible, double& value) {
    VertexFunction v = p.lift(free_values);
    Margin m = margin(p, v);
    feasible = m.feasible;
    value = m.value;
    double pen = std::max(0.0, 1e-12 - m.l_alpha_at_x);
    for (double ly : m.l_alpha_neighbors) pen += std::max(0.0, ly - m.l_alpha_at_x);
    double base = std::isnan(m.value) ? 1e6 : m.value;
    return base + 1e3 * pen;
}

}  // namespace

SearchResult search_violation(const CDCheckProblem& p, SearchBudget budget, std::uint64_t seed) {
    static const double scales[] = {1.0, 2.0, 5.0, 10.0, 20.0};
    SearchResult res;
    res.best.value = std::numeric_limits<double>::infinity();
    const size_t nfree = p.free_vertices.size();
    std::vector<double> best_free;

    for (int i = 0; i < budget.samples; ++i) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        double S = scales[i % 5];
        std::uniform_real_distribution<double> unif(-S, S);
        std::vector<double> fv(nfree);
        for (auto& z : fv) z = unif(rng);
        Margin m = margin(p, p.lift(fv));
        if (!m.feasible) continue;  // feasibility by rejection
        ++res.feasible_count;
        if (m.value < res.best.value) {
            res.best = m;
            best_free = fv;
        }
    }

    // Coordinate descent refinement from the best sample, numerical gradient
    // with projection back to the feasible cone by rescaling toward 0.
    if (!best_free.empty()) {
        std::vector<double> cur = best_free;
        bool feas;
        double val;
        double obj = descent_objective(p, cur, feas, val);
        double step = 0.25;
        for (int it = 0; it < budget.descent_steps; ++it) {
            std::vector<double> grad(nfree);
            for (size_t k = 0; k < nfree; ++k) {
                double h = 1e-6 * (1.0 + std::abs(cur[k]));
                auto probe = cur;
                bool f2;
                double v2;
                probe[k] = cur[k] + h;
                double up = descent_objective(p, probe, f2, v2);
                probe[k] = cur[k] - h;
                double dn = descent_objective(p, probe, f2, v2);
                grad[k] = (up - dn) / (2.0 * h);
            }
            double gnorm = 0.0;
            for (double gk : grad) gnorm = std::max(gnorm, std::abs(gk));
            if (gnorm == 0.0) break;
            bool improved = false;
            for (double trial_step : {step, 0.5 * step, 0.25 * step}) {
                auto cand = cur;
                for (size_t k = 0; k < nfree; ++k) cand[k] -= trial_step * grad[k] / gnorm;
                bool f2;
                double v2;
                double o2 = descent_objective(p, cand, f2, v2);
                if (!f2) {
                    // rescale toward 0; the feasibility cone is reached in the
                    // small-amplitude limit
                    for (double shrink : {0.9, 0.7, 0.5}) {
                        auto cand2 = cand;
                        for (auto& z : cand2) z *= shrink;
                        double o3 = descent_objective(p, cand2, f2, v2);
                        if (f2 && o3 < obj) {
                            cand = cand2;
                            o2 = o3;
                            break;
                        }
                    }
                }
                if (f2 && o2 < obj) {
                    cur = cand;
                    obj = o2;
                    improved = true;
                    break;
                }
            }
            if (!improved) {
                step *= 0.5;
                if (step < 1e-10) break;
            }
        }
        Margin m = margin(p, p.lift(cur));
        if (m.feasible && m.value < res.best.value) {
            res.best = m;
            best_free = cur;
        }
        res.witness = p.lift(best_free);
    } else {
        res.witness.assign(p.graph->size(), 0.0);
    }

    res.violation_found = res.feasible_count > 0 && res.best.value < -1e-8;
    return res;
}

FamilyInstance family(FamilyKind kind, double t) {
    if (!(t > 0.0)) throw std::domain_error("family needs t > 0");
    FamilyInstance inst;
    if (kind == FamilyKind::Star) {
        inst.preset = build_preset("star(3)");
        const auto& g = inst.preset.graph;
        inst.base = g.index_of("x*");
        inst.v.assign(g.size(), 0.0);
        inst.v[g.index_of("x1")] = t;
        inst.v[g.index_of("x2")] = -t;
        inst.v[g.index_of("x3")] = -t;
    } else {
        inst.preset = build_preset("hexagon-patch");
        const auto& g = inst.preset.graph;
        inst.base = g.index_of("x*");
        inst.v.assign(g.size(), 0.0);
        inst.v[g.index_of("x1")] = t;
        inst.v[g.index_of("x2")] = -t;
        inst.v[g.index_of("x3")] = -t;
        // leaves copy their parent's value, so their edge terms vanish exactly
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 2; ++k)
                inst.v[g.index_of("x" + std::to_string(j) + std::to_string(k))] =
                    inst.v[g.index_of("x" + std::to_string(j))];
    }
    return inst;
}

TightnessWitness tightness_witness(int d, double mu0, double a) {
    if (!(a > 0.0)) throw std::domain_error("tightness_witness needs a > 0");
    if (d < 1 || !(mu0 > 0.0)) throw std::invalid_argument("tightness_witness needs d>=1, mu0>0");
    TightnessWitness w;
    w.ball = build_lattice_ball(d, 2, mu0);
    const auto& g = w.ball.graph;
    const double alpha = a * mu0 / (2.0 * d);  // v(0); beta = 0 at distance 1
    const double gamma_val = -(2.0 * d + 1.0) * alpha / (2.0 * d - 1.0);
    w.v.assign(g.size(), 0.0);
    for (int x = 0; x < g.size(); ++x) {
        if (w.ball.l1[x] == 0) w.v[x] = alpha;
        else if (w.ball.l1[x] == 2) w.v[x] = gamma_val;
    }
    std::string origin_name = "0";
    for (int i = 1; i < d; ++i) origin_name += ",0";
    w.origin = g.index_of(origin_name);
    w.lv0 = -laplacian(g, w.v, w.origin);
    w.lhs = c_alpha(g, 0.0, w.v, w.origin);  // = Delta Psi_{Upsilon'}(v)(0)
    w.rhs = cd_ricci_flat(2 * d, mu0).eval(w.lv0);
    w.residual = std::abs(w.lhs - w.rhs);
    return w;
}

CutoffCheck cutoff_cd_check(const WeightedGraph& g, double alpha, const VertexFunction& psi_fn,
                            const VertexFunction& v, int x_star) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("cutoff_cd_check needs alpha in (0,1)");
    require_total(g, psi_fn, "cutoff_cd_check");
    require_total(g, v, "cutoff_cd_check");
    g.check_vertex(x_star);
    if (!(psi_fn[x_star] > 0.0))
        throw std::domain_error("cutoff_cd_check needs psi(x*) > 0");
    const int D = g.degree(x_star);
    const double mu0 = g.mu(x_star);
    for (const auto& nb : g.neighbors(x_star)) {
        if (!(psi_fn[nb.to] > 0.0))
            throw std::domain_error("cutoff_cd_check needs psi > 0 at neighbors of x*");
        if (g.degree(nb.to) != D || g.mu(nb.to) != mu0)
            throw std::invalid_argument("cutoff_cd_check needs a regular, constant-mu patch");
    }

    CutoffCheck out;
    double m_star = psi_fn[x_star] * l_alpha(g, alpha, v, x_star);
    bool local_max = m_star > 0.0;
    for (const auto& nb : g.neighbors(x_star)) {
        if (psi_fn[nb.to] * l_alpha(g, alpha, v, nb.to) > m_star) local_max = false;
    }
    if (!local_max) return out;  // vacuous

    out.applicable = true;
    out.lhs = c_alpha(g, alpha, v, x_star);
    double corr = 0.0;
    for (const auto& nb : g.neighbors(x_star))
        corr += std::exp(v[nb.to] - v[x_star]) *
                std::abs(psi_fn[x_star] - psi_fn[nb.to]) / psi_fn[nb.to];
    double lv = -laplacian(g, v, x_star);
    CDFunction falpha = cd_ricci_flat_alpha(D, mu0, alpha);
    out.rhs = falpha.eval(std::max(lv, 0.0)) -
              l_alpha(g, alpha, v, x_star) / mu0 * corr;
    out.slack = out.lhs - out.rhs;
    return out;
}

double d_power_bound_slack(const WeightedGraph& g, double alpha, const VertexFunction& u,
                           int x_star) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("d_power_bound_slack needs alpha in (0,1)");
    require_positive(g, u, "d_power_bound_slack");
    const int D = g.degree(x_star);
    VertexFunction ua(g.size());
    for (int y = 0; y < g.size(); ++y) ua[y] = std::pow(u[y], alpha);
    if (!(laplacian(g, ua, x_star) < 0.0)) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (const auto& nb : g.neighbors(x_star)) s += u[nb.to];
    return std::pow(static_cast<double>(D), 1.0 / alpha) * u[x_star] - s;
}

namespace {

void require_unit_z(const WeightedGraph& g, int x) {
    if (g.degree(x) != 2 || g.mu(x) != 1.0)
        throw std::invalid_argument("theta decomposition needs degree 2 and mu = 1 at " +
                                    g.name_of(x));
    for (const auto& nb : g.neighbors(x))
        if (nb.w != 1.0)
            throw std::invalid_argument("theta decomposition needs unit weights at " +
                                        g.name_of(x));
}

}  // namespace

double theta_z(const WeightedGraph& g, const VertexFunction& v, int x) {
    require_total(g, v, "theta_z");
    require_unit_z(g, x);
    double lvx = -laplacian(g, v, x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) {
        double lvy = -laplacian(g, v, nb.to);
        s += std::exp(v[nb.to] - v[x]) * (std::exp(-lvy) - 1.0 + lvx);
    }
    return s;
}

ThetaCheck theta_inequality_check(const WeightedGraph& g, const VertexFunction& v, int x) {
    require_unit_z(g, x);
    for (const auto& nb : g.neighbors(x)) require_unit_z(g, nb.to);
    double lvx = -laplacian(g, v, x);
    double dpsi = c_alpha(g, 0.0, v, x);
    double th = theta_z(g, v, x);
    ThetaCheck out;
    out.decomposition_slack = dpsi - 2.0 * std::exp(-0.5 * lvx) * upsilon(lvx) - th;
    out.theta_lower_slack = lvx >= 1.0
                                ? th - 2.0 * std::exp(-0.5 * lvx) * (lvx - 1.0)
                                : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace liyau
