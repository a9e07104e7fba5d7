#include "liyau/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace liyau {

double laplacian(const WeightedGraph& g, const VertexFunction& u, int x) {
    require_total(g, u, "laplacian");
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.w * (u[nb.to] - u[x]);
    return s / g.mu(x);
}

double gamma(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& w, int x) {
    require_total(g, u, "gamma");
    require_total(g, w, "gamma");
    g.check_vertex(x);
    // Delta(uw) - u Delta w - w Delta u collapses to a sum of products of
    // differences; evaluate the polarized form directly.
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) {
        int y = nb.to;
        double duw = u[y] * w[y] - u[x] * w[x];
        double dw = w[y] - w[x];
        double du = u[y] - u[x];
        s += nb.w * (duw - u[x] * dw - w[x] * du);
    }
    return 0.5 * s / g.mu(x);
}

double gamma2(const WeightedGraph& g, const VertexFunction& u, int x) {
    require_total(g, u, "gamma2");
    g.check_vertex(x);
    VertexFunction gam(g.size()), lap(g.size());
    for (int y = 0; y < g.size(); ++y) {
        gam[y] = gamma(g, u, u, y);
        lap[y] = laplacian(g, u, y);
    }
    return 0.5 * (laplacian(g, gam, x) - 2.0 * gamma(g, u, lap, x));
}

double psi(const WeightedGraph& g, const ScalarField& H, const VertexFunction& u, int x) {
    require_total(g, u, "psi");
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) {
        double d = u[nb.to] - u[x];
        if (!H.contains(d))
            throw std::domain_error("psi: difference " + std::to_string(d) + " on edge " +
                                    g.name_of(x) + "-" + g.name_of(nb.to) +
                                    " outside the domain of " + H.name);
        s += nb.w * H.eval(d);
    }
    return s / g.mu(x);
}

double bregman(const ScalarField& H, double w, double z) {
    if (!H.contains(w) || !H.contains(z))
        throw std::domain_error("bregman: argument outside the domain of " + H.name);
    return H.eval(w) - H.eval(z) - H.deriv(z) * (w - z);
}

VertexFunction laplacian_field(const WeightedGraph& g, const VertexFunction& u) {
    require_total(g, u, "laplacian_field");
    VertexFunction out(g.size());
    for (int x = 0; x < g.size(); ++x) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(x)) s += nb.w * (u[nb.to] - u[x]);
        out[x] = s / g.mu(x);
    }
    return out;
}

VertexFunction psi_field(const WeightedGraph& g, const ScalarField& H, const VertexFunction& u) {
    VertexFunction out(g.size());
    for (int x = 0; x < g.size(); ++x) out[x] = psi(g, H, u, x);
    return out;
}

VertexFunction psi_upsilon_field(const WeightedGraph& g, const VertexFunction& v) {
    require_total(g, v, "psi_upsilon_field");
    VertexFunction out(g.size());
    for (int x = 0; x < g.size(); ++x) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(x)) s += nb.w * upsilon(v[nb.to] - v[x]);
        out[x] = s / g.mu(x);
    }
    return out;
}

VertexFunction psi_upsilon_prime_field(const WeightedGraph& g, const VertexFunction& v) {
    require_total(g, v, "psi_upsilon_prime_field");
    VertexFunction out(g.size());
    for (int x = 0; x < g.size(); ++x) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(x)) s += nb.w * std::expm1(v[nb.to] - v[x]);
        out[x] = s / g.mu(x);
    }
    return out;
}

double psi_upsilon(const WeightedGraph& g, const VertexFunction& v, int x) {
    require_total(g, v, "psi_upsilon");
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.w * upsilon(v[nb.to] - v[x]);
    return s / g.mu(x);
}

double psi_upsilon_prime(const WeightedGraph& g, const VertexFunction& v, int x) {
    require_total(g, v, "psi_upsilon_prime");
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.w * std::expm1(v[nb.to] - v[x]);
    return s / g.mu(x);
}

std::optional<int> graph_distance(const WeightedGraph& g, int x, int y) {
    g.check_vertex(x);
    g.check_vertex(y);
    if (x == y) return 0;
    std::vector<int> dist(g.size(), -1);
    dist[x] = 0;
    std::deque<int> q{x};
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (const auto& nb : g.neighbors(a)) {
            if (dist[nb.to] < 0) {
                dist[nb.to] = dist[a] + 1;
                if (nb.to == y) return dist[nb.to];
                q.push_back(nb.to);
            }
        }
    }
    return std::nullopt;
}

double IdentityReport::max_residual() const {
    double m = 0.0;
    for (const auto& it : items) m = std::max(m, it.residual);
    return m;
}

namespace {

// max over vertices of |lhs - rhs| / max(1, magnitude of the terms); `terms`
// carries the per-vertex magnitudes of the summands entering either side, so
// cancellation inside a side does not shrink the scale.
IdentityResidual field_residual(const std::string& name, const VertexFunction& lhs,
                                const VertexFunction& rhs,
                                const std::vector<const VertexFunction*>& terms = {}) {
    IdentityResidual r{name, 0.0, 1.0};
    for (size_t i = 0; i < lhs.size(); ++i) {
        double s = std::max({1.0, std::abs(lhs[i]), std::abs(rhs[i])});
        for (const VertexFunction* t : terms) s = std::max(s, std::abs((*t)[i]));
        double res = std::abs(lhs[i] - rhs[i]) / s;
        if (res > r.residual) {
            r.residual = res;
            r.scale = s;
        }
    }
    return r;
}

VertexFunction map_values(const VertexFunction& u, double (*f)(double)) {
    VertexFunction out(u.size());
    for (size_t i = 0; i < u.size(); ++i) out[i] = f(u[i]);
    return out;
}

}  // namespace

IdentityReport verify_identities(const WeightedGraph& g, const VertexFunction& u) {
    require_positive(g, u, "verify_identities");
    const int n = g.size();
    IdentityReport rep;

    VertexFunction lap_u = laplacian_field(g, u);
    VertexFunction log_u = map_values(u, [](double v) { return std::log(v); });
    VertexFunction sqrt_u = map_values(u, [](double v) { return std::sqrt(v); });

    // Fundamental identity Delta(H(u)) = H'(u) Delta u + (1/mu) sum w Lambda_H.
    for (const ScalarField& H : {sf_half_square(), sf_sqrt(), sf_neg_log()}) {
        VertexFunction Hu(n), lhs(n), rhs(n), t1(n), t2(n);
        for (int x = 0; x < n; ++x) Hu[x] = H.eval(u[x]);
        lhs = laplacian_field(g, Hu);
        for (int x = 0; x < n; ++x) {
            double s = 0.0;
            for (const auto& nb : g.neighbors(x)) s += nb.w * bregman(H, u[nb.to], u[x]);
            t1[x] = H.deriv(u[x]) * lap_u[x];
            t2[x] = s / g.mu(x);
            rhs[x] = t1[x] + t2[x];
        }
        rep.items.push_back(
            field_residual("fundamental_identity[" + H.name + "]", lhs, rhs, {&t1, &t2}));
    }

    // Delta(u^2) = 2 u Delta u + 2 Gamma(u)
    {
        VertexFunction u2(n), rhs(n), t1(n), t2(n);
        for (int x = 0; x < n; ++x) u2[x] = u[x] * u[x];
        VertexFunction lhs = laplacian_field(g, u2);
        for (int x = 0; x < n; ++x) {
            t1[x] = 2.0 * u[x] * lap_u[x];
            t2[x] = 2.0 * gamma(g, u, u, x);
            rhs[x] = t1[x] + t2[x];
        }
        rep.items.push_back(field_residual("square_identity", lhs, rhs, {&t1, &t2}));
    }

    // 2 sqrt(u) Delta sqrt(u) = Delta u - 2 Gamma(sqrt u)
    {
        VertexFunction lap_sqrt = laplacian_field(g, sqrt_u);
        VertexFunction lhs(n), rhs(n), t2(n);
        for (int x = 0; x < n; ++x) {
            lhs[x] = 2.0 * sqrt_u[x] * lap_sqrt[x];
            t2[x] = 2.0 * gamma(g, sqrt_u, sqrt_u, x);
            rhs[x] = lap_u[x] - t2[x];
        }
        rep.items.push_back(field_residual("square_root_identity", lhs, rhs, {&lap_u, &t2}));
    }

    // Delta u / u = Delta log u + Psi_Upsilon(log u)
    VertexFunction lap_log = laplacian_field(g, log_u);
    VertexFunction psi_ups_log = psi_upsilon_field(g, log_u);
    {
        VertexFunction lhs(n), rhs(n);
        for (int x = 0; x < n; ++x) {
            lhs[x] = lap_u[x] / u[x];
            rhs[x] = lap_log[x] + psi_ups_log[x];
        }
        rep.items.push_back(field_residual("log_identity", lhs, rhs, {&lap_log, &psi_ups_log}));
    }

    // Delta(u^a) / (a u^a) = Delta log u + Psi_{Upsilon_a}(log u) / a
    for (double a : {0.25, 0.5, 0.75}) {
        VertexFunction ua(n);
        for (int x = 0; x < n; ++x) ua[x] = std::pow(u[x], a);
        VertexFunction lap_ua = laplacian_field(g, ua);
        VertexFunction lhs(n), rhs(n), t2(n);
        for (int x = 0; x < n; ++x) {
            lhs[x] = lap_ua[x] / (a * ua[x]);
            t2[x] = psi(g, sf_upsilon_alpha(a), log_u, x) / a;
            rhs[x] = lap_log[x] + t2[x];
        }
        rep.items.push_back(field_residual("power_identity[a=" + std::to_string(a) + "]", lhs,
                                           rhs, {&lap_log, &t2}));
    }

    // Psi_Upsilon(log u) - 2 Psi_{Upsilon_{1/2}}(log u) = 2 Gamma(sqrt u) / u
    {
        VertexFunction lhs(n), rhs(n), t2(n);
        for (int x = 0; x < n; ++x) {
            t2[x] = 2.0 * psi(g, sf_upsilon_alpha(0.5), log_u, x);
            lhs[x] = psi_ups_log[x] - t2[x];
            rhs[x] = 2.0 * gamma(g, sqrt_u, sqrt_u, x) / u[x];
        }
        rep.items.push_back(
            field_residual("half_power_gamma_identity", lhs, rhs, {&psi_ups_log, &t2}));
    }

    return rep;
}

double scalar_field_derivative_mismatch(const ScalarField& f, double a, double b, int samples) {
    double worst = 0.0;
    for (int i = 1; i < samples; ++i) {
        double y = a + (b - a) * i / samples;
        double h = std::max(1e-6, std::abs(y) * 1e-6);
        if (!f.contains(y - h) || !f.contains(y + h)) continue;
        double fd = (f.eval(y + h) - f.eval(y - h)) / (2.0 * h);
        double an = f.deriv(y);
        worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
    }
    return worst;
}

}  // namespace liyau
