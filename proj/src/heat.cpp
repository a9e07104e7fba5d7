#include "liyau/heat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "liyau/operators.hpp"
#include "liyau/rng.hpp"

namespace liyau {

double HeatTrajectory::mass(size_t i) const {
    double s = 0.0;
    for (int x = 0; x < g().size(); ++x) s += g().mu(x) * values[i][x];
    return s;
}

double HeatTrajectory::mass_drift() const {
    if (values.empty()) return 0.0;
    double m0 = mass(0), worst = 0.0;
    for (size_t i = 1; i < values.size(); ++i)
        worst = std::max(worst, std::abs(mass(i) - m0) / std::abs(m0));
    return worst;
}

void HeatTrajectory::require_positive_samples() const {
    for (size_t i = 0; i < values.size(); ++i)
        for (int x = 0; x < g().size(); ++x)
            if (!(values[i][x] > 0.0))
                throw std::runtime_error("heat solution lost positivity at t=" +
                                         std::to_string(times[i]) + ", vertex " +
                                         g().name_of(x));
}

struct SpectralHeatSolver::Impl {
    std::shared_ptr<const WeightedGraph> graph;
    Eigen::VectorXd sqrt_mu, inv_sqrt_mu;
    Eigen::MatrixXd vectors;  // eigenvectors of the symmetrized Laplacian
    Eigen::VectorXd lambdas;
};

SpectralHeatSolver::SpectralHeatSolver(std::shared_ptr<const WeightedGraph> g)
    : impl_(std::make_shared<Impl>()) {
    const WeightedGraph& gr = *g;
    const int n = gr.size();
    impl_->graph = std::move(g);
    impl_->sqrt_mu.resize(n);
    impl_->inv_sqrt_mu.resize(n);
    for (int x = 0; x < n; ++x) {
        impl_->sqrt_mu[x] = std::sqrt(gr.mu(x));
        impl_->inv_sqrt_mu[x] = 1.0 / impl_->sqrt_mu[x];
    }
    // S = M^{-1/2} (W - diag(sum w)) M^{-1/2}; weight symmetry makes S symmetric.
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        double deg = 0.0;
        for (const auto& nb : gr.neighbors(x)) {
            if (gr.weight(nb.to, x) != nb.w)
                throw std::invalid_argument("spectral solver needs symmetric weights");
            S(x, nb.to) = nb.w * impl_->inv_sqrt_mu[x] * impl_->inv_sqrt_mu[nb.to];
            deg += nb.w;
        }
        S(x, x) = -deg / gr.mu(x);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed for the heat solver");
    impl_->vectors = es.eigenvectors();
    impl_->lambdas = es.eigenvalues();
}

HeatTrajectory SpectralHeatSolver::solve(const VertexFunction& u0,
                                         const std::vector<double>& t_grid) const {
    const WeightedGraph& g = *impl_->graph;
    require_positive(g, u0, "solve_spectral");
    const int n = g.size();
    Eigen::VectorXd b(n);
    for (int x = 0; x < n; ++x) b[x] = impl_->sqrt_mu[x] * u0[x];
    Eigen::VectorXd coef = impl_->vectors.transpose() * b;

    HeatTrajectory traj;
    traj.graph = impl_->graph;
    traj.method = "spectral";
    traj.times = t_grid;
    traj.values.reserve(t_grid.size());
    for (double t : t_grid) {
        if (t < 0.0) throw std::domain_error("solve_spectral: negative time");
        Eigen::VectorXd scaled = coef;
        for (int k = 0; k < n; ++k) scaled[k] *= std::exp(t * impl_->lambdas[k]);
        Eigen::VectorXd ut = impl_->vectors * scaled;
        VertexFunction u(n);
        for (int x = 0; x < n; ++x) u[x] = ut[x] * impl_->inv_sqrt_mu[x];
        traj.values.push_back(std::move(u));
    }
    traj.require_positive_samples();
    return traj;
}

HeatTrajectory solve_spectral(std::shared_ptr<const WeightedGraph> g, const VertexFunction& u0,
                              const std::vector<double>& t_grid) {
    return SpectralHeatSolver(std::move(g)).solve(u0, t_grid);
}

HeatTrajectory solve_rk(std::shared_ptr<const WeightedGraph> g, const VertexFunction& u0,
                        const std::vector<double>& t_grid, double tol) {
    namespace ode = boost::numeric::odeint;
    const WeightedGraph& gr = *g;
    require_positive(gr, u0, "solve_rk");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("solve_rk: time grid must be strictly increasing");
    if (!t_grid.empty() && t_grid.front() < 0.0)
        throw std::domain_error("solve_rk: negative time");

    auto system = [&gr](const std::vector<double>& u, std::vector<double>& dudt, double) {
        for (int x = 0; x < gr.size(); ++x) {
            double s = 0.0;
            for (const auto& nb : gr.neighbors(x)) s += nb.w * (u[nb.to] - u[x]);
            dudt[x] = s / gr.mu(x);
        }
    };

    // relative error control so that small solution components (floored
    // Dirac tails) track to relative, not absolute, accuracy
    auto stepper =
        ode::make_controlled(1e-30, tol, ode::runge_kutta_dopri5<std::vector<double>>());

    HeatTrajectory traj;
    traj.graph = g;
    traj.method = "rk";
    traj.times = t_grid;
    std::vector<double> state = u0;
    double t_cur = 0.0;
    for (double t : t_grid) {
        if (t > t_cur) {
            ode::integrate_adaptive(stepper, system, state, t_cur, t,
                                    std::max(1e-6, (t - t_cur) / 16.0));
            t_cur = t;
        }
        traj.values.push_back(state);
    }
    traj.require_positive_samples();
    return traj;
}

namespace {

// nonuniform 3-point derivative at the interior grid point t_i
double central_dt(double vm, double v0, double vp, double hm, double hp) {
    return (-hp / (hm * (hm + hp))) * vm + ((hp - hm) / (hm * hp)) * v0 +
           (hm / (hp * (hm + hp))) * vp;
}

}  // namespace

LogEquationReport log_equation_residual(const HeatTrajectory& traj) {
    const WeightedGraph& g = traj.g();
    const size_t nt = traj.times.size();
    if (nt < 3) throw std::invalid_argument("log_equation_residual needs >= 3 time samples");
    traj.require_positive_samples();

    std::vector<VertexFunction> v(nt), lap_v(nt), psi_p(nt), psi_u(nt);
    for (size_t i = 0; i < nt; ++i) {
        v[i].resize(g.size());
        for (int x = 0; x < g.size(); ++x) v[i][x] = std::log(traj.values[i][x]);
        lap_v[i] = laplacian_field(g, v[i]);
        psi_p[i] = psi_upsilon_prime_field(g, v[i]);
        psi_u[i] = psi_upsilon_field(g, v[i]);
    }

    LogEquationReport rep;
    for (size_t i = 1; i + 1 < nt; ++i) {
        double hm = traj.times[i] - traj.times[i - 1];
        double hp = traj.times[i + 1] - traj.times[i];
        for (int x = 0; x < g.size(); ++x) {
            double dv = central_dt(v[i - 1][x], v[i][x], v[i + 1][x], hm, hp);
            rep.dt_vs_psi_prime =
                std::max(rep.dt_vs_psi_prime, scaled_residual(dv, psi_p[i][x]));
            rep.dt_vs_lap_plus_psi = std::max(
                rep.dt_vs_lap_plus_psi, scaled_residual(dv - lap_v[i][x], psi_u[i][x]));
            double dlap = central_dt(lap_v[i - 1][x], lap_v[i][x], lap_v[i + 1][x], hm, hp);
            double dpsi = laplacian(g, psi_p[i], x);
            rep.differentiated = std::max(rep.differentiated, scaled_residual(dlap, dpsi));
        }
    }
    return rep;
}

std::vector<int> lattice_coords(const std::string& name) {
    std::vector<int> c;
    std::stringstream ss(name);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stoi(tok));
    return c;
}

LatticeData lattice_random_positive(double sigma, std::uint64_t seed) {
    return [sigma, seed](const std::vector<int>& c) {
        // coordinate-keyed stream: enlarging the ball extends the same data
        std::uint64_t h = splitmix64(seed);
        for (int x : c) h = splitmix64(h ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(
                                               static_cast<std::int64_t>(x)) + 0x12345ULL)));
        std::mt19937_64 rng(h);
        std::normal_distribution<double> nd(0.0, sigma);
        const double cap = std::min(2.5 * sigma, 8.0);
        return std::exp(std::clamp(nd(rng), -cap, cap));
    };
}

LatticeData lattice_dirac(double eps) {
    return [eps](const std::vector<int>& c) {
        for (int x : c)
            if (x != 0) return eps;
        return 1.0;
    };
}

LatticeData lattice_gaussian(double tau, double t0) {
    return [tau, t0](const std::vector<int>& c) {
        double q = 0.0;
        for (int x : c) q += (tau * x) * (tau * x);
        // floored so the data stays strictly positive with bounded contrast
        return std::max(std::exp(-q / (4.0 * t0)), 1e-12);
    };
}

namespace {

HeatTrajectory solve_ball_once(const PresetGraph& ball, const LatticeData& u0,
                               const std::vector<double>& t_grid, bool use_rk, double rk_tol) {
    auto g = std::make_shared<const WeightedGraph>(ball.graph);
    VertexFunction init(g->size());
    for (int x = 0; x < g->size(); ++x) init[x] = u0(lattice_coords(g->name_of(x)));
    return use_rk ? solve_rk(g, init, t_grid, rk_tol) : solve_spectral(g, init, t_grid);
}

}  // namespace

BallSolution solve_on_ball(int d, int r, const std::vector<double>& t_grid, const LatticeData& u0,
                           double mu0, int pad0, int pad_max, double influence_tol, bool use_rk,
                           double rk_tol) {
    if (r < 1) throw std::invalid_argument("solve_on_ball needs r >= 1");
    int pad = pad0;
    PresetGraph ball = build_lattice_ball(d, 2 * r + pad, mu0);
    HeatTrajectory cur = solve_ball_once(ball, u0, t_grid, use_rk, rk_tol);

    while (true) {
        PresetGraph bigger = build_lattice_ball(d, 2 * r + 2 * pad, mu0);
        HeatTrajectory oracle = solve_ball_once(bigger, u0, t_grid, use_rk, rk_tol);

        double worst = 0.0;
        for (size_t i = 0; i < t_grid.size(); ++i) {
            for (int x = 0; x < ball.graph.size(); ++x) {
                if (ball.l1[x] > 2 * r) continue;
                int xo = bigger.graph.index_of(ball.graph.name_of(x));
                double a = cur.values[i][x], b = oracle.values[i][xo];
                worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
            }
        }
        if (worst <= influence_tol) {
            BallSolution out;
            out.ball = std::move(ball);
            out.traj = std::move(cur);
            out.pad = pad;
            out.influence = worst;
            for (int x = 0; x < out.ball.graph.size(); ++x) {
                if (out.ball.l1[x] <= r) out.r_ball.push_back(x);
                if (out.ball.l1[x] <= 2 * r) out.r2_ball.push_back(x);
            }
            return out;
        }
        pad *= 2;
        if (pad > pad_max)
            throw std::runtime_error("solve_on_ball: pad budget exceeded, influence bound " +
                                     std::to_string(worst));
        ball = std::move(bigger);
        cur = std::move(oracle);
    }
}

}  // namespace liyau
