#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <memory>

#include "liyau/estimates.hpp"
#include "liyau/operators.hpp"
#include "liyau/rng.hpp"

using namespace liyau;

namespace {

std::shared_ptr<const WeightedGraph> shared_graph(const char* preset) {
    return std::make_shared<const WeightedGraph>(build_preset(preset).graph);
}

std::vector<int> all_of(const WeightedGraph& g) {
    std::vector<int> v(g.size());
    for (int i = 0; i < g.size(); ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_CASE("pointwise gradient bound on small graphs") {
    auto grid = geometric_grid(1e-3, 10.0, 100);

    auto tp = shared_graph("two-point");
    auto rep = liyau_sweep(tp, all_of(*tp), cd_two_point(), 0.0, 20, grid, 11);
    CHECK(rep.pass());
    CHECK(rep.min_slack >= -1e-8);

    // constant data: slack is exactly phi(t) > 0
    RelaxationFunction phi(cd_two_point());
    auto ctraj = solve_spectral(tp, {1.0, 1.0}, grid);
    auto crep = liyau_check(ctraj, phi, 0.0, all_of(*tp));
    CHECK(crep.min_slack == doctest::Approx(phi.value(grid.back())).epsilon(1e-12));

    auto p3 = shared_graph("path3");
    auto rep3 = liyau_sweep(p3, all_of(*p3), cd_path3(), 0.0, 20, grid, 12);
    CHECK(rep3.pass());

    // alpha > 0 on the two-point graph with its alpha CD-function
    auto repa = liyau_sweep(tp, all_of(*tp), cd_two_point_alpha(0.5), 0.5, 20, grid, 13);
    CHECK(repa.pass());
}

TEST_CASE("the two forms of the differential estimate agree") {
    auto tp = shared_graph("two-point");

    // mild contrast, fine grid: the agreement is within 1e-6
    {
        auto grid = geometric_grid(0.05, 2.0, 1500);
        RelaxationFunction phi(cd_two_point());
        auto traj = solve_spectral(tp, {2.0, 1.0}, grid);
        auto a = liyau_check(traj, phi, 0.0, all_of(*tp));
        auto b = differential_harnack_check(traj, phi, 0.0, all_of(*tp));
        CHECK(b.fd_budget <= 1e-6);
        CHECK(std::abs(a.min_slack - b.min_slack) <= 1e-6);
    }

    auto grid = geometric_grid(1e-3, 10.0, 200);
    RelaxationFunction phi(cd_two_point());
    for (int trial = 0; trial < 5; ++trial) {
        auto u0 = random_positive(*tp, 2.0, derive_seed(21, trial));
        auto traj = solve_spectral(tp, u0, grid);
        auto a = liyau_check(traj, phi, 0.0, all_of(*tp));
        auto b = differential_harnack_check(traj, phi, 0.0, all_of(*tp));
        // verdicts agree up to the reported finite-difference budget
        CHECK(std::abs(a.min_slack - b.min_slack) <= 1.05 * b.fd_budget + 1e-9);
        CHECK(b.pass());
        // alpha = 1/2 variant relates to 2 Gamma(sqrt u)/u: check one sample
        size_t mid = grid.size() / 2;
        VertexFunction v(2), squ(2);
        for (int x = 0; x < 2; ++x) {
            v[x] = std::log(traj.values[mid][x]);
            squ[x] = std::sqrt(traj.values[mid][x]);
        }
        for (int x = 0; x < 2; ++x) {
            double lhs = psi_upsilon(*tp, v, x) - 2.0 * psi(*tp, sf_upsilon_alpha(0.5), v, x);
            double rhs = 2.0 * gamma(*tp, squ, x) / traj.values[mid][x];
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
}

TEST_CASE("two-time comparison via the chained estimate") {
    auto tp = shared_graph("two-point");
    auto rep = harnack_sweep(tp, cd_two_point(), 0.0, 50, 31);
    CHECK(rep.pass());
    // alpha variant divides the distance term by (1 - alpha)
    auto repa = harnack_sweep(tp, cd_two_point(), 0.5, 50, 32);
    CHECK(repa.pass());

    // degenerate pair x1 = x2 at the minimum vertex: slack tends to 0+
    RelaxationFunction phi(cd_two_point());
    auto eta = [&phi](double t) { return phi.value(t); };
    double prev = std::numeric_limits<double>::infinity();
    for (double dt : {0.5, 0.1, 0.02}) {
        auto traj = solve_spectral(tp, {4.0, 1.0}, {1.0, 1.0 + dt});
        auto rep2 = harnack_check(traj, eta, {{0, 1, 1, 1}});
        CHECK(rep2.min_slack >= 0.0);
        CHECK(rep2.min_slack < prev);
        prev = rep2.min_slack;
    }

    // t1 = 0 is allowed since phi ~ -log t is integrable at 0
    auto traj0 = solve_spectral(tp, {4.0, 1.0}, {0.0, 0.5});
    auto rep0 = harnack_check(traj0, eta, {{0, 1, 0, 1}});
    CHECK(rep0.pass());
}

TEST_CASE("local lattice estimate is bounded in r") {
    auto rep = local_liyau_check(1, {4, 8}, 0.0, 1.0, 6, 77);
    CHECK(rep.bounded);
    for (double v : rep.r_times_s) CHECK(v >= 0.0);
    // a restricted global solution has nonpositive slack already
    CHECK(rep.s_plus[0] <= 1e-9);
    // alpha > 0 path
    auto repa = local_liyau_check(1, {4}, 0.5, 1.0, 4, 78);
    CHECK(repa.bounded);
}

TEST_CASE("sharpness of the two-point bound") {
    auto grid = geometric_grid(0.01, 5.0, 200);
    auto rep = sharpness_two_point(1e9, grid);
    CHECK(rep.one_sided);
    CHECK(rep.max_relative_gap <= 1e-4);
    // symmetric data is maximally non-sharp: w == 0
    auto sym = sharpness_two_point(1.0 + 1e-14, grid);
    CHECK(sym.max_relative_gap == doctest::Approx(1.0).epsilon(1e-9));
    // one-sidedness for moderate ratios
    for (double R : {1.5, 3.0, 100.0}) CHECK(sharpness_two_point(R, grid).one_sided);
    CHECK_THROWS_AS(sharpness_two_point(0.5, grid), std::domain_error);
}

TEST_CASE("scaled-lattice sweep shrinks toward the classical profile") {
    // relaxation part only (flow samples are exercised in the acceptance run)
    auto rep = continuum_sweep({1.0, 0.3}, {0.05}, 2, 5, 6);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[1].dev_tau_reading < rep.rows[0].dev_tau_reading);
    CHECK(rep.tau2_reading_valid);
    // tau = 1: the two readings coincide
    CHECK(rep.rows[0].dev_tau_reading == doctest::Approx(rep.rows[0].dev_tau2_reading));
}
