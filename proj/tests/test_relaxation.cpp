#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "liyau/cd_function.hpp"
#include "liyau/relaxation.hpp"

using namespace liyau;

TEST_CASE("tail integrals against closed forms") {
    RelaxationFunction sinh2(cd_two_point());
    for (double x : {0.05, 0.5, 2.0, 10.0}) {
        double closed = -0.5 * std::log(std::tanh(0.5 * x));
        CHECK(sinh2.tail(x) == doctest::Approx(closed).epsilon(1e-14));     // closed path
        CHECK(sinh2.tail_numeric(x) == doctest::Approx(closed).epsilon(1e-10));  // quadrature
    }
    RelaxationFunction quad(cd_quadratic(3.0));
    for (double x : {0.01, 1.0, 50.0})
        CHECK(quad.tail_numeric(x) == doctest::Approx(1.0 / (3.0 * x)).epsilon(1e-10));
    // G strictly decreasing with G(0+) = inf
    for (const char* spec : {"two_point", "quadratic(c=1)", "ricci_flat(D=2,mu0=1)", "path3"}) {
        RelaxationFunction r(make_cd(spec));
        CHECK(r.tail(0.01) > r.tail(1.0));
        CHECK(r.tail(1.0) > r.tail(10.0));
    }
    CHECK_THROWS_AS(sinh2.tail(0.0), std::domain_error);
}

TEST_CASE("phi: closed forms and numeric inversion") {
    RelaxationFunction sinh2(cd_two_point());
    CHECK(sinh2.value(1.0) == doctest::Approx(-std::log(std::tanh(1.0))).epsilon(1e-15));
    RelaxationFunction quad(cd_quadratic(2.0));
    for (double t : {0.2, 1.0, 7.0})
        CHECK(quad.value_numeric(t) == doctest::Approx(1.0 / (2.0 * t)).epsilon(1e-10));
    // numeric inversion vs closed form for 2 sinh on a log grid
    for (double t : geometric_grid(1e-3, 10.0, 60)) {
        double closed = -std::log(std::tanh(t));
        CHECK(sinh2.value_numeric(t) == doctest::Approx(closed).epsilon(1e-8));
    }
    // inverse round trip G(phi(t)) = t
    RelaxationFunction rf(cd_ricci_flat(2, 1.0));
    for (double t : {1e-3, 0.1, 1.0, 25.0})
        CHECK(rf.tail(rf.value(t)) == doctest::Approx(t).epsilon(1e-10));
    CHECK_THROWS_AS(sinh2.value(0.0), std::domain_error);
    CHECK_THROWS_AS(sinh2.value(-1.0), std::domain_error);
}

TEST_CASE("phi shape invariants") {
    for (const char* spec :
         {"two_point", "ricci_flat(D=2,mu0=1)", "path3", "lambda(lambda=0.5)",
          "triangle_minorant"}) {
        RelaxationFunction r(make_cd(spec));
        auto grid = geometric_grid(1e-3, 20.0, 40);
        double prev = std::numeric_limits<double>::infinity();
        std::vector<double> logphi;
        for (double t : grid) {
            double p = r.value(t);
            CHECK(p < prev);
            prev = p;
            logphi.push_back(std::log(p));
        }
        // log-convexity: second differences of log phi on the log-spaced grid
        for (size_t i = 1; i + 1 < grid.size(); ++i) {
            double hm = grid[i] - grid[i - 1], hp = grid[i + 1] - grid[i];
            double second = 2.0 * (hm * logphi[i + 1] - (hm + hp) * logphi[i] + hp * logphi[i - 1]) /
                            (hm * hp * (hm + hp));
            CHECK(second >= -1e-8);
        }
        // phi(0+) = inf proxy for exponentially growing F
        CHECK(r.value(1e-8) > 10.0);
    }
}

TEST_CASE("ode residuals") {
    auto grid = geometric_grid(1e-3, 10.0, 30);
    RelaxationFunction sinh2(cd_two_point());
    CHECK(ode_residual(sinh2, grid) <= 1e-7);
    RelaxationFunction quad(cd_quadratic(1.0));
    CHECK(ode_residual(quad, grid) <= 1e-10);
    // numeric-inversion path stays within the same budget
    RelaxationFunction rf(cd_ricci_flat(2, 1.0));
    CHECK(ode_residual(rf, grid) <= 1e-7);
    // a deliberately wrong phi is flagged at unit size:
    // phi(t) = 1/t against F = 2x^2 leaves |phi' + F| / |phi'| = 1
    double res = ode_residual([](double t) { return 1.0 / t; }, cd_quadratic(2.0), {0.5, 1.0, 2.0});
    CHECK(res == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("scaling law phi_tau(t) = phi(t/tau)/tau") {
    // ricci_flat(D, mu0*tau) is exactly the tau-rescaling of ricci_flat(D, mu0)
    RelaxationFunction base(cd_ricci_flat(2, 1.0));
    RelaxationFunction scaled_mu(cd_ricci_flat(2, 0.5));
    double tau = 0.5, t = 1.0;
    CHECK(base.scaled(tau, t) == doctest::Approx(scaled_mu.value(t)).epsilon(1e-8));
    CHECK(base.scaled(1.0, 0.7) == doctest::Approx(base.value(0.7)).epsilon(1e-12));
}

TEST_CASE("asymptotics report") {
    RelaxationFunction sinh2(cd_two_point());
    auto rep = asymptotics_report(sinh2, sinh2.source().nu, sinh2.source().gamma_rate);
    REQUIRE(rep.small_t_applicable);
    CHECK(rep.small_t_pass);  // phi ~ -log t
    CHECK(!rep.large_t_applicable);
    CHECK(rep.observed_decay_rate == doctest::Approx(2.0).epsilon(1e-2));  // phi ~ 2e^{-2t}

    RelaxationFunction rf(cd_ricci_flat(2, 1.0));
    auto rep2 = asymptotics_report(rf, rf.source().nu, rf.source().gamma_rate);
    REQUIRE(rep2.large_t_applicable);
    CHECK(rep2.large_t_pass);  // t * 2 * phi(t) -> 1, i.e. t phi -> 1/2
    CHECK(rep2.small_t_pass);  // phi ~ -2 log t
}

TEST_CASE("weakening F pointwise never lowers phi") {
    CDFunction f1 = cd_ricci_flat(2, 1.0);
    CDFunction f2 = cd_quadratic(2.0);
    auto mn = combine(CombineOp::Min, f1, &f2);
    RelaxationFunction phi1(f1), phim(mn);
    for (double t : {0.01, 0.1, 1.0, 10.0})
        CHECK(phim.value(t) >= phi1.value(t) * (1.0 - 1e-9));
}
