#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "liyau/cd_verifier.hpp"
#include "liyau/operators.hpp"
#include "liyau/rng.hpp"

using namespace liyau;

TEST_CASE("l_alpha definitions and limits") {
    auto tp = build_preset("two-point").graph;
    VertexFunction v{0.0, -1.0};
    // alpha = 1/2 on the two-point graph: -(1/a)(e^{a(v(y)-v(x))} - 1)
    CHECK(l_alpha(tp, 0.5, v, 0) ==
          doctest::Approx(-2.0 * (std::exp(-0.5) - 1.0)).epsilon(1e-14));
    CHECK(l_alpha(tp, 0.0, v, 0) == -laplacian(tp, v, 0));

    // constant v vanishes; alpha -> 0 recovers Lv; the identity
    // L_alpha(v) = Lv - (1/a) Psi_Upsilon(a v) holds
    auto ball = build_preset("Z-ball(2,3)");
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    VertexFunction w(ball.graph.size());
    for (auto& z : w) z = unif(rng);
    double norm = 0.0;
    for (double z : w) norm = std::max(norm, std::abs(z));
    for (int x : ball.interior(1)) {
        VertexFunction c(ball.graph.size(), 3.0);
        CHECK(l_alpha(ball.graph, 0.37, c, x) == 0.0);
        double lv = -laplacian(ball.graph, w, x);
        CHECK(std::abs(l_alpha(ball.graph, 1e-6, w, x) - lv) <= 1e-5 * norm);
        for (double a : {0.25, 0.5, 0.9}) {
            VertexFunction av(w.size());
            for (size_t i = 0; i < w.size(); ++i) av[i] = a * w[i];
            double expect = lv - psi_upsilon(ball.graph, av, x) / a;
            CHECK(l_alpha(ball.graph, a, w, x) == doctest::Approx(expect).epsilon(1e-12));
            // positivity of L_alpha propagates to Lv
            if (l_alpha(ball.graph, a, w, x) > 0.0) CHECK(lv > 0.0);
        }
    }
    CHECK_THROWS_AS(l_alpha(tp, 1.0, v, 0), std::domain_error);
}

TEST_CASE("c_alpha matches Delta Psi at alpha = 0 and the two-point closed form") {
    auto tp = build_preset("two-point").graph;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        VertexFunction v{unif(rng), unif(rng)};
        double lv = -laplacian(tp, v, 0);
        CHECK(c_alpha(tp, 0.0, v, 0) == doctest::Approx(2.0 * std::sinh(lv)).epsilon(1e-12));
        // alpha case: e^{-alpha Lv}(e^{Lv} - e^{-Lv})
        for (double a : {0.25, 0.5}) {
            CHECK(c_alpha(tp, a, v, 0) ==
                  doctest::Approx(std::exp(-a * lv) * 2.0 * std::sinh(lv)).epsilon(1e-12));
        }
    }
    // two independent code paths for C_0 = Delta Psi_{Upsilon'}
    auto ball = build_preset("Z-ball(2,3)");
    VertexFunction w(ball.graph.size());
    for (auto& z : w) z = unif(rng);
    for (int x : ball.interior(1)) {
        VertexFunction p = psi_upsilon_prime_field(ball.graph, w);
        CHECK(std::abs(c_alpha(ball.graph, 0.0, w, x) - laplacian(ball.graph, p, x)) <= 1e-13 *
              std::max(1.0, std::abs(laplacian(ball.graph, p, x))));
    }
    // constant v
    VertexFunction c(ball.graph.size(), 1.0);
    CHECK(c_alpha(ball.graph, 0.3, c, 0) == 0.0);
}

TEST_CASE("margin on the two-point equality case and shift invariance") {
    auto tpg = build_preset("two-point");
    auto g = tpg.graph;
    CDCheckProblem prob(g, 0, 0.0, cd_two_point());
    CHECK(prob.free_vertices.size() == 1);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-4.0, -1e-3);
    int feasible_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
        VertexFunction v{0.0, unif(rng)};  // Lv(x1) = -v(x2) > 0
        Margin m = margin(prob, v);
        if (m.feasible) {
            ++feasible_seen;
            CHECK(m.value == doctest::Approx(0.0).epsilon(1e-12));
            // adding a constant does not change anything
            VertexFunction vs{1.7, v[1] + 1.7};
            Margin ms = margin(prob, vs);
            CHECK(ms.feasible == m.feasible);
            CHECK(ms.value == doctest::Approx(m.value).epsilon(1e-10));
            CHECK(ms.lv == doctest::Approx(m.lv).epsilon(1e-12));
        }
    }
    CHECK(feasible_seen > 0);
    // infeasible direction: v(x2) > 0 makes Lv(x1) negative
    Margin bad = margin(prob, VertexFunction{0.0, 2.0});
    CHECK(!bad.feasible);
}

TEST_CASE("margin depends only on the 2-ball") {
    auto ball = build_preset("Z-ball(1,5)");
    const auto& g = ball.graph;
    int center = g.index_of("0");
    CDCheckProblem prob(g, center, 0.0, cd_ricci_flat(2, 1.0));
    // 2-ball of the center: -2..2, so 4 free vertices
    CHECK(prob.free_vertices.size() == 4);
    VertexFunction v(g.size(), 0.0);
    v[g.index_of("1")] = -0.7;
    v[g.index_of("-1")] = -0.9;
    v[g.index_of("2")] = -1.5;
    Margin m1 = margin(prob, v);
    v[g.index_of("4")] = 100.0;  // outside the 2-ball
    v[g.index_of("-5")] = -50.0;
    Margin m2 = margin(prob, v);
    CHECK(m1.value == m2.value);
    CHECK(m1.feasible == m2.feasible);
    CHECK(m1.lv == m2.lv);
}

TEST_CASE("search finds the star counterexample and respects the negative control") {
    // star(3) against 2 sinh: the family drives the margin to -inf
    auto star = build_preset("star(3)");
    CDCheckProblem sp(star.graph, star.graph.index_of("x*"), 0.0, cd_two_point());
    auto res = search_violation(sp, {10000, 100}, 1);
    CHECK(res.violation_found);
    CHECK(res.best.value < -100.0);
    CHECK(res.best.feasible);
    // the witness margin is reproducible
    Margin again = margin(sp, res.witness);
    CHECK(again.value == doctest::Approx(res.best.value).epsilon(1e-12));

    // two-point against an inflated 2.1 sinh
    CDFunction inflated = cd_two_point();
    auto base_eval = inflated.eval;
    inflated.name = "two_point_x2.1";
    inflated.eval = [base_eval](double x) { return 1.05 * base_eval(x); };
    auto tp = build_preset("two-point");
    CDCheckProblem tp_prob(tp.graph, 0, 0.0, inflated);
    auto res2 = search_violation(tp_prob, {2000, 50}, 3);
    CHECK(res2.violation_found);

    // negative control: lattice center with its own Ricci-flat CD-function
    auto ball = build_preset("Z-ball(1,3)");
    CDCheckProblem np(ball.graph, ball.graph.index_of("0"), 0.0, cd_ricci_flat(2, 1.0));
    auto res3 = search_violation(np, {10000, 200}, 5);
    CHECK(!res3.violation_found);
    CHECK(res3.best.value >= -1e-8);
    CHECK(res3.feasible_count > 0);

    // determinism
    auto rerun = search_violation(sp, {10000, 100}, 1);
    CHECK(rerun.best.value == res.best.value);
}

TEST_CASE("counterexample families") {
    for (double t : {1.0, 2.0, 5.0, 10.0}) {
        auto star = family(FamilyKind::Star, t);
        const auto& g = star.preset.graph;
        double c0 = c_alpha(g, 0.0, star.v, star.base);
        double formula = 6.0 - std::exp(t) - 5.0 * std::exp(-t);
        CHECK(std::abs(c0 - formula) <= 1e-10);
        // Lv values of the displayed family
        CHECK(-laplacian(g, star.v, star.base) == doctest::Approx(t).epsilon(1e-13));
        CHECK(-laplacian(g, star.v, g.index_of("x1")) == doctest::Approx(t).epsilon(1e-13));
        CHECK(-laplacian(g, star.v, g.index_of("x2")) == doctest::Approx(-t).epsilon(1e-13));

        auto hex = family(FamilyKind::HexagonPatch, t);
        double c0hex = c_alpha(hex.preset.graph, 0.0, hex.v, hex.base);
        CHECK(c0hex == c0);  // leaves add exact zeros
    }
    CHECK(6.0 - std::exp(10.0) - 5.0 * std::exp(-10.0) ==
          doctest::Approx(-22020.466).epsilon(1e-6));
    CHECK_THROWS_AS(family(FamilyKind::Star, 0.0), std::domain_error);
}

TEST_CASE("tightness witness achieves equality") {
    for (int d : {1, 2, 3}) {
        for (double a : {0.5, 1.0, 2.0, 5.0}) {
            auto w = tightness_witness(d, 1.0, a);
            CHECK(w.lv0 == doctest::Approx(a).epsilon(1e-12));
            CHECK(w.residual <= 1e-10);
        }
    }
    // d=1, mu0=1, a=2: v(0)=1, distance-1 value 0, distance-2 value -3
    auto w = tightness_witness(1, 1.0, 2.0);
    const auto& g = w.ball.graph;
    CHECK(w.v[g.index_of("0")] == doctest::Approx(1.0));
    CHECK(w.v[g.index_of("1")] == 0.0);
    CHECK(w.v[g.index_of("2")] == doctest::Approx(-3.0));
    // Lv is constant over the closed neighborhood of the origin
    CHECK(-laplacian(g, w.v, g.index_of("1")) == doctest::Approx(w.lv0).epsilon(1e-12));
    // non-unit measure
    auto w2 = tightness_witness(2, 0.5, 1.0);
    CHECK(w2.residual <= 1e-10);
}

TEST_CASE("cutoff CD inequality") {
    auto ball = build_preset("Z-ball(1,8)");
    const auto& g = ball.graph;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-1.5, 1.5);
    // psi = 1 on B_r, linear taper to 0 at 2r (kept positive where required)
    auto psi_cut = [&](int r) {
        VertexFunction psi_fn(g.size());
        for (int x = 0; x < g.size(); ++x) {
            int dist = ball.l1[x];
            psi_fn[x] = dist < r ? 1.0
                                 : std::max(0.0, (2.0 * r - dist) / static_cast<double>(r));
        }
        return psi_fn;
    };
    VertexFunction psi_fn = psi_cut(4);
    int applicable = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        VertexFunction v(g.size());
        for (auto& z : v) z = unif(rng);
        for (int x : ball.interior(2)) {
            if (!(psi_fn[x] > 0.0)) continue;
            bool ok = true;
            for (const auto& nb : g.neighbors(x))
                if (!(psi_fn[nb.to] > 0.0)) ok = false;
            if (!ok) continue;
            auto chk = cutoff_cd_check(g, 0.5, psi_fn, v, x);
            if (!chk.applicable) continue;
            ++applicable;
            CHECK(chk.slack >= -1e-9 * std::max(1.0, std::abs(chk.lhs)));
        }
        if (applicable > 200) break;
    }
    CHECK(applicable > 0);
    // psi == 1 reduces to the plain CD_alpha inequality (no correction term)
    VertexFunction ones(g.size(), 1.0);
    VertexFunction v(g.size());
    for (auto& z : v) z = unif(rng);
    for (int x : ball.interior(2)) {
        auto chk = cutoff_cd_check(g, 0.5, ones, v, x);
        if (chk.applicable) {
            double lv = -laplacian(g, v, x);
            CHECK(chk.rhs ==
                  doctest::Approx(cd_ricci_flat_alpha(2, 1.0, 0.5).eval(std::max(lv, 0.0)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("neighbor-sum bound under negative power Laplacian") {
    auto ball = build_preset("Z-ball(1,4)");
    const auto& g = ball.graph;
    std::mt19937_64 rng(77);
    int tested = 0;
    for (int trial = 0; trial < 2000 && tested < 300; ++trial) {
        VertexFunction u = random_positive(g, 2.0, derive_seed(99, trial));
        for (double a : {0.3, 0.5, 0.8}) {
            for (int x : ball.interior(1)) {
                double slack = d_power_bound_slack(g, a, u, x);
                if (!std::isnan(slack)) {
                    ++tested;
                    CHECK(slack >= -1e-10);
                }
            }
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("theta decomposition on the one-dimensional lattice") {
    auto ball = build_preset("Z-ball(1,6)");
    const auto& g = ball.graph;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(-2.5, 2.5);
    int lower_checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        VertexFunction v(g.size());
        for (auto& z : v) z = unif(rng);
        for (int x : ball.interior(2)) {
            auto chk = theta_inequality_check(g, v, x);
            CHECK(chk.decomposition_slack >= -1e-11);
            if (!std::isnan(chk.theta_lower_slack)) {
                ++lower_checked;
                CHECK(chk.theta_lower_slack >= -1e-11);
            }
        }
    }
    CHECK(lower_checked > 0);
    // wrong setting is rejected
    auto p3 = build_preset("path3").graph;
    VertexFunction v(3, 0.0);
    CHECK_THROWS_AS(theta_z(p3, v, p3.index_of("x*")), std::invalid_argument);
}
