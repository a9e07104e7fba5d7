#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace liyau {

// A candidate CD-function F : [0,inf) -> [0,inf). The defining properties are
// F(0) = 0, F(x)/x strictly increasing, and 1/F integrable at infinity; they
// are validated by verify_cd, not assumed. Catalog entries carry closed-form
// tails/inverses where they exist and the analytic rates used by the
// asymptotics report.
struct CDFunction {
    std::string name;
    std::function<double(double)> eval;
    std::optional<std::function<double(double)>> closed_tail;  // G(x) = int_x^inf dr/F
    std::optional<std::function<double(double)>> closed_phi;   // phi(t) = G^{-1}(t)
    bool integrable_hint = true;  // analytic integrability at infinity
    bool is_cd_hint = true;       // whether the catalog expects verify_cd to pass
    double a_star = 1.0;          // split point handed to superadditivity_gamma
    // F ~ c e^{gamma_rate r} as r -> inf (log singularity of phi at 0), NaN if n/a
    double gamma_rate = std::numeric_limits<double>::quiet_NaN();
    // F ~ nu r^2 as r -> 0 (phi ~ 1/(nu t) at infinity), NaN if n/a
    double nu = std::numeric_limits<double>::quiet_NaN();

    double operator()(double x) const { return eval(x); }
};

// Catalog. Spec grammar: name(param=value,...). Names:
//   two_point                       2 sinh a
//   two_point_alpha(alpha=..)       2 sinh((1-alpha) a)
//   quadratic(c=..)                 c a^2
//   power(c=..,p=..)                c a^p, p > 1
//   lambda(lambda=..)               exp(-(1-l)a/2) (l e^{(1-l)a} + (1-l)e^{-l a} - 1)
//   path3                           e^{-a} (e^a - e^{-a})^2 / 2
//   triangle_raw                    2 (e^{a/2} + 1 - 2 e^{-a/2})      [not CD]
//   triangle_minorant               4 sinh(a/2)
//   complete(D=..,mu0=..,alpha=..)  (D/mu0^2) e^{-a mu0 alpha/D}(e^{a mu0/D}-1)(D e^{-a mu0/D}+1)
//                                   [not CD for D >= 2]
//   ricci_flat(D=..,mu0=..)         (D/mu0^2) e^{-mu0 a/D}[Y(2mu0 a/D) + (D-1)Y(-2mu0 a/(D(D-1)))]
//   ricci_flat_alpha(D=..,mu0=..,alpha=..)
//   tau_lattice(d=..,tau=..)        ricci_flat with D = 2d, mu0 = tau^2
CDFunction make_cd(const std::string& spec);

CDFunction cd_two_point();
CDFunction cd_two_point_alpha(double alpha);
CDFunction cd_quadratic(double c);
CDFunction cd_power(double c, double p);
CDFunction cd_lambda(double lambda);
CDFunction cd_path3();
CDFunction cd_triangle_raw();
CDFunction cd_triangle_minorant();
CDFunction cd_complete(int D, double mu0, double alpha);
CDFunction cd_ricci_flat(int D, double mu0);
CDFunction cd_ricci_flat_alpha(int D, double mu0, double alpha);
CDFunction cd_tau_lattice(int d, double tau);

struct CDReport {
    bool f0_ok = false;
    bool nonneg_ok = false;
    bool monotone_ok = false;       // F(x)/x strictly increasing on the grid
    double first_violation = std::numeric_limits<double>::quiet_NaN();
    bool integrable_heuristic = false;  // octave integrals of 1/F decay geometrically
    bool integrable_hint = false;
    std::string detail;
    bool pass() const { return f0_ok && nonneg_ok && monotone_ok && integrable_heuristic; }
};

// Validation grid {10^k : k=-6..2} merged with linspace(0.01, 50, 500).
std::vector<double> cd_default_grid();

// Checks F(0)=0, nonnegativity and strict monotonicity of F(x)/x over the
// grid (strictness by exact float comparison, tolerance 0), then probes
// integrability of 1/F at infinity by octave doubling from tail_probe.
CDReport verify_cd(const CDFunction& F, const std::vector<double>& grid = cd_default_grid(),
                   double tail_probe = 1.0);

enum class CombineOp { Sum, Min, Scale };

// Pointwise sum, pointwise min, or x -> a F(b x). The result is re-verified
// on the standard grid; a verification failure throws std::logic_error.
CDFunction combine(CombineOp op, const CDFunction& f1, const CDFunction* f2 = nullptr,
                   double a = 1.0, double b = 1.0);

// Lemma-style superadditivity constant for a strictly increasing C^1 function
// H with H(0) = 0 that is convex beyond a_star: gamma = c1/c0 with
// c0 = min H', c1 = max H' on [0, a_star] (dense sampling, numeric H').
// Then H(x) + H(y) <= H(x + gamma y) on [0,inf)^2.
double superadditivity_gamma(const std::function<double(double)>& H, double a_star);

// Worst violation of H(x)+H(y) <= H(x+gamma y) over n seeded random pairs in
// [0, box]^2; a nonpositive result (up to roundoff) means the bound held.
double superadditivity_worst_violation(const std::function<double(double)>& H, double gamma,
                                       double box, int n, unsigned long long seed);

// Unique positive root a*(eta) of e^{-eta a} - 1 + a for eta > 1 (the trivial
// root at 0 is excluded), by bracketing bisection to 1e-12.
double eta_root(double eta);

}  // namespace liyau
