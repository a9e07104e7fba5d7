#pragma once

#include <map>
#include <string>
#include <vector>

#include "liyau/cd_function.hpp"

namespace liyau {

// The relaxation function phi associated with F: the unique positive solution
// of phi' + F(phi) = 0 with phi(0+) = inf, realized as the inverse of
// G(x) = int_x^inf dr/F(r). Evaluation inverts G with cached monotone
// (x, G(x)) samples; closed forms are used when the catalog provides them.
//
// Construction and warm-up are single-threaded; once warmed, value() on
// already-cached points is read-only.
class RelaxationFunction {
public:
    explicit RelaxationFunction(CDFunction F);

    const CDFunction& source() const { return f_; }

    // G(x), via the closed tail when available.
    double tail(double x) const;
    // G(x) by quadrature regardless of any closed form (cross-check path).
    double tail_numeric(double x) const;

    // phi(t); closed form when available, else monotone inversion of G.
    double value(double t) const;
    // Always the numeric inversion (used to validate closed forms).
    double value_numeric(double t) const;

    // Scaling law: phi_tau(t) = phi(t/tau)/tau, the relaxation function of
    // F_tau(r) = F(tau r)/tau^2.
    double scaled(double tau, double t) const;

private:
    double invert(double t) const;

    CDFunction f_;
    mutable std::map<double, double> g_cache_;    // x -> G(x), numeric path only
    mutable std::map<double, double> phi_cache_;  // t -> phi(t)
};

// max over t_grid of |phi'(t) + F(phi(t))| / max(F(phi(t)), floor), with
// phi' from Richardson-extrapolated central differences (h = 2e-3 t).
double ode_residual(const RelaxationFunction& phi, const std::vector<double>& t_grid);
// Same residual for an arbitrary time profile (used to detect wrong phis).
double ode_residual(const std::function<double(double)>& phi, const CDFunction& F,
                    const std::vector<double>& t_grid);

struct AsymptoticsReport {
    // phi(t) / (-(1/gamma) log t) at t in {1e-4,1e-5,1e-6}
    std::vector<double> small_t_ratios;
    bool small_t_applicable = false;
    bool small_t_pass = false;
    // t * nu * phi(t) at t in {1e2,1e3,1e4}
    std::vector<double> large_t_ratios;
    bool large_t_applicable = false;
    bool large_t_pass = false;
    // observed exponential decay rate -d log phi / dt when nu is undefined
    double observed_decay_rate = 0.0;
};

// Compares phi against its claimed small-t log singularity (rate gamma) and
// large-t 1/(nu t) tail; a block passes when the final ratio is within 10%
// of 1. When a rate is NaN the block is reported as not applicable; for the
// large-t side the observed exponential decay rate is reported instead.
AsymptoticsReport asymptotics_report(const RelaxationFunction& phi, double nu, double gamma);

std::vector<double> geometric_grid(double lo, double hi, int n);

}  // namespace liyau
