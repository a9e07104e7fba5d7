#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "liyau/cd_verifier.hpp"
#include "liyau/heat.hpp"
#include "liyau/relaxation.hpp"

namespace liyau {

using RowSink = std::function<void(int sample, double t, const std::string& vertex, double slack)>;

struct EstimateReport {
    std::string experiment;
    std::string statement;  // self-contained description of the inequality
    double min_slack = std::numeric_limits<double>::infinity();
    double fd_budget = 0.0;   // finite-difference allowance, reported separately
    double tolerance = 1e-8;  // pinned per experiment
    double argmin_t = 0.0;
    std::string argmin_vertex;
    int argmin_sample = -1;
    int samples = 0;
    bool pass() const { return min_slack >= -(tolerance + fd_budget); }
};

// slack(t,x) = phi(t) - L_alpha(log u)(t,x), minimized over the grid and the
// given vertices (alpha = 0 gives -Delta log u <= phi(t)).
void accumulate_liyau(EstimateReport& rep, const HeatTrajectory& traj,
                      const std::vector<double>& phi_at_times, double alpha,
                      const std::vector<int>& vertices, int sample, const RowSink& sink = {});

// slack(t,x) = phi(t) + d/dt log u - [Psi_Upsilon - (1/alpha) Psi_{Upsilon_alpha}](log u),
// time derivative by nonuniform central differences; the finite-difference
// budget is estimated from third divided differences and added to the
// tolerance (but reported separately).
void accumulate_differential_harnack(EstimateReport& rep, const HeatTrajectory& traj,
                                     const std::vector<double>& phi_at_times, double alpha,
                                     const std::vector<int>& vertices, int sample,
                                     const RowSink& sink = {});

EstimateReport liyau_check(const HeatTrajectory& traj, const RelaxationFunction& phi,
                           double alpha, const std::vector<int>& vertices,
                           const RowSink& sink = {});
EstimateReport differential_harnack_check(const HeatTrajectory& traj,
                                          const RelaxationFunction& phi, double alpha,
                                          const std::vector<int>& vertices,
                                          const RowSink& sink = {});

// Sweeps over random positive initial data exp(N(0, sigma^2)) with sigma
// cycling through {0.5, 2, 5}; one spectral decomposition is shared. Sample i
// draws from a stream keyed by (seed, i), so a worker covering the index
// range [first_sample, first_sample + n_samples) reproduces exactly the
// samples the serial sweep would have drawn there.
EstimateReport liyau_sweep(std::shared_ptr<const WeightedGraph> g,
                           const std::vector<int>& vertices, const CDFunction& F, double alpha,
                           int n_samples, const std::vector<double>& t_grid, std::uint64_t seed,
                           const RowSink& sink = {}, int first_sample = 0);
EstimateReport differential_harnack_sweep(std::shared_ptr<const WeightedGraph> g,
                                          const std::vector<int>& vertices, const CDFunction& F,
                                          double alpha, int n_samples,
                                          const std::vector<double>& t_grid, std::uint64_t seed,
                                          const RowSink& sink = {}, int first_sample = 0);

// Two-time pointwise comparison: log-slack of
//   u(t1,x1) <= u(t2,x2) exp( int_{t1}^{t2} eta + 2 mu_max d(x1,x2)^2
//                                              / (w_min (1-alpha) (t2-t1)) ).
struct HarnackPair {
    size_t i1, i2;  // indices into traj.times, i1 < i2
    int x1, x2;
};
EstimateReport harnack_check(const HeatTrajectory& traj, const std::function<double(double)>& eta,
                             const std::vector<HarnackPair>& pairs, double alpha = 0.0,
                             const RowSink& sink = {});

// n random (u0, t1 < t2, x1, x2) instances with eta = phi.
EstimateReport harnack_sweep(std::shared_ptr<const WeightedGraph> g, const CDFunction& F,
                             double alpha, int n_instances, std::uint64_t seed,
                             double t_lo = 1e-3, double t_hi = 10.0, const RowSink& sink = {});

// Local estimate on lattice balls: s(r) = max over (0,horizon] x B_r of
// (L_alpha(log u) - phi_alpha(t)) over random data evolved on padded balls.
struct LocalBallReport {
    std::vector<int> radii;
    std::vector<double> s_plus;        // positive part of s(r)
    std::vector<double> r_times_s;     // r * s_plus(r)
    bool bounded = false;
    std::string statement;
};
LocalBallReport local_liyau_check(int d, const std::vector<int>& radii, double alpha,
                                  double horizon, int n_data, std::uint64_t seed);

// Scaled-lattice sweep: per tau reports |t phi_tau(t) - 1/2| at t = 1 for the
// relaxation scaling phi_tau(t) = phi(t/tau)/tau of the D=2, mu0=1 lattice
// CD-function, plus the same quantity for the mu0 = tau^2 reading, and tests
// which reading upper-bounds -Delta_tau log u over heat-flow samples.
struct ContinuumRow {
    double tau;
    double dev_tau_reading;    // |t phi_tau(t) - 1/2| at t = 1, mu0 = tau
    double dev_tau2_reading;   //                         mu0 = tau^2 reading
    double margin_tau;         // min over samples of phi_tau(t) + Delta_tau log u
    double margin_tau2;
    double margin_classical;   // same against 1/(2t)
};
struct ContinuumReport {
    std::vector<ContinuumRow> rows;
    bool tau_reading_valid = true;   // margin >= -1e-8 for every row
    bool tau2_reading_valid = true;
    bool classical_valid = true;
    std::string statement;
};
ContinuumReport continuum_sweep(const std::vector<double>& taus,
                                const std::vector<double>& flow_times, int n_data,
                                std::uint64_t seed, int window = 10);

// Two-point sharpness: with initial ratio R = u1(0)/u2(0),
// w(t) = log(((2a-1)e^{-2t}+1)/((1-2a)e^{-2t}+1)), a = R/(R+1), satisfies
// w <= phi = -log tanh t; reports the worst relative gap (phi - w)/phi.
struct SharpnessReport {
    double max_relative_gap = 0.0;
    bool one_sided = true;  // w(t) <= phi(t) held at every grid point
};
SharpnessReport sharpness_two_point(double ratio, const std::vector<double>& t_grid);

}  // namespace liyau
