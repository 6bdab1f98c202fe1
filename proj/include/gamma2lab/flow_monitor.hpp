#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gamma2lab/inequalities.hpp"
#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

// central-difference step (flow time) for the Richardson-refined validation
// columns; samples with t >= kFdStep use centered differences at full step
inline constexpr double kFdStep = 1e-3;

struct FlowSample {
    double t = 0.0;
    double entropy = 0.0;        // T_p(u(t)) (Shannon entropy when p = 1)
    double dT_analytic = 0.0;
    double dT_fd = 0.0;
    double d2T_analytic = 0.0;
    double d2T_fd = 0.0;
    double ode_residual = 0.0;   // d2T + C(n,p) dT (2 * ji constant when p = 1)
    double dirichlet_energy = 0.0;
    double mass = 0.0;
    double min_value = 0.0;
    bool interior = false;       // t >= kFdStep, full centered stencil
};

struct FlowTrajectory {
    int dim = 0;
    double p = 1.0;              // 1 marks the Shannon path
    double ode_constant = 0.0;
    double t_equilibrium = 0.0;
    double mean = 0.0;
    double entropy_equilibrium = 0.0;
    double spectral_tail = 0.0;  // under-resolution diagnostic for u0
    std::vector<FlowSample> samples;
};

struct TimeGridOptions {
    double t_min = 1e-3;
    double rho = 1.25;
    double equilibrium_tol = 1e-3;
};

std::vector<double> make_flow_times(const ZonalField& u0, const TimeGridOptions& opts = {});

// Exact spectral heat flow from u0 with per-sample Tsallis diagnostics.
// Requires u0 positive and p != 1.
FlowTrajectory run_flow(const ZonalField& u0, double p, const std::vector<double>& times);

// Shannon counterpart: entropy = S(f(t)), dT = fisher_log, d2T = -2 gamma2_log.
FlowTrajectory run_shannon_flow(const ZonalField& f0, const std::vector<double>& times);

struct OdeCheckResult {
    double constant = 0.0;
    double worst_relative_residual = 0.0;  // max_j residual_j / scale_j
    double worst_time = 0.0;
    bool pass = false;                      // all residuals <= tol * scale
};
// scale_j = max(|d2T_j|, |C dT_j|, 1); p admissibility enforced unless the
// trajectory is tagged exploratory by the caller
OdeCheckResult check_ode_inequality(const FlowTrajectory& traj, double tol = 1e-7,
                                    bool exploratory = false);

// convenience wrapper: Shannon flow of f0 plus its ODE check
OdeCheckResult check_shannon_ode(const ZonalField& f0, const TimeGridOptions& opts = {});

struct DecayCheckResult {
    double constant = 0.0;          // C(n,p)
    bool bound_holds = false;       // E(t) <= e^{-C t} E(0) (1 + tol) at all samples
    double worst_excess = 0.0;      // max_j E_j e^{C t_j} / E_0 - 1
    double fitted_slope = 0.0;      // least-squares slope of log E on the late tail
    double slope_bound = 0.0;       // -lambda1; fitted slope must stay below +5% of it
    bool slope_ok = false;
    bool pass = false;
};
DecayCheckResult check_decay(const FlowTrajectory& traj, double tol = 1e-7);

// Integrates the entropy ODE inequality over [0, infinity) (trapezoid on a
// dense geometric grid plus the analytic single-mode tail), reproducing the
// Sobolev-type bound 0 >= -dT(0) + C (T_inf - T_0); cross-checked against
// check_sobolev on the same field.
struct SobolevFlowResult {
    MarginReport flow;        // margin from the time-integrated route
    MarginReport algebraic;   // check_sobolev(v, q)
    double route_discrepancy = 0.0;
    bool routes_agree = false;  // <= kSobolevRouteTol
    double t_equilibrium = 0.0;
    int samples = 0;
};
inline constexpr double kSobolevRouteTol = 1e-4;
SobolevFlowResult derive_sobolev_from_flow(const ZonalField& v, double q,
                                           bool exploratory = false);

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj);

}  // namespace gamma2lab
