#include "gamma2lab/flow_monitor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "gamma2lab/entropy_functionals.hpp"
#include "gamma2lab/spectral_heat.hpp"

namespace gamma2lab {

namespace {

// Exact flow sampler with an equilibrium-centred entropy evaluator.  The
// finite-difference columns difference T(t) - T(inf), assembled nodewise from
// the fluctuation delta = u - mean via expm1/log1p, so late-time stencils do
// not cancel catastrophically.
class FlowEngine {
  public:
    FlowEngine(const ZonalField& u0, double p) : grid_(u0.grid()), p_(p) {
        require_positive(u0, "run_flow");
        coeffs_ = forward_transform(u0);
        tail_ = spectral_tail_fraction(coeffs_);
        mean_ = coeffs_.a[0] / std::sqrt(grid_->volume());
        mass_ = coeffs_.a[0] * std::sqrt(grid_->volume());
        fluct_ = coeffs_;
        fluct_.a[0] = 0.0;
    }

    const GridPtr& grid() const { return grid_; }
    double p() const { return p_; }
    double mean_value() const { return mean_; }
    double mass() const { return mass_; }
    double tail_fraction() const { return tail_; }

    ZonalField field_at(double t) const {
        return inverse_transform(heat_propagate(coeffs_, t), grid_);
    }

    // T_p(u(t)) - T_p(mean) for p != 1; S(f(t)) - S(mean) for p = 1
    double centred_entropy(double t) const {
        const ZonalField delta = inverse_transform(heat_propagate(fluct_, t), grid_);
        const Eigen::ArrayXd x = delta.values() / mean_;  // > -1 for positive u
        if ((x <= -1.0).any())
            throw numeric_error("flow entropy: positivity lost along the flow");
        const Eigen::ArrayXd log1px = x.unaryExpr([](double v) { return std::log1p(v); });
        const Eigen::ArrayXd& w = grid_->weights();
        if (p_ == 1.0) {
            // (m + d) log(m + d) - m log m = d log m + (m + d) log1p(d/m)
            const double logm = std::log(mean_);
            return -(w * (delta.values() * logm +
                          (mean_ + delta.values()) * log1px))
                        .sum();
        }
        // u^p - m^p = m^p expm1(p log1p(d/m))
        const double mp = std::pow(mean_, p_);
        const Eigen::ArrayXd diff = (p_ * log1px).unaryExpr([](double v) {
            return std::expm1(v);
        });
        return mp * (w * diff).sum() / (1.0 - p_);
    }

    double equilibrium_entropy() const {
        const double vol = grid_->volume();
        if (p_ == 1.0) return -vol * mean_ * std::log(mean_);
        return (vol * std::pow(mean_, p_) - mass_) / (1.0 - p_);
    }

  private:
    GridPtr grid_;
    double p_;
    SpectralCoeffs coeffs_;
    SpectralCoeffs fluct_;
    double mean_ = 0.0;
    double mass_ = 0.0;
    double tail_ = 0.0;
};

struct FdPair {
    double first = 0.0;
    double second = 0.0;
};

// Richardson-refined derivatives of the centred entropy at time t.
FdPair fd_derivatives(const FlowEngine& eng, double t) {
    const double h = (t > 0.0) ? std::min(kFdStep, t) : kFdStep;
    FdPair out;
    if (t >= h) {
        const auto d1 = [&](double step) {
            return (eng.centred_entropy(t + step) - eng.centred_entropy(t - step)) /
                   (2.0 * step);
        };
        const auto d2 = [&](double step) {
            return (eng.centred_entropy(t + step) - 2.0 * eng.centred_entropy(t) +
                    eng.centred_entropy(t - step)) /
                   (step * step);
        };
        out.first = (4.0 * d1(h / 2) - d1(h)) / 3.0;
        out.second = (4.0 * d2(h / 2) - d2(h)) / 3.0;
    } else {
        // one-sided stencils at the initial sample
        const auto d1 = [&](double step) {
            return (eng.centred_entropy(t + step) - eng.centred_entropy(t)) / step;
        };
        const auto d2 = [&](double step) {
            return (eng.centred_entropy(t + 2 * step) - 2.0 * eng.centred_entropy(t + step) +
                    eng.centred_entropy(t)) /
                   (step * step);
        };
        out.first = 2.0 * d1(h / 2) - d1(h);
        out.second = 2.0 * d2(h / 2) - d2(h);
    }
    return out;
}

FlowTrajectory run_flow_engine(const FlowEngine& eng, const std::vector<double>& times,
                               double ode_constant) {
    FlowTrajectory traj;
    traj.dim = eng.grid()->dim();
    traj.p = eng.p();
    traj.ode_constant = ode_constant;
    traj.mean = eng.mean_value();
    traj.entropy_equilibrium = eng.equilibrium_entropy();
    traj.spectral_tail = eng.tail_fraction();
    traj.t_equilibrium = times.empty() ? 0.0 : times.back();
    traj.samples.reserve(times.size());

    const double p = eng.p();
    for (double t : times) {
        if (!(t >= 0.0)) throw std::invalid_argument("run_flow: times must be >= 0");
        const ZonalField u = eng.field_at(t);
        FlowSample s;
        s.t = t;
        s.entropy = eng.centred_entropy(t) + traj.entropy_equilibrium;
        if (p == 1.0) {
            s.dT_analytic = fisher_log(u);
            s.d2T_analytic = -2.0 * gamma2_log(u);
            s.dirichlet_energy = s.dT_analytic;
        } else {
            s.dT_analytic = tsallis_first_derivative(u, p).power_form;
            s.d2T_analytic = tsallis_second_derivative(u, p);
            s.dirichlet_energy = weighted_dirichlet_energy(u, p);
        }
        const FdPair fd = fd_derivatives(eng, t);
        s.dT_fd = fd.first;
        s.d2T_fd = fd.second;
        s.ode_residual = s.d2T_analytic + ode_constant * s.dT_analytic;
        s.mass = integrate(u);
        s.min_value = u.min_value();
        s.interior = t >= kFdStep;
        traj.samples.push_back(s);
    }
    return traj;
}

}  // namespace

std::vector<double> make_flow_times(const ZonalField& u0, const TimeGridOptions& opts) {
    EquilibriumOptions eq;
    eq.t_min = opts.t_min;
    eq.rho = opts.rho;
    const double t_eq = flow_to_equilibrium(u0, opts.equilibrium_tol, eq);
    const double horizon =
        std::max(t_eq, opts.t_min * std::pow(opts.rho, 5.0));
    return geometric_times(opts.t_min, opts.rho, horizon);
}

FlowTrajectory run_flow(const ZonalField& u0, double p, const std::vector<double>& times) {
    if (p == 1.0)
        throw std::invalid_argument("run_flow: p = 1 is the Shannon path (run_shannon_flow)");
    const FlowEngine eng(u0, p);
    const int n = u0.grid()->dim();
    return run_flow_engine(eng, times, constant_ode(n, lambda1(n), p, true));
}

FlowTrajectory run_shannon_flow(const ZonalField& f0, const std::vector<double>& times) {
    const FlowEngine eng(f0, 1.0);
    const int n = f0.grid()->dim();
    return run_flow_engine(eng, times, 2.0 * constant_ji(n, lambda1(n)));
}

OdeCheckResult check_ode_inequality(const FlowTrajectory& traj, double tol,
                                    bool exploratory) {
    if (traj.p != 1.0 && !exploratory && !ode_admissible(traj.dim, traj.p))
        throw std::range_error("check_ode_inequality: p outside the admissible set");
    OdeCheckResult res;
    res.constant = traj.ode_constant;
    res.pass = true;
    for (const FlowSample& s : traj.samples) {
        const double scale = std::max(
            {std::abs(s.d2T_analytic), std::abs(traj.ode_constant * s.dT_analytic), 1.0});
        const double rel = s.ode_residual / scale;
        if (rel > res.worst_relative_residual) {
            res.worst_relative_residual = rel;
            res.worst_time = s.t;
        }
        if (rel > tol) res.pass = false;
    }
    return res;
}

OdeCheckResult check_shannon_ode(const ZonalField& f0, const TimeGridOptions& opts) {
    const FlowTrajectory traj = run_shannon_flow(f0, make_flow_times(f0, opts));
    return check_ode_inequality(traj);
}

DecayCheckResult check_decay(const FlowTrajectory& traj, double tol) {
    DecayCheckResult res;
    res.constant = traj.ode_constant;
    res.slope_bound = -lambda1(traj.dim);
    if (traj.samples.empty())
        throw std::invalid_argument("check_decay: empty trajectory");

    const double e0 = traj.samples.front().dirichlet_energy;
    const double floor = 1e-13 * std::max(1.0, std::abs(traj.entropy_equilibrium));
    res.bound_holds = true;
    res.worst_excess = 0.0;
    if (e0 <= floor) {
        // initial energy already at roundoff: only require it stays there
        for (const FlowSample& s : traj.samples)
            if (s.dirichlet_energy > 10.0 * floor) res.bound_holds = false;
    } else {
        for (const FlowSample& s : traj.samples) {
            const double excess =
                s.dirichlet_energy * std::exp(traj.ode_constant * s.t) / e0 - 1.0;
            res.worst_excess = std::max(res.worst_excess, excess);
            if (excess > tol) res.bound_holds = false;
        }
    }

    // late-tail slope of log E(t)
    const double t_last = traj.samples.back().t;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const FlowSample& s : traj.samples) {
        if (s.t < 0.5 * t_last || s.dirichlet_energy <= 0.0) continue;
        const double x = s.t, y = std::log(s.dirichlet_energy);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m >= 2 && e0 > floor) {
        res.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        res.slope_ok = res.fitted_slope <= 0.95 * res.slope_bound;
    } else {
        res.fitted_slope = std::numeric_limits<double>::quiet_NaN();
        res.slope_ok = true;  // nothing decays in a constant trajectory
    }
    res.pass = res.bound_holds && res.slope_ok;
    return res;
}

SobolevFlowResult derive_sobolev_from_flow(const ZonalField& v, double q,
                                           bool exploratory) {
    const int n = v.grid()->dim();
    const double c_sob = constant_sobolev(n, lambda1(n), q, exploratory);
    const double p = 2.0 / q;
    const ZonalField u0 = pow(v, q);
    const double C = 2.0 * c_sob;  // = constant_ode(n, lambda1, 2/q)
    const double vol = v.grid()->volume();

    const FlowEngine eng(u0, p);
    EquilibriumOptions eq_opts;
    const double t_eq = flow_to_equilibrium(u0, 1e-6, eq_opts);
    const std::vector<double> times = geometric_times(1e-6, 1.01, std::max(t_eq, 1e-3));

    const auto residual_at = [&](double t) {
        const ZonalField u = eng.field_at(t);
        return tsallis_second_derivative(u, p) +
               C * tsallis_first_derivative(u, p).power_form;
    };

    double integral = 0.0;
    double prev_t = times.front();
    double prev_r = residual_at(prev_t);
    const double dT0 = tsallis_first_derivative(eng.field_at(0.0), p).power_form;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double t = times[i];
        const double r = residual_at(t);
        integral += 0.5 * (r + prev_r) * (t - prev_t);
        prev_t = t;
        prev_r = r;
    }
    // beyond the horizon dT decays at twice the spectral gap, so
    // int_(T)^(inf) (d2T + C dT) = dT(T) (C / (2 lambda1) - 1)
    const double dT_end =
        tsallis_first_derivative(eng.field_at(times.back()), p).power_form;
    const double tail = dT_end * (C / (2.0 * lambda1(n)) - 1.0);

    SobolevFlowResult res;
    res.t_equilibrium = times.back();
    res.samples = static_cast<int>(times.size());
    res.algebraic = check_sobolev(v, q, exploratory);

    const double scale = 2.0 * q * vol;
    MarginReport flow;
    flow.theorem = "sobolev_flow";
    flow.dim = n;
    flow.parameter = q;
    flow.constant = c_sob;
    flow.lhs = dT0 / scale;
    flow.margin = -(integral + tail) / scale;
    flow.rhs = flow.lhs - flow.margin;
    flow.relative_margin = flow.margin / std::max({std::abs(flow.lhs),
                                                   std::abs(flow.rhs),
                                                   kTinyDenominator});
    flow.grid_order = v.grid()->order();
    flow.exploratory = exploratory;
    res.flow = flow;

    res.route_discrepancy =
        std::abs(res.flow.margin - res.algebraic.margin) /
        std::max({std::abs(res.algebraic.lhs), std::abs(res.algebraic.rhs),
                  kTinyDenominator});
    res.routes_agree = res.route_discrepancy <= kSobolevRouteTol;
    return res;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj) {
    out << "t,entropy,dT_analytic,dT_fd,d2T_analytic,d2T_fd,ode_residual,"
           "dirichlet_energy,mass,min_value,interior\n";
    for (const FlowSample& s : traj.samples) {
        out << format_double(s.t) << ',' << format_double(s.entropy) << ','
            << format_double(s.dT_analytic) << ',' << format_double(s.dT_fd) << ','
            << format_double(s.d2T_analytic) << ',' << format_double(s.d2T_fd) << ','
            << format_double(s.ode_residual) << ','
            << format_double(s.dirichlet_energy) << ',' << format_double(s.mass)
            << ',' << format_double(s.min_value) << ',' << (s.interior ? 1 : 0)
            << '\n';
    }
}

}  // namespace gamma2lab
