// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Tolerances are pinned in include/gamma2lab/report.hpp (kTolerances).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gamma2lab/constant_probe.hpp"
#include "gamma2lab/corpus.hpp"
#include "gamma2lab/entropy_functionals.hpp"
#include "gamma2lab/flow_monitor.hpp"
#include "gamma2lab/identities.hpp"
#include "gamma2lab/inequalities.hpp"
#include "gamma2lab/report.hpp"
#include "gamma2lab/rng.hpp"
#include "gamma2lab/spectral_heat.hpp"
#include "gamma2lab/version.hpp"

using namespace gamma2lab;

namespace {

constexpr std::uint64_t kSeed = 20260814;
constexpr int kOrder = 64;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int index, const std::string& name, const std::function<Outcome()>& body) {
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %02d %s: %s\n", out.pass ? "PASS" : "FAIL", index, name.c_str(),
                out.detail.c_str());
    std::fflush(stdout);
}

ZonalField eigenmode_field(int dim) {
    const GridPtr g = shared_grid(dim, kOrder);
    return ZonalField(g, 2.0 + g->basis().col(1).array());
}

// ---- criterion bodies -------------------------------------------------------

Outcome identity_suite_criterion() {
    const auto t0 = Clock::now();
    double worst_integral = 0.0;
    double worst_pointwise = 0.0;
    for (int dim : {2, 3, 5}) {
        const IdentityDeviations d = identity_suite(dim, kOrder, 200, kSeed);
        worst_integral = std::max({worst_integral, d.divergence, d.parts, d.bochner,
                                   d.mixed_first, d.mixed_second});
        worst_pointwise =
            std::max({worst_pointwise, d.pointwise_pairing, d.pointwise_traceless});
    }
    const double elapsed = seconds_since(t0);
    Outcome out;
    out.pass = worst_integral <= kTolerances.identity_rel &&
               worst_pointwise <= kTolerances.identity_pointwise && elapsed < 10.0;
    out.detail = "worst integral " + fmt(worst_integral) + " (tol " +
                 fmt(kTolerances.identity_rel) + "), pointwise " + fmt(worst_pointwise) +
                 " (tol " + fmt(kTolerances.identity_pointwise) + "), 3x200 fields in " +
                 fmt(elapsed) + " s (limit 10 s)";
    return out;
}

Outcome constant_collapse_criterion() {
    double worst = 0.0;
    const int points = 1000;
    const auto record = [&worst](double value, double target) {
        worst = std::max(worst, std::abs(value - target) / target);
    };
    for (int n = 2; n <= 6; ++n) {
        const double ln = lambda1(n);
        record(constant_ji(n, ln), n);
        record(constant_rothaus(n, ln), n);
        for (int i = 0; i <= points; ++i) {
            const double frac = static_cast<double>(i) / points;
            record(constant_weighted(n, ln, -50.0 * frac), n);
            record(constant_weighted(n, ln, weighted_endpoint(n) + 50.0 * frac), n);
            record(constant_modified(n, ln, modified_endpoint(n) - 50.0 * frac), n);
            record(constant_modified(n, ln, 2.0 + 50.0 * frac), n);
            record(constant_sobolev(n, ln, 1.0 + 0.999 * frac), n);
            record(constant_sobolev(
                       n, ln, 2.0 + (sobolev_endpoint(n) - 2.0) * ((i + 1) / (points + 1.0))),
                   n);
            if (n >= 3) {
                record(constant_del14(n, ln, 1.0 + 0.999 * frac), n);
                record(constant_del14(
                           n, ln, 2.0 + (del14_endpoint(n) - 2.0) * ((i + 1) / (points + 1.0))),
                       n);
            }
            record(constant_ode(
                       n, ln, ode_endpoint(n) + (1.0 - ode_endpoint(n)) * 0.999 * frac),
                   2.0 * n);
            record(constant_ode(n, ln, 1.0 + (i + 1) / (points + 1.0)), 2.0 * n);
        }
    }
    Outcome out;
    out.pass = worst <= kTolerances.constant_collapse;
    out.detail = "worst |constant/target - 1| = " + fmt(worst) + " (tol " +
                 fmt(kTolerances.constant_collapse) + ") over dense sweeps, n = 2..6";
    return out;
}

struct MarginSweep {
    double worst_rel = 1.0;
    int count = 0;
};

MarginSweep sweep_margins(bool modified) {
    MarginSweep sweep;
    for (int dim : {2, 3}) {
        const GridPtr g = shared_grid(dim, kOrder);
        const std::vector<double> s_values =
            modified ? std::vector<double>{-8.0, modified_endpoint(dim), 2.0, 5.0}
                     : std::vector<double>{-5.0, -2.0, 0.0, weighted_endpoint(dim), 5.0};
        for (int i = 0; i < 100; ++i) {
            const ZonalField v =
                random_log_field(dim, derive_seed(kSeed, 1000 * dim + i)).build(g);
            for (double s : s_values) {
                const MarginReport r = modified ? check_modified_gamma2(v, s)
                                                : check_weighted_gamma2(v, s);
                sweep.worst_rel = std::min(sweep.worst_rel, r.relative_margin);
                ++sweep.count;
            }
        }
    }
    return sweep;
}

Outcome weighted_margin_criterion() {
    const MarginSweep sweep = sweep_margins(false);
    const MarginReport eq = check_weighted_gamma2(eigenmode_field(2), 0.0);
    Outcome out;
    out.pass = sweep.worst_rel >= -kTolerances.margin_rel &&
               std::abs(eq.relative_margin) <= kTolerances.equality_rel;
    out.detail = "min relative margin " + fmt(sweep.worst_rel) + " over " +
                 std::to_string(sweep.count) + " cases (floor -" +
                 fmt(kTolerances.margin_rel) + "); equality case |margin| " +
                 fmt(std::abs(eq.relative_margin)) + " (tol " +
                 fmt(kTolerances.equality_rel) + ")";
    return out;
}

Outcome modified_margin_criterion() {
    const MarginSweep sweep = sweep_margins(true);
    Outcome out;
    out.pass = sweep.worst_rel >= -kTolerances.margin_rel;
    out.detail = "min relative margin " + fmt(sweep.worst_rel) + " over " +
                 std::to_string(sweep.count) + " cases (floor -" +
                 fmt(kTolerances.margin_rel) + ")";
    return out;
}

Outcome counterexample_criterion() {
    Outcome out;
    out.pass = true;
    std::ostringstream detail;
    const double pairs[2][2] = {{2.0, -2.3}, {3.0, -2.5}};
    for (const auto& pair : pairs) {
        const CounterexampleResult r =
            run_counterexample(static_cast<int>(pair[0]), pair[1], kOrder);
        const bool ok = r.violation_established && r.aux_strict_holds &&
                        r.coarse.relative_margin < 0.0 && r.fine.relative_margin < 0.0;
        out.pass = out.pass && ok;
        detail << "(n=" << r.dim << ", s=" << pair[1]
               << ") margin " << fmt(r.fine.relative_margin) << ", doubling error "
               << fmt(r.error_estimate) << "; ";
    }
    detail << "negative sign stable at orders 64/128, |margin| > "
           << fmt(kTolerances.counterexample_error_factor) << "x error";
    out.detail = detail.str();
    return out;
}

Outcome fd_match_criterion() {
    double worst_first = 0.0;
    double worst_second = 0.0;
    for (int dim : {2, 3}) {
        for (int i = 0; i < 3; ++i) {
            const ZonalField u0 =
                random_log_field(dim, derive_seed(kSeed, 2000 + 10 * dim + i))
                    .build(shared_grid(dim, kOrder));
            const std::vector<double> times = make_flow_times(u0);
            for (double p : {0.5, 1.5, 2.0}) {
                const FlowTrajectory traj = run_flow(u0, p, times);
                for (const FlowSample& s : traj.samples) {
                    if (!s.interior) continue;
                    const double s1 = std::max(
                        {std::abs(s.dT_analytic), std::abs(s.dT_fd), kTinyDenominator});
                    const double s2 = std::max({std::abs(s.d2T_analytic),
                                                std::abs(s.d2T_fd), kTinyDenominator});
                    worst_first =
                        std::max(worst_first, std::abs(s.dT_fd - s.dT_analytic) / s1);
                    worst_second =
                        std::max(worst_second, std::abs(s.d2T_fd - s.d2T_analytic) / s2);
                }
            }
        }
    }
    Outcome out;
    out.pass = worst_first <= kTolerances.fd_first_rel &&
               worst_second <= kTolerances.fd_second_rel;
    out.detail = "worst dT mismatch " + fmt(worst_first) + " (tol " +
                 fmt(kTolerances.fd_first_rel) + "), d2T " + fmt(worst_second) +
                 " (tol " + fmt(kTolerances.fd_second_rel) +
                 "), p in {0.5, 1.5, 2}, n in {2, 3}";
    return out;
}

Outcome ode_criterion() {
    double worst = 0.0;
    bool pass = true;
    for (int dim : {2, 3}) {
        for (int i = 0; i < 3; ++i) {
            const ZonalField u0 =
                random_log_field(dim, derive_seed(kSeed, 3000 + 10 * dim + i))
                    .build(shared_grid(dim, kOrder));
            const std::vector<double> times = make_flow_times(u0);
            for (double p : {ode_endpoint(dim), 0.5, 1.5, 2.0}) {
                const OdeCheckResult res =
                    check_ode_inequality(run_flow(u0, p, times), kTolerances.ode_rel);
                worst = std::max(worst, res.worst_relative_residual);
                pass = pass && res.pass;
            }
            const OdeCheckResult shannon =
                check_ode_inequality(run_shannon_flow(u0, times), kTolerances.ode_rel);
            worst = std::max(worst, shannon.worst_relative_residual);
            pass = pass && shannon.pass;
        }
    }
    Outcome out;
    out.pass = pass;
    out.detail = "worst relative residual " + fmt(worst) + " (tol " +
                 fmt(kTolerances.ode_rel) +
                 "), p in {endpoint, 0.5, 1.5, 2} plus the Shannon path";
    return out;
}

Outcome decay_criterion() {
    double worst_excess = 0.0;
    bool pass = true;
    for (int dim : {2, 3}) {
        for (int i = 0; i < 3; ++i) {
            const ZonalField u0 =
                random_log_field(dim, derive_seed(kSeed, 4000 + 10 * dim + i))
                    .build(shared_grid(dim, kOrder));
            const std::vector<double> times = make_flow_times(u0);
            for (double p : {0.5, 1.5, 2.0}) {
                const DecayCheckResult res =
                    check_decay(run_flow(u0, p, times), kTolerances.decay_rel);
                worst_excess = std::max(worst_excess, res.worst_excess);
                pass = pass && res.pass;
            }
        }
    }
    Outcome out;
    out.pass = pass;
    out.detail = "E(t) <= exp(-2n t) E(0) (1 + " + fmt(kTolerances.decay_rel) +
                 "); worst excess " + fmt(worst_excess);
    return out;
}

Outcome sobolev_route_criterion() {
    double worst = 0.0;
    bool agree = true;
    for (int dim : {2, 3}) {
        const ZonalField v = random_log_field(dim, derive_seed(kSeed, 5000 + dim))
                                 .build(shared_grid(dim, kOrder));
        for (double q : {1.5, 2.5}) {
            const SobolevFlowResult res = derive_sobolev_from_flow(v, q);
            worst = std::max(worst, res.route_discrepancy);
            agree = agree && res.routes_agree;
        }
    }
    const MarginReport poincare = check_sobolev(eigenmode_field(2), 1.0);
    Outcome out;
    out.pass = agree && std::abs(poincare.relative_margin) <= kTolerances.equality_rel;
    out.detail = "worst route discrepancy " + fmt(worst) + " (tol " +
                 fmt(kTolerances.sobolev_route_rel) + "); sharp q=1 case |margin| " +
                 fmt(std::abs(poincare.relative_margin)) + " (tol " +
                 fmt(kTolerances.equality_rel) + ")";
    return out;
}

Outcome ji_limit_criterion() {
    const GridPtr g = shared_grid(2, kOrder);
    const ZonalField f(g, Eigen::exp(0.5 * g->nodes()));
    const JiLimitTable t = ji_limit_convergence(f, {-1e1, -1e2, -1e3, -1e4});
    std::vector<double> sa, d_lhs, d_rhs, d_fac;
    for (const JiLimitRow& row : t.rows) {
        sa.push_back(-row.s);
        d_lhs.push_back(std::abs(row.lhs - t.lhs_limit));
        d_rhs.push_back(std::abs(row.rhs_integral - t.rhs_limit));
        d_fac.push_back(std::abs(row.constant_factor - t.factor_limit));
    }
    const double rate_lhs = fit_decay_exponent(sa, d_lhs);
    const double rate_rhs = fit_decay_exponent(sa, d_rhs);
    const double rate_fac = fit_decay_exponent(sa, d_fac);
    const auto in_window = [](double r) {
        return r >= kTolerances.rate_fit_low && r <= kTolerances.rate_fit_high;
    };
    Outcome out;
    out.pass = in_window(rate_lhs) && in_window(rate_rhs) && in_window(rate_fac);
    out.detail = "fitted 1/|s| exponents: lhs " + fmt(rate_lhs) + ", rhs " +
                 fmt(rate_rhs) + ", constant factor " + fmt(rate_fac) + " (window [" +
                 fmt(kTolerances.rate_fit_low) + ", " + fmt(kTolerances.rate_fit_high) +
                 "])";
    return out;
}

Outcome probe_criterion(Clock::time_point suite_start) {
    struct Case {
        RatioFunctional functional;
        int dim;
        double s;
    };
    const std::vector<Case> cases = {
        {RatioFunctional::ji, 2, 0.0},
        {RatioFunctional::ji, 3, 0.0},
        {RatioFunctional::weighted, 2, -2.0},
        {RatioFunctional::weighted, 3, weighted_endpoint(3)},
        {RatioFunctional::modified, 2, 2.0},
    };
    ProbeOptions opts;
    opts.multistarts = 20;
    opts.seed = kSeed;

    bool pass = true;
    double worst_gap = 0.0;
    double ji_s2 = 0.0;
    for (const Case& c : cases) {
        RatioProblem prob;
        prob.functional = c.functional;
        prob.s = c.s;
        prob.grid = shared_grid(c.dim, kOrder);
        const ProbeResult res = minimize_ratio(prob, opts);
        double constant = 0.0;
        switch (c.functional) {
            case RatioFunctional::ji: constant = constant_ji(c.dim, lambda1(c.dim)); break;
            case RatioFunctional::weighted:
                constant = constant_weighted(c.dim, lambda1(c.dim), c.s);
                break;
            case RatioFunctional::modified:
                constant = constant_modified(c.dim, lambda1(c.dim), c.s);
                break;
        }
        const double gap = res.min_ratio - constant;
        worst_gap = std::min(worst_gap, gap);
        pass = pass && res.converged && gap >= -kTolerances.probe_slack;
        if (c.functional == RatioFunctional::ji && c.dim == 2) {
            ji_s2 = res.min_ratio;
            pass = pass && ji_s2 <= 2.1;
        }
    }
    const double total = seconds_since(suite_start);
    pass = pass && total < 300.0;
    Outcome out;
    out.pass = pass;
    out.detail = "worst gap to constant " + fmt(worst_gap) + " (floor -" +
                 fmt(kTolerances.probe_slack) + "), ji probe on S^2 reached " +
                 fmt(ji_s2) + " (cap 2.1); 20 starts per case; total suite " +
                 fmt(total) + " s (limit 300 s)";
    return out;
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    std::printf("acceptance suite: %s %s (order %d, seed %llu)\n", kToolName, kToolVersion,
                kOrder, static_cast<unsigned long long>(kSeed));

    run(1, "integral and pointwise identity suite", identity_suite_criterion);
    run(2, "sharp constants collapse to n on the sphere", constant_collapse_criterion);
    run(3, "weighted Gamma2 margins and equality case", weighted_margin_criterion);
    run(4, "modified weighted Gamma2 margins", modified_margin_criterion);
    run(5, "modified inequality counterexample", counterexample_criterion);
    run(6, "Tsallis derivative finite-difference match", fd_match_criterion);
    run(7, "entropy ODE inequality along the flow", ode_criterion);
    run(8, "Dirichlet energy decay bound", decay_criterion);
    run(9, "Sobolev two-route agreement and sharp Poincare", sobolev_route_criterion);
    run(10, "recovery of the log bound as s -> -infinity", ji_limit_criterion);
    run(11, "Rayleigh probe lower-bound consistency",
        [&t0] { return probe_criterion(t0); });

    const double total = seconds_since(t0);
    std::printf("%d/11 criteria passed in %.1f s\n", 11 - failures, total);
    return failures == 0 ? 0 : 1;
}
