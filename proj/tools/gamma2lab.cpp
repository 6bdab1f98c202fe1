#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gamma2lab/constant_probe.hpp"
#include "gamma2lab/corpus.hpp"
#include "gamma2lab/errors.hpp"
#include "gamma2lab/flow_monitor.hpp"
#include "gamma2lab/identities.hpp"
#include "gamma2lab/inequalities.hpp"
#include "gamma2lab/report.hpp"
#include "gamma2lab/rng.hpp"
#include "gamma2lab/spectral_heat.hpp"
#include "gamma2lab/sphere_zonal.hpp"
#include "gamma2lab/version.hpp"

namespace {

using namespace gamma2lab;

constexpr int kExitPass = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

struct CliConfig {
    int dim = 2;
    int order = 64;
    std::uint64_t seed = 42;
    std::string theorem = "ji";
    std::vector<double> s_list;
    std::vector<double> p_list;
    std::vector<double> q_list;
    int trials = 100;
    bool exploratory = false;
    int multistarts = 20;
    std::string u0 = "random";
    std::string output;
    std::string csv;
};

Json config_to_json(const CliConfig& c) {
    Json j;
    j["dimension"] = c.dim;
    j["grid_order"] = c.order;
    j["seed"] = c.seed;
    j["theorem"] = c.theorem;
    j["param_s"] = c.s_list;
    j["param_p"] = c.p_list;
    j["param_q"] = c.q_list;
    j["trials"] = c.trials;
    j["exploratory"] = c.exploratory;
    j["multistarts"] = c.multistarts;
    j["u0"] = c.u0;
    j["output"] = c.output;
    j["csv"] = c.csv;
    return j;
}

// u0 mini-language: "random", "eigenmode:a,b" (a + b cos r), "counterexample"
ZonalField build_initial_field(const std::string& spec, const GridPtr& grid,
                               std::uint64_t seed) {
    if (spec == "random") {
        return random_log_field(grid->dim(), seed).build(grid);
    }
    if (spec == "counterexample") {
        return pow(ZonalField::coordinate(grid) + 2.0, 1.0 - grid->dim());
    }
    const std::string prefix = "eigenmode:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string rest = spec.substr(prefix.size());
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("u0 eigenmode spec needs two values: eigenmode:a,b");
        }
        const double a = std::stod(rest.substr(0, comma));
        const double b = std::stod(rest.substr(comma + 1));
        if (!(a > std::abs(b))) {
            throw std::invalid_argument("u0 eigenmode:a,b requires a > |b| for positivity");
        }
        return b * ZonalField::coordinate(grid) + a;
    }
    throw std::invalid_argument("unknown u0 spec '" + spec +
                                "' (expected random | eigenmode:a,b | counterexample)");
}

struct CommandOutcome {
    Json results;
    bool pass = true;
};

CommandOutcome cmd_verify_identities(const CliConfig& cfg) {
    const IdentityDeviations dev = identity_suite(cfg.dim, cfg.order, cfg.trials, cfg.seed);
    const bool integral_ok = dev.divergence <= kTolerances.identity_rel &&
                             dev.parts <= kTolerances.identity_rel &&
                             dev.bochner <= kTolerances.identity_rel &&
                             dev.mixed_first <= kTolerances.identity_rel &&
                             dev.mixed_second <= kTolerances.identity_rel;
    const bool pointwise_ok = dev.pointwise_pairing <= kTolerances.identity_pointwise &&
                              dev.pointwise_traceless <= kTolerances.identity_pointwise;
    Json results;
    results["trials"] = cfg.trials;
    results["deviations"] = identity_deviations_to_json(dev);
    results["integral_pass"] = integral_ok;
    results["pointwise_pass"] = pointwise_ok;
    return {std::move(results), integral_ok && pointwise_ok};
}

std::vector<double> default_parameters(const std::string& theorem, int n) {
    if (theorem == "weighted") return {-5.0, -2.0, 0.0, weighted_endpoint(n), 5.0};
    if (theorem == "modified") return {-8.0, modified_endpoint(n), 2.0, 5.0};
    if (theorem == "sobolev") return {1.0, 1.5, 2.5, sobolev_endpoint(n)};
    if (theorem == "del14") return {1.0, 1.5, 2.5, del14_endpoint(n)};
    return {0.0};  // parameterless theorems run a single sweep entry
}

CommandOutcome cmd_check(const CliConfig& cfg) {
    const GridPtr grid = shared_grid(cfg.dim, cfg.order);

    std::vector<double> params;
    if (cfg.theorem == "weighted" || cfg.theorem == "modified") params = cfg.s_list;
    if (cfg.theorem == "sobolev" || cfg.theorem == "del14") params = cfg.q_list;
    if (params.empty()) params = default_parameters(cfg.theorem, cfg.dim);

    // range problems are configuration errors, caught before any field work
    for (double param : params) {
        if (cfg.theorem == "weighted") constant_weighted(cfg.dim, lambda1(cfg.dim), param, cfg.exploratory);
        if (cfg.theorem == "modified") constant_modified(cfg.dim, lambda1(cfg.dim), param, cfg.exploratory);
        if (cfg.theorem == "sobolev") constant_sobolev(cfg.dim, lambda1(cfg.dim), param, cfg.exploratory);
        if (cfg.theorem == "del14") constant_del14(cfg.dim, lambda1(cfg.dim), param, cfg.exploratory);
    }

    const bool single_field = cfg.u0 != "random";
    const int trials = single_field ? 1 : cfg.trials;

    Json cases = Json::array();
    bool pass = true;
    int failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::uint64_t case_index = 0;
    for (double param : params) {
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t case_seed = derive_seed(cfg.seed, case_index++);
            ZonalField v = single_field ? build_initial_field(cfg.u0, grid, case_seed)
                                        : random_log_field(cfg.dim, case_seed).build(grid);
            MarginReport r;
            if (cfg.theorem == "ji") r = check_ji(v);
            else if (cfg.theorem == "logsob") r = check_logsobolev(v);
            else if (cfg.theorem == "weighted") r = check_weighted_gamma2(v, param, cfg.exploratory);
            else if (cfg.theorem == "modified") r = check_modified_gamma2(v, param, cfg.exploratory);
            else if (cfg.theorem == "sobolev") r = check_sobolev(v, param, cfg.exploratory);
            else if (cfg.theorem == "del14") r = check_del14_comparison(v, param);
            else throw std::invalid_argument("unknown theorem '" + cfg.theorem + "'");
            r.seed = case_seed;

            const bool case_ok = r.relative_margin >= -kTolerances.margin_rel;
            if (!case_ok) ++failures;
            if (!case_ok && !r.exploratory) pass = false;
            worst = std::min(worst, r.relative_margin);

            Json row = margin_to_json(r);
            row["pass"] = case_ok;
            cases.push_back(std::move(row));
        }
    }

    Json results;
    results["cases"] = std::move(cases);
    results["num_cases"] = static_cast<int>(params.size()) * trials;
    results["num_failures"] = failures;
    results["worst_relative_margin"] = worst;
    return {std::move(results), pass};
}

CommandOutcome cmd_flow(const CliConfig& cfg) {
    std::vector<double> p_values = cfg.p_list;
    if (p_values.empty()) p_values = {1.5};
    if (!cfg.csv.empty() && p_values.size() != 1) {
        throw std::invalid_argument("--csv expects a single --param-p value");
    }

    const GridPtr grid = shared_grid(cfg.dim, cfg.order);
    const ZonalField u0 = build_initial_field(cfg.u0, grid, derive_seed(cfg.seed, 0));

    Json runs = Json::array();
    bool pass = true;
    for (double p : p_values) {
        if (p != 1.0 && !cfg.exploratory) {
            constant_ode(cfg.dim, lambda1(cfg.dim), p);  // range check before flowing
        }
        const std::vector<double> times = make_flow_times(u0);
        const FlowTrajectory traj = (p == 1.0) ? run_shannon_flow(u0, times)
                                               : run_flow(u0, p, times);

        const OdeCheckResult ode =
            check_ode_inequality(traj, kTolerances.ode_rel, cfg.exploratory);
        const DecayCheckResult decay = check_decay(traj, kTolerances.decay_rel);

        double fd_first = 0.0;
        double fd_second = 0.0;
        for (const FlowSample& smp : traj.samples) {
            if (!smp.interior) continue;
            const double scale1 =
                std::max({std::abs(smp.dT_analytic), std::abs(smp.dT_fd), kTinyDenominator});
            const double scale2 =
                std::max({std::abs(smp.d2T_analytic), std::abs(smp.d2T_fd), kTinyDenominator});
            fd_first = std::max(fd_first, std::abs(smp.dT_fd - smp.dT_analytic) / scale1);
            fd_second = std::max(fd_second, std::abs(smp.d2T_fd - smp.d2T_analytic) / scale2);
        }
        const bool fd_ok = fd_first <= kTolerances.fd_first_rel &&
                           fd_second <= kTolerances.fd_second_rel;
        const bool constant_field = u0.max_abs() - u0.min_value() <=
                                    1e-14 * std::max(u0.max_abs(), 1.0);
        const bool run_ok = ode.pass && decay.pass && (fd_ok || constant_field);
        if (!run_ok && !cfg.exploratory) pass = false;

        Json run;
        run["p"] = p;
        run["ode_constant"] = traj.ode_constant;
        run["t_equilibrium"] = traj.t_equilibrium;
        run["entropy_initial"] = traj.samples.empty() ? 0.0 : traj.samples.front().entropy;
        run["entropy_equilibrium"] = traj.entropy_equilibrium;
        run["spectral_tail"] = traj.spectral_tail;
        run["samples"] = static_cast<int>(traj.samples.size());
        run["ode"] = ode_check_to_json(ode);
        run["decay"] = decay_check_to_json(decay);
        run["fd_first_worst"] = fd_first;
        run["fd_second_worst"] = fd_second;
        run["fd_pass"] = fd_ok || constant_field;
        run["pass"] = run_ok;
        runs.push_back(std::move(run));

        if (!cfg.csv.empty()) {
            std::ofstream out(cfg.csv);
            if (!out) throw std::invalid_argument("cannot open csv path '" + cfg.csv + "'");
            write_trajectory_csv(out, traj);
        }
    }

    Json results;
    results["u0"] = cfg.u0;
    results["runs"] = std::move(runs);
    return {std::move(results), pass};
}

CommandOutcome cmd_probe(const CliConfig& cfg) {
    RatioFunctional functional;
    std::vector<double> params;
    if (cfg.theorem == "ji") {
        functional = RatioFunctional::ji;
        params = {0.0};
    } else if (cfg.theorem == "weighted") {
        functional = RatioFunctional::weighted;
        params = cfg.s_list.empty() ? std::vector<double>{-5.0, 0.0, weighted_endpoint(cfg.dim), 5.0}
                                    : cfg.s_list;
    } else if (cfg.theorem == "modified") {
        functional = RatioFunctional::modified;
        params = cfg.s_list.empty() ? std::vector<double>{-8.0, modified_endpoint(cfg.dim), 2.0, 5.0}
                                    : cfg.s_list;
    } else {
        throw std::invalid_argument("probe supports --theorem ji | weighted | modified");
    }

    ProbeOptions opts;
    opts.multistarts = cfg.multistarts;
    opts.seed = cfg.seed;
    const std::vector<SharpnessQuery> queries = {{functional, params, cfg.exploratory}};
    const std::vector<SharpnessRow> rows = sharpness_report(cfg.dim, cfg.order, queries, opts);

    bool pass = true;
    for (const SharpnessRow& row : rows) {
        if (cfg.exploratory) continue;
        if (!row.converged || row.gap < -kTolerances.probe_slack) pass = false;
    }

    Json results;
    results["rows"] = sharpness_rows_to_json(rows);
    return {std::move(results), pass};
}

CommandOutcome cmd_counterexample(const CliConfig& cfg) {
    std::vector<double> s_values = cfg.s_list;
    if (s_values.empty()) {
        if (cfg.dim == 2) s_values = {-2.3};
        else if (cfg.dim == 3) s_values = {-2.5};
        else s_values = {0.5 * (modified_endpoint(cfg.dim) + -2.0)};
    }

    Json cases = Json::array();
    bool pass = true;
    for (double s : s_values) {
        const CounterexampleResult r = run_counterexample(cfg.dim, s, cfg.order);
        if (!r.violation_established || !r.aux_strict_holds) pass = false;
        cases.push_back(counterexample_to_json(r));
    }

    Json results;
    results["cases"] = std::move(cases);
    return {std::move(results), pass};
}

void emit_report(const CliConfig& cfg, const std::string& command,
                 const CommandOutcome& outcome) {
    const Json doc = make_report_document(command, config_to_json(cfg), outcome.results,
                                          outcome.pass);
    const std::string text = doc.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw std::invalid_argument("cannot open output path '" + cfg.output + "'");
        out << text;
    }
    std::cerr << kToolName << " " << command << ": "
              << (outcome.pass ? "pass" : "FAIL") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for curvature-dimension inequalities and entropy "
                 "monotonicity for zonal functions on round spheres"};
    app.fallthrough(true);
    app.set_version_flag("--version", std::string(kToolVersion));
    app.set_config("--config")->description("flat key=value config file; flags override");

    CliConfig cfg;
    app.add_option("--dimension", cfg.dim, "sphere dimension n >= 2")
        ->check(CLI::Range(2, 32))
        ->capture_default_str();
    app.add_option("--grid-order", cfg.order, "quadrature order (>= 8)")
        ->check(CLI::Range(8, 4096))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "root seed for all derived generators")
        ->envname("GAMMA2LAB_SEED")
        ->capture_default_str();
    app.add_option("--theorem", cfg.theorem,
                   "ji | weighted | modified | sobolev | logsob | del14")
        ->check(CLI::IsMember({"ji", "weighted", "modified", "sobolev", "logsob", "del14"}))
        ->capture_default_str();
    app.add_option("--param-s", cfg.s_list, "weight exponents s (comma separated)")
        ->delimiter(',');
    app.add_option("--param-p", cfg.p_list, "entropy orders p (comma separated)")
        ->delimiter(',');
    app.add_option("--param-q", cfg.q_list, "Sobolev exponents q (comma separated)")
        ->delimiter(',');
    app.add_option("--trials", cfg.trials, "corpus size per parameter")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    app.add_flag("--exploratory", cfg.exploratory,
                 "allow out-of-range parameters; findings are reported, not asserted");
    app.add_option("--multistarts", cfg.multistarts, "probe multistart count")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    app.add_option("--u0", cfg.u0, "initial field: random | eigenmode:a,b | counterexample")
        ->capture_default_str();
    app.add_option("--output", cfg.output, "report path (default: stdout)");
    app.add_option("--csv", cfg.csv, "trajectory CSV path (flow only)");

    app.add_subcommand("verify-identities",
                       "integral and pointwise identity suite on the seeded corpus");
    app.add_subcommand("check", "margin sweep for one inequality over the corpus");
    app.add_subcommand("flow", "heat-flow trajectory with entropy ODE and decay checks");
    app.add_subcommand("probe", "Rayleigh-ratio minimization against the sharp constants");
    app.add_subcommand("counterexample",
                       "reproduce the failure window of the modified inequality");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        CommandOutcome outcome;
        if (command == "verify-identities") outcome = cmd_verify_identities(cfg);
        else if (command == "check") outcome = cmd_check(cfg);
        else if (command == "flow") outcome = cmd_flow(cfg);
        else if (command == "probe") outcome = cmd_probe(cfg);
        else outcome = cmd_counterexample(cfg);
        emit_report(cfg, command, outcome);
        return outcome.pass ? kExitPass : kExitAssertionFailure;
    } catch (const std::range_error& e) {
        std::cerr << kToolName << ": configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << kToolName << ": configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const probe_convergence_error& e) {
        std::cerr << kToolName << ": numeric error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const numeric_error& e) {
        std::cerr << kToolName << ": numeric error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::domain_error& e) {
        std::cerr << kToolName << ": numeric error: " << e.what() << "\n";
        return kExitNumericError;
    }
}
