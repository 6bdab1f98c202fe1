#include "gamma2lab/report.hpp"

#include "gamma2lab/version.hpp"

namespace gamma2lab {

Json tolerances_to_json(const Tolerances& t) {
    Json j;
    j["identity_rel"] = t.identity_rel;
    j["identity_pointwise"] = t.identity_pointwise;
    j["margin_rel"] = t.margin_rel;
    j["equality_rel"] = t.equality_rel;
    j["constant_collapse"] = t.constant_collapse;
    j["ode_rel"] = t.ode_rel;
    j["decay_rel"] = t.decay_rel;
    j["fd_first_rel"] = t.fd_first_rel;
    j["fd_second_rel"] = t.fd_second_rel;
    j["sobolev_route_rel"] = t.sobolev_route_rel;
    j["probe_slack"] = t.probe_slack;
    j["quadrature_rel"] = t.quadrature_rel;
    j["counterexample_error_factor"] = t.counterexample_error_factor;
    j["rate_fit_low"] = t.rate_fit_low;
    j["rate_fit_high"] = t.rate_fit_high;
    return j;
}

Json margin_to_json(const MarginReport& r) {
    Json j;
    j["theorem"] = r.theorem;
    j["dim"] = r.dim;
    j["parameter"] = r.parameter;
    j["lhs"] = r.lhs;
    j["constant"] = r.constant;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["relative_margin"] = r.relative_margin;
    j["grid_order"] = r.grid_order;
    j["seed"] = r.seed;
    j["exploratory"] = r.exploratory;
    j["quadrature_converged"] = r.quadrature_converged;
    return j;
}

Json identity_deviations_to_json(const IdentityDeviations& d) {
    Json j;
    j["divergence"] = d.divergence;
    j["parts"] = d.parts;
    j["bochner"] = d.bochner;
    j["mixed_first"] = d.mixed_first;
    j["mixed_second"] = d.mixed_second;
    j["pointwise_pairing"] = d.pointwise_pairing;
    j["pointwise_traceless"] = d.pointwise_traceless;
    j["max"] = d.max();
    return j;
}

Json ode_check_to_json(const OdeCheckResult& r) {
    Json j;
    j["constant"] = r.constant;
    j["worst_relative_residual"] = r.worst_relative_residual;
    j["worst_time"] = r.worst_time;
    j["pass"] = r.pass;
    return j;
}

Json decay_check_to_json(const DecayCheckResult& r) {
    Json j;
    j["constant"] = r.constant;
    j["bound_holds"] = r.bound_holds;
    j["worst_excess"] = r.worst_excess;
    j["fitted_slope"] = r.fitted_slope;
    j["slope_bound"] = r.slope_bound;
    j["slope_ok"] = r.slope_ok;
    j["pass"] = r.pass;
    return j;
}

Json sobolev_flow_to_json(const SobolevFlowResult& r) {
    Json j;
    j["flow"] = margin_to_json(r.flow);
    j["algebraic"] = margin_to_json(r.algebraic);
    j["route_discrepancy"] = r.route_discrepancy;
    j["routes_agree"] = r.routes_agree;
    j["t_equilibrium"] = r.t_equilibrium;
    j["samples"] = r.samples;
    return j;
}

Json counterexample_to_json(const CounterexampleResult& r) {
    Json j;
    j["dim"] = r.dim;
    j["s"] = r.s;
    j["base"] = r.base;
    j["alpha"] = r.alpha;
    j["coarse"] = margin_to_json(r.coarse);
    j["fine"] = margin_to_json(r.fine);
    j["error_estimate"] = r.error_estimate;
    j["aux_lhs"] = r.aux_lhs;
    j["aux_rhs"] = r.aux_rhs;
    j["aux_strict_holds"] = r.aux_strict_holds;
    j["violation_established"] = r.violation_established;
    return j;
}

Json ji_limit_to_json(const JiLimitTable& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r;
        r["s"] = row.s;
        r["lhs"] = row.lhs;
        r["rhs_integral"] = row.rhs_integral;
        r["constant"] = row.constant;
        r["constant_factor"] = row.constant_factor;
        r["margin"] = row.margin;
        rows.push_back(std::move(r));
    }
    Json j;
    j["dim"] = t.dim;
    j["rows"] = std::move(rows);
    j["lhs_limit"] = t.lhs_limit;
    j["rhs_limit"] = t.rhs_limit;
    j["constant_limit"] = t.constant_limit;
    j["factor_limit"] = t.factor_limit;
    return j;
}

Json probe_result_to_json(const ProbeResult& r) {
    Json j;
    j["min_ratio"] = r.min_ratio;
    j["argmin"] = std::vector<double>(r.argmin.data(), r.argmin.data() + r.argmin.size());
    j["gradient_norm"] = r.gradient_norm;
    j["iterations"] = r.iterations;
    j["best_start"] = r.best_start;
    j["converged_starts"] = r.converged_starts;
    j["converged"] = r.converged;
    return j;
}

Json sharpness_rows_to_json(const std::vector<SharpnessRow>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["functional"] = row.functional;
        r["parameter"] = row.parameter;
        r["min_ratio"] = row.min_ratio;
        r["constant"] = row.constant;
        r["gap"] = row.gap;
        r["converged"] = row.converged;
        arr.push_back(std::move(r));
    }
    return arr;
}

Json make_report_document(const std::string& command, Json config, Json results,
                          bool overall_pass) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    j["tolerances"] = tolerances_to_json();
    j["results"] = std::move(results);
    j["overall_pass"] = overall_pass;
    return j;
}

}  // namespace gamma2lab
