#pragma once

#include <json.hpp>
#include <string>

#include "gamma2lab/constant_probe.hpp"
#include "gamma2lab/flow_monitor.hpp"
#include "gamma2lab/identities.hpp"
#include "gamma2lab/inequalities.hpp"

namespace gamma2lab {

using Json = nlohmann::ordered_json;

// Every tolerance used by checks and the acceptance gate, in one place.
// Reports echo this table verbatim.
struct Tolerances {
    double identity_rel = 1e-8;         // integral identities on the corpus
    double identity_pointwise = 1e-12;  // nodewise algebraic identities
    double margin_rel = 1e-8;           // relative margins may not dip below -this
    double equality_rel = 1e-8;         // |relative margin| at equality cases
    double constant_collapse = 1e-12;   // |constant - n| / n at lambda1 = n
    double ode_rel = 1e-7;              // ODE residual, relative
    double decay_rel = 1e-7;            // decay bound excess, relative
    double fd_first_rel = 1e-6;         // analytic vs Richardson dT/dt
    double fd_second_rel = 1e-5;        // analytic vs Richardson d2T/dt2
    double sobolev_route_rel = 1e-4;    // flow route vs algebraic route
    double probe_slack = 1e-6;          // min_ratio >= constant - this
    double quadrature_rel = 1e-9;       // adaptive order-doubling agreement
    double counterexample_error_factor = 10.0;  // |margin| vs doubling error
    double rate_fit_low = 0.8;          // ji-limit fitted exponent window
    double rate_fit_high = 1.2;
};

inline constexpr Tolerances kTolerances{};

Json tolerances_to_json(const Tolerances& t = kTolerances);
Json margin_to_json(const MarginReport& r);
Json identity_deviations_to_json(const IdentityDeviations& d);
Json ode_check_to_json(const OdeCheckResult& r);
Json decay_check_to_json(const DecayCheckResult& r);
Json sobolev_flow_to_json(const SobolevFlowResult& r);
Json counterexample_to_json(const CounterexampleResult& r);
Json ji_limit_to_json(const JiLimitTable& t);
Json probe_result_to_json(const ProbeResult& r);
Json sharpness_rows_to_json(const std::vector<SharpnessRow>& rows);

// Top-level report envelope with a stable field order:
// schema_version, tool, version, command, config, tolerances, results, overall_pass.
Json make_report_document(const std::string& command, Json config, Json results,
                          bool overall_pass);

}  // namespace gamma2lab
