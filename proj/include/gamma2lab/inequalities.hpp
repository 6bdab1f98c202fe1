#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gamma2lab/corpus.hpp"
#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

// ---- sharp constants ------------------------------------------------------
// Each constant has the shape (1 - A) lambda1 + A n for some coefficient A
// depending on (n, parameter); on the round sphere lambda1 = n makes every
// one of them collapse to n.  Outside the admissible parameter set the
// functions throw std::range_error unless `exploratory` is set.

double constant_ji(int n, double lambda_1);
double constant_rothaus(int n, double lambda_1);
double constant_weighted(int n, double lambda_1, double s, bool exploratory = false);
double constant_modified(int n, double lambda_1, double s, bool exploratory = false);
double constant_sobolev(int n, double lambda_1, double q, bool exploratory = false);
double constant_del14(int n, double lambda_1, double q, bool exploratory = false);
// C(n,p) for the entropy ODE / decay bound; equals 2 * constant_sobolev at q = 2/p
double constant_ode(int n, double lambda_1, double p, bool exploratory = false);

bool weighted_admissible(int n, double s);
bool modified_admissible(int n, double s);
bool sobolev_admissible(int n, double q);
bool del14_admissible(int n, double q);
bool ode_admissible(int n, double p);
// open window where the modified inequality provably fails
bool counterexample_window(int n, double s);

// endpoints, exposed for sweeps and tests
double weighted_endpoint(int n);        // 4(n+2)/(4n-1)
double modified_endpoint(int n);        // -2(2n^2+1)/(4n-1)
double sobolev_endpoint(int n);         // (2n^2+1)/(n-1)^2
double del14_endpoint(int n);           // 2n/(n-2), n >= 3
double ode_endpoint(int n);             // 2(n-1)^2/(2n^2+1)

// additive coefficient of the weighted constant, A(s) n; converges to the
// additive part (n-1)^2/(n+2) of the ji constant at rate O(1/|s|)
double weighted_constant_factor(int n, double s);

// ---- margin checks --------------------------------------------------------

enum class Theorem { ji, weighted, modified, sobolev, logsob, poincare, rothaus, del14 };
std::string theorem_name(Theorem t);

struct MarginReport {
    std::string theorem;
    int dim = 0;
    double parameter = 0.0;
    double lhs = 0.0;
    double constant = 0.0;
    double rhs = 0.0;
    double margin = 0.0;           // lhs - rhs; >= 0 means the inequality holds
    double relative_margin = 0.0;  // margin / max(|lhs|, |rhs|, eps)
    int grid_order = 0;
    std::uint64_t seed = 0;
    bool exploratory = false;
    bool quadrature_converged = true;
};

// int v^s Gamma_2-type LHS  >=  constant * int v^s |grad v|^2
MarginReport check_weighted_gamma2(const ZonalField& v, double s, bool exploratory = false);
MarginReport check_modified_gamma2(const ZonalField& v, double s, bool exploratory = false);
// int f (|Hess log f|^2 + Ric) >= constant_ji * int f |grad log f|^2
MarginReport check_ji(const ZonalField& f);
// mean_int |grad v|^2 >= constant/(q-2) ((mean_int v^q)^{2/q} - mean_int v^2)
MarginReport check_sobolev(const ZonalField& v, double q, bool exploratory = false);
// mean_int f |grad log f|^2 >= 2 constant_ji (mean_int f log f - m log m)
MarginReport check_logsobolev(const ZonalField& f);
// side-by-side margin using the del14 constant against the same Sobolev
// deficit (mean_int v^2 reading of its right-hand side); comparison only
MarginReport check_del14_comparison(const ZonalField& v, double q);

// Re-evaluates a margin on doubling grid orders until lhs and rhs agree to
// rel_tol between successive orders (or max_order is reached; the report
// then carries quadrature_converged = false).
struct AdaptiveOptions {
    int initial_order = 64;
    int max_order = 512;
    double rel_tol = 1e-9;
};
using FieldBuilder = std::function<ZonalField(const GridPtr&)>;
using MarginChecker = std::function<MarginReport(const ZonalField&)>;
MarginReport check_adaptive(const FieldBuilder& build, const MarginChecker& check,
                            int dim, const AdaptiveOptions& opts = {});

// ---- counterexample for the modified inequality ---------------------------
// For s strictly inside (-2(2n^2+1)/(4n-1), -2), the profile
// u = (base + cos r)^{1-n}, v = u^{2/(s+2)} violates the modified inequality.
struct CounterexampleResult {
    int dim = 0;
    double s = 0.0;
    double base = 2.0;
    double alpha = 0.0;             // ((n-1)/(n+2)) (1 - 4/(s+2))
    MarginReport coarse;            // at `order`
    MarginReport fine;              // at 2 * order
    double error_estimate = 0.0;    // |margin_fine - margin_coarse|
    double aux_lhs = 0.0;           // (1 - (n-1) alpha / n) int (Delta u)^2
    double aux_rhs = 0.0;           // (1 - (n-1) alpha / n) lambda1 int |grad u|^2
    bool aux_strict_holds = false;  // aux_lhs < aux_rhs
    bool violation_established = false;  // margin < 0, stable sign, > 10x error
};
CounterexampleResult run_counterexample(int n, double s, int order = 64,
                                        double base = 2.0);

// ---- recovery of the log-Gamma_2 bound as s -> -infinity -------------------
// Applies the weighted inequality to 1 - v/s with v = -log f and multiplies
// through by s^2; rows converge to (gamma2_log f, fisher_log f, ji constant).
struct JiLimitRow {
    double s = 0.0;
    double lhs = 0.0;            // int (1 - v/s)^s (|Hess v|^2 + Ric(grad v))
    double rhs_integral = 0.0;   // int (1 - v/s)^s |grad v|^2
    double constant = 0.0;       // constant_weighted(n, lambda1, s)
    double constant_factor = 0.0;
    double margin = 0.0;
};
struct JiLimitTable {
    int dim = 0;
    std::vector<JiLimitRow> rows;
    double lhs_limit = 0.0;       // gamma2_log(f)
    double rhs_limit = 0.0;       // fisher_log(f)
    double constant_limit = 0.0;  // constant_ji
    double factor_limit = 0.0;    // (n-1)^2/(n+2)
};
JiLimitTable ji_limit_convergence(const ZonalField& f, const std::vector<double>& s_list);

// least-squares exponent beta in |d_k| ~ c |s_k|^{-beta}
double fit_decay_exponent(const std::vector<double>& s_abs,
                          const std::vector<double>& diffs);

}  // namespace gamma2lab
