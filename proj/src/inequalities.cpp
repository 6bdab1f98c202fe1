#include "gamma2lab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gamma2lab/entropy_functionals.hpp"
#include "gamma2lab/spectral_heat.hpp"

namespace gamma2lab {

namespace {

void check_dim(int n) {
    if (n < 2) throw std::invalid_argument("constants: dimension must be >= 2");
}

[[noreturn]] void range_failure(const std::string& which, double value) {
    throw std::range_error(which + ": parameter " + std::to_string(value) +
                           " outside the admissible set (pass exploratory to probe)");
}

double relative(double margin, double lhs, double rhs) {
    return margin / std::max({std::abs(lhs), std::abs(rhs), kTinyDenominator});
}

}  // namespace

double weighted_endpoint(int n) { return 4.0 * (n + 2.0) / (4.0 * n - 1.0); }
double modified_endpoint(int n) { return -2.0 * (2.0 * n * n + 1.0) / (4.0 * n - 1.0); }
double sobolev_endpoint(int n) { return (2.0 * n * n + 1.0) / ((n - 1.0) * (n - 1.0)); }
double del14_endpoint(int n) { return 2.0 * n / (n - 2.0); }
double ode_endpoint(int n) { return 2.0 * (n - 1.0) * (n - 1.0) / (2.0 * n * n + 1.0); }

bool weighted_admissible(int n, double s) {
    return s <= 0.0 || s >= weighted_endpoint(n);
}

bool modified_admissible(int n, double s) {
    return s <= modified_endpoint(n) || s >= 2.0;
}

bool sobolev_admissible(int n, double q) {
    return (q >= 1.0 && q < 2.0) || (q > 2.0 && q <= sobolev_endpoint(n));
}

bool del14_admissible(int n, double q) {
    if (n < 3) return false;
    return (q >= 1.0 && q < 2.0) || (q > 2.0 && q <= del14_endpoint(n));
}

bool ode_admissible(int n, double p) {
    return (p >= ode_endpoint(n) && p < 1.0) || (p > 1.0 && p <= 2.0);
}

bool counterexample_window(int n, double s) {
    return s > modified_endpoint(n) && s < -2.0;
}

double constant_ji(int n, double lambda_1) {
    check_dim(n);
    const double nn = n;
    return (4.0 * nn - 1.0) / (nn * (nn + 2.0)) * lambda_1 +
           (nn - 1.0) * (nn - 1.0) / (nn * (nn + 2.0)) * nn;
}

double constant_rothaus(int n, double lambda_1) {
    check_dim(n);
    const double nn = n;
    const double d = (nn + 1.0) * (nn + 1.0);
    return 4.0 * nn / d * lambda_1 + (nn - 1.0) * (nn - 1.0) / d * nn;
}

double weighted_constant_factor(int n, double s) {
    const double nn = n;
    return (nn - 1.0) * (nn - 1.0) * nn * s / ((nn + 2.0) * (nn * s - 4.0));
}

double constant_weighted(int n, double lambda_1, double s, bool exploratory) {
    check_dim(n);
    if (!exploratory && !weighted_admissible(n, s)) range_failure("constant_weighted", s);
    const double nn = n;
    const double a = (nn - 1.0) * (nn - 1.0) * s / ((nn + 2.0) * (nn * s - 4.0));
    return (1.0 - a) * lambda_1 + a * nn;
}

double constant_modified(int n, double lambda_1, double s, bool exploratory) {
    check_dim(n);
    if (!exploratory && !modified_admissible(n, s)) range_failure("constant_modified", s);
    const double nn = n;
    const double b = (nn - 1.0) * (nn - 1.0) * (s - 2.0) / ((nn + 2.0) * (s + 2.0));
    return (1.0 - b / nn) * lambda_1 + b;
}

double constant_sobolev(int n, double lambda_1, double q, bool exploratory) {
    check_dim(n);
    if (!exploratory && !sobolev_admissible(n, q)) range_failure("constant_sobolev", q);
    const double nn = n;
    const double a = (nn - 1.0) * (nn - 1.0) * (q - 1.0) / (nn * (nn + 2.0));
    return (1.0 - a) * lambda_1 + a * nn;
}

double constant_del14(int n, double lambda_1, double q, bool exploratory) {
    check_dim(n);
    if (n < 3) throw std::range_error("constant_del14: requires dimension >= 3");
    if (!exploratory && !del14_admissible(n, q)) range_failure("constant_del14", q);
    const double nn = n;
    const double d = (q - 2.0) + (nn + 1.0) * (nn + 1.0);
    const double a = (nn - 1.0) * (nn - 1.0) * (q - 1.0) / d;
    return (1.0 - a / nn) * lambda_1 + a / nn * nn;
}

double constant_ode(int n, double lambda_1, double p, bool exploratory) {
    check_dim(n);
    if (p == 0.0) throw std::invalid_argument("constant_ode: p must be nonzero");
    if (!exploratory && !ode_admissible(n, p)) range_failure("constant_ode", p);
    const double nn = n;
    const double r = 2.0 / p - 1.0;
    const double a = (nn - 1.0) * (nn - 1.0) * r / (nn * (nn + 2.0));
    return 2.0 * ((1.0 - a) * lambda_1 + a * nn);
}

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::ji: return "ji";
        case Theorem::weighted: return "weighted";
        case Theorem::modified: return "modified";
        case Theorem::sobolev: return "sobolev";
        case Theorem::logsob: return "logsob";
        case Theorem::poincare: return "poincare";
        case Theorem::rothaus: return "rothaus";
        case Theorem::del14: return "del14";
    }
    return "unknown";
}

namespace {

MarginReport assemble(Theorem t, const ZonalField& field, double parameter,
                      double lhs, double constant, double rhs, bool exploratory) {
    MarginReport r;
    r.theorem = theorem_name(t);
    r.dim = field.grid()->dim();
    r.parameter = parameter;
    r.lhs = lhs;
    r.constant = constant;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.relative_margin = relative(r.margin, lhs, rhs);
    r.grid_order = field.grid()->order();
    r.exploratory = exploratory;
    return r;
}

}  // namespace

MarginReport check_weighted_gamma2(const ZonalField& v, double s, bool exploratory) {
    const int n = v.grid()->dim();
    const double c = constant_weighted(n, lambda1(n), s, exploratory);
    const double lhs = weighted_gamma2(v, s);
    const double rhs = c * weighted_dirichlet(v, s);
    return assemble(Theorem::weighted, v, s, lhs, c, rhs, exploratory);
}

MarginReport check_modified_gamma2(const ZonalField& v, double s, bool exploratory) {
    const int n = v.grid()->dim();
    const double c = constant_modified(n, lambda1(n), s, exploratory);
    const double lhs = modified_weighted_gamma2(v, s);
    const double rhs = c * weighted_dirichlet(v, s);
    return assemble(Theorem::modified, v, s, lhs, c, rhs, exploratory);
}

MarginReport check_ji(const ZonalField& f) {
    const int n = f.grid()->dim();
    const double c = constant_ji(n, lambda1(n));
    const double lhs = gamma2_log(f);
    const double rhs = c * fisher_log(f);
    return assemble(Theorem::ji, f, 0.0, lhs, c, rhs, false);
}

MarginReport check_sobolev(const ZonalField& v, double q, bool exploratory) {
    const int n = v.grid()->dim();
    const double c = constant_sobolev(n, lambda1(n), q, exploratory);
    const double vol = v.grid()->volume();
    const double lhs = integrate(grad_norm_sq(v)) / vol;
    const double mq = integrate(pow(v, q)) / vol;
    const double m2 = integrate(v * v) / vol;
    const double rhs = c / (q - 2.0) * (std::pow(mq, 2.0 / q) - m2);
    const Theorem label = (q == 1.0) ? Theorem::poincare : Theorem::sobolev;
    return assemble(label, v, q, lhs, c, rhs, exploratory);
}

MarginReport check_logsobolev(const ZonalField& f) {
    const int n = f.grid()->dim();
    const double c = constant_ji(n, lambda1(n));
    const double vol = f.grid()->volume();
    const double lhs = fisher_log(f) / vol;
    const double m = mean(f);
    const double entropy = integrate(f * log(f)) / vol - m * std::log(m);
    const double rhs = 2.0 * c * entropy;
    MarginReport r = assemble(Theorem::logsob, f, 0.0, lhs, c, rhs, false);
    return r;
}

MarginReport check_del14_comparison(const ZonalField& v, double q) {
    const int n = v.grid()->dim();
    const double c = constant_del14(n, lambda1(n), q);
    const double vol = v.grid()->volume();
    const double lhs = integrate(grad_norm_sq(v)) / vol;
    const double mq = integrate(pow(v, q)) / vol;
    const double m2 = integrate(v * v) / vol;
    const double rhs = c / (q - 2.0) * (std::pow(mq, 2.0 / q) - m2);
    return assemble(Theorem::del14, v, q, lhs, c, rhs, false);
}

MarginReport check_adaptive(const FieldBuilder& build, const MarginChecker& check,
                            int dim, const AdaptiveOptions& opts) {
    MarginReport prev = check(build(shared_grid(dim, opts.initial_order)));
    for (int order = 2 * opts.initial_order; order <= opts.max_order; order *= 2) {
        MarginReport cur = check(build(shared_grid(dim, order)));
        const double scale =
            std::max({std::abs(cur.lhs), std::abs(cur.rhs), kTinyDenominator});
        const bool settled = std::abs(cur.lhs - prev.lhs) <= opts.rel_tol * scale &&
                             std::abs(cur.rhs - prev.rhs) <= opts.rel_tol * scale;
        if (settled) return cur;
        prev = cur;
    }
    prev.quadrature_converged = false;
    return prev;
}

CounterexampleResult run_counterexample(int n, double s, int order, double base) {
    check_dim(n);
    if (!counterexample_window(n, s))
        throw std::range_error(
            "run_counterexample: s must lie strictly inside the failure window (" +
            std::to_string(modified_endpoint(n)) + ", -2)");
    if (!(base > 1.0))
        throw std::invalid_argument("run_counterexample: base must exceed 1");

    const double t = s + 2.0;
    CounterexampleResult res;
    res.dim = n;
    res.s = s;
    res.base = base;
    res.alpha = (n - 1.0) / (n + 2.0) * (1.0 - 4.0 / t);

    const double exponent = 2.0 * (1.0 - n) / t;
    const FieldBuilder build = [base, exponent](const GridPtr& g) {
        return ZonalField(g, Eigen::exp(exponent * Eigen::log(base + g->nodes())));
    };

    const GridPtr coarse_grid = shared_grid(n, order);
    const GridPtr fine_grid = shared_grid(n, 2 * order);
    res.coarse = check_modified_gamma2(build(coarse_grid), s, true);
    res.fine = check_modified_gamma2(build(fine_grid), s, true);
    res.error_estimate = std::abs(res.fine.relative_margin - res.coarse.relative_margin);

    // proof-side strict inequality for u = (base + cos r)^{1-n}; the common
    // prefactor 1 - (n-1) alpha / n is negative inside the window
    const ZonalField u =
        ZonalField(fine_grid, Eigen::exp((1.0 - n) * Eigen::log(base + fine_grid->nodes())));
    const double prefactor = 1.0 - (n - 1.0) * res.alpha / n;
    const ZonalField lap_u = laplacian(u);
    res.aux_lhs = prefactor * integrate(lap_u * lap_u);
    res.aux_rhs = prefactor * lambda1(n) * integrate(grad_norm_sq(u));
    res.aux_strict_holds = res.aux_lhs < res.aux_rhs;

    res.violation_established =
        res.fine.relative_margin < 0.0 && res.coarse.relative_margin < 0.0 &&
        std::abs(res.fine.relative_margin) > 10.0 * res.error_estimate;
    return res;
}

JiLimitTable ji_limit_convergence(const ZonalField& f, const std::vector<double>& s_list) {
    require_positive(f, "ji_limit_convergence");
    const int n = f.grid()->dim();
    const GridPtr& grid = f.grid();

    const ZonalField v = -1.0 * log(f);
    const ZonalField g2_integrand = hessian_norm_sq(v) + ricci_term(v);
    const ZonalField dirichlet_integrand = grad_norm_sq(v);

    JiLimitTable table;
    table.dim = n;
    table.lhs_limit = gamma2_log(f);
    table.rhs_limit = fisher_log(f);
    table.constant_limit = constant_ji(n, lambda1(n));
    table.factor_limit = (n - 1.0) * (n - 1.0) / (n + 2.0);

    for (double s : s_list) {
        if (!(s < 0.0))
            throw std::invalid_argument("ji_limit_convergence: s values must be negative");
        const Eigen::ArrayXd ratio = v.values() / s;
        const ZonalField w(grid, 1.0 - ratio);
        require_positive(w, "ji_limit_convergence: 1 - v/s");
        // (1 - v/s)^s computed in log form to keep the s -> -inf regime exact
        const ZonalField weight(grid,
                                Eigen::exp(s * (-ratio).unaryExpr([](double x) {
                                    return std::log1p(x);
                                })));
        JiLimitRow row;
        row.s = s;
        row.lhs = integrate(weight * g2_integrand);
        row.rhs_integral = integrate(weight * dirichlet_integrand);
        row.constant = constant_weighted(n, lambda1(n), s);
        row.constant_factor = weighted_constant_factor(n, s);
        row.margin = row.lhs - row.constant * row.rhs_integral;
        table.rows.push_back(row);
    }
    return table;
}

double fit_decay_exponent(const std::vector<double>& s_abs,
                          const std::vector<double>& diffs) {
    if (s_abs.size() != diffs.size() || s_abs.size() < 2)
        throw std::invalid_argument("fit_decay_exponent: need >= 2 points");
    const int m = static_cast<int>(s_abs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        if (!(s_abs[i] > 0.0) || !(diffs[i] > 0.0))
            throw std::invalid_argument("fit_decay_exponent: values must be positive");
        const double x = std::log(s_abs[i]);
        const double y = std::log(diffs[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < kTinyDenominator)
        throw std::invalid_argument("fit_decay_exponent: degenerate abscissae");
    const double slope = (m * sxy - sx * sy) / denom;
    return -slope;
}

}  // namespace gamma2lab
