#include "gamma2lab/entropy_functionals.hpp"

#include <algorithm>
#include <cmath>

namespace gamma2lab {

double shannon_entropy(const ZonalField& f) {
    require_positive(f, "shannon_entropy");
    return -(f.grid()->weights() * f.values() * Eigen::log(f.values())).sum();
}

double tsallis_entropy(const ZonalField& u, double p) {
    if (p == 1.0)
        throw std::invalid_argument("tsallis_entropy: p = 1 is the Shannon path");
    require_positive(u, "tsallis_entropy");
    const double up = integrate(pow(u, p));
    const double mass = integrate(u);
    return (up - mass) / (1.0 - p);
}

double fisher_log(const ZonalField& f) {
    require_positive(f, "fisher_log");
    // f |grad log f|^2 = |grad f|^2 / f
    return integrate(grad_norm_sq(f) / f);
}

double gamma2_log(const ZonalField& f) {
    require_positive(f, "gamma2_log");
    const ZonalField g = log(f);
    return integrate(f * (hessian_norm_sq(g) + ricci_term(g)));
}

double weighted_gamma2(const ZonalField& v, double s) {
    const ZonalField w = pow(v, s);
    return integrate(w * (hessian_norm_sq(v) + ricci_term(v)));
}

double weighted_dirichlet(const ZonalField& v, double s) {
    const ZonalField w = pow(v, s);
    return integrate(w * grad_norm_sq(v));
}

double modified_weighted_gamma2(const ZonalField& v, double s) {
    const ZonalField w = pow(v, s);
    const ZonalField correction = grad_norm_sq(v) * laplacian(v) / v;
    return integrate(w * (hessian_norm_sq(v) + ricci_term(v) - correction));
}

ZonalField tsallis_substitution(const ZonalField& u, double p) {
    if (p == 1.0)
        throw std::invalid_argument("tsallis_substitution: p = 1 is the Shannon path");
    return pow(u, 0.5 * (p - 1.0));
}

TsallisDerivative tsallis_first_derivative(const ZonalField& u, double p) {
    if (p == 1.0)
        throw std::invalid_argument("tsallis_first_derivative: p = 1 is the Shannon path");
    require_positive(u, "tsallis_first_derivative");
    TsallisDerivative d;
    d.power_form = p * integrate(pow(u, p - 2.0) * grad_norm_sq(u));
    const ZonalField U = tsallis_substitution(u, p);
    const double scale = 2.0 / (p - 1.0);
    d.energy_form = p * scale * scale * integrate(u * grad_norm_sq(U));
    d.discrepancy = std::abs(d.power_form - d.energy_form) /
                    std::max({std::abs(d.power_form), std::abs(d.energy_form),
                              kTinyDenominator});
    return d;
}

double tsallis_second_derivative(const ZonalField& u, double p) {
    if (p == 1.0)
        throw std::invalid_argument("tsallis_second_derivative: p = 1 is the Shannon path");
    require_positive(u, "tsallis_second_derivative");
    const ZonalField U = tsallis_substitution(u, p);
    const ZonalField integrand =
        hessian_norm_sq(U) + ricci_term(U) - grad_norm_sq(U) * laplacian(U) / U;
    const double scale = 2.0 / (p - 1.0);
    return -2.0 * p * scale * scale * integrate(u * integrand);
}

double weighted_dirichlet_energy(const ZonalField& u, double p) {
    if (p == 1.0)
        throw std::invalid_argument("weighted_dirichlet_energy: p = 1 is the Shannon path");
    require_positive(u, "weighted_dirichlet_energy");
    return integrate(u * grad_norm_sq(tsallis_substitution(u, p)));
}

}  // namespace gamma2lab
