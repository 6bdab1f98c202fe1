#pragma once

#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

// All functionals integrate against the sphere measure of the field's grid
// and require positive inputs wherever a power or logarithm appears.

// S(f) = -int f log f
double shannon_entropy(const ZonalField& f);

// T_p(u) = (int u^p - int u) / (1 - p), p != 1 (p = 1 is the Shannon path)
double tsallis_entropy(const ZonalField& u, double p);

// int f |grad log f|^2
double fisher_log(const ZonalField& f);

// int f (|Hess log f|^2 + Ric(grad log f, grad log f))
double gamma2_log(const ZonalField& f);

// int v^s (|Hess v|^2 + Ric(grad v, grad v))
double weighted_gamma2(const ZonalField& v, double s);

// int v^s |grad v|^2
double weighted_dirichlet(const ZonalField& v, double s);

// int v^s (|Hess v|^2 + Ric(grad v, grad v) - v^{-1} |grad v|^2 Delta v)
double modified_weighted_gamma2(const ZonalField& v, double s);

// U = u^{(p-1)/2}, the substitution linking T_p derivatives to weighted
// Gamma_2 integrals of U with weight exponent s = 2/(p-1).
ZonalField tsallis_substitution(const ZonalField& u, double p);

// dT_p/dt along the heat flow, evaluated at u.  Both printed forms are
// computed: power_form = p int u^{p-2} |grad u|^2 and
// energy_form = p (2/(p-1))^2 int u |grad U|^2.
struct TsallisDerivative {
    double power_form = 0.0;
    double energy_form = 0.0;
    double discrepancy = 0.0;  // |power - energy| / max(|power|, |energy|, eps)
    double value() const { return power_form; }
};
TsallisDerivative tsallis_first_derivative(const ZonalField& u, double p);

// d^2T_p/dt^2 along the heat flow:
// -2 p (2/(p-1))^2 int u (|Hess U|^2 + Ric(grad U, grad U) - U^{-1}|grad U|^2 Delta U)
double tsallis_second_derivative(const ZonalField& u, double p);

// int u |grad U|^2 (the decaying energy in the closing decay bound)
double weighted_dirichlet_energy(const ZonalField& u, double p);

// Scalar tagged for report assembly.
struct FunctionalValue {
    std::string id;
    double value = 0.0;
    double parameter = 0.0;
    int grid_order = 0;
};

}  // namespace gamma2lab
