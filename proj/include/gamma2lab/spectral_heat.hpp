#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

// Coefficients a_k of a zonal field in the orthonormal eigenbasis phi_k.
struct SpectralCoeffs {
    int dim = 0;
    Eigen::VectorXd a;
};

// Laplace spectrum on S^n restricted to zonal modes: lambda_k = k(k + n - 1).
struct EigenTable {
    int dim = 0;
    Eigen::ArrayXd lambda;

    static EigenTable up_to(int dim, int count);
};

double lambda1(int dim);  // spectral gap, = dim on the unit round sphere

SpectralCoeffs forward_transform(const ZonalField& F);
ZonalField inverse_transform(const SpectralCoeffs& coeffs, const GridPtr& grid);

// Fraction of coefficient energy in the top quarter of resolved modes; a
// value above kSpectralTailWarn signals an under-resolved field.
inline constexpr double kSpectralTailWarn = 1e-10;
double spectral_tail_fraction(const SpectralCoeffs& coeffs);

// Exact heat propagator a_k -> a_k exp(-lambda_k t); requires t >= 0.
SpectralCoeffs heat_propagate(const SpectralCoeffs& coeffs, double t);

// Convenience: propagate node values through time t on their own grid.
ZonalField heat_evolve(const ZonalField& u0, double t);

// Smallest time on the geometric grid {0} U {t_min rho^j} at which
// max_i |u(t) - mean(u0)| < tol * mean(u0).  Requires u0 positive.
struct EquilibriumOptions {
    double t_min = 1e-3;
    double rho = 1.25;
    int max_steps = 10000;
};
double flow_to_equilibrium(const ZonalField& u0, double tol,
                           const EquilibriumOptions& opts = {});

// Geometric time grid 0, t_min, t_min*rho, ..., capped at `horizon` (the
// horizon itself is appended when not already hit).
std::vector<double> geometric_times(double t_min, double rho, double horizon);

}  // namespace gamma2lab
