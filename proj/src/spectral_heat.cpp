#include "gamma2lab/spectral_heat.hpp"

#include <cmath>
#include <stdexcept>

namespace gamma2lab {

EigenTable EigenTable::up_to(int dim, int count) {
    EigenTable t;
    t.dim = dim;
    t.lambda.resize(count);
    for (int k = 0; k < count; ++k)
        t.lambda[k] = static_cast<double>(k) * (k + dim - 1.0);
    return t;
}

double lambda1(int dim) {
    if (dim < 2) throw std::invalid_argument("lambda1: dimension must be >= 2");
    return static_cast<double>(dim);
}

SpectralCoeffs forward_transform(const ZonalField& F) {
    SpectralCoeffs c;
    c.dim = F.grid()->dim();
    c.a = F.grid()->analysis() * F.values().matrix();
    return c;
}

ZonalField inverse_transform(const SpectralCoeffs& coeffs, const GridPtr& grid) {
    if (coeffs.dim != grid->dim())
        throw std::invalid_argument("inverse_transform: dimension mismatch");
    const int m = static_cast<int>(coeffs.a.size());
    if (m > grid->order())
        throw std::invalid_argument("inverse_transform: more modes than grid order");
    Eigen::VectorXd values = grid->basis().leftCols(m) * coeffs.a;
    return ZonalField(grid, values.array());
}

double spectral_tail_fraction(const SpectralCoeffs& coeffs) {
    const int m = static_cast<int>(coeffs.a.size());
    const double total = coeffs.a.squaredNorm();
    if (total <= 0.0) return 0.0;
    const int start = (3 * m) / 4;
    return coeffs.a.tail(m - start).squaredNorm() / total;
}

SpectralCoeffs heat_propagate(const SpectralCoeffs& coeffs, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_propagate: t must be >= 0");
    const EigenTable table = EigenTable::up_to(coeffs.dim, static_cast<int>(coeffs.a.size()));
    SpectralCoeffs out;
    out.dim = coeffs.dim;
    out.a = (coeffs.a.array() * Eigen::exp(-table.lambda * t)).matrix();
    return out;
}

ZonalField heat_evolve(const ZonalField& u0, double t) {
    return inverse_transform(heat_propagate(forward_transform(u0), t), u0.grid());
}

std::vector<double> geometric_times(double t_min, double rho, double horizon) {
    if (!(t_min > 0.0) || !(rho > 1.0))
        throw std::invalid_argument("geometric_times: need t_min > 0, rho > 1");
    std::vector<double> times{0.0};
    if (horizon <= 0.0) return times;
    double t = t_min;
    while (t < horizon) {
        times.push_back(t);
        t *= rho;
    }
    times.push_back(horizon);
    return times;
}

double flow_to_equilibrium(const ZonalField& u0, double tol,
                           const EquilibriumOptions& opts) {
    require_positive(u0, "flow_to_equilibrium");
    if (!(tol > 0.0)) throw std::invalid_argument("flow_to_equilibrium: tol must be > 0");
    const double m = mean(u0);
    const SpectralCoeffs c0 = forward_transform(u0);

    const auto settled = [&](double t) {
        SpectralCoeffs c = heat_propagate(c0, t);
        c.a[0] = 0.0;  // fluctuation around the conserved mean
        const ZonalField delta = inverse_transform(c, u0.grid());
        return delta.values().abs().maxCoeff() < tol * m;
    };

    if (settled(0.0)) return 0.0;
    double t = opts.t_min;
    for (int j = 0; j < opts.max_steps; ++j) {
        if (settled(t)) return t;
        t *= opts.rho;
    }
    throw numeric_error("flow_to_equilibrium: horizon search did not terminate");
}

}  // namespace gamma2lab
