#include "gamma2lab/identities.hpp"

#include <algorithm>
#include <cmath>

#include "gamma2lab/corpus.hpp"
#include "gamma2lab/rng.hpp"

namespace gamma2lab {

double IdentityDeviations::max() const {
    return std::max({divergence, parts, bochner, mixed_first, mixed_second,
                     pointwise_pairing, pointwise_traceless});
}

IdentityDeviations identity_deviations(const ZonalField& F) {
    require_positive(F, "identity_deviations");
    const double n = F.grid()->dim();
    const double vol = F.grid()->volume();

    const ZonalField lap = laplacian(F);
    const ZonalField gns = grad_norm_sq(F);

    // derivatives at spectral-differentiation noise level (~1e-10 of the
    // field scale at order 64) cannot witness a violation: the field is a
    // constant at working precision and every identity is trivially 0 = 0
    if (lap.max_abs() <= 1e-7 * F.max_abs() &&
        gns.max_abs() <= 1e-14 * F.max_abs() * F.max_abs()) {
        return IdentityDeviations{};
    }

    const ZonalField hess = hessian_norm_sq(F);
    const ZonalField pairing = hessian_grad_pairing(F);
    const ZonalField tp = traceless_pairing(F);
    const ZonalField q4 = gns * gns / (F * F);

    IdentityDeviations dev;

    const double int_lap = integrate(lap);
    dev.divergence = std::abs(int_lap) /
                     std::max(lap.max_abs() * vol, kTinyDenominator);

    const double int_gns = integrate(gns);
    dev.parts = std::abs(integrate(F * lap) + int_gns) /
                std::max(int_gns, kTinyDenominator);

    const double lhs_b = integrate(lap * lap);
    const double rhs_b = integrate(hess) + (n - 1.0) * int_gns;
    dev.bochner = std::abs(lhs_b - rhs_b) /
                  std::max({std::abs(lhs_b), std::abs(rhs_b), kTinyDenominator});

    const double int_q4 = integrate(q4);
    const double int_tp = integrate(tp);
    // both sides of a mixed identity can vanish together (e.g. exponentials
    // of an eigenmode), so normalize by the constituent magnitudes instead
    const double mixed_scale =
        std::max({std::abs(int_q4), std::abs(int_tp), kTinyDenominator});

    const double lhs_1 = integrate(gns * lap / F);
    const double rhs_1 = n / (n + 2.0) * int_q4 - 2.0 * n / (n + 2.0) * int_tp;
    dev.mixed_first = std::abs(lhs_1 - rhs_1) /
                      std::max({std::abs(lhs_1), std::abs(rhs_1), mixed_scale});

    const double lhs_2 = integrate(pairing);
    const double rhs_2 = 1.0 / (n + 2.0) * int_q4 + n / (n + 2.0) * int_tp;
    dev.mixed_second = std::abs(lhs_2 - rhs_2) /
                       std::max({std::abs(lhs_2), std::abs(rhs_2), mixed_scale});

    const Eigen::ArrayXd recomposed =
        tp.values() + lap.values() * gns.values() / (n * F.values());
    dev.pointwise_pairing =
        (pairing.values() - recomposed).abs().maxCoeff() /
        std::max(pairing.max_abs(), kTinyDenominator);

    const ZonalField tgt = traceless_grad_tensor_norm_sq(F);
    dev.pointwise_traceless =
        (tgt.values() - (n - 1.0) / n * q4.values()).abs().maxCoeff() /
        std::max(q4.max_abs(), kTinyDenominator);

    return dev;
}

namespace {

void take_max(IdentityDeviations& acc, const IdentityDeviations& d) {
    acc.divergence = std::max(acc.divergence, d.divergence);
    acc.parts = std::max(acc.parts, d.parts);
    acc.bochner = std::max(acc.bochner, d.bochner);
    acc.mixed_first = std::max(acc.mixed_first, d.mixed_first);
    acc.mixed_second = std::max(acc.mixed_second, d.mixed_second);
    acc.pointwise_pairing = std::max(acc.pointwise_pairing, d.pointwise_pairing);
    acc.pointwise_traceless =
        std::max(acc.pointwise_traceless, d.pointwise_traceless);
}

}  // namespace

IdentityDeviations identity_suite(int dim, int order, int trials,
                                  std::uint64_t seed) {
    const GridPtr grid = shared_grid(dim, order);
    IdentityDeviations worst;

    for (int i = 0; i < trials; ++i) {
        const LogFieldSpec spec = random_log_field(dim, derive_seed(seed, i));
        take_max(worst, identity_deviations(spec.build(grid)));
    }

    // deterministic extras: a pure exponential mode and a positive polynomial
    const Eigen::ArrayXd s = grid->nodes();
    take_max(worst, identity_deviations(
                        ZonalField(grid, Eigen::exp(grid->basis().col(1).array()))));
    take_max(worst, identity_deviations(
                        ZonalField(grid, 2.0 + s + 0.5 * s.square() + 0.25 * s.cube())));

    return worst;
}

}  // namespace gamma2lab
