#pragma once

#include <cstdint>

#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

// Worst relative deviations of the integral and pointwise identities over a
// seeded corpus of positive fields.  Each entry is already normalized by the
// natural scale of its identity, so "pass" means <= the matching tolerance.
struct IdentityDeviations {
    double divergence = 0.0;        // |int Delta F| / (||Delta F||_inf vol)
    double parts = 0.0;             // int F Delta F + int |grad F|^2
    double bochner = 0.0;           // int (Delta F)^2 vs int (|Hess F|^2 + Ric)
    double mixed_first = 0.0;       // int F^{-1}|grad F|^2 Delta F identity
    double mixed_second = 0.0;      // int <Hess F, dF(x)dF/F> identity
    double pointwise_pairing = 0.0; // traceless pairing decomposition at nodes
    double pointwise_traceless = 0.0;  // |dF(x)dF/F - ...|^2 = ((n-1)/n)F^{-2}|grad F|^4

    double max() const;
};

IdentityDeviations identity_deviations(const ZonalField& F);

// Runs the suite over `trials` random positive corpus fields plus the field
// exp(phi_1) and a positive polynomial, returning coordinatewise maxima.
IdentityDeviations identity_suite(int dim, int order, int trials,
                                  std::uint64_t seed);

}  // namespace gamma2lab
