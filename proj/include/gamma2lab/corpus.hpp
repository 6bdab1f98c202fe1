#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

// Random positive test fields v = exp(sum_{k=1..K} a_k phi_k) with
// a_k ~ Uniform(-sigma/k^2, sigma/k^2).  A spec carries the coefficients so
// the same field can be materialized exactly on any grid order (needed by
// the adaptive quadrature refinement).
struct CorpusOptions {
    int num_modes = 8;
    double sigma = 1.0;
};

struct LogFieldSpec {
    int dim = 0;
    Eigen::VectorXd log_coeffs;  // entry k-1 multiplies phi_k, k = 1..K

    ZonalField build(const GridPtr& grid) const;
};

LogFieldSpec random_log_field(int dim, std::uint64_t seed,
                              const CorpusOptions& opts = {});

}  // namespace gamma2lab
