#include "gamma2lab/corpus.hpp"

#include "gamma2lab/rng.hpp"

namespace gamma2lab {

ZonalField LogFieldSpec::build(const GridPtr& grid) const {
    if (grid->dim() != dim)
        throw std::invalid_argument("LogFieldSpec: dimension mismatch");
    const int k = static_cast<int>(log_coeffs.size());
    if (k + 1 > grid->order())
        throw std::invalid_argument("LogFieldSpec: more modes than grid order");
    Eigen::VectorXd logv = grid->basis().middleCols(1, k) * log_coeffs;
    return ZonalField(grid, Eigen::exp(logv.array()));
}

LogFieldSpec random_log_field(int dim, std::uint64_t seed, const CorpusOptions& opts) {
    if (opts.num_modes < 1)
        throw std::invalid_argument("random_log_field: need at least one mode");
    Rng rng(seed);
    LogFieldSpec spec;
    spec.dim = dim;
    spec.log_coeffs.resize(opts.num_modes);
    for (int k = 1; k <= opts.num_modes; ++k) {
        const double bound = opts.sigma / (static_cast<double>(k) * k);
        spec.log_coeffs[k - 1] = rng.uniform(-bound, bound);
    }
    return spec;
}

}  // namespace gamma2lab
