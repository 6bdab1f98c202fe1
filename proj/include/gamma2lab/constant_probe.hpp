#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gamma2lab/inequalities.hpp"
#include "gamma2lab/sphere_zonal.hpp"

namespace gamma2lab {

enum class RatioFunctional { ji, weighted, modified };
std::string ratio_functional_name(RatioFunctional f);

// Rayleigh quotient over log-parameterized positive fields v = exp(B w),
// where column k of B is the orthonormal eigenmode phi_k (k = 0..truncation).
// The w_0 direction rescales v and leaves the ratio invariant: both numerator
// and denominator are degree-1 homogeneous for ji and scale by the same
// factor c^{s+2} for weighted/modified, so no rescaling is needed.
struct RatioProblem {
    RatioFunctional functional = RatioFunctional::ji;
    double s = 0.0;  // ignored for ji
    GridPtr grid;
    int basis_truncation = 8;  // w has basis_truncation + 1 entries
    bool exploratory = false;
};

// Penalized value 1e12 (1 + |w|) when the Dirichlet denominator degenerates,
// when exp(B w) dips under the relative positivity floor, or when a doubled
// audit grid fails to reproduce the ratio to kProbeAuditTol (under-resolved
// fields can otherwise fake ratios the inequalities forbid).
inline constexpr double kProbeAuditTol = 1e-6;
double rayleigh_ratio(const RatioProblem& prob, const Eigen::VectorXd& w);

struct ProbeOptions {
    int multistarts = 20;
    int max_iterations = 200;
    double gradient_tol = 1e-5;
    double fd_step = 1e-5;
    std::uint64_t seed = 0;
};

struct ProbeResult {
    double min_ratio = 0.0;
    Eigen::VectorXd argmin;
    double gradient_norm = 0.0;
    int iterations = 0;
    int best_start = -1;
    int converged_starts = 0;
    bool converged = false;  // of the best start: gradient tolerance met or
                             // descent stalled at working precision
};

// quasi-Newton descent with central-difference gradients from `multistarts`
// seeded Gaussian starts (norm floor 0.05) plus one small mode-1 start;
// starts run concurrently, merged by (ratio, start index)
struct probe_convergence_error : std::runtime_error {
    explicit probe_convergence_error(ProbeResult partial_result)
        : std::runtime_error("minimize_ratio: no start reached the gradient tolerance"),
          partial(std::move(partial_result)) {}
    ProbeResult partial;
};
ProbeResult minimize_ratio(const RatioProblem& prob, const ProbeOptions& opts = {});

struct SharpnessRow {
    std::string functional;
    double parameter = 0.0;
    double min_ratio = 0.0;
    double constant = 0.0;
    double gap = 0.0;  // min_ratio - constant
    bool converged = false;
};

struct SharpnessQuery {
    RatioFunctional functional = RatioFunctional::ji;
    std::vector<double> parameters;  // one dummy entry for ji
    bool exploratory = false;
};

std::vector<SharpnessRow> sharpness_report(int dim, int order,
                                           const std::vector<SharpnessQuery>& queries,
                                           const ProbeOptions& opts = {});

}  // namespace gamma2lab
