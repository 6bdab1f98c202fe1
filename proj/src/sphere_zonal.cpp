#include "gamma2lab/sphere_zonal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace gamma2lab {

namespace {

// Recurrence coefficient b_k for monic polynomials orthogonal w.r.t.
// (1 - s^2)^{(n-2)/2} on [-1, 1]; the diagonal terms vanish by symmetry.
double recurrence_b(int k, int n) {
    if (k == 0) return 0.0;
    const double kk = k;
    return kk * (kk + n - 2.0) / ((2.0 * kk + n - 1.0) * (2.0 * kk + n - 3.0));
}

}  // namespace

double Grid::sphere_volume(int dim) {
    const double np1 = 0.5 * (dim + 1);
    return 2.0 * std::pow(std::numbers::pi, np1) / std::tgamma(np1);
}

Grid::Grid(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 2) throw std::invalid_argument("Grid: dimension must be >= 2");
    if (order < 8) throw std::invalid_argument("Grid: order must be >= 8");

    volume_ = sphere_volume(dim);

    // Golub-Welsch: nodes are eigenvalues of the symmetric Jacobi matrix,
    // weights are volume * (first eigenvector component)^2.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double off = std::sqrt(recurrence_b(k, dim));
        J(k - 1, k) = off;
        J(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw numeric_error("Grid: quadrature eigensolve failed");
    nodes_ = es.eigenvalues().array();
    weights_ = volume_ * es.eigenvectors().row(0).array().square();

    // Orthonormal basis values and derivatives at the nodes via the
    // three-term recurrence (p0 = 1/sqrt(vol); diagonal terms are zero):
    //   sqrt(b_{k+1}) p_{k+1} = s p_k - sqrt(b_k) p_{k-1}
    basis_ = Eigen::MatrixXd::Zero(order, order);
    basis_d1_ = Eigen::MatrixXd::Zero(order, order);
    basis_d2_ = Eigen::MatrixXd::Zero(order, order);
    const Eigen::ArrayXd& s = nodes_;
    basis_.col(0).setConstant(1.0 / std::sqrt(volume_));
    if (order > 1) {
        const double sb1 = std::sqrt(recurrence_b(1, dim));
        basis_.col(1) = (s * basis_.col(0).array() / sb1).matrix();
        basis_d1_.col(1) = (basis_.col(0).array() / sb1).matrix();
    }
    for (int k = 1; k + 1 < order; ++k) {
        const double sbk = std::sqrt(recurrence_b(k, dim));
        const double sbk1 = std::sqrt(recurrence_b(k + 1, dim));
        basis_.col(k + 1) =
            ((s * basis_.col(k).array() - sbk * basis_.col(k - 1).array()) / sbk1)
                .matrix();
        basis_d1_.col(k + 1) = ((basis_.col(k).array() + s * basis_d1_.col(k).array() -
                                 sbk * basis_d1_.col(k - 1).array()) /
                                sbk1)
                                   .matrix();
        basis_d2_.col(k + 1) =
            ((2.0 * basis_d1_.col(k).array() + s * basis_d2_.col(k).array() -
              sbk * basis_d2_.col(k - 1).array()) /
             sbk1)
                .matrix();
    }

    analysis_ = basis_.transpose() * weights_.matrix().asDiagonal();
    ops_.d1 = basis_d1_ * analysis_;
    ops_.d2 = basis_d2_ * analysis_;
}

GridPtr make_grid(int dim, int order) {
    return std::make_shared<const Grid>(dim, order);
}

GridPtr shared_grid(int dim, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, GridPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{dim, order}];
    if (!slot) slot = make_grid(dim, order);
    return slot;
}

ZonalField::ZonalField(GridPtr grid, Eigen::ArrayXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("ZonalField: null grid");
    if (values_.size() != grid_->order())
        throw std::invalid_argument("ZonalField: value count != grid order");
    if (!values_.isFinite().all())
        throw numeric_error("ZonalField: non-finite node value");
    min_value_ = values_.minCoeff();
    max_abs_ = values_.abs().maxCoeff();
}

bool ZonalField::strictly_positive() const {
    return min_value_ > kPositivityEps * max_abs_;
}

ZonalField ZonalField::constant(const GridPtr& grid, double c) {
    return ZonalField(grid, Eigen::ArrayXd::Constant(grid->order(), c));
}

ZonalField ZonalField::coordinate(const GridPtr& grid) {
    return ZonalField(grid, grid->nodes());
}

void require_positive(const ZonalField& F, const std::string& what) {
    if (!F.strictly_positive())
        throw std::domain_error(what + ": field not positive (min " +
                                std::to_string(F.min_value()) + " vs floor " +
                                std::to_string(kPositivityEps * F.max_abs()) + ")");
}

double integrate(const ZonalField& F) {
    return (F.grid()->weights() * F.values()).sum();
}

double mean(const ZonalField& F) { return integrate(F) / F.grid()->volume(); }

namespace {

const GridPtr& common_grid(const ZonalField& F, const ZonalField& G) {
    if (F.grid().get() != G.grid().get())
        throw std::invalid_argument("field arithmetic: mismatched grids");
    return F.grid();
}

}  // namespace

ZonalField pow(const ZonalField& F, double exponent) {
    require_positive(F, "pow");
    return ZonalField(F.grid(), Eigen::exp(exponent * Eigen::log(F.values())));
}

ZonalField log(const ZonalField& F) {
    require_positive(F, "log");
    return ZonalField(F.grid(), Eigen::log(F.values()));
}

ZonalField exp(const ZonalField& F) {
    return ZonalField(F.grid(), Eigen::exp(F.values()));
}

ZonalField operator+(const ZonalField& F, const ZonalField& G) {
    return ZonalField(common_grid(F, G), F.values() + G.values());
}

ZonalField operator-(const ZonalField& F, const ZonalField& G) {
    return ZonalField(common_grid(F, G), F.values() - G.values());
}

ZonalField operator*(const ZonalField& F, const ZonalField& G) {
    return ZonalField(common_grid(F, G), F.values() * G.values());
}

ZonalField operator/(const ZonalField& F, const ZonalField& G) {
    require_positive(G, "quotient");
    return ZonalField(common_grid(F, G), F.values() / G.values());
}

ZonalField operator*(double c, const ZonalField& F) {
    return ZonalField(F.grid(), c * F.values());
}

ZonalField operator+(const ZonalField& F, double c) {
    return ZonalField(F.grid(), F.values() + c);
}

namespace {

struct Derivs {
    Eigen::ArrayXd f1;
    Eigen::ArrayXd f2;
};

Derivs differentiate(const ZonalField& F) {
    const Grid& g = *F.grid();
    return {(g.ops().d1 * F.values().matrix()).array(),
            (g.ops().d2 * F.values().matrix()).array()};
}

}  // namespace

ZonalField laplacian(const ZonalField& F) {
    const Grid& g = *F.grid();
    const Eigen::ArrayXd& s = g.nodes();
    auto [f1, f2] = differentiate(F);
    return ZonalField(F.grid(), (1.0 - s.square()) * f2 - g.dim() * s * f1);
}

ZonalField grad_norm_sq(const ZonalField& F) {
    const Eigen::ArrayXd& s = F.grid()->nodes();
    auto [f1, f2] = differentiate(F);
    return ZonalField(F.grid(), (1.0 - s.square()) * f1.square());
}

ZonalField hessian_norm_sq(const ZonalField& F) {
    const Grid& g = *F.grid();
    const Eigen::ArrayXd& s = g.nodes();
    auto [f1, f2] = differentiate(F);
    // radial component f'' and tangential component cot(r) f' of the Hessian
    const Eigen::ArrayXd radial = (1.0 - s.square()) * f2 - s * f1;
    const Eigen::ArrayXd tangential = -s * f1;
    return ZonalField(F.grid(),
                      radial.square() + (g.dim() - 1) * tangential.square());
}

ZonalField ricci_term(const ZonalField& F) {
    return (F.grid()->dim() - 1.0) * grad_norm_sq(F);
}

ZonalField hessian_grad_pairing(const ZonalField& F) {
    require_positive(F, "hessian_grad_pairing");
    const Eigen::ArrayXd& s = F.grid()->nodes();
    auto [f1, f2] = differentiate(F);
    const Eigen::ArrayXd radial = (1.0 - s.square()) * f2 - s * f1;
    const Eigen::ArrayXd gns = (1.0 - s.square()) * f1.square();
    return ZonalField(F.grid(), radial * gns / F.values());
}

ZonalField traceless_pairing(const ZonalField& F) {
    const ZonalField pairing = hessian_grad_pairing(F);
    const ZonalField lap = laplacian(F);
    const ZonalField gns = grad_norm_sq(F);
    const double n = F.grid()->dim();
    return ZonalField(F.grid(), pairing.values() -
                                    lap.values() * gns.values() /
                                        (n * F.values()));
}

ZonalField traceless_grad_tensor_norm_sq(const ZonalField& F) {
    require_positive(F, "traceless_grad_tensor_norm_sq");
    const double n = F.grid()->dim();
    const ZonalField gns = grad_norm_sq(F);
    // dF (x) dF / F has radial component |grad F|^2 / F and no tangential
    // part; subtracting the trace term shifts both frame components.
    const Eigen::ArrayXd radial = gns.values() / F.values() * (1.0 - 1.0 / n);
    const Eigen::ArrayXd tangential = -gns.values() / (n * F.values());
    return ZonalField(F.grid(), radial.square() + (n - 1) * tangential.square());
}

}  // namespace gamma2lab
