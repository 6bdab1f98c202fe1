#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "gamma2lab/errors.hpp"

namespace gamma2lab {

// Dense spectral differentiation matrices in the s = cos(r) coordinate,
// built once per grid: (D1 F)_i ~ dF/ds at node i for the interpolant of F
// in the zonal ultraspherical basis.
struct DiffOperators {
    Eigen::MatrixXd d1;
    Eigen::MatrixXd d2;
};

// Gauss quadrature grid for zonal functions on the round sphere S^n.
// Nodes/weights integrate f(s) against the surface measure
//   dmu = omega_{n-1} (1 - s^2)^{(n-2)/2} ds,   s in (-1, 1),
// exactly for polynomial f up to degree 2*order - 1.  The grid also carries
// the orthonormal zonal eigenbasis phi_k (degree-k polynomials in s,
// Laplace eigenfunctions with eigenvalue -k(k+n-1)) evaluated at the nodes,
// together with first and second derivative tables and the dense
// differentiation matrices assembled from them.
class Grid {
  public:
    Grid(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    const Eigen::ArrayXd& nodes() const { return nodes_; }
    const Eigen::ArrayXd& weights() const { return weights_; }
    double volume() const { return volume_; }

    // basis(i, k) = phi_k(s_i); *_d1/_d2 hold phi_k' and phi_k'' values
    const Eigen::MatrixXd& basis() const { return basis_; }
    const Eigen::MatrixXd& basis_d1() const { return basis_d1_; }
    const Eigen::MatrixXd& basis_d2() const { return basis_d2_; }
    // analysis(k, i) = w_i phi_k(s_i); coefficients a = analysis * values
    const Eigen::MatrixXd& analysis() const { return analysis_; }
    const DiffOperators& ops() const { return ops_; }

    static double sphere_volume(int dim);

  private:
    int dim_ = 0;
    int order_ = 0;
    double volume_ = 0.0;
    Eigen::ArrayXd nodes_;
    Eigen::ArrayXd weights_;
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd basis_d1_;
    Eigen::MatrixXd basis_d2_;
    Eigen::MatrixXd analysis_;
    DiffOperators ops_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, int order);

// Process-wide cache keyed by (dim, order); grids are immutable so sharing
// across threads is safe.
GridPtr shared_grid(int dim, int order);

// Node values of a zonal function on a fixed grid.  Values must be finite.
class ZonalField {
  public:
    ZonalField(GridPtr grid, Eigen::ArrayXd values);

    const GridPtr& grid() const { return grid_; }
    const Eigen::ArrayXd& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }
    double min_value() const { return min_value_; }
    double max_abs() const { return max_abs_; }

    // true when min(F) > kPositivityEps * max|F|
    bool strictly_positive() const;

    static ZonalField constant(const GridPtr& grid, double c);
    static ZonalField coordinate(const GridPtr& grid);  // F(s) = s

  private:
    GridPtr grid_;
    Eigen::ArrayXd values_;
    double min_value_ = 0.0;
    double max_abs_ = 0.0;
};

// throws std::domain_error mentioning `what` unless F.strictly_positive()
void require_positive(const ZonalField& F, const std::string& what);

// ---- integration ----
double integrate(const ZonalField& F);
double mean(const ZonalField& F);

// ---- pointwise algebra (power/log/quotient enforce the positivity floor) ----
ZonalField pow(const ZonalField& F, double exponent);
ZonalField log(const ZonalField& F);
ZonalField exp(const ZonalField& F);
ZonalField operator+(const ZonalField& F, const ZonalField& G);
ZonalField operator-(const ZonalField& F, const ZonalField& G);
ZonalField operator*(const ZonalField& F, const ZonalField& G);
ZonalField operator/(const ZonalField& F, const ZonalField& G);
ZonalField operator*(double c, const ZonalField& F);
ZonalField operator+(const ZonalField& F, double c);

// ---- zonal differential operators (all return node values) ----
// Delta F = (1 - s^2) F_ss - n s F_s
ZonalField laplacian(const ZonalField& F);
// |grad F|^2 = (1 - s^2) F_s^2
ZonalField grad_norm_sq(const ZonalField& F);
// |Hess F|^2 = ((1 - s^2) F_ss - s F_s)^2 + (n - 1) s^2 F_s^2
ZonalField hessian_norm_sq(const ZonalField& F);
// Ric(grad F, grad F) = (n - 1) |grad F|^2 on the unit round sphere
ZonalField ricci_term(const ZonalField& F);
// Hess F(grad F, grad F) / F; requires F positive
ZonalField hessian_grad_pairing(const ZonalField& F);
// <Hess F - (Delta F / n) g, dF (x) dF / F - (|grad F|^2 / (n F)) g>
ZonalField traceless_pairing(const ZonalField& F);
// |dF (x) dF / F - (|grad F|^2 / (n F)) g|^2, assembled from the radial /
// tangential frame components (equals ((n-1)/n) |grad F|^4 / F^2)
ZonalField traceless_grad_tensor_norm_sq(const ZonalField& F);

}  // namespace gamma2lab
