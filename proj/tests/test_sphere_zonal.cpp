#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gamma2lab/sphere_zonal.hpp"

using namespace gamma2lab;

namespace {

constexpr double kPi = std::numbers::pi;

// closed form for the even moments of the surface measure:
// int s^{2m} dmu = 2 pi^{n/2} Gamma(m + 1/2) / Gamma(m + (n+1)/2)
double moment_oracle(int n, int m) {
    return 2.0 * std::pow(kPi, n / 2.0) *
           std::exp(std::lgamma(m + 0.5) - std::lgamma(m + (n + 1) / 2.0));
}

}  // namespace

TEST_CASE("sphere volumes match the closed form") {
    CHECK(Grid::sphere_volume(2) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(Grid::sphere_volume(3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
    CHECK(Grid::sphere_volume(5) == doctest::Approx(kPi * kPi * kPi).epsilon(1e-14));
    for (int n = 2; n <= 8; ++n) {
        CHECK(Grid::sphere_volume(n) == doctest::Approx(moment_oracle(n, 0)).epsilon(1e-13));
    }
}

TEST_CASE("quadrature integrates even monomials exactly up to degree 2*order-1") {
    for (int n : {2, 3, 5}) {
        const GridPtr g = make_grid(n, 32);
        const Eigen::ArrayXd& s = g->nodes();
        for (int m : {0, 1, 2, 5, 13, 31}) {
            const double got = (g->weights() * s.pow(2 * m)).sum();
            const double want = moment_oracle(n, m);
            CHECK(std::abs(got - want) <= 5e-13 * want);
        }
        // odd moments vanish by symmetry
        CHECK(std::abs((g->weights() * s.pow(3)).sum()) < 1e-14);
    }
}

TEST_CASE("weights are positive and nodes strictly inside (-1, 1)") {
    const GridPtr g = make_grid(3, 64);
    CHECK(g->weights().minCoeff() > 0.0);
    CHECK(g->nodes().minCoeff() > -1.0);
    CHECK(g->nodes().maxCoeff() < 1.0);
    for (int i = 1; i < g->order(); ++i) CHECK(g->nodes()[i] > g->nodes()[i - 1]);
}

TEST_CASE("basis is orthonormal and diagonalizes the zonal Laplacian") {
    for (int n : {2, 4}) {
        const GridPtr g = make_grid(n, 48);
        const Eigen::MatrixXd gram =
            g->basis().transpose() * g->weights().matrix().asDiagonal() * g->basis();
        CHECK((gram - Eigen::MatrixXd::Identity(48, 48)).cwiseAbs().maxCoeff() < 1e-11);

        for (int k : {0, 1, 2, 7, 20}) {
            const ZonalField phi(g, g->basis().col(k).array());
            const ZonalField lap = laplacian(phi);
            const double lambda_k = static_cast<double>(k) * (k + n - 1);
            const double dev =
                (lap.values() + lambda_k * phi.values()).abs().maxCoeff();
            CHECK(dev < 1e-8 * std::max(1.0, lambda_k));
        }
    }
}

TEST_CASE("differentiation matrices kill constants and reproduce linear fields") {
    const GridPtr g = make_grid(3, 64);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(64);
    // spectral differentiation rides rounding noise amplified by the top
    // modes (k^2 for d1, k^4 for d2); these bound the raw noise floor
    CHECK((g->ops().d1 * ones).cwiseAbs().maxCoeff() < 1e-8);
    const Eigen::VectorXd s = g->nodes().matrix();
    CHECK(((g->ops().d1 * s).array() - 1.0).abs().maxCoeff() < 1e-8);
    CHECK((g->ops().d2 * s).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("zonal operators on polynomial fields match hand calculus") {
    const GridPtr g = make_grid(2, 64);  // n = 2
    const Eigen::ArrayXd s = g->nodes();

    const ZonalField f2(g, s.square());
    CHECK((laplacian(f2).values() - (2.0 - 6.0 * s.square())).abs().maxCoeff() < 1e-6);
    CHECK((grad_norm_sq(f2).values() - 4.0 * s.square() * (1.0 - s.square()))
              .abs()
              .maxCoeff() < 1e-10);

    const ZonalField f1(g, s);
    // radial part (1-s^2) f'' - s f' = -s, tangential part contributes (n-1) s^2
    CHECK((hessian_norm_sq(f1).values() - 2.0 * s.square()).abs().maxCoeff() < 1e-6);
    CHECK((ricci_term(f1).values() - (1.0 - s.square())).abs().maxCoeff() < 1e-10);
}

TEST_CASE("integrate and mean agree with node sums") {
    const GridPtr g = make_grid(3, 32);
    const ZonalField c = ZonalField::constant(g, 2.5);
    CHECK(integrate(c) == doctest::Approx(2.5 * g->volume()).epsilon(1e-14));
    CHECK(mean(c) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(std::abs(integrate(ZonalField::coordinate(g))) < 1e-13);
}

TEST_CASE("pointwise traceless identities hold at the nodes") {
    for (int n : {2, 3, 5}) {
        const GridPtr g = make_grid(n, 64);
        const Eigen::ArrayXd s = g->nodes();
        const ZonalField F(g, 2.0 + s + 0.5 * s.square() + 0.25 * s.cube());

        const ZonalField tgt = traceless_grad_tensor_norm_sq(F);
        const ZonalField gns = grad_norm_sq(F);
        const Eigen::ArrayXd q4 = gns.values().square() / F.values().square();
        CHECK((tgt.values() - (n - 1.0) / n * q4).abs().maxCoeff() <=
              1e-12 * q4.maxCoeff());

        const ZonalField pairing = hessian_grad_pairing(F);
        const ZonalField tp = traceless_pairing(F);
        const Eigen::ArrayXd recomposed =
            tp.values() + laplacian(F).values() * gns.values() / (n * F.values());
        CHECK((pairing.values() - recomposed).abs().maxCoeff() <=
              1e-12 * pairing.max_abs());
    }
}

TEST_CASE("positivity floor rejects flat-zero and hugely skewed fields") {
    const GridPtr g = make_grid(2, 32);
    const Eigen::ArrayXd s = g->nodes();

    const ZonalField ok(g, 2.0 + s);
    CHECK(ok.strictly_positive());
    CHECK_NOTHROW(pow(ok, 0.5));
    CHECK_NOTHROW(log(ok));

    // nodes never reach the pole, so 1 + s stays clear of the floor
    CHECK(ZonalField(g, 1.0 + s).strictly_positive());

    Eigen::ArrayXd skew = Eigen::ArrayXd::Constant(32, 1.0);
    skew[0] = 1e-10;  // below 1e-8 * max
    const ZonalField skewed(g, skew);
    CHECK_FALSE(skewed.strictly_positive());
    CHECK_THROWS_AS(log(skewed), std::domain_error);
    CHECK_THROWS_AS(pow(skewed, 0.5), std::domain_error);

    const ZonalField negative(g, s);
    CHECK_THROWS_AS(require_positive(negative, "test"), std::domain_error);
}

TEST_CASE("field constructor validates finiteness and grids match in arithmetic") {
    const GridPtr g = make_grid(2, 16);
    Eigen::ArrayXd bad = Eigen::ArrayXd::Ones(16);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ZonalField(g, bad), numeric_error);
    bad[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ZonalField(g, bad), numeric_error);
    CHECK_THROWS_AS(ZonalField(g, Eigen::ArrayXd::Ones(8)), std::invalid_argument);

    const GridPtr g2 = make_grid(2, 32);
    CHECK_THROWS_AS(ZonalField::constant(g, 1.0) + ZonalField::constant(g2, 1.0),
                    std::invalid_argument);
}

TEST_CASE("quotients require a positive denominator") {
    const GridPtr g = make_grid(2, 16);
    const ZonalField one = ZonalField::constant(g, 1.0);
    const ZonalField zero = ZonalField::constant(g, 0.0);
    CHECK_THROWS_AS(one / zero, std::domain_error);
    const ZonalField half = one / ZonalField::constant(g, 2.0);
    CHECK(half.values()[0] == doctest::Approx(0.5));
}

TEST_CASE("shared_grid caches by dimension and order") {
    const GridPtr a = shared_grid(2, 48);
    const GridPtr b = shared_grid(2, 48);
    const GridPtr c = shared_grid(3, 48);
    CHECK(a.get() == b.get());
    CHECK(a.get() != c.get());
}

TEST_CASE("grid construction rejects tiny orders and bad dimensions") {
    CHECK_THROWS_AS(make_grid(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0, 64), std::invalid_argument);
}
