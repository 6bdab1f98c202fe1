#include <doctest.h>

#include <cmath>

#include "gamma2lab/corpus.hpp"
#include "gamma2lab/spectral_heat.hpp"

using namespace gamma2lab;

TEST_CASE("zonal eigenvalue table is k(k + n - 1)") {
    const EigenTable t = EigenTable::up_to(3, 6);
    CHECK(t.lambda.size() == 6);
    CHECK(t.lambda[0] == 0.0);
    CHECK(t.lambda[1] == 3.0);
    CHECK(t.lambda[5] == 5.0 * 7.0);
    CHECK(lambda1(2) == 2.0);
    CHECK(lambda1(7) == 7.0);
}

TEST_CASE("transform round trip and Parseval on corpus fields") {
    const GridPtr g = shared_grid(2, 64);
    const ZonalField u = random_log_field(2, 31337).build(g);

    const SpectralCoeffs a = forward_transform(u);
    CHECK(a.dim == 2);
    const ZonalField back = inverse_transform(a, g);
    CHECK((back.values() - u.values()).abs().maxCoeff() < 1e-11 * u.max_abs());

    const double energy = integrate(u * u);
    CHECK(energy == doctest::Approx(a.a.squaredNorm()).epsilon(1e-11));
}

TEST_CASE("heat propagator damps each mode by exp(-lambda_k t)") {
    const GridPtr g = shared_grid(3, 48);
    SpectralCoeffs a;
    a.dim = 3;
    a.a = Eigen::VectorXd::Zero(5);
    a.a << 1.0, 0.5, 0.25, 0.0, -0.125;
    const SpectralCoeffs at = heat_propagate(a, 0.3);
    CHECK(at.a[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(at.a[1] == doctest::Approx(0.5 * std::exp(-3.0 * 0.3)).epsilon(1e-14));
    CHECK(at.a[4] == doctest::Approx(-0.125 * std::exp(-24.0 * 0.3)).epsilon(1e-14));
    CHECK_THROWS_AS(heat_propagate(a, -1e-9), std::invalid_argument);
}

TEST_CASE("semigroup property holds in coefficients") {
    const GridPtr g = shared_grid(2, 64);
    const ZonalField u = random_log_field(2, 99).build(g);
    const SpectralCoeffs a = forward_transform(u);
    const SpectralCoeffs two_steps = heat_propagate(heat_propagate(a, 0.2), 0.35);
    const SpectralCoeffs one_step = heat_propagate(a, 0.55);
    CHECK((two_steps.a - one_step.a).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("heat flow conserves mass and preserves positivity on the corpus") {
    const GridPtr g = shared_grid(2, 64);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const ZonalField u0 = random_log_field(2, seed).build(g);
        const double m0 = integrate(u0);
        for (double t : {0.0, 0.01, 0.1, 1.0, 5.0}) {
            const ZonalField ut = heat_evolve(u0, t);
            CHECK(std::abs(integrate(ut) - m0) <= 1e-12 * std::abs(m0));
            CHECK(ut.min_value() >= u0.min_value() - 1e-9 * u0.max_abs());
        }
    }
}

TEST_CASE("single-mode decay matches the analytic equilibrium time") {
    const GridPtr g = shared_grid(2, 64);
    const Eigen::ArrayXd phi1 = g->basis().col(1).array();
    const ZonalField u0(g, 1.0 + 0.2 * phi1);
    const double tol = 1e-3;
    const double t_eq = flow_to_equilibrium(u0, tol);

    // fluctuation max decays as 0.2 max|phi1| e^{-lambda1 t}
    const double amp = 0.2 * phi1.abs().maxCoeff();
    const double t_star = std::log(amp / tol) / lambda1(2);
    CHECK(t_eq >= t_star);               // first grid point past the crossing
    CHECK(t_eq <= t_star * 1.25 + 1e-3); // within one geometric step
}

TEST_CASE("geometric time grids start at zero and honor the horizon") {
    const std::vector<double> ts = geometric_times(1e-3, 1.25, 0.02);
    CHECK(ts.front() == 0.0);
    CHECK(ts[1] == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(ts[2] == doctest::Approx(1.25e-3).epsilon(1e-15));
    CHECK(ts.back() == doctest::Approx(0.02).epsilon(1e-15));
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
}

TEST_CASE("spectral tail fraction flags under-resolved data") {
    const GridPtr g = shared_grid(2, 64);
    const ZonalField smooth = random_log_field(2, 7).build(g);
    CHECK(spectral_tail_fraction(forward_transform(smooth)) < kSpectralTailWarn);

    SpectralCoeffs spiky;
    spiky.dim = 2;
    spiky.a = Eigen::VectorXd::Zero(64);
    spiky.a[0] = 1.0;
    spiky.a[60] = 0.5;
    CHECK(spectral_tail_fraction(spiky) > 0.1);
}

TEST_CASE("inverse transform validates dimension and coefficient count") {
    const GridPtr g2 = shared_grid(2, 32);
    SpectralCoeffs a;
    a.dim = 3;
    a.a = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(inverse_transform(a, g2), std::invalid_argument);
    a.dim = 2;
    a.a = Eigen::VectorXd::Ones(64);
    CHECK_THROWS_AS(inverse_transform(a, g2), std::invalid_argument);
}
