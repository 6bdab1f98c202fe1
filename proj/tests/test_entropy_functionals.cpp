#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gamma2lab/corpus.hpp"
#include "gamma2lab/entropy_functionals.hpp"

using namespace gamma2lab;

namespace {

ZonalField test_field(int dim, std::uint64_t seed) {
    return random_log_field(dim, seed).build(shared_grid(dim, 64));
}

}  // namespace

TEST_CASE("Tsallis entropy of 1 + s/5 on the 2-sphere matches the closed form") {
    // T_2(u) = int u - int u^2 = -(1/25) int s^2 dmu = -(1/25)(4pi/3) = -4pi/75
    const GridPtr g = shared_grid(2, 64);
    const ZonalField u(g, 1.0 + 0.2 * g->nodes());
    CHECK(tsallis_entropy(u, 2.0) ==
          doctest::Approx(-4.0 * std::numbers::pi / 75.0).epsilon(1e-12));
    CHECK(tsallis_entropy(ZonalField(g, Eigen::ArrayXd::Ones(g->order())), 2.0) == 0.0);
}

TEST_CASE("Tsallis entropy approaches Shannon entropy as p -> 1") {
    const ZonalField u = test_field(2, 404);
    const double shannon = shannon_entropy(u);
    const ZonalField logu = log(u);
    const double curvature = integrate(u * logu * logu);  // next Taylor coefficient
    for (double p : {1.0 - 1e-4, 1.0 + 1e-4}) {
        const double gap = std::abs(tsallis_entropy(u, p) - shannon);
        CHECK(gap <= 0.51 * std::abs(p - 1.0) * curvature);
        CHECK(gap >= 0.49 * std::abs(p - 1.0) * curvature);
    }
}

TEST_CASE("both printed forms of dT/dt agree on positive fields") {
    for (int dim : {2, 3}) {
        const ZonalField u = test_field(dim, 500 + static_cast<std::uint64_t>(dim));
        for (double p : {0.5, 1.5, 2.0}) {
            const TsallisDerivative d = tsallis_first_derivative(u, p);
            CHECK(d.discrepancy < 1e-9);
            CHECK(d.value() == d.power_form);
            // entropy is produced along the flow: dT/dt >= 0
            CHECK(d.power_form > 0.0);
        }
    }
}

TEST_CASE("second derivative matches the substitution route") {
    const ZonalField u = test_field(2, 617);
    for (double p : {0.5, 1.5, 2.0}) {
        const ZonalField U = tsallis_substitution(u, p);
        const double s = 2.0 / (p - 1.0);
        const double factor = -2.0 * p * s * s;
        const double direct = tsallis_second_derivative(u, p);
        const double routed = factor * modified_weighted_gamma2(U, s);
        CHECK(direct == doctest::Approx(routed).epsilon(1e-10));
    }
}

TEST_CASE("substitution is the nodewise power u^((p-1)/2)") {
    const ZonalField u = test_field(3, 88);
    const ZonalField U = tsallis_substitution(u, 1.5);
    const Eigen::ArrayXd expect = u.values().pow(0.25);
    CHECK((U.values() - expect).abs().maxCoeff() < 1e-14);
}

TEST_CASE("flow functionals vanish on constant fields") {
    const GridPtr g = shared_grid(2, 64);
    const ZonalField c(g, Eigen::ArrayXd::Constant(g->order(), 3.0));
    CHECK(std::abs(fisher_log(c)) < 1e-12);
    CHECK(std::abs(gamma2_log(c)) < 1e-12);
    CHECK(std::abs(weighted_dirichlet(c, -2.5)) < 1e-12);
    CHECK(std::abs(weighted_gamma2(c, 1.0)) < 1e-12);
    CHECK(std::abs(modified_weighted_gamma2(c, -3.0)) < 1e-12);
    for (double p : {0.5, 1.5, 2.0}) {
        const TsallisDerivative d = tsallis_first_derivative(c, p);
        CHECK(std::abs(d.power_form) < 1e-12);
        CHECK(std::abs(d.energy_form) < 1e-12);
        CHECK(std::abs(tsallis_second_derivative(c, p)) < 1e-11);
        CHECK(std::abs(weighted_dirichlet_energy(c, p)) < 1e-12);
    }
}

TEST_CASE("the Shannon exponent is rejected everywhere it is singular") {
    const ZonalField u = test_field(2, 12);
    CHECK_THROWS_AS(tsallis_entropy(u, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_substitution(u, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_first_derivative(u, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tsallis_second_derivative(u, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(weighted_dirichlet_energy(u, 1.0), std::invalid_argument);
}

TEST_CASE("positivity is enforced before powers and logarithms") {
    const GridPtr g = shared_grid(2, 64);
    const ZonalField signed_field(g, g->nodes());  // changes sign
    CHECK_THROWS_AS(shannon_entropy(signed_field), std::domain_error);
    CHECK_THROWS_AS(tsallis_entropy(signed_field, 0.5), std::domain_error);
    CHECK_THROWS_AS(fisher_log(signed_field), std::domain_error);
    CHECK_THROWS_AS(weighted_gamma2(signed_field, -2.0), std::domain_error);
}
