#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chebspec/problems.hpp"

using namespace chebspec;

namespace {

// central finite-difference gradient of a scalar field
Eigen::VectorXd fd_gradient(const ScalarFn& f, const Eigen::VectorXd& y, double step) {
    Eigen::VectorXd g(y.size());
    Eigen::VectorXd probe = y;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        probe(i) = y(i) + step;
        const double hi = f(probe);
        probe(i) = y(i) - step;
        const double lo = f(probe);
        probe(i) = y(i);
        g(i) = (hi - lo) / (2.0 * step);
    }
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("problems");

TEST_CASE("kepler: right-hand side, Hamiltonian, angular momentum at the default start") {
    const Problem p = kepler();
    CHECK(p.dim == 4);
    REQUIRE(p.default_y0.size() == 4);

    Eigen::VectorXd dy(4);
    p.rhs(p.default_y0, dy);
    CHECK(dy(0) == 0.0);
    CHECK(dy(1) == 2.0);
    CHECK(dy(2) == doctest::Approx(-6.25).epsilon(1e-15));
    CHECK(dy(3) == 0.0);

    CHECK(p.hamiltonian(p.default_y0) == doctest::Approx(-0.5).epsilon(1e-15));
    REQUIRE(p.first_integrals.size() == 2);
    CHECK(p.first_integrals[1].name == "angular_momentum");
    CHECK(p.first_integrals[1].value(p.default_y0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(p.period.value() == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("kepler: collision singularity produces non-finite values") {
    const Problem p = kepler();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
    y(2) = 1.0;
    Eigen::VectorXd dy(4);
    p.rhs(y, dy);
    CHECK(!dy.allFinite());
}

TEST_CASE("kepler: rhs is Hamiltonian-consistent (grad H . f = 0)") {
    const Problem p = kepler();
    std::mt19937 gen(123);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> radius(0.2, 3.0);
    std::uniform_real_distribution<double> momentum(-2.0, 2.0);
    Eigen::VectorXd y(4), f(4);
    for (int rep = 0; rep < 100; ++rep) {
        const double r = radius(gen);
        const double a = angle(gen);
        y << r * std::cos(a), r * std::sin(a), momentum(gen), momentum(gen);
        p.rhs(y, f);
        const Eigen::VectorXd g = fd_gradient(p.hamiltonian, y, 1e-6);
        const double directional = std::abs(g.dot(f));
        CHECK(directional <= 1e-8 * g.norm() * f.norm() + 1e-12);
    }
}

TEST_CASE("linear: lambda = 0 freezes the state") {
    const Problem p = linear_test(0.0);
    CHECK(p.dim == 1);
    Eigen::VectorXd y(1), dy(1);
    y << 4.2;
    p.rhs(y, dy);
    CHECK(dy(0) == 0.0);
    CHECK(p.reference(10.0, y)(0) == 4.2);
}

TEST_CASE("linear: real decay and complex rotation references") {
    const Problem decay = linear_test(-1.0);
    Eigen::VectorXd y0(1);
    y0 << 1.0;
    CHECK(decay.reference(1.0, y0)(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    const Problem rot = linear_test({0.0, 1.0});
    CHECK(rot.dim == 2);
    Eigen::VectorXd z0(2);
    z0 << 1.0, 0.0;
    const Eigen::VectorXd z = rot.reference(std::numbers::pi, z0);
    CHECK(z(0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(z(1)) <= 1e-15);
    CHECK(rot.period.value() == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("harmonic oscillator: rhs, energy, full-period reference") {
    const Problem p = harmonic_oscillator(1.0);
    Eigen::VectorXd y(2), dy(2);
    y << 0.3, -1.7;
    p.rhs(y, dy);
    CHECK(dy(0) == -1.7);
    CHECK(dy(1) == doctest::Approx(-0.3).epsilon(1e-15));

    const Problem p2 = harmonic_oscillator(2.0);
    Eigen::VectorXd q(2);
    q << 1.0, 0.0;
    CHECK(p2.hamiltonian(q) == doctest::Approx(2.0).epsilon(1e-15));

    const Eigen::VectorXd back = p.reference(2.0 * std::numbers::pi, q);
    CHECK(back(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(back(1)) <= 1e-14);

    CHECK_THROWS_AS(harmonic_oscillator(0.0), std::invalid_argument);
}

TEST_CASE("registry: names resolve, unknown names throw") {
    CHECK(find_problem("kepler").dim == 4);
    CHECK(find_problem("linear").dim == 1);
    CHECK(find_problem("harmonic").dim == 2);
    CHECK(problem_names().size() == 3);
    CHECK_THROWS_AS(find_problem("lorenz"), std::invalid_argument);
}

TEST_SUITE_END();
