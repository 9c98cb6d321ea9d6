#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace chebspec {

using RhsFn = std::function<void(const Eigen::Ref<const Eigen::VectorXd>&,
                                 Eigen::Ref<Eigen::VectorXd>)>;
using ScalarFn = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;
using ReferenceFn =
    std::function<Eigen::VectorXd(double, const Eigen::Ref<const Eigen::VectorXd>&)>;

struct NamedInvariant {
    std::string name;
    ScalarFn value;
};

/// Autonomous ODE test problem: right-hand side plus whatever structure the
/// problem carries (Hamiltonian, first integrals, closed-form reference
/// solution, period). Immutable value object; rhs maps are pure.
struct Problem {
    std::string name;
    int dim = 0;
    RhsFn rhs;
    ScalarFn hamiltonian;                        // may be empty
    std::vector<NamedInvariant> first_integrals;
    ReferenceFn reference;                       // may be empty
    std::optional<double> period;
    Eigen::VectorXd default_y0;

    bool has_hamiltonian() const { return static_cast<bool>(hamiltonian); }
    bool has_reference() const { return static_cast<bool>(reference); }
};

/// Planar Kepler problem, state (q1, q2, p1, p2), default start at the
/// pericenter of the eccentric orbit with period 2 pi. Carries the
/// Hamiltonian and the angular momentum. The right-hand side is singular at
/// q = 0; the solver surfaces that as a non-finite-state error.
Problem kepler();

/// Dahlquist test problem y' = lambda y: one real state for real lambda, the
/// 2 x 2 rotation-scaling block for complex lambda. Exact reference attached.
Problem linear_test(std::complex<double> lambda);

/// Unit-mass oscillator, state (q, p), H = (p^2 + omega^2 q^2) / 2.
Problem harmonic_oscillator(double omega);

/// Registry lookup for the CLI names "kepler", "linear" (lambda = -1) and
/// "harmonic" (omega = 1). Throws std::invalid_argument for unknown names.
Problem find_problem(const std::string& name);

std::vector<std::string> problem_names();

}  // namespace chebspec
