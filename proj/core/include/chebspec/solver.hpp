#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "chebspec/fast_transform.hpp"
#include "chebspec/problems.hpp"
#include "chebspec/tableau.hpp"

namespace chebspec {

enum class ButcherPath { dense, fast };

struct SolverConfig {
    int s = 2;
    int k = 0;                            // 0 selects k = s
    double h = 0.0;
    double fp_tol = 1e-14;                // relative fixed-point increment tolerance
    int fp_max_iter = 100;
    ButcherPath path = ButcherPath::fast; // the fast path requires k = s
    bool keep_coefficients = true;        // store gamma_hat (needed for dense output)

    int quadrature() const { return k > 0 ? k : s; }
    void validate() const;                // throws std::invalid_argument
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
    // filled in by integrate() when a step fails mid-run
    std::optional<std::int64_t> step_index;
};

/// Fixed-point sweep hit its iteration cap or grew for three consecutive
/// sweeps: the timestep is too large for the contraction.
struct FixedPointDiverged : SolverError {
    FixedPointDiverged(int iters, double increment)
        : SolverError("fixed-point iteration diverged after " + std::to_string(iters) +
                      " sweeps (last increment " + std::to_string(increment) + ")"),
          iterations(iters),
          last_increment(increment) {}
    int iterations;
    double last_increment;
};

/// The right-hand side produced NaN or infinity at a stage value.
struct NonFiniteState : SolverError {
    NonFiniteState() : SolverError("right-hand side returned non-finite values") {}
};

/// One accepted step. gamma_hat holds the approximated Fourier coefficients
/// (s x m, row j = gamma_hat_j), the carrier of dense output; y1 is assembled
/// from them through the closed-form basis integrals.
struct StepResult {
    Eigen::VectorXd y0;
    Eigen::VectorXd y1;
    Eigen::MatrixXd gamma_hat;  // empty when keep_coefficients = false
    int iterations = 0;
    double defect = 0.0;        // last fixed-point increment, inf-norm
    double h = 0.0;
};

struct Trajectory {
    std::vector<double> times;    // n + 1 step endpoints, times[0] = 0
    Eigen::MatrixXd states;       // (n + 1) x m, states.row(0) = y0
    std::vector<StepResult> steps;
};

/// One step of size cfg.h from y0. The stage predictor is the constant
/// replication of y0; sweeps stop at
///   ||Y_next - Y||_inf <= fp_tol (1 + ||Y_next||_inf).
/// The tableau and plan must match cfg (same s and k).
StepResult step(const Problem& problem, const Eigen::VectorXd& y0, const SolverConfig& cfg,
                const ButcherTableau& tableau, TransformPlan& plan);

/// Collocation polynomial at fraction c of the step, from the stored
/// coefficients: u(ch) = y0 + h sum_j int_0^c P_j gamma_hat_j.
Eigen::VectorXd dense_eval(const StepResult& result, double c);

/// n = round(t_end / h) uniform steps; |n h - t_end| must stay within
/// 1e-9 t_end (no partial steps). Step errors are rethrown with the failing
/// step index attached.
Trajectory integrate(const Problem& problem, const Eigen::VectorXd& y0, double t_end,
                     const SolverConfig& cfg);

/// Square-case diagnostic: max over nodes of || udot(c_i h) - f(u(c_i h)) ||_inf
/// with udot reconstructed from gamma_hat. Stays within O(fp_tol) of zero when
/// the stages converged.
double max_collocation_residual(const Problem& problem, const ButcherTableau& tableau,
                                const StepResult& result);

}  // namespace chebspec
