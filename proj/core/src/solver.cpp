#include "chebspec/solver.hpp"

#include <cmath>
#include <limits>

namespace chebspec {

void SolverConfig::validate() const {
    if (s < 1) throw std::invalid_argument("solver config: s must be >= 1");
    if (k != 0 && k < s) throw std::invalid_argument("solver config: k must be >= s");
    if (!(h > 0.0)) throw std::invalid_argument("solver config: h must be > 0");
    if (!(fp_tol > 0.0)) throw std::invalid_argument("solver config: fp_tol must be > 0");
    if (fp_max_iter < 1) throw std::invalid_argument("solver config: fp_max_iter must be >= 1");
    if (path == ButcherPath::fast && quadrature() != s) {
        throw std::invalid_argument("solver config: the fast path requires k = s");
    }
}

namespace {

void evaluate_stages(const Problem& problem, const Eigen::MatrixXd& stages,
                     Eigen::MatrixXd& values, Eigen::VectorXd& scratch_y,
                     Eigen::VectorXd& scratch_f) {
    const Eigen::Index count = stages.rows();
    for (Eigen::Index i = 0; i < count; ++i) {
        scratch_y = stages.row(i);
        problem.rhs(scratch_y, scratch_f);
        values.row(i) = scratch_f;
    }
    if (!values.allFinite()) throw NonFiniteState{};
}

Eigen::VectorXd endpoint_from_coefficients(const Eigen::VectorXd& y0, double h,
                                           const Eigen::MatrixXd& gamma) {
    // only gamma_0 and the even rows contribute, per the closed-form integrals
    Eigen::VectorXd y1 = y0;
    for (Eigen::Index j = 0; j < gamma.rows(); j += 2) {
        y1 += h * integral_P_at_one(static_cast<int>(j)) * gamma.row(j).transpose();
    }
    return y1;
}

}  // namespace

StepResult step(const Problem& problem, const Eigen::VectorXd& y0, const SolverConfig& cfg,
                const ButcherTableau& tableau, TransformPlan& plan) {
    cfg.validate();
    const int s = cfg.s;
    const int k = cfg.quadrature();
    if (tableau.s != s || tableau.k != k) {
        throw std::invalid_argument("step: tableau does not match solver config");
    }
    if (plan.length() != k) {
        throw std::invalid_argument("step: transform plan does not match solver config");
    }
    if (y0.size() != problem.dim) {
        throw std::invalid_argument("step: state dimension mismatch");
    }
    if (!y0.allFinite()) throw NonFiniteState{};

    const Eigen::Index m = y0.size();
    const double h = cfg.h;

    const Eigen::MatrixXd predictor = y0.transpose().replicate(k, 1);
    Eigen::MatrixXd stages = predictor;
    Eigen::MatrixXd values(k, m);
    Eigen::MatrixXd next(k, m);
    Eigen::VectorXd scratch_y(m), scratch_f(m);

    bool converged = false;
    int iterations = 0;
    double increment = std::numeric_limits<double>::infinity();
    double previous_increment = std::numeric_limits<double>::infinity();
    int growth_streak = 0;

    for (int sweep = 1; sweep <= cfg.fp_max_iter; ++sweep) {
        evaluate_stages(problem, stages, values, scratch_y, scratch_f);
        if (cfg.path == ButcherPath::fast) {
            next = apply_butcher_fast(plan, tableau.X, values);
        } else {
            next.noalias() = tableau.A * values;
        }
        next = h * next + predictor;

        increment = (next - stages).cwiseAbs().maxCoeff();
        stages.swap(next);
        iterations = sweep;

        if (increment <= cfg.fp_tol * (1.0 + stages.cwiseAbs().maxCoeff())) {
            converged = true;
            break;
        }
        if (increment > 10.0 * previous_increment) {
            if (++growth_streak >= 3) throw FixedPointDiverged(sweep, increment);
        } else {
            growth_streak = 0;
        }
        previous_increment = increment;
    }
    if (!converged) throw FixedPointDiverged(iterations, increment);

    // One more f-sweep at the accepted stages: extracting gamma_hat from the
    // pre-update sweep instead leaks O(fp_tol) per step into the coefficients,
    // which visibly degrades long runs at spectral accuracy.
    evaluate_stages(problem, stages, values, scratch_y, scratch_f);
    Eigen::MatrixXd gamma(s, m);
    if (tableau.square()) {
        gamma = plan.dct_forward(values) / std::sqrt(static_cast<double>(s));
    } else {
        gamma.noalias() = tableau.P.transpose() * values / k;
    }

    StepResult result;
    result.y0 = y0;
    result.y1 = endpoint_from_coefficients(y0, h, gamma);
    if (cfg.keep_coefficients) result.gamma_hat = std::move(gamma);
    result.iterations = iterations;
    result.defect = increment;
    result.h = h;
    return result;
}

Eigen::VectorXd dense_eval(const StepResult& result, double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::domain_error("dense_eval: fraction outside [0, 1]");
    }
    if (result.gamma_hat.size() == 0) {
        throw std::logic_error("dense_eval: coefficients were dropped at solve time");
    }
    Eigen::VectorXd y = result.y0;
    for (Eigen::Index j = 0; j < result.gamma_hat.rows(); ++j) {
        y += result.h * integral_P(static_cast<int>(j), c) * result.gamma_hat.row(j).transpose();
    }
    return y;
}

Trajectory integrate(const Problem& problem, const Eigen::VectorXd& y0, double t_end,
                     const SolverConfig& cfg) {
    cfg.validate();
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
    const double steps_exact = t_end / cfg.h;
    const auto n = static_cast<std::int64_t>(std::llround(steps_exact));
    if (n < 1 || n > 10'000'000) {
        throw std::invalid_argument("integrate: t_end / h must lie in 1..1e7");
    }
    if (std::abs(static_cast<double>(n) * cfg.h - t_end) > 1e-9 * t_end) {
        throw std::invalid_argument("integrate: t_end is not an integer multiple of h");
    }

    const ButcherTableau tableau = build_tableau(cfg.s, cfg.quadrature());
    TransformPlan plan(cfg.quadrature(), cfg.path == ButcherPath::fast
                                             ? TransformMode::fast
                                             : TransformMode::reference);

    Trajectory trajectory;
    trajectory.times.resize(static_cast<std::size_t>(n) + 1);
    trajectory.states.resize(n + 1, y0.size());
    trajectory.steps.reserve(static_cast<std::size_t>(n));
    trajectory.times[0] = 0.0;
    trajectory.states.row(0) = y0;

    Eigen::VectorXd y = y0;
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            StepResult r = step(problem, y, cfg, tableau, plan);
            y = r.y1;
            trajectory.steps.push_back(std::move(r));
        } catch (SolverError& err) {
            err.step_index = i;
            throw;
        }
        trajectory.times[static_cast<std::size_t>(i) + 1] = static_cast<double>(i + 1) * cfg.h;
        trajectory.states.row(i + 1) = y;
    }
    return trajectory;
}

double max_collocation_residual(const Problem& problem, const ButcherTableau& tableau,
                                const StepResult& result) {
    if (!tableau.square()) {
        throw std::invalid_argument("collocation residual: square case only");
    }
    if (result.gamma_hat.size() == 0) {
        throw std::logic_error("collocation residual: coefficients were dropped");
    }
    const Eigen::MatrixXd derivative = tableau.P * result.gamma_hat;  // udot(c_i h)
    Eigen::VectorXd f(result.y0.size());
    double residual = 0.0;
    for (int i = 0; i < tableau.s; ++i) {
        const Eigen::VectorXd u = dense_eval(result, tableau.nodes.c[i]);
        problem.rhs(u, f);
        residual = std::max(residual,
                            (derivative.row(i).transpose() - f).cwiseAbs().maxCoeff());
    }
    return residual;
}

}  // namespace chebspec
