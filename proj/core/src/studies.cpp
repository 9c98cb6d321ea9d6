#include "chebspec/studies.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace chebspec {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join_ints(const std::vector<int>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i ? "," : "") << values[i];
    }
    return out.str();
}

std::string join_doubles(const std::vector<double>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i ? "," : "") << values[i];
    }
    return out.str();
}

const char* path_name(ButcherPath path) {
    return path == ButcherPath::fast ? "fast" : "dense";
}

// Work-stealing-free cell runner: cells are claimed off an atomic counter.
// The first uncaught exception wins and is rethrown after the join.
void run_cells(std::size_t cells, int threads, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || cells <= 1) {
        for (std::size_t i = 0; i < cells; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

SolverConfig make_config(int s, double h, const StudyOptions& options) {
    SolverConfig cfg;
    cfg.s = s;
    cfg.h = h;
    cfg.fp_tol = options.fp_tol;
    cfg.fp_max_iter = options.fp_max_iter;
    cfg.path = options.path;
    return cfg;
}

void echo_solver_options(RunReport& report, const StudyOptions& options, int threads) {
    report.meta("fp_tol", options.fp_tol);
    report.meta("fp_max_iter", static_cast<long long>(options.fp_max_iter));
    report.meta("path", std::string(path_name(options.path)));
    report.meta("threads", static_cast<long long>(threads));
}

}  // namespace

int study_thread_budget(int requested, std::size_t cells) {
    int budget = requested;
    if (budget <= 0) {
        if (const char* env = std::getenv("CHEBSPEC_THREADS")) {
            budget = std::atoi(env);
        }
    }
    if (budget <= 0) {
        budget = static_cast<int>(std::thread::hardware_concurrency());
    }
    if (budget < 1) budget = 1;
    if (cells < 1) cells = 1;
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(budget), cells));
}

RunReport convergence_study(const Problem& problem, const std::vector<int>& s_list,
                            const std::vector<int>& n_list, const StudyOptions& options) {
    if (s_list.empty() || n_list.empty()) {
        throw std::invalid_argument("convergence study: empty s_list or n_list");
    }
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
        if (n_list[i + 1] <= n_list[i]) {
            throw std::invalid_argument("convergence study: n_list must be increasing");
        }
    }
    const auto start = Clock::now();
    const double t_end = problem.period.value_or(1.0);
    const Eigen::VectorXd y0 = problem.default_y0;
    const Eigen::VectorXd target =
        problem.has_reference() ? problem.reference(t_end, y0) : y0;

    const std::size_t cells = s_list.size() * n_list.size();
    const int threads = study_thread_budget(options.threads, cells);
    std::vector<double> errors(cells, std::numeric_limits<double>::quiet_NaN());

    run_cells(cells, threads, [&](std::size_t idx) {
        const int s = s_list[idx / n_list.size()];
        const int n = n_list[idx % n_list.size()];
        SolverConfig cfg = make_config(s, t_end / n, options);
        cfg.keep_coefficients = false;
        try {
            const Trajectory trajectory = integrate(problem, y0, t_end, cfg);
            errors[idx] =
                (trajectory.states.row(n) - target.transpose()).cwiseAbs().maxCoeff();
        } catch (const SolverError&) {
            // recorded as a missing cell
        }
    });

    RunReport report;
    report.kind = "convergence";
    report.columns = {"s", "n", "h", "err", "rate"};
    for (std::size_t si = 0; si < s_list.size(); ++si) {
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            const double err = errors[si * n_list.size() + ni];
            double rate = std::numeric_limits<double>::quiet_NaN();
            if (ni > 0) {
                const double prev = errors[si * n_list.size() + ni - 1];
                rate = std::log(prev / err) /
                       std::log(static_cast<double>(n_list[ni]) / n_list[ni - 1]);
            }
            report.add_row({static_cast<double>(s_list[si]), static_cast<double>(n_list[ni]),
                            t_end / n_list[ni], err, rate});
        }
    }
    report.meta("problem", problem.name);
    report.meta("s_list", join_ints(s_list));
    report.meta("n_list", join_ints(n_list));
    report.meta("t_end", t_end);
    report.meta("reference", std::string(problem.has_reference() ? "exact" : "periodic"));
    echo_solver_options(report, options, threads);
    report.meta("wall_time_s", elapsed_seconds(start));
    return report;
}

RunReport long_run_study(const Problem& problem, int s, int n, int periods,
                         const StudyOptions& options) {
    if (!problem.period) {
        throw std::invalid_argument("long-run study: problem has no period metadata");
    }
    if (n < 1 || periods < 0) {
        throw std::invalid_argument("long-run study: need n >= 1 and periods >= 0");
    }
    const auto start = Clock::now();
    const double period = *problem.period;

    RunReport report;
    report.kind = "long_run";
    report.columns = {"period", "err"};

    if (periods > 0) {
        SolverConfig cfg = make_config(s, period / n, options);
        cfg.keep_coefficients = false;
        const Eigen::VectorXd y0 = problem.default_y0;
        const Trajectory trajectory = integrate(problem, y0, periods * period, cfg);
        for (int p = 1; p <= periods; ++p) {
            const Eigen::Index row = static_cast<Eigen::Index>(p) * n;
            const double err =
                (trajectory.states.row(row) - y0.transpose()).cwiseAbs().maxCoeff();
            report.add_row({static_cast<double>(p), err});
        }
    }

    report.meta("problem", problem.name);
    report.meta("s", static_cast<long long>(s));
    report.meta("n", static_cast<long long>(n));
    report.meta("periods", static_cast<long long>(periods));
    report.meta("period", period);
    echo_solver_options(report, options, 1);
    report.meta("wall_time_s", elapsed_seconds(start));
    return report;
}

DecayFit fit_decay_base(const std::vector<double>& magnitudes) {
    DecayFit fit;
    if (magnitudes.empty()) return fit;
    const double floor =
        100.0 * std::numeric_limits<double>::epsilon() * magnitudes.front();
    std::size_t used = 0;
    while (used < magnitudes.size() && magnitudes[used] > floor) ++used;
    fit.used = static_cast<int>(used);
    if (used < 4) return fit;

    // least squares on (j, log m_j) over the usable prefix
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < used; ++j) {
        const double x = static_cast<double>(j);
        const double y = std::log(magnitudes[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(used);
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.rho = std::exp(-slope);
    fit.ok = true;
    return fit;
}

RunReport spectral_decay(const Problem& problem, int s, const std::vector<double>& h_list,
                         const StudyOptions& options) {
    if (s < 2) {
        throw std::invalid_argument("spectral decay: need s >= 2");
    }
    if (h_list.empty()) {
        throw std::invalid_argument("spectral decay: empty h_list");
    }
    const auto start = Clock::now();
    const std::size_t cells = h_list.size();
    const int threads = study_thread_budget(options.threads, cells);

    std::vector<std::vector<double>> magnitudes(cells);
    std::vector<DecayFit> fits(cells);
    run_cells(cells, threads, [&](std::size_t idx) {
        SolverConfig cfg = make_config(s, h_list[idx], options);
        const ButcherTableau tableau = build_tableau(s);
        TransformPlan plan(s, options.path == ButcherPath::fast ? TransformMode::fast
                                                                : TransformMode::reference);
        const StepResult first = step(problem, problem.default_y0, cfg, tableau, plan);
        auto& mags = magnitudes[idx];
        mags.resize(static_cast<std::size_t>(s));
        for (int j = 0; j < s; ++j) {
            mags[static_cast<std::size_t>(j)] = first.gamma_hat.row(j).norm();
        }
        fits[idx] = fit_decay_base(mags);
    });

    RunReport report;
    report.kind = "decay";
    report.columns = {"h", "j", "gamma_mag", "rho_hat", "fit_used"};
    for (std::size_t idx = 0; idx < cells; ++idx) {
        for (int j = 0; j < s; ++j) {
            report.add_row({h_list[idx], static_cast<double>(j),
                            magnitudes[idx][static_cast<std::size_t>(j)],
                            fits[idx].ok ? fits[idx].rho
                                         : std::numeric_limits<double>::quiet_NaN(),
                            j < fits[idx].used ? 1.0 : 0.0});
        }
    }
    report.meta("problem", problem.name);
    report.meta("s", static_cast<long long>(s));
    report.meta("h_list", join_doubles(h_list));
    report.meta("norm", std::string("euclidean"));
    echo_solver_options(report, options, threads);
    report.meta("wall_time_s", elapsed_seconds(start));
    return report;
}

RunReport hamiltonian_drift(const Problem& problem, int s, double h, double t_end,
                            const StudyOptions& options) {
    if (!problem.has_hamiltonian()) {
        throw std::invalid_argument("hamiltonian drift: problem has no Hamiltonian");
    }
    const auto start = Clock::now();
    SolverConfig cfg = make_config(s, h, options);
    cfg.keep_coefficients = false;
    const Eigen::VectorXd y0 = problem.default_y0;
    const double h0 = problem.hamiltonian(y0);
    const Trajectory trajectory = integrate(problem, y0, t_end, cfg);

    RunReport report;
    report.kind = "drift";
    report.columns = {"step", "t", "drift"};
    const auto steps = static_cast<Eigen::Index>(trajectory.steps.size());
    for (Eigen::Index i = 1; i <= steps; ++i) {
        const double value = problem.hamiltonian(trajectory.states.row(i).transpose());
        report.add_row({static_cast<double>(i), trajectory.times[static_cast<std::size_t>(i)],
                        std::abs(value - h0)});
    }
    report.meta("problem", problem.name);
    report.meta("s", static_cast<long long>(s));
    report.meta("h", h);
    report.meta("t_end", t_end);
    echo_solver_options(report, options, 1);
    report.meta("wall_time_s", elapsed_seconds(start));
    return report;
}

StabilityGrid::StabilityGrid() {
    imag_axis.resize(50);
    for (std::size_t i = 0; i < imag_axis.size(); ++i) {
        imag_axis[i] = std::pow(10.0, -2.0 + 5.0 * static_cast<double>(i) / 49.0);
    }
}

RunReport stability_scan(const std::vector<int>& s_list, const StabilityGrid& grid,
                         const StudyOptions& options) {
    if (s_list.empty()) {
        throw std::invalid_argument("stability scan: empty s_list");
    }
    const auto start = Clock::now();

    // one fixed sample set shared by all s, so the scan is reproducible
    std::vector<std::complex<double>> lhp;
    if (!grid.eig_only) {
        std::mt19937 gen(grid.seed);
        std::uniform_real_distribution<double> re(-grid.radius, 0.0);
        std::uniform_real_distribution<double> im(-grid.radius, grid.radius);
        while (lhp.size() < static_cast<std::size_t>(grid.lhp_samples)) {
            const std::complex<double> z(re(gen), im(gen));
            if (std::abs(z) <= grid.radius && z.real() < 0.0) lhp.push_back(z);
        }
    }

    const std::size_t cells = s_list.size();
    const int threads = study_thread_budget(options.threads, cells);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::array<double, 3>> results(cells, std::array<double, 3>{nan, nan, nan});

    run_cells(cells, threads, [&](std::size_t idx) {
        const int s = s_list[idx];
        results[idx][0] = min_eig_realpart(s);
        if (grid.eig_only) return;
        const ButcherTableau tableau = build_tableau(s);
        double max_dev = 0.0;
        for (double y : grid.imag_axis) {
            const auto r = stability_function(tableau, std::complex<double>(0.0, y));
            max_dev = std::max(max_dev, std::abs(std::abs(r) - 1.0));
        }
        double max_mag = 0.0;
        for (const auto& z : lhp) {
            max_mag = std::max(max_mag, std::abs(stability_function(tableau, z)));
        }
        results[idx][1] = max_dev;
        results[idx][2] = max_mag;
    });

    RunReport report;
    report.kind = "stability";
    report.columns = {"s", "min_re_eig", "max_imag_axis_dev", "max_lhp_mag"};
    for (std::size_t idx = 0; idx < cells; ++idx) {
        report.add_row({static_cast<double>(s_list[idx]), results[idx][0], results[idx][1],
                        results[idx][2]});
    }
    report.meta("s_list", join_ints(s_list));
    report.meta("imag_axis_points", static_cast<long long>(grid.imag_axis.size()));
    report.meta("lhp_samples", static_cast<long long>(grid.eig_only ? 0 : grid.lhp_samples));
    report.meta("radius", grid.radius);
    report.meta("seed", static_cast<long long>(grid.seed));
    report.meta("eig_only", std::string(grid.eig_only ? "true" : "false"));
    echo_solver_options(report, options, threads);
    report.meta("wall_time_s", elapsed_seconds(start));
    return report;
}

}  // namespace chebspec
