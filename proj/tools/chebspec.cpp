// chebspec: command-line driver for the Chebyshev collocation integrator.
// Reports are CSV by default (--json switches); exit codes: 0 success,
// 1 usage error, 2 solver divergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebspec/report.hpp"
#include "chebspec/solver.hpp"
#include "chebspec/studies.hpp"
#include "chebspec/tableau.hpp"

namespace {

using namespace chebspec;

// Accepts plain numbers plus the "2pi/5", "pi/10", "2pi" shorthand used for
// period-fraction timesteps.
double parse_time_token(const std::string& token) {
    const std::size_t pi_pos = token.find("pi");
    if (pi_pos == std::string::npos) {
        std::size_t consumed = 0;
        const double value = std::stod(token, &consumed);
        if (consumed != token.size()) {
            throw CLI::ValidationError("cannot parse number '" + token + "'");
        }
        return value;
    }
    double factor = 1.0;
    if (pi_pos > 0) factor = std::stod(token.substr(0, pi_pos));
    double divisor = 1.0;
    const std::string rest = token.substr(pi_pos + 2);
    if (!rest.empty()) {
        if (rest[0] != '/') {
            throw CLI::ValidationError("cannot parse timestep '" + token + "'");
        }
        divisor = std::stod(rest.substr(1));
    }
    return factor * std::numbers::pi / divisor;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> tokens;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) tokens.push_back(item);
    }
    return tokens;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (const auto& token : split_commas(text)) {
        values.push_back(std::stoi(token));
    }
    if (values.empty()) throw CLI::ValidationError("empty list '" + text + "'");
    return values;
}

std::vector<double> parse_time_list(const std::string& text) {
    std::vector<double> values;
    for (const auto& token : split_commas(text)) {
        values.push_back(parse_time_token(token));
    }
    if (values.empty()) throw CLI::ValidationError("empty list '" + text + "'");
    return values;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

RunReport trajectory_report(const Problem& problem, const Trajectory& trajectory,
                            const SolverConfig& cfg, double t_end) {
    RunReport report;
    report.kind = "trajectory";
    report.columns.push_back("t");
    for (int i = 0; i < problem.dim; ++i) {
        report.columns.push_back("y" + std::to_string(i));
    }
    for (Eigen::Index row = 0; row < trajectory.states.rows(); ++row) {
        std::vector<double> cells;
        cells.push_back(trajectory.times[static_cast<std::size_t>(row)]);
        for (int i = 0; i < problem.dim; ++i) cells.push_back(trajectory.states(row, i));
        report.add_row(std::move(cells));
    }
    report.meta("problem", problem.name);
    report.meta("s", static_cast<long long>(cfg.s));
    report.meta("k", static_cast<long long>(cfg.quadrature()));
    report.meta("h", cfg.h);
    report.meta("t_end", t_end);
    report.meta("fp_tol", cfg.fp_tol);
    report.meta("fp_max_iter", static_cast<long long>(cfg.fp_max_iter));
    report.meta("path", std::string(cfg.path == ButcherPath::fast ? "fast" : "dense"));
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral Chebyshev collocation integrator"};
    app.require_subcommand(1);
    // --h is the timestep option, so help lives on --help only
    app.set_help_flag("--help", "print help and exit");

    std::string out_path;
    app.add_option("--out", out_path, "write the report to a file instead of stdout")
        ->capture_default_str();
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of CSV");

    StudyOptions study;
    std::string problem_name = "kepler";
    std::string path_flag;  // "", "fast", "dense"

    auto make_subcommand = [&app](const std::string& name, const std::string& description) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->set_help_flag("--help", "print help and exit");
        sub->fallthrough();  // --out / --json live on the parent
        return sub;
    };

    auto add_solver_flags = [&](CLI::App* sub) {
        sub->add_option("--fp-tol", study.fp_tol, "fixed-point relative tolerance");
        sub->add_option("--fp-max-iter", study.fp_max_iter, "fixed-point sweep cap");
        sub->add_option("--threads", study.threads,
                        "study parallelism (0: CHEBSPEC_THREADS or hardware)");
        auto* fast = sub->add_flag_callback("--fast", [&] { path_flag = "fast"; },
                                            "apply the Butcher matrix via the DCT pair (default)");
        sub->add_flag_callback("--dense", [&] { path_flag = "dense"; },
                               "apply the materialized Butcher matrix")
            ->excludes(fast);
    };

    // tableau
    auto* cmd_tableau = make_subcommand("tableau", "print a CCM tableau");
    int tab_s = 0, tab_k = 0;
    bool tab_csv = false;
    cmd_tableau->add_option("--s", tab_s, "stage count")->required();
    cmd_tableau->add_option("--k", tab_k, "quadrature count (default s)");
    cmd_tableau->add_flag("--csv", tab_csv, "classic c|A / b layout as CSV");

    // solve
    auto* cmd_solve = make_subcommand("solve", "integrate a registry problem");
    SolverConfig solve_cfg;
    std::string solve_h, solve_t_end;
    cmd_solve->add_option("--problem", problem_name, "kepler | linear | harmonic");
    cmd_solve->add_option("--s", solve_cfg.s, "stage count")->required();
    cmd_solve->add_option("--k", solve_cfg.k, "quadrature count (default s)");
    cmd_solve->add_option("--h", solve_h, "timestep (accepts 2pi/N)")->required();
    cmd_solve->add_option("--t-end", solve_t_end, "final time (accepts 2pi/N)")->required();
    add_solver_flags(cmd_solve);

    // convergence
    auto* cmd_conv = make_subcommand("convergence", "endpoint error and rate per (s, n)");
    std::string conv_s_list, conv_n_list;
    cmd_conv->add_option("--problem", problem_name, "registry problem");
    cmd_conv->add_option("--s-list", conv_s_list, "comma-separated stage counts")->required();
    cmd_conv->add_option("--n-list", conv_n_list, "comma-separated step counts, increasing")
        ->required();
    add_solver_flags(cmd_conv);

    // longrun
    auto* cmd_long = make_subcommand("longrun", "period-end errors over many periods");
    int long_s = 50, long_n = 6, long_periods = 10;
    cmd_long->add_option("--problem", problem_name, "registry problem (needs a period)");
    cmd_long->add_option("--s", long_s, "stage count");
    cmd_long->add_option("--n", long_n, "steps per period")->required();
    cmd_long->add_option("--periods", long_periods, "period count");
    add_solver_flags(cmd_long);

    // decay
    auto* cmd_decay = make_subcommand("decay", "first-step coefficient decay");
    int decay_s = 30;
    std::string decay_h_list;
    cmd_decay->add_option("--problem", problem_name, "registry problem");
    cmd_decay->add_option("--s", decay_s, "stage count (>= 2)");
    cmd_decay->add_option("--h-list", decay_h_list, "comma-separated timesteps (accepts 2pi/N)")
        ->required();
    add_solver_flags(cmd_decay);

    // drift
    auto* cmd_drift = make_subcommand("drift", "Hamiltonian error per step");
    int drift_s = 30;
    std::string drift_h = "0.1", drift_t_end = "1000";
    cmd_drift->add_option("--problem", problem_name, "registry problem (needs a Hamiltonian)");
    cmd_drift->add_option("--s", drift_s, "stage count");
    cmd_drift->add_option("--h", drift_h, "timestep (accepts 2pi/N)");
    cmd_drift->add_option("--t-end", drift_t_end, "final time (accepts 2pi/N)");
    add_solver_flags(cmd_drift);

    // stability
    auto* cmd_stab = make_subcommand("stability", "eigenvalue and A-stability scan");
    int stab_s_max = 64;
    bool stab_eig_only = false;
    unsigned stab_seed = 7321u;
    cmd_stab->add_option("--s-max", stab_s_max, "scan s = 1..s_max")->required();
    cmd_stab->add_flag("--eig-only", stab_eig_only,
                       "skip the stability-function columns (cheap at large s)");
    cmd_stab->add_option("--seed", stab_seed, "seed for the left-half-plane samples");
    cmd_stab->add_option("--threads", study.threads, "scan parallelism");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!path_flag.empty()) {
            study.path = path_flag == "dense" ? ButcherPath::dense : ButcherPath::fast;
        }

        if (*cmd_tableau) {
            const ButcherTableau t = build_tableau(tab_s, tab_k);
            write_output(tab_csv ? tableau_to_csv(t) : tableau_to_json(t), out_path);
            return 0;
        }

        RunReport report;
        if (*cmd_solve) {
            solve_cfg.h = parse_time_token(solve_h);
            solve_cfg.fp_tol = study.fp_tol;
            solve_cfg.fp_max_iter = study.fp_max_iter;
            solve_cfg.path = study.path;
            solve_cfg.keep_coefficients = false;
            const double t_end = parse_time_token(solve_t_end);
            const Problem problem = find_problem(problem_name);
            const Trajectory trajectory =
                integrate(problem, problem.default_y0, t_end, solve_cfg);
            report = trajectory_report(problem, trajectory, solve_cfg, t_end);
            std::cerr << "solved " << trajectory.steps.size() << " steps of "
                      << problem.name << " (s = " << solve_cfg.s << ")\n";
        } else if (*cmd_conv) {
            report = convergence_study(find_problem(problem_name), parse_int_list(conv_s_list),
                                       parse_int_list(conv_n_list), study);
        } else if (*cmd_long) {
            report = long_run_study(find_problem(problem_name), long_s, long_n, long_periods,
                                    study);
        } else if (*cmd_decay) {
            report = spectral_decay(find_problem(problem_name), decay_s,
                                    parse_time_list(decay_h_list), study);
        } else if (*cmd_drift) {
            report = hamiltonian_drift(find_problem(problem_name), drift_s,
                                       parse_time_token(drift_h),
                                       parse_time_token(drift_t_end), study);
        } else if (*cmd_stab) {
            std::vector<int> s_list;
            for (int s = 1; s <= stab_s_max; ++s) s_list.push_back(s);
            StabilityGrid grid;
            grid.eig_only = stab_eig_only;
            grid.seed = stab_seed;
            report = stability_scan(s_list, grid, study);
        }
        write_output(as_json ? report.to_json() : report.to_csv(), out_path);
        return 0;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what();
        if (e.step_index) std::cerr << " (step " << *e.step_index << ")";
        std::cerr << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
