#pragma once

#include <limits>
#include <vector>

#include "chebspec/problems.hpp"
#include "chebspec/report.hpp"
#include "chebspec/solver.hpp"

namespace chebspec {

/// Shared knobs for the experiment drivers. Independent cells of a study run
/// in parallel, each with its own tableau and transform plan; threads = 0
/// defers to the CHEBSPEC_THREADS environment variable, then to the hardware.
struct StudyOptions {
    double fp_tol = 1e-14;
    int fp_max_iter = 100;
    ButcherPath path = ButcherPath::fast;
    int threads = 0;
};

/// Endpoint error and empirical rate per (s, n) over one reference interval
/// (the problem period when known, 1 otherwise) with timestep t_end / n.
/// Cells whose solve fails are recorded as NaN. n_list must be increasing.
RunReport convergence_study(const Problem& problem, const std::vector<int>& s_list,
                            const std::vector<int>& n_list, const StudyOptions& options = {});

/// Max-norm error against the initial state at the end of each period,
/// integrating with timestep period / n. Requires period metadata.
RunReport long_run_study(const Problem& problem, int s, int n, int periods,
                         const StudyOptions& options = {});

/// First-step Fourier-coefficient magnitudes |gamma_hat_j| for each timestep
/// in h_list, plus the fitted geometric decay base per h. Requires s >= 2.
RunReport spectral_decay(const Problem& problem, int s, const std::vector<double>& h_list,
                         const StudyOptions& options = {});

/// |H(y_n) - H(y_0)| per step. Requires a Hamiltonian.
RunReport hamiltonian_drift(const Problem& problem, int s, double h, double t_end,
                            const StudyOptions& options = {});

struct StabilityGrid {
    StabilityGrid();                // fills imag_axis with logspace(-2, 3, 50)
    std::vector<double> imag_axis;  // sample points y for R(iy)
    int lhp_samples = 100;          // random z with Re z < 0, |z| <= radius
    double radius = 100.0;
    unsigned seed = 7321u;
    bool eig_only = false;          // skip the stability-function columns
};

/// Per s: min Re eig(X_s), the worst deviation of |R(iy)| from 1 on the
/// imaginary-axis samples, and the largest |R(z)| over the left-half-plane
/// samples (NaN for the latter two under eig_only).
RunReport stability_scan(const std::vector<int>& s_list, const StabilityGrid& grid = {},
                         const StudyOptions& options = {});

struct DecayFit {
    double rho = std::numeric_limits<double>::quiet_NaN();
    int used = 0;   // length of the fitted prefix
    bool ok = false;
};

/// Least-squares fit of log-magnitudes over the pre-stagnation prefix: the
/// leading run of entries above 100x unit roundoff of magnitudes[0]. The fit
/// is skipped (ok = false) with fewer than 4 usable entries.
DecayFit fit_decay_base(const std::vector<double>& magnitudes);

/// Effective thread count for a study with the given cell count.
int study_thread_budget(int requested, std::size_t cells);

}  // namespace chebspec
