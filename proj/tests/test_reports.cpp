#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "chebspec/studies.hpp"

using namespace chebspec;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cell(const RunReport& report, std::size_t row, const std::string& column) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (report.columns[i] == column) return report.rows.at(row).at(i);
    }
    throw std::out_of_range("no column " + column);
}

}  // namespace

TEST_SUITE_BEGIN("reports");

TEST_CASE("csv emission: comments, header, full-precision cells") {
    RunReport report;
    report.kind = "convergence";
    report.columns = {"a", "b"};
    report.meta("problem", std::string("kepler"));
    report.add_row({1.0, 0.1234567890123456789});
    const std::string csv = report.to_csv();
    CHECK(csv.find("# kind=convergence\n") == 0);
    CHECK(csv.find("# problem=kepler\n") != std::string::npos);
    CHECK(csv.find("a,b\n") != std::string::npos);
    CHECK(csv.find("0.12345678901234568") != std::string::npos);  // 17 significant digits

    std::istringstream lines(csv);
    std::string line;
    int data_lines = 0;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#') ++data_lines;
    }
    CHECK(data_lines == 2);  // header + one row
}

TEST_CASE("json emission parses and mirrors the table") {
    RunReport report;
    report.kind = "drift";
    report.columns = {"x"};
    report.meta("s", static_cast<long long>(30));
    report.add_row({2.5});
    report.add_row({std::numeric_limits<double>::quiet_NaN()});
    const auto doc = nlohmann::json::parse(report.to_json());
    CHECK(doc["kind"] == "drift");
    CHECK(doc["metadata"]["s"] == "30");
    CHECK(doc["columns"][0] == "x");
    CHECK(doc["rows"][0][0].get<double>() == 2.5);
    CHECK(doc["rows"][1][0].is_null());  // missing cell
}

TEST_CASE("row width is enforced") {
    RunReport report;
    report.columns = {"a", "b"};
    CHECK_THROWS_AS(report.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("decay fit: exact geometric series, short series, stagnation cut") {
    std::vector<double> mags;
    for (int j = 0; j < 20; ++j) mags.push_back(std::pow(2.0, -j));
    const DecayFit fit = fit_decay_base(mags);
    CHECK(fit.ok);
    CHECK(fit.used == 20);
    CHECK(fit.rho == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_FALSE(fit_decay_base({1.0, 0.5, 0.25}).ok);
    CHECK_FALSE(fit_decay_base({}).ok);
    CHECK_FALSE(fit_decay_base({0.0, 0.0, 0.0, 0.0, 0.0}).ok);  // zero field

    std::vector<double> stagnating;
    for (int j = 0; j < 10; ++j) stagnating.push_back(std::pow(10.0, -j));
    for (int j = 0; j < 10; ++j) stagnating.push_back(1e-15);
    const DecayFit cut = fit_decay_base(stagnating);
    CHECK(cut.ok);
    CHECK(cut.used == 10);  // prefix above 100 eps of the leading entry
    CHECK(cut.rho == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("convergence study: layout, rates, determinism") {
    const Problem p = kepler();
    StudyOptions options;
    const RunReport report = convergence_study(p, {2, 3}, {50, 100, 200}, options);
    REQUIRE(report.rows.size() == 6);
    CHECK(report.columns == std::vector<std::string>{"s", "n", "h", "err", "rate"});

    CHECK(cell(report, 0, "s") == 2);
    CHECK(cell(report, 0, "n") == 50);
    CHECK(std::isnan(cell(report, 0, "rate")));
    CHECK(cell(report, 2, "rate") == doctest::Approx(2.0).epsilon(0.15));
    CHECK(cell(report, 5, "rate") == doctest::Approx(4.0).epsilon(0.15));

    // deterministic re-run: every numeric cell identical bit for bit
    const RunReport again = convergence_study(p, {2, 3}, {50, 100, 200}, options);
    REQUIRE(again.rows.size() == report.rows.size());
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            const double a = report.rows[r][i];
            const double b = again.rows[r][i];
            if (std::isnan(a)) {
                CHECK(std::isnan(b));
            } else {
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("convergence study: frozen field has zero error everywhere") {
    const RunReport report = convergence_study(linear_test(0.0), {1}, {10, 20});
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        CHECK(cell(report, r, "err") == 0.0);
    }
}

TEST_CASE("convergence study: bad n_list is rejected, failed cells go missing") {
    CHECK_THROWS_AS(convergence_study(kepler(), {2}, {100, 50}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(kepler(), {}, {50}), std::invalid_argument);

    // at n = 1 the sweep growth factor is |h lambda| rho(A) = 12.5: divergence,
    // recorded as a missing cell; n = 50 contracts and fills its cell
    const RunReport report = convergence_study(linear_test(-50.0), {2}, {1, 50});
    CHECK(std::isnan(cell(report, 0, "err")));
    CHECK(cell(report, 1, "err") >= 0.0);
    CHECK(std::isfinite(cell(report, 1, "err")));
}

TEST_CASE("long-run study: period bookkeeping and spectral accuracy") {
    const Problem p = kepler();
    const RunReport report = long_run_study(p, 50, 6, 2);
    REQUIRE(report.rows.size() == 2);
    CHECK(cell(report, 0, "period") == 1);
    CHECK(cell(report, 1, "period") == 2);
    CHECK(cell(report, 0, "err") <= 1e-11);
    CHECK(cell(report, 1, "err") <= 1e-11);

    // two steps per period is already enough for CCM(50)
    const RunReport coarse = long_run_study(p, 50, 3, 10);
    for (std::size_t r = 0; r < coarse.rows.size(); ++r) {
        CHECK(cell(coarse, r, "err") <= 5e-10);
    }

    CHECK(long_run_study(p, 8, 40, 0).rows.empty());
    CHECK_THROWS_AS(long_run_study(linear_test(-1.0), 4, 10, 1), std::invalid_argument);
}

TEST_CASE("spectral decay: frozen field, registry rules") {
    const RunReport report = spectral_decay(linear_test(0.0), 6, {0.5});
    REQUIRE(report.rows.size() == 6);
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        CHECK(cell(report, r, "gamma_mag") == 0.0);
        CHECK(std::isnan(cell(report, r, "rho_hat")));  // fit skipped
        CHECK(cell(report, r, "fit_used") == 0.0);
    }
    CHECK_THROWS_AS(spectral_decay(kepler(), 1, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(spectral_decay(kepler(), 30, {}), std::invalid_argument);
}

TEST_CASE("spectral decay: Kepler bases sharpen as the step shrinks") {
    const Problem p = kepler();
    const RunReport report = spectral_decay(
        p, 30, {kTwoPi / 5.0, kTwoPi / 10.0, kTwoPi / 15.0, kTwoPi / 20.0});
    REQUIRE(report.rows.size() == 120);
    const double rho5 = cell(report, 0, "rho_hat");
    const double rho10 = cell(report, 30, "rho_hat");
    const double rho15 = cell(report, 60, "rho_hat");
    const double rho20 = cell(report, 90, "rho_hat");
    CHECK(rho5 > 1.0);
    CHECK(rho10 > rho5);
    CHECK(rho15 > rho10);
    CHECK(rho20 > rho15);
}

TEST_CASE("hamiltonian drift: oscillator at roundoff, missing Hamiltonian rejected") {
    for (int s : {4, 7}) {
        CAPTURE(s);
        const RunReport report = hamiltonian_drift(harmonic_oscillator(1.0), s, 0.1, 100.0);
        REQUIRE(report.rows.size() == 1000);
        double worst = 0.0;
        for (std::size_t r = 0; r < report.rows.size(); ++r) {
            worst = std::max(worst, cell(report, r, "drift"));
        }
        CHECK(worst <= 1e-12);
    }
    CHECK_THROWS_AS(hamiltonian_drift(linear_test(-1.0), 4, 0.1, 10.0),
                    std::invalid_argument);
}

TEST_CASE("stability scan: positivity, imaginary axis, left half-plane") {
    std::vector<int> s_list;
    for (int s = 1; s <= 8; ++s) s_list.push_back(s);
    const RunReport report = stability_scan(s_list);
    REQUIRE(report.rows.size() == 8);
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        CHECK(cell(report, r, "min_re_eig") > 0.0);
        CHECK(cell(report, r, "max_lhp_mag") < 1.0);
    }
    CHECK(cell(report, 3, "max_imag_axis_dev") <= 1e-10);  // s = 4

    StabilityGrid eig_only;
    eig_only.eig_only = true;
    const RunReport bare = stability_scan({5}, eig_only);
    CHECK(std::isnan(cell(bare, 0, "max_imag_axis_dev")));
    CHECK(cell(bare, 0, "min_re_eig") > 0.0);
}

TEST_CASE("thread budget: explicit, environment, cell cap") {
    CHECK(study_thread_budget(4, 100) == 4);
    CHECK(study_thread_budget(4, 2) == 2);
    CHECK(study_thread_budget(1, 10) == 1);

    setenv("CHEBSPEC_THREADS", "3", 1);
    CHECK(study_thread_budget(0, 100) == 3);
    unsetenv("CHEBSPEC_THREADS");
    CHECK(study_thread_budget(0, 1) == 1);
}

TEST_SUITE_END();
