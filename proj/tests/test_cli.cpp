#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef CHEBSPEC_CLI_BIN
#define CHEBSPEC_CLI_BIN "chebspec"
#endif

namespace {

int run_cli(const std::string& args) {
    const std::string command =
        std::string(CHEBSPEC_CLI_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string temp_path(const char* name) {
    return std::string("/tmp/chebspec_cli_test_") + name;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("tableau subcommand emits the JSON schema") {
    const std::string path = temp_path("tableau.json");
    REQUIRE(run_cli("tableau --s 3 --out " + path) == 0);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["s"] == 3);
    CHECK(doc["k"] == 3);
    CHECK(doc["c"].size() == 3);
    CHECK(doc["b"].size() == 3);
    CHECK(doc["A"].size() == 3);
    CHECK(doc["X"]["triplets"].size() > 0);
    std::remove(path.c_str());
}

TEST_CASE("tableau subcommand: csv flavor and the generalized case") {
    const std::string path = temp_path("tableau.csv");
    REQUIRE(run_cli("tableau --s 3 --k 6 --csv --out " + path) == 0);
    const std::string text = slurp(path);
    CHECK(text.rfind("# kind=tableau", 0) == 0);
    CHECK(text.find("# k=6") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("solve subcommand writes a trajectory report") {
    const std::string path = temp_path("traj.csv");
    REQUIRE(run_cli("solve --problem kepler --s 4 --h 0.1 --t-end 1 --out " + path) == 0);
    const std::string text = slurp(path);
    CHECK(text.find("# kind=trajectory") != std::string::npos);
    CHECK(text.find("t,y0,y1,y2,y3") != std::string::npos);
    int data_lines = -1;  // header
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#') ++data_lines;
    }
    CHECK(data_lines == 11);
    std::remove(path.c_str());
}

TEST_CASE("solve subcommand accepts 2pi timestep shorthand") {
    const std::string path = temp_path("traj2.csv");
    REQUIRE(run_cli("solve --problem kepler --s 8 --h 2pi/40 --t-end 2pi --out " + path) == 0);
    std::remove(path.c_str());
}

TEST_CASE("divergence maps to exit code 2") {
    CHECK(run_cli("solve --problem linear --s 1 --h 100 --t-end 1000") == 2);
}

TEST_CASE("usage errors map to exit code 1") {
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("tableau") == 1);                       // missing --s
    CHECK(run_cli("tableau --s 0") == 1);                 // invalid stage count
    CHECK(run_cli("decay --s 1 --h-list 0.1") == 1);      // decay requires s >= 2
    CHECK(run_cli("solve --problem nosuch --s 2 --h 0.1 --t-end 1") == 1);
    CHECK(run_cli("drift --problem linear --s 4") == 1);  // no Hamiltonian
}

TEST_CASE("study subcommands produce reports") {
    const std::string path = temp_path("study.csv");
    REQUIRE(run_cli("convergence --problem kepler --s-list 2 --n-list 20,40 --out " + path) ==
            0);
    CHECK(slurp(path).find("# kind=convergence") == 0);

    REQUIRE(run_cli("decay --s 12 --h-list 2pi/10,pi/10 --out " + path) == 0);
    CHECK(slurp(path).find("# kind=decay") == 0);

    REQUIRE(run_cli("longrun --s 20 --n 10 --periods 1 --out " + path) == 0);
    CHECK(slurp(path).find("# kind=long_run") == 0);

    REQUIRE(run_cli("drift --s 6 --h 0.1 --t-end 10 --out " + path) == 0);
    CHECK(slurp(path).find("# kind=drift") == 0);

    REQUIRE(run_cli("stability --s-max 6 --eig-only --json --out " + path) == 0);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["kind"] == "stability");
    CHECK(doc["rows"].size() == 6);
    std::remove(path.c_str());
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("tableau --help") == 0);
}

TEST_SUITE_END();
