#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chebspec {

/// Tabular experiment output. Rows are numeric (NaN marks a missing cell);
/// metadata echoes the full configuration so the run can be reproduced from
/// the file alone. CSV is the primary format: '#'-prefixed key=value lines,
/// a header row, then one line per record, all numbers with 17 significant
/// digits.
struct RunReport {
    std::string kind;  // convergence, long_run, decay, drift, stability, tableau, trajectory
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void meta(std::string key, std::string value);
    void meta(std::string key, double value);
    void meta(std::string key, long long value);
    void add_row(std::vector<double> row);  // size must match columns

    std::string to_csv() const;
    std::string to_json() const;
};

}  // namespace chebspec
