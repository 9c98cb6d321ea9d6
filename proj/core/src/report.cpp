#include "chebspec/report.hpp"

#include <sstream>
#include <stdexcept>

#include "format_util.hpp"

namespace chebspec {

void RunReport::meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

void RunReport::meta(std::string key, double value) {
    metadata.emplace_back(std::move(key), detail::format_sig17(value));
}

void RunReport::meta(std::string key, long long value) {
    metadata.emplace_back(std::move(key), std::to_string(value));
}

void RunReport::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("report row has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string RunReport::to_csv() const {
    std::ostringstream out;
    out << "# kind=" << kind << "\n";
    for (const auto& [key, value] : metadata) {
        out << "# " << key << "=" << value << "\n";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << detail::format_sig17(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

namespace {

void append_json_escaped(std::ostringstream& out, const std::string& text) {
    out << '"';
    for (char c : text) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            default: out << c;
        }
    }
    out << '"';
}

}  // namespace

std::string RunReport::to_json() const {
    std::ostringstream out;
    out << "{\n  \"kind\": ";
    append_json_escaped(out, kind);
    out << ",\n  \"metadata\": {";
    for (std::size_t i = 0; i < metadata.size(); ++i) {
        if (i) out << ", ";
        append_json_escaped(out, metadata[i].first);
        out << ": ";
        append_json_escaped(out, metadata[i].second);
    }
    out << "},\n  \"columns\": [";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ", ";
        append_json_escaped(out, columns[i]);
    }
    out << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << "    [";
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            if (i) out << ", ";
            // JSON has no NaN literal; missing cells become null
            const double v = rows[r][i];
            if (v != v) {
                out << "null";
            } else {
                out << detail::format_sig17(v);
            }
        }
        out << (r + 1 < rows.size() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

}  // namespace chebspec
