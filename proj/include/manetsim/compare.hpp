#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "metrics.hpp"

namespace manetsim {

// Parsed form of the metrics CSV emitted by a run.
struct MetricSeries {
    static constexpr std::size_t kColumns = 7;  // time_s + six categories
    std::vector<std::array<std::int64_t, kColumns>> rows;

    std::int64_t total(std::size_t column) const {
        std::int64_t sum = 0;
        for (const auto& row : rows) {
            sum += row[column];
        }
        return sum;
    }
};

inline MetricSeries parse_metrics_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("csv", "empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != MetricsCollector::kCsvHeader) {
        throw ConfigError("csv", "unrecognized header '" + line + "'");
    }
    MetricSeries series;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::array<std::int64_t, MetricSeries::kColumns> row{};
        std::size_t pos = 0;
        for (std::size_t c = 0; c < MetricSeries::kColumns; ++c) {
            const std::size_t end = line.find(',', pos);
            if ((end == std::string::npos) != (c == MetricSeries::kColumns - 1)) {
                throw ConfigError("csv", "expected 7 fields", line_no);
            }
            const std::string field = line.substr(pos, end - pos);
            try {
                std::size_t used = 0;
                row[c] = std::stoll(field, &used);
                if (used != field.size()) {
                    throw std::invalid_argument(field);
                }
            } catch (const std::exception&) {
                throw ConfigError("csv", "bad integer '" + field + "'", line_no);
            }
            pos = end + 1;
        }
        series.rows.push_back(row);
    }
    if (series.rows.empty()) {
        throw ConfigError("csv", "no data rows");
    }
    return series;
}

// Side-by-side table of two runs' series plus per-category verdicts on run
// totals. Inputs must share the header schema and bucket spacing.
inline std::string compare_series(const MetricSeries& a, const MetricSeries& b,
                                  const std::string& name_a = "A",
                                  const std::string& name_b = "B") {
    static constexpr const char* kCategories[] = {
        "app_bits_sent",        "app_bits_received",  "data_bits_dropped",
        "data_packets_dropped", "routing_bits_sent",  "routing_bits_received",
    };
    const std::int64_t step_a = a.rows.size() > 1 ? a.rows[1][0] - a.rows[0][0] : 0;
    const std::int64_t step_b = b.rows.size() > 1 ? b.rows[1][0] - b.rows[0][0] : 0;
    if (a.rows.size() > 1 && b.rows.size() > 1 && step_a != step_b) {
        throw ConfigError("csv", "bucket widths differ (" + std::to_string(step_a) + " vs " +
                                     std::to_string(step_b) + " s)");
    }

    std::ostringstream out;
    out << "totals (" << name_a << " vs " << name_b << ")\n";
    for (std::size_t c = 0; c < 6; ++c) {
        const std::int64_t ta = a.total(c + 1);
        const std::int64_t tb = b.total(c + 1);
        const char* verdict =
            ta > tb ? "A greater" : tb > ta ? "B greater" : "equal";
        out << "  " << kCategories[c] << ": " << ta << " vs " << tb << " -> " << verdict << "\n";
    }

    out << "series (per bucket, " << name_a << "|" << name_b << ")\n";
    out << "  time_s";
    for (const char* cat : kCategories) {
        out << ' ' << cat;
    }
    out << '\n';
    const std::size_t rows = std::max(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const bool has_a = i < a.rows.size();
        const bool has_b = i < b.rows.size();
        const std::int64_t t = has_a ? a.rows[i][0] : b.rows[i][0];
        if (has_a && has_b && a.rows[i][0] != b.rows[i][0]) {
            throw ConfigError("csv", "bucket times diverge at row " + std::to_string(i + 1));
        }
        out << "  " << t;
        for (std::size_t c = 1; c < MetricSeries::kColumns; ++c) {
            out << ' ' << (has_a ? a.rows[i][c] : 0) << '|' << (has_b ? b.rows[i][c] : 0);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace manetsim
