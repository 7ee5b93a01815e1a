#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcf::diag {

// One sampled instant. A closed run fills the entropy side, a graph run
// the interior side; absent fields serialize as empty CSV cells.
struct SeriesRow {
    double t = 0.0;
    std::optional<double> N, J, D2;
    std::optional<double> harnack_slack, mono_slack1, mono_slack2, concavity_dd;
    std::optional<double> min_ut, max_ut, inv_lambda_min, osc;
};

struct CheckSummary {
    std::string name;
    double min_slack = 0.0;
    double max_slack = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct RunReport {
    std::string run_id;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<SeriesRow> rows;
    std::vector<CheckSummary> checks;
    std::string terminal_status;
    std::optional<double> lambda_measured, lambda_target;
    long steps = 0;
    double wall_ms = 0.0;  // console only; never serialized (determinism)

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Fixed column order, 17-significant-digit decimals, LF endings.
void write_series(const RunReport& report, const std::string& path);
// Single JSON object with fixed key order; numbers as decimal strings.
void write_summary(const RunReport& report, const std::string& path);
// Standalone SVG line chart; draws the tolerance band for slack series.
void emit_plot(const RunReport& report, const std::string& series, const std::string& path);

std::vector<SeriesRow> read_series_csv(const std::string& path);

}  // namespace gcf::diag
