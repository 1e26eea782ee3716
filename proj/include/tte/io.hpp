#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "tte/intervals.hpp"
#include "tte/model.hpp"
#include "tte/monte_carlo.hpp"

namespace tte::io {

/// Sample file parsing. Two formats are accepted:
///
/// JSON: {"n": 3, "T": 2.0, "failures": [0.5, 1.0]}
///
/// CSV, two header lines followed by one failure time per line:
///     n,3
///     T,2.0
///     0.5
///     1.0
/// Blank lines and lines starting with '#' are ignored.
///
/// Errors are ValidationError with the offending line number.
CensoredSample parse_sample_json(std::string_view text);
CensoredSample parse_sample_csv(std::string_view text);

/// Picks the parser by extension (.json or .csv).
CensoredSample read_sample_file(std::filesystem::path const& path);

/// Seven significant digits, the precision of human-readable output.
std::string format_number(double value);

nlohmann::json to_json(IntervalResult const& interval);
IntervalResult interval_from_json(nlohmann::json const& j);

nlohmann::json to_json(SimSummary const& summary);
SimSummary summary_from_json(nlohmann::json const& j);

/// Column order shared by the CSV and JSON result tables.
inline constexpr std::string_view kResultColumns
    = "method,n,lambda,T,bias,mse,avg_length,coverage_pct,"
      "effective_replications,d_zero_count,no_root_count,seed";

/// Result table as CSV (header plus one row per successful cell). Failed
/// cells appear with an "error" entry only in the JSON form.
void write_results_csv(std::ostream& out, std::span<CellResult const> cells);
void write_results_json(std::ostream& out, std::span<CellResult const> cells);

}  // namespace tte::io
