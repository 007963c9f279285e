#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cavharvest/correlations.hpp"
#include "cavharvest/sweep.hpp"

namespace cavharvest {

inline constexpr std::string_view kCsvHeader = "t,r,T,E_N,I,D,nu1,nu2,nu_plus,nu_minus";

/// Shortest-form general notation with `precision` significant digits,
/// independent of the global locale. Non-finite values render as nan/inf/-inf.
std::string format_number(double value, int precision);

std::string to_csv(const std::vector<CorrelationReport>& reports, int precision = 12);

/// Array of flat objects carrying the CSV fields; non-finite values become null.
std::string to_json(const std::vector<CorrelationReport>& reports, int precision = 12);

/// Reads the output of to_json back. Fields not in the table keep their
/// defaults; null becomes NaN. Throws ValidationError on malformed input.
std::vector<CorrelationReport> parse_json_reports(std::string_view text);

std::string render(const std::vector<CorrelationReport>& reports, OutputFormat format, int precision);

/// Writes to `path`, or to standard output when `path` is empty.
/// Throws IoError naming the path.
void emit(const std::vector<CorrelationReport>& reports, OutputFormat format, const std::string& path,
          int precision = 12);

/// Writes `text` to `path` (standard output when empty or "-"). Throws IoError naming the path.
void write_text(const std::string& path, const std::string& text);

}  // namespace cavharvest
