// CSV and plain-text renderings of scheme results. Every CSV starts with a
// header row; numbers use 6 significant digits and missing values are empty.

#ifndef INTERSENSE_REPORT_IO_HPP_
#define INTERSENSE_REPORT_IO_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intersense/runner.hpp"

namespace intersense {

/// "%.6g"; NaN prints as an empty field.
std::string format_number(double x);

/// One row of the long-format comparison table.
struct ComparisonRow {
  std::string scheme;
  std::string channel;  // channel index, or "all" for network-wide metrics
  std::string metric;
  double analytic;      // NaN when not available
  double empirical;     // NaN when not simulated
  double std_error;
};

std::vector<ComparisonRow> comparison_rows(const SchemeResult& r);

std::string policy_csv(const SchemeResult& r);
std::string analytic_csv(const SchemeResult& r);
std::string simulation_csv(const SchemeResult& r);
std::string comparison_csv(std::span<const SchemeResult> results);
std::string summary_text(const Scenario& sc, std::span<const SchemeResult> results);

/// Writes text to dir/name, creating dir. Throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& text);

}  // namespace intersense

#endif  // INTERSENSE_REPORT_IO_HPP_
