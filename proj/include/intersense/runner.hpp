// Runs one scheme on a scenario: optimize, evaluate analytically and, unless
// disabled, validate by simulation.

#ifndef INTERSENSE_RUNNER_HPP_
#define INTERSENSE_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intersense/markov_policy.hpp"
#include "intersense/opt_limited_access.hpp"
#include "intersense/outcome_table.hpp"
#include "intersense/scenario.hpp"
#include "intersense/simulator.hpp"

namespace intersense {

struct RunOptions {
  bool simulate = true;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<double> horizon;
  std::optional<double> grid_step;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct SchemeResult {
  Scheme scheme = Scheme::kLimitedSensing;
  double sensing_time = 0;
  std::vector<double> i_max;

  /// Analytic long-run R; NaN when the scheme has no closed form for the
  /// scenario (limited access, full schemes with sensing errors).
  double analytic_throughput = 0;
  std::vector<ChannelMetrics> analytic;  // empty when unavailable

  std::vector<DualPeriodPolicy> policies;       // limited-sensing, baseline
  std::vector<bool> constraint_active;          // limited-sensing, baseline
  std::optional<OutcomeDurationTable> table;    // full schemes
  std::vector<bool> outcome_feasible;           // full-myopic
  std::optional<LimitedAccessPlan> access;      // limited-access
  std::vector<double> analytic_access_interference;  // limited-access

  std::optional<SimConfig> sim_config;
  std::optional<PerformanceReport> simulation;
  std::vector<std::string> warnings;
};

GridSpec resolve_grid(const Scenario& sc, Scheme scheme, double sensing_time,
                      const RunOptions& opts);
SimConfig resolve_sim_config(const Scenario& sc, const RunOptions& opts);

/// Throws ConfigError, Infeasible, Unbounded or DegenerateChain.
SchemeResult run_scheme(const Scenario& sc, Scheme scheme, const RunOptions& opts);

}  // namespace intersense

#endif  // INTERSENSE_RUNNER_HPP_
