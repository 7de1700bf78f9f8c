// Monte-Carlo discrete-event simulation of primary channel activity and of
// the three secondary access schemes run against it.
//
// Time inside [warmup, horizon) is split per channel into five buckets:
//   throughput    free, inside an access window, not paused for sensing
//   overhead      free, inside an access window, paused for sensing
//   interference  busy, inside an access window
//   unexplored    free, outside access windows
//   idle          busy, outside access windows
// and reported as fractions of horizon - warmup.

#ifndef INTERSENSE_SIMULATOR_HPP_
#define INTERSENSE_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "intersense/markov_policy.hpp"
#include "intersense/outcome_table.hpp"

namespace intersense {

struct RenewalTrace {
  std::size_t channel_index = 0;
  bool initial_free = false;
  std::vector<double> transition_times;  // strictly increasing
  double horizon = 0;

  /// State at time t (true = free); the state switches at every transition.
  bool free_at(double t) const;
  /// Free time inside [a, b].
  double free_time(double a, double b) const;
};

/// Stationary-start trace over [0, horizon]. Deterministic in `seed`.
RenewalTrace generate_trace(const ChannelParams& ch, double horizon, std::uint64_t seed,
                            std::size_t channel_index = 0);

struct SimConfig {
  double horizon = 0;
  std::uint64_t seed = 1;
  double warmup = 0;
  int runs = 1;
  unsigned threads = 1;  // 0 = hardware concurrency; results do not depend on it

  void validate() const;
};

/// 20 mean busy/free cycles of the slowest channel.
double default_warmup(std::span<const ChannelParams> chs);

struct Interval {
  double start;
  double end;
};

struct AccessWindow {
  double start;
  double end;
  bool access;
};

struct OccupancyTotals {
  double throughput = 0;
  double overhead = 0;
  double interference = 0;
  double unexplored = 0;
  double idle = 0;

  double total() const { return throughput + overhead + interference + unexplored + idle; }
  double access_time() const { return throughput + overhead + interference; }
};

/// Splits [from, to) for one channel into the five buckets. Windows must be
/// contiguous and ordered; pauses ordered and non-overlapping.
OccupancyTotals accumulate_occupancy(const RenewalTrace& trace,
                                     std::span<const AccessWindow> windows,
                                     std::span<const Interval> pauses, double from, double to);

struct MetricEstimate {
  double mean = 0;
  double std_error = 0;  // standard error across runs
};

struct ChannelReport {
  MetricEstimate throughput;
  MetricEstimate interference;
  MetricEstimate unexplored;
  MetricEstimate overhead;
  MetricEstimate idle;
  MetricEstimate free_fraction;
  /// Busy share of the time spent inside access windows.
  MetricEstimate access_interference;
};

struct PerformanceReport {
  std::vector<ChannelReport> channels;
  MetricEstimate throughput;  // aggregate R
  /// Mean time from the end of one access (or start) to the next access;
  /// limited-access scheme only.
  std::optional<MetricEstimate> search_delay;
  int runs = 0;
};

/// Single sensor, transmission on every channel sensed free; each channel is
/// re-sensed t_free or t_busy after its last sensing. Sensing is serialized:
/// a channel that falls due while the sensor is busy waits, and ties go to
/// the lower channel index.
PerformanceReport simulate_dual_period(std::span<const ChannelParams> chs,
                                       std::span<const SensingErrorModel> errs,
                                       std::span<const DualPeriodPolicy> pols,
                                       double sensing_time, const SimConfig& cfg);

/// All channels sensed together; the next joint sensing happens
/// table[outcome] after the current one.
PerformanceReport simulate_full(std::span<const ChannelParams> chs,
                                std::span<const SensingErrorModel> errs,
                                const OutcomeDurationTable& table, double sensing_time,
                                const SimConfig& cfg);

/// Single-channel access with error-free sensing. Channels are sensed one at
/// a time in descending rank order (re-ranked after every attempt); the
/// first channel found free is accessed for access_durations[i].
PerformanceReport simulate_limited_access(std::span<const ChannelParams> chs,
                                          std::span<const double> access_durations,
                                          double sensing_time, const SimConfig& cfg);

}  // namespace intersense

#endif  // INTERSENSE_SIMULATOR_HPP_
