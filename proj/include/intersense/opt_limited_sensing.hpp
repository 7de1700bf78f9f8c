// Inter-sensing time optimization for a secondary user with a single sensor
// that may transmit on every channel it sensed free.

#ifndef INTERSENSE_OPT_LIMITED_SENSING_HPP_
#define INTERSENSE_OPT_LIMITED_SENSING_HPP_

#include <span>
#include <vector>

#include "intersense/grid.hpp"
#include "intersense/markov_policy.hpp"

namespace intersense {

struct OptimizerOptions {
  GridSpec grid;
  OverheadModel overhead = OverheadModel::kSensingRate;
  int max_rounds = 50;
  double rel_tol = 1e-6;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct OptimizationResult {
  std::vector<DualPeriodPolicy> policies;
  double objective = 0;  // R
  std::vector<ChannelMetrics> per_channel;
  std::vector<bool> constraint_active;
  bool converged = false;
  int rounds = 0;
};

/// Coordinate-ascent grid search over per-channel (T^F, T^B) maximizing the
/// network throughput subject to interference_fraction_i <= i_max[i].
/// Throws Infeasible when no grid point satisfies some channel's constraint.
OptimizationResult optimize_dual_period(std::span<const ChannelParams> chs,
                                        std::span<const SensingErrorModel> errs,
                                        double sensing_time, std::span<const double> i_max,
                                        const OptimizerOptions& opts);

/// Baseline with one inter-sensing time per channel (T^F = T^B).
OptimizationResult optimize_single_period(std::span<const ChannelParams> chs,
                                          std::span<const SensingErrorModel> errs,
                                          double sensing_time, std::span<const double> i_max,
                                          const OptimizerOptions& opts);

/// Dual-period search with imperfect sensing; same machinery as
/// optimize_dual_period.
inline OptimizationResult optimize_with_errors(std::span<const ChannelParams> chs,
                                               std::span<const SensingErrorModel> errs,
                                               double sensing_time, std::span<const double> i_max,
                                               const OptimizerOptions& opts) {
  return optimize_dual_period(chs, errs, sensing_time, i_max, opts);
}

/// i_max_i = fraction * u_i.
std::vector<double> interference_limits(std::span<const ChannelParams> chs, double fraction);

}  // namespace intersense

#endif  // INTERSENSE_OPT_LIMITED_SENSING_HPP_
