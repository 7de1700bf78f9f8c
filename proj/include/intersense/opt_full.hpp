// Schedules for a secondary user that senses and transmits on all channels
// at once: after each joint sensing, pick how long to wait before sensing
// again as a function of the joint outcome.

#ifndef INTERSENSE_OPT_FULL_HPP_
#define INTERSENSE_OPT_FULL_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "intersense/grid.hpp"
#include "intersense/markov_policy.hpp"
#include "intersense/outcome_table.hpp"

namespace intersense {

struct MyopicTerms {
  double objective = 0;  // normalized immediate reward
  std::vector<double> interference_fraction;  // T_i^I(T_p) / T_p, sensed-free channels only
  bool feasible = true;
};

/// Immediate reward of holding outcome `omega` for `duration`.
MyopicTerms myopic_objective(std::span<const ChannelParams> chs,
                             std::span<const SensingErrorModel> errs, std::size_t omega,
                             double duration, double sensing_time, std::span<const double> i_max);

struct MyopicResult {
  double duration = 0;
  double objective = 0;
  bool feasible = true;  // false: no duration met the limits, fell back to t_min
};

MyopicResult myopic_duration(std::span<const ChannelParams> chs,
                             std::span<const SensingErrorModel> errs, std::size_t omega,
                             double sensing_time, std::span<const double> i_max,
                             const GridSpec& grid);

struct MyopicSchedule {
  OutcomeDurationTable table;
  std::vector<MyopicResult> outcomes;
};

MyopicSchedule myopic_schedule(std::span<const ChannelParams> chs,
                               std::span<const SensingErrorModel> errs, double sensing_time,
                               std::span<const double> i_max, const GridSpec& grid);

struct OptimalScheduleResult {
  OutcomeDurationTable table{2};
  double objective = 0;  // R
  JointEvaluation evaluation;
};

struct JointSearchOptions {
  GridSpec grid;  // coarse step is ignored; `divisions` points per axis are used
  int divisions = 40;
  unsigned threads = 1;
};

/// Joint search over T_{0,1}, T_{1,0}, T_{1,1} with T_{0,0} = t_min, under
/// perfect sensing. Throws Infeasible when no lattice point meets both limits.
OptimalScheduleResult optimal_two_channel(const ChannelParams& ch1, const ChannelParams& ch2,
                                          double sensing_time, std::span<const double> i_max,
                                          const JointSearchOptions& opts);

/// 40 divisions over [T_s, 20 / min total rate], 3 refinement levels, shrink 0.25.
JointSearchOptions default_joint_search(std::span<const ChannelParams> chs, double sensing_time);

}  // namespace intersense

#endif  // INTERSENSE_OPT_FULL_HPP_
