// Single-channel access: how long to hold a channel found free so that the
// interference limit is met exactly, and in which order to search channels.

#ifndef INTERSENSE_OPT_LIMITED_ACCESS_HPP_
#define INTERSENSE_OPT_LIMITED_ACCESS_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "intersense/renewal.hpp"
#include "intersense/sensing.hpp"
#include "intersense/simulator.hpp"

namespace intersense {

/// Busy share of an access of length t_free started right after sensing
/// free, with sensing errors.
double access_interference(const ChannelParams& ch, const SensingErrorModel& err, double t_free);

/// Error-free special case: u * (1 + (e^{-s t} - 1) / (s t)), s = total rate.
/// Increases from 0 (t -> 0) to u (t -> inf).
double access_interference(const ChannelParams& ch, double t_free);

/// Access duration whose interference equals i_max, by bisection.
/// Throws Unbounded if i_max >= u and InvalidArgument if i_max <= 0.
double access_duration_for_constraint(const ChannelParams& ch, double i_max);

struct ChannelBelief {
  bool last_sensed_free = false;
  /// -infinity means never sensed; the rank then uses the stationary law.
  double last_sense_time = -std::numeric_limits<double>::infinity();
};

/// Probability of finding the channel free now, per unit sensing time.
double channel_rank(const ChannelParams& ch, const ChannelBelief& belief, double now,
                    double sensing_time);

/// Channel indices by descending rank; equal ranks keep index order.
std::vector<std::size_t> next_channel_order(std::span<const ChannelBelief> beliefs,
                                            std::span<const ChannelParams> chs, double now,
                                            double sensing_time);

struct LimitedAccessPlan {
  std::vector<double> access_durations;
  std::vector<bool> capped;  // limit not reachable, cap used instead
};

/// Access durations for every channel. Channels with i_max >= u use `cap`
/// when given and otherwise raise Unbounded.
LimitedAccessPlan plan_limited_access(std::span<const ChannelParams> chs,
                                      std::span<const double> i_max,
                                      std::optional<double> cap = std::nullopt);

/// Plans the access durations and runs the search/access loop in simulation.
PerformanceReport run_limited_access_policy(std::span<const ChannelParams> chs,
                                            std::span<const double> i_max, double sensing_time,
                                            const SimConfig& cfg,
                                            std::optional<double> cap = std::nullopt);

}  // namespace intersense

#endif  // INTERSENSE_OPT_LIMITED_ACCESS_HPP_
