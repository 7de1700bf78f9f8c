#include "intersense/opt_limited_access.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "intersense/errors.hpp"

namespace intersense {

double access_interference(const ChannelParams& ch, const SensingErrorModel& err, double t_free) {
  if (!(t_free > 0)) throw InvalidArgument("access duration must be > 0");
  const double t = t_free;
  return (1 - err.p_fa) * (t - delta_free(ch, t)) / t + err.p_md * (t - delta_busy(ch, t)) / t;
}

double access_interference(const ChannelParams& ch, double t_free) {
  if (!(t_free > 0)) throw InvalidArgument("access duration must be > 0");
  const double s = ch.total_rate();
  // 1 + (e^{-x} - 1)/x, written with expm1 to keep precision for small x.
  return utilization(ch) * (1.0 + detail::expm1_neg_over_x(s * t_free));
}

double access_duration_for_constraint(const ChannelParams& ch, double i_max) {
  if (!(i_max > 0) || !std::isfinite(i_max)) {
    throw InvalidArgument("interference limit must be > 0");
  }
  const double u = utilization(ch);
  if (i_max >= u) {
    throw Unbounded("interference limit is not below the busy fraction; access is unbounded");
  }
  double lo = 0.0;
  double hi = 1.0 / ch.total_rate();
  while (access_interference(ch, hi) < i_max) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Unbounded("access duration search diverged");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = access_interference(ch, mid);
    if (std::abs(f - i_max) <= 1e-12 * i_max) return mid;
    (f < i_max ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double channel_rank(const ChannelParams& ch, const ChannelBelief& belief, double now,
                    double sensing_time) {
  if (!(sensing_time > 0)) throw InvalidArgument("sensing time must be > 0");
  if (std::isinf(belief.last_sense_time) && belief.last_sense_time < 0) {
    return (1.0 - utilization(ch)) / sensing_time;
  }
  const double elapsed = now - belief.last_sense_time;
  if (elapsed < 0) throw InvalidArgument("belief is newer than the current time");
  const double p = belief.last_sensed_free ? prob_free_given_free(ch, elapsed)
                                           : prob_free_given_busy(ch, elapsed);
  return p / sensing_time;
}

std::vector<std::size_t> next_channel_order(std::span<const ChannelBelief> beliefs,
                                            std::span<const ChannelParams> chs, double now,
                                            double sensing_time) {
  if (beliefs.size() != chs.size()) throw InvalidArgument("belief and channel lists differ in length");
  std::vector<double> rank(chs.size());
  for (std::size_t i = 0; i < chs.size(); ++i) {
    rank[i] = channel_rank(chs[i], beliefs[i], now, sensing_time);
  }
  std::vector<std::size_t> order(chs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rank[a] > rank[b]; });
  return order;
}

LimitedAccessPlan plan_limited_access(std::span<const ChannelParams> chs,
                                      std::span<const double> i_max, std::optional<double> cap) {
  if (chs.empty() || i_max.size() != chs.size()) {
    throw InvalidArgument("channel and limit lists must be non-empty and equal length");
  }
  if (cap && !(*cap > 0 && std::isfinite(*cap))) throw InvalidArgument("access cap must be > 0");
  LimitedAccessPlan plan;
  for (std::size_t i = 0; i < chs.size(); ++i) {
    if (cap && i_max[i] >= utilization(chs[i])) {
      plan.access_durations.push_back(*cap);
      plan.capped.push_back(true);
      continue;
    }
    double d = access_duration_for_constraint(chs[i], i_max[i]);
    const bool capped = cap && d > *cap;
    plan.access_durations.push_back(capped ? *cap : d);
    plan.capped.push_back(capped);
  }
  return plan;
}

PerformanceReport run_limited_access_policy(std::span<const ChannelParams> chs,
                                            std::span<const double> i_max, double sensing_time,
                                            const SimConfig& cfg, std::optional<double> cap) {
  const auto plan = plan_limited_access(chs, i_max, cap);
  return simulate_limited_access(chs, plan.access_durations, sensing_time, cfg);
}

}  // namespace intersense
