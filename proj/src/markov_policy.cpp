#include "intersense/markov_policy.hpp"

#include <string>

namespace intersense {

namespace {

void check_policy(const DualPeriodPolicy& pol, double sensing_time) {
  if (!(pol.t_free > 0) || !(pol.t_busy > 0)) {
    throw InvalidArgument("inter-sensing times must be > 0");
  }
  if (pol.t_free < sensing_time || pol.t_busy < sensing_time) {
    throw InvalidArgument("inter-sensing times must not be shorter than the sensing time");
  }
}

}  // namespace

ChannelMetrics channel_metrics(const ChannelCycle& cycle, double overhead_sum) {
  if (!(overhead_sum >= 0.0)) throw InvalidArgument("overhead sum must be >= 0");
  if (overhead_sum >= 1.0) {
    throw Infeasible("sensing overhead consumes all transmission time");
  }
  ChannelMetrics m;
  m.mean_cycle = cycle.mean_cycle;
  m.throughput = cycle.discovered * (1.0 - overhead_sum);
  m.overhead_fraction = cycle.discovered * overhead_sum;
  m.aligned_overhead_fraction = m.overhead_fraction;
  m.interference_fraction = cycle.interference;
  m.unexplored_fraction = cycle.unexplored;
  return m;
}

ChannelMetrics channel_metrics(const ChannelParams& ch, const SensingErrorModel& err,
                               const DualPeriodPolicy& pol, double overhead_sum) {
  return channel_metrics(evaluate_channel(ch, err, pol), overhead_sum);
}

double overhead_sum(std::span<const ChannelCycle> cycles, std::span<const DualPeriodPolicy> pols,
                    double sensing_time, OverheadModel model) {
  double sum = 0.0;
  if (model == OverheadModel::kSensingRate) {
    for (const auto& c : cycles) sum += sensing_time / c.mean_cycle;
  } else {
    for (const auto& p : pols) sum += sensing_time / p.t_free;
  }
  return sum;
}

NetworkEvaluation evaluate_network(std::span<const ChannelParams> chs,
                                   std::span<const SensingErrorModel> errs,
                                   std::span<const DualPeriodPolicy> pols, double sensing_time,
                                   OverheadModel model) {
  if (chs.empty() || chs.size() != errs.size() || chs.size() != pols.size()) {
    throw InvalidArgument("channel, error and policy lists must be non-empty and equal length");
  }
  if (!(sensing_time >= 0)) throw InvalidArgument("sensing time must be >= 0");
  std::vector<ChannelCycle> cycles;
  cycles.reserve(chs.size());
  for (std::size_t i = 0; i < chs.size(); ++i) {
    check_policy(pols[i], sensing_time);
    cycles.push_back(evaluate_channel(chs[i], errs[i], pols[i]));
  }
  NetworkEvaluation out;
  out.overhead_sum = overhead_sum(cycles, pols, sensing_time, model);
  const double pause_rate = overhead_sum(cycles, pols, sensing_time, OverheadModel::kSensingRate);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    out.channels.push_back(channel_metrics(c, out.overhead_sum));
    out.channels.back().aligned_overhead_fraction =
        own_pause_overhead(chs[i], c, sensing_time) +
        c.discovered * (pause_rate - sensing_time / c.mean_cycle);
    out.throughput += out.channels.back().throughput;
  }
  return out;
}

double network_throughput(std::span<const ChannelParams> chs,
                          std::span<const SensingErrorModel> errs,
                          std::span<const DualPeriodPolicy> pols, double sensing_time,
                          OverheadModel model) {
  return evaluate_network(chs, errs, pols, sensing_time, model).throughput;
}

Eigen::MatrixXd joint_transition_matrix(std::span<const ChannelParams> chs,
                                        const OutcomeDurationTable& durations) {
  if (chs.size() != durations.channels()) {
    throw InvalidArgument("outcome table does not match the channel count");
  }
  const auto n = static_cast<Eigen::Index>(durations.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const double t = durations[row];
    if (!(t > 0)) {
      throw InvalidArgument("missing or non-positive duration for outcome " +
                            durations.label(row));
    }
    std::vector<double> p_free(chs.size());
    for (std::size_t i = 0; i < chs.size(); ++i) {
      p_free[i] = prob_free_given(chs[i], durations.sensed(row, i), t);
    }
    for (Eigen::Index col = 0; col < n; ++col) {
      double p = 1.0;
      for (std::size_t i = 0; i < chs.size(); ++i) {
        p *= durations.sensed(col, i) ? p_free[i] : 1.0 - p_free[i];
      }
      m(row, col) = p;
    }
  }
  return m;
}

Matrix4<double> joint_transition_matrix_2ch(const ChannelParams& ch1, const ChannelParams& ch2,
                                            const OutcomeDurationTable& durations) {
  const ChannelParams chs[] = {ch1, ch2};
  return joint_transition_matrix(chs, durations);
}

JointEvaluation evaluate_joint(std::span<const ChannelParams> chs,
                               const OutcomeDurationTable& durations, double sensing_time) {
  if (!(sensing_time >= 0)) throw InvalidArgument("sensing time must be >= 0");
  for (std::size_t k = 0; k < durations.size(); ++k) {
    if (durations[k] < sensing_time) {
      throw InvalidArgument("duration for outcome " + durations.label(k) +
                            " is shorter than the sensing time");
    }
  }
  JointEvaluation out;
  out.pi = steady_state(joint_transition_matrix(chs, durations));
  for (std::size_t k = 0; k < durations.size(); ++k) out.mean_cycle += out.pi(k) * durations[k];

  out.channels.resize(chs.size());
  for (std::size_t i = 0; i < chs.size(); ++i) {
    auto& m = out.channels[i];
    m.mean_cycle = out.mean_cycle;
    for (std::size_t k = 0; k < durations.size(); ++k) {
      const double t = durations[k];
      const double w = out.pi(k) / out.mean_cycle;
      if (durations.sensed(k, i)) {
        const double d1 = delta_free(chs[i], t);
        m.throughput += w * d1 * (1.0 - sensing_time / t);
        m.overhead_fraction += w * d1 * sensing_time / t;
        m.aligned_overhead_fraction += w * delta_free(chs[i], sensing_time);
        m.interference_fraction += w * (t - d1);
      } else {
        m.unexplored_fraction += w * delta_busy(chs[i], t);
      }
    }
    out.throughput += m.throughput;
  }
  return out;
}

TwoChannelReport two_channel_throughput(const ChannelParams& ch1, const ChannelParams& ch2,
                                        const OutcomeDurationTable& durations,
                                        double sensing_time) {
  if (durations.channels() != 2) throw InvalidArgument("two-channel table required");
  const ChannelParams chs[] = {ch1, ch2};
  const auto eval = evaluate_joint(chs, durations, sensing_time);
  TwoChannelReport r;
  r.throughput = eval.throughput;
  r.mean_cycle = eval.mean_cycle;
  r.interference[0] = eval.channels[0].interference_fraction;
  r.interference[1] = eval.channels[1].interference_fraction;
  return r;
}

}  // namespace intersense
