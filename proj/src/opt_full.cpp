#include "intersense/opt_full.hpp"

#include <cmath>
#include <limits>

#include "intersense/parallel.hpp"

namespace intersense {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

void check_lists(std::span<const ChannelParams> chs, std::span<const SensingErrorModel> errs,
                 std::span<const double> i_max) {
  if (chs.empty() || errs.size() != chs.size() || i_max.size() != chs.size()) {
    throw InvalidArgument("channel, error and limit lists must be non-empty and equal length");
  }
  if (chs.size() > 4) throw InvalidArgument("full-capability schedules support up to 4 channels");
}

}  // namespace

MyopicTerms myopic_objective(std::span<const ChannelParams> chs,
                             std::span<const SensingErrorModel> errs, std::size_t omega,
                             double duration, double sensing_time, std::span<const double> i_max) {
  check_lists(chs, errs, i_max);
  if (omega >= (std::size_t{1} << chs.size())) throw InvalidArgument("outcome out of range");
  if (!(duration > 0)) throw InvalidArgument("duration must be > 0");
  const std::size_t n = chs.size();
  MyopicTerms out;
  out.interference_fraction.assign(n, 0.0);
  const double t = duration;
  for (std::size_t i = 0; i < n; ++i) {
    const bool sensed_free = (omega >> (n - 1 - i)) & 1u;
    const double d1 = delta_free(chs[i], t);
    const double d0 = delta_busy(chs[i], t);
    const double pfa = errs[i].p_fa, pmd = errs[i].p_md;
    if (sensed_free) {
      const double interference = (1 - pfa) * (t - d1) + pmd * (t - d0);
      const double overhead = ((1 - pfa) * d1 + pmd * d0) * sensing_time / t;
      out.objective += (t - interference - overhead) / t;
      out.interference_fraction[i] = interference / t;
      if (interference / t > i_max[i] + kFeasibilitySlack) out.feasible = false;
    } else {
      const double unexplored = (1 - pmd) * d0 + pfa * d1;
      out.objective -= unexplored / t;
    }
  }
  return out;
}

MyopicResult myopic_duration(std::span<const ChannelParams> chs,
                             std::span<const SensingErrorModel> errs, std::size_t omega,
                             double sensing_time, std::span<const double> i_max,
                             const GridSpec& grid) {
  check_lists(chs, errs, i_max);
  grid.validate(sensing_time);

  auto best_on = [&](const std::vector<double>& axis) {
    MyopicResult best{0, -std::numeric_limits<double>::infinity(), false};
    for (double t : axis) {
      const auto terms = myopic_objective(chs, errs, omega, t, sensing_time, i_max);
      if (terms.feasible && terms.objective > best.objective) best = {t, terms.objective, true};
    }
    return best;
  };

  MyopicResult best = best_on(grid.coarse_axis());
  if (!best.feasible) {
    const auto terms = myopic_objective(chs, errs, omega, grid.t_min, sensing_time, i_max);
    return {grid.t_min, terms.objective, false};
  }
  double step = grid.step;
  for (int level = 0; level < grid.refine_levels; ++level) {
    step *= grid.refine_shrink;
    const MyopicResult fine = best_on(grid.refine_axis(best.duration, step));
    if (fine.objective > best.objective) best = fine;
  }
  return best;
}

MyopicSchedule myopic_schedule(std::span<const ChannelParams> chs,
                               std::span<const SensingErrorModel> errs, double sensing_time,
                               std::span<const double> i_max, const GridSpec& grid) {
  check_lists(chs, errs, i_max);
  MyopicSchedule out{OutcomeDurationTable(chs.size()), {}};
  for (std::size_t omega = 0; omega < out.table.size(); ++omega) {
    out.outcomes.push_back(myopic_duration(chs, errs, omega, sensing_time, i_max, grid));
    out.table[omega] = out.outcomes.back().duration;
  }
  return out;
}

namespace {

struct JointPoint {
  double t01, t10, t11;
  double value = -std::numeric_limits<double>::infinity();
};

}  // namespace

OptimalScheduleResult optimal_two_channel(const ChannelParams& ch1, const ChannelParams& ch2,
                                          double sensing_time, std::span<const double> i_max,
                                          const JointSearchOptions& opts) {
  if (i_max.size() != 2) throw InvalidArgument("two interference limits required");
  if (opts.divisions < 1) throw InvalidArgument("joint search needs divisions >= 1");
  const GridSpec& grid = opts.grid;
  grid.validate(sensing_time);
  const ChannelParams chs[] = {ch1, ch2};
  const double t00 = grid.t_min;

  auto table_for = [&](const JointPoint& p) {
    OutcomeDurationTable table(2);
    table.at({0, 0}) = t00;
    table.at({0, 1}) = p.t01;
    table.at({1, 0}) = p.t10;
    table.at({1, 1}) = p.t11;
    return table;
  };

  auto search = [&](const std::vector<double>& a01, const std::vector<double>& a10,
                    const std::vector<double>& a11) {
    std::vector<JointPoint> pts;
    pts.reserve(a01.size() * a10.size() * a11.size());
    for (double x : a01)
      for (double y : a10)
        for (double z : a11) pts.push_back({x, y, z});
    parallel_for(pts.size(), opts.threads, [&](std::size_t k) {
      const auto eval = evaluate_joint(chs, table_for(pts[k]), sensing_time);
      if (eval.channels[0].interference_fraction > i_max[0] + kFeasibilitySlack) return;
      if (eval.channels[1].interference_fraction > i_max[1] + kFeasibilitySlack) return;
      pts[k].value = eval.throughput;
    });
    JointPoint best{0, 0, 0};
    for (const auto& p : pts) {
      if (p.value > best.value) best = p;
    }
    return best;
  };

  const double coarse_step = (grid.t_max - grid.t_min) / opts.divisions;
  std::vector<double> axis;
  for (int k = 0; k <= opts.divisions; ++k) axis.push_back(grid.t_min + k * coarse_step);
  JointPoint best = search(axis, axis, axis);
  if (!std::isfinite(best.value)) {
    throw Infeasible("no two-channel schedule satisfies both interference limits");
  }
  double step = coarse_step;
  for (int level = 0; level < grid.refine_levels; ++level) {
    step *= grid.refine_shrink;
    const JointPoint fine = search(grid.refine_axis(best.t01, step),
                                   grid.refine_axis(best.t10, step),
                                   grid.refine_axis(best.t11, step));
    if (fine.value > best.value) best = fine;
  }

  OptimalScheduleResult out;
  out.table = table_for(best);
  out.evaluation = evaluate_joint(chs, out.table, sensing_time);
  out.objective = out.evaluation.throughput;
  return out;
}

JointSearchOptions default_joint_search(std::span<const ChannelParams> chs, double sensing_time) {
  JointSearchOptions opts;
  opts.divisions = 40;
  opts.grid = default_grid(chs, sensing_time, opts.divisions, 3, 0.25);
  return opts;
}

}  // namespace intersense
