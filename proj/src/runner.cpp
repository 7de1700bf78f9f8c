#include "intersense/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intersense/errors.hpp"
#include "intersense/opt_full.hpp"
#include "intersense/opt_limited_sensing.hpp"
#include "intersense/sensing.hpp"

namespace intersense {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool all_perfect(const std::vector<SensingErrorModel>& errs) {
  return std::all_of(errs.begin(), errs.end(), [](const auto& e) { return e.perfect(); });
}

}  // namespace

GridSpec resolve_grid(const Scenario& sc, Scheme scheme, double sensing_time,
                      const RunOptions& opts) {
  const GridConfig& gc = sc.grid;
  const bool joint = scheme == Scheme::kFullOptimal;
  const int divisions = gc.divisions.value_or(joint ? 40 : 400);
  GridSpec g = default_grid(sc.channels, sensing_time, divisions, gc.refine_levels.value_or(3),
                            gc.refine_shrink.value_or(joint ? 0.25 : 0.2));
  if (gc.t_min) g.t_min = *gc.t_min;
  if (gc.t_max) g.t_max = *gc.t_max;
  g.step = (g.t_max - g.t_min) / divisions;
  if (gc.step) g.step = *gc.step;
  if (opts.grid_step) g.step = *opts.grid_step;
  try {
    g.validate(sensing_time);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("field /grid: ") + e.what());
  }
  return g;
}

SimConfig resolve_sim_config(const Scenario& sc, const RunOptions& opts) {
  const SimulationConfig base = sc.simulation.value_or(SimulationConfig{});
  SimConfig cfg;
  double slowest = 0.0;
  for (const auto& ch : sc.channels) slowest = std::max(slowest, ch.mean_free() + ch.mean_busy());
  cfg.warmup = base.warmup.value_or(default_warmup(sc.channels));
  cfg.horizon = opts.horizon.value_or(base.horizon.value_or(cfg.warmup + 2000.0 * slowest));
  if (!(cfg.horizon > cfg.warmup)) {
    throw ConfigError("simulation horizon " + std::to_string(cfg.horizon) +
                      " does not exceed the warmup " + std::to_string(cfg.warmup));
  }
  cfg.runs = opts.runs.value_or(base.runs);
  if (cfg.runs < 1) throw ConfigError("simulation runs must be >= 1");
  cfg.seed = opts.seed.value_or(base.seed);
  cfg.threads = opts.threads;
  return cfg;
}

SchemeResult run_scheme(const Scenario& sc, Scheme scheme, const RunOptions& opts) {
  sc.check_scheme(scheme);
  SchemeResult out;
  out.scheme = scheme;
  out.sensing_time = sc.resolved_sensing_time();
  out.i_max = sc.interference_limits();
  const double ts = out.sensing_time;
  const auto& chs = sc.channels;
  const auto& errs = sc.errors;
  if (auto w = sensing_time_warning(chs, ts)) out.warnings.push_back(*w);
  if (opts.simulate) out.sim_config = resolve_sim_config(sc, opts);

  switch (scheme) {
    case Scheme::kLimitedSensing:
    case Scheme::kSingleBaseline: {
      OptimizerOptions o;
      o.grid = resolve_grid(sc, scheme, ts, opts);
      o.threads = opts.threads;
      const auto res = scheme == Scheme::kLimitedSensing
                           ? optimize_dual_period(chs, errs, ts, out.i_max, o)
                           : optimize_single_period(chs, errs, ts, out.i_max, o);
      out.policies = res.policies;
      out.constraint_active = res.constraint_active;
      out.analytic = res.per_channel;
      out.analytic_throughput = res.objective;
      if (!res.converged) out.warnings.push_back("coordinate search hit the round limit");
      if (out.sim_config) {
        out.simulation = simulate_dual_period(chs, errs, out.policies, ts, *out.sim_config);
      }
      break;
    }
    case Scheme::kFullMyopic: {
      const GridSpec g = resolve_grid(sc, scheme, ts, opts);
      const auto sched = myopic_schedule(chs, errs, ts, out.i_max, g);
      out.table = sched.table;
      for (const auto& r : sched.outcomes) {
        out.outcome_feasible.push_back(r.feasible);
        if (!r.feasible) {
          out.warnings.push_back("no duration meets the limits after outcome " +
                                 sched.table.label(out.outcome_feasible.size() - 1) +
                                 "; using the shortest duration");
        }
      }
      if (all_perfect(errs)) {
        const auto ev = evaluate_joint(chs, *out.table, ts);
        out.analytic = ev.channels;
        out.analytic_throughput = ev.throughput;
      } else {
        out.analytic_throughput = kNaN;
        out.warnings.push_back("no analytic long-run evaluation of full schedules with sensing errors");
      }
      if (out.sim_config) out.simulation = simulate_full(chs, errs, *out.table, ts, *out.sim_config);
      break;
    }
    case Scheme::kFullOptimal: {
      JointSearchOptions o;
      o.grid = resolve_grid(sc, scheme, ts, opts);
      o.divisions = std::max(1, static_cast<int>(std::lround((o.grid.t_max - o.grid.t_min) /
                                                             o.grid.step)));
      o.threads = opts.threads;
      const auto res = optimal_two_channel(chs[0], chs[1], ts, out.i_max, o);
      out.table = res.table;
      out.analytic = res.evaluation.channels;
      out.analytic_throughput = res.objective;
      if (out.sim_config) out.simulation = simulate_full(chs, errs, *out.table, ts, *out.sim_config);
      break;
    }
    case Scheme::kLimitedAccess: {
      out.access = plan_limited_access(chs, out.i_max, sc.access_cap);
      for (std::size_t i = 0; i < chs.size(); ++i) {
        out.analytic_access_interference.push_back(
            access_interference(chs[i], out.access->access_durations[i]));
        if (out.access->capped[i]) {
          out.warnings.push_back("channel " + std::to_string(i) + " access capped at " +
                                 std::to_string(out.access->access_durations[i]));
        }
      }
      out.analytic_throughput = kNaN;
      if (out.sim_config) {
        out.simulation =
            simulate_limited_access(chs, out.access->access_durations, ts, *out.sim_config);
      }
      break;
    }
  }
  return out;
}

}  // namespace intersense
