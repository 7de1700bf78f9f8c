#include "intersense/opt_limited_sensing.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "intersense/parallel.hpp"

namespace intersense {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

struct Scored {
  double value = -std::numeric_limits<double>::infinity();
  DualPeriodPolicy pol{};
  ChannelCycle cycle{};
};

// Channels interact only through the two network sums (discovered time and
// overhead), so each coordinate step is a search over one channel's policy
// with the other channels' contributions held fixed.
class CoordinateSearch {
 public:
  CoordinateSearch(std::span<const ChannelParams> chs, std::span<const SensingErrorModel> errs,
                   double sensing_time, std::span<const double> i_max,
                   const OptimizerOptions& opts, bool single)
      : chs_(chs), errs_(errs), ts_(sensing_time), i_max_(i_max), opts_(opts), single_(single) {}

  // Starts from the best own-channel policies, or from `seed` when given.
  OptimizationResult run(std::span<const DualPeriodPolicy> seed = {}) {
    const auto axis = opts_.grid.coarse_axis();
    const std::size_t n = chs_.size();
    pols_.resize(n);
    cycles_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!seed.empty()) {
        pols_[i] = seed[i];
        cycles_[i] = evaluate_channel(chs_[i], errs_[i], seed[i]);
        continue;
      }
      Scored s = search(i, axis, axis, /*own_only=*/true);
      if (!std::isfinite(s.value)) {
        throw Infeasible("no grid point satisfies the interference limit of channel " +
                         std::to_string(i + 1));
      }
      pols_[i] = s.pol;
      cycles_[i] = s.cycle;
    }

    OptimizationResult out;
    double r = total();
    for (int round = 1; round <= opts_.max_rounds; ++round) {
      for (std::size_t i = 0; i < n; ++i) improve(i, axis);
      const double r_new = total();
      out.rounds = round;
      const bool small = r_new - r <= opts_.rel_tol * std::abs(r);
      r = r_new;
      if (small) {
        out.converged = true;
        break;
      }
    }

    const auto eval = evaluate_network(chs_, errs_, pols_, ts_, opts_.overhead);
    out.policies = pols_;
    out.objective = eval.throughput;
    out.per_channel = eval.channels;
    for (std::size_t i = 0; i < n; ++i) {
      out.constraint_active.push_back(eval.channels[i].interference_fraction >=
                                      i_max_[i] * (1.0 - 1e-3));
    }
    return out;
  }

 private:
  double own_overhead(const ChannelCycle& c, const DualPeriodPolicy& p) const {
    return opts_.overhead == OverheadModel::kSensingRate ? ts_ / c.mean_cycle : ts_ / p.t_free;
  }

  // Network objective D * (1 - OV). Left unclamped when OV >= 1 so that the
  // ascent can still move out of an overloaded starting point.
  double total() const {
    double d = 0, ov = 0;
    for (std::size_t j = 0; j < chs_.size(); ++j) {
      d += cycles_[j].discovered;
      ov += own_overhead(cycles_[j], pols_[j]);
    }
    return d * (1.0 - ov);
  }

  Scored search(std::size_t i, const std::vector<double>& axis_free,
                const std::vector<double>& axis_busy, bool own_only) const {
    std::vector<DualPeriodPolicy> cand;
    if (single_) {
      for (double t : axis_free) cand.push_back({t, t});
    } else {
      cand.reserve(axis_free.size() * axis_busy.size());
      for (double f : axis_free)
        for (double b : axis_busy) cand.push_back({f, b});
    }

    double other_d = 0, other_ov = 0;
    if (!own_only) {
      for (std::size_t j = 0; j < chs_.size(); ++j) {
        if (j == i) continue;
        other_d += cycles_[j].discovered;
        other_ov += own_overhead(cycles_[j], pols_[j]);
      }
    }

    std::vector<Scored> scored(cand.size());
    parallel_for(cand.size(), opts_.threads, [&](std::size_t k) {
      Scored& s = scored[k];
      s.pol = cand[k];
      s.cycle = evaluate_channel(chs_[i], errs_[i], cand[k]);
      if (s.cycle.interference > i_max_[i] + kFeasibilitySlack) return;
      s.value = (other_d + s.cycle.discovered) * (1.0 - other_ov - own_overhead(s.cycle, s.pol));
    });

    // Candidates are ordered by (t_free, t_busy); the first maximum wins.
    Scored best;
    for (const auto& s : scored) {
      if (s.value > best.value) best = s;
    }
    return best;
  }

  void improve(std::size_t i, const std::vector<double>& axis) {
    Scored best = search(i, axis, axis, false);
    double step = opts_.grid.step;
    for (int level = 0; level < opts_.grid.refine_levels && std::isfinite(best.value); ++level) {
      step *= opts_.grid.refine_shrink;
      const auto af = opts_.grid.refine_axis(best.pol.t_free, step);
      const auto ab = opts_.grid.refine_axis(best.pol.t_busy, step);
      Scored fine = search(i, af, ab, false);
      if (fine.value > best.value) best = fine;
    }
    const double current = total();
    if (best.value > current) {
      pols_[i] = best.pol;
      cycles_[i] = best.cycle;
    }
  }

  std::span<const ChannelParams> chs_;
  std::span<const SensingErrorModel> errs_;
  double ts_;
  std::span<const double> i_max_;
  const OptimizerOptions& opts_;
  bool single_;
  std::vector<DualPeriodPolicy> pols_;
  std::vector<ChannelCycle> cycles_;
};

void validate_inputs(std::span<const ChannelParams> chs, std::span<const SensingErrorModel> errs,
                     double sensing_time, std::span<const double> i_max,
                     const OptimizerOptions& opts) {
  if (chs.empty() || errs.size() != chs.size() || i_max.size() != chs.size()) {
    throw InvalidArgument("channel, error and limit lists must be non-empty and equal length");
  }
  if (!(sensing_time >= 0)) throw InvalidArgument("sensing time must be >= 0");
  opts.grid.validate(sensing_time);
  for (std::size_t i = 0; i < chs.size(); ++i) {
    if (!(i_max[i] > 0) || i_max[i] > utilization(chs[i]) * (1 + 1e-12)) {
      throw InvalidArgument("interference limit of channel " + std::to_string(i + 1) +
                            " must lie in (0, u]");
    }
  }
  if (chs.size() * sensing_time / opts.grid.t_max >= 1.0) {
    throw Infeasible("sensing overhead exceeds the available time even at t_max");
  }
}

OptimizationResult optimize(std::span<const ChannelParams> chs,
                            std::span<const SensingErrorModel> errs, double sensing_time,
                            std::span<const double> i_max, const OptimizerOptions& opts,
                            bool single) {
  validate_inputs(chs, errs, sensing_time, i_max, opts);
  auto result = CoordinateSearch(chs, errs, sensing_time, i_max, opts, single).run();
  if (!single) {
    // Coordinate ascent can stall in a local optimum below the single-period
    // one, whose policies are also dual-period policies. Restart from there.
    // The single-period grid may have no feasible point even when this one does.
    std::optional<OptimizationResult> base;
    try {
      base = CoordinateSearch(chs, errs, sensing_time, i_max, opts, true).run();
    } catch (const Infeasible&) {
    }
    if (base && base->objective > result.objective) {
      result = CoordinateSearch(chs, errs, sensing_time, i_max, opts, false).run(base->policies);
    }
  }
  if (!(result.objective > 0)) {
    throw Infeasible("no configuration with positive throughput was found");
  }
  return result;
}

}  // namespace

OptimizationResult optimize_dual_period(std::span<const ChannelParams> chs,
                                        std::span<const SensingErrorModel> errs,
                                        double sensing_time, std::span<const double> i_max,
                                        const OptimizerOptions& opts) {
  return optimize(chs, errs, sensing_time, i_max, opts, false);
}

OptimizationResult optimize_single_period(std::span<const ChannelParams> chs,
                                          std::span<const SensingErrorModel> errs,
                                          double sensing_time, std::span<const double> i_max,
                                          const OptimizerOptions& opts) {
  return optimize(chs, errs, sensing_time, i_max, opts, true);
}

std::vector<double> interference_limits(std::span<const ChannelParams> chs, double fraction) {
  std::vector<double> out;
  out.reserve(chs.size());
  for (const auto& ch : chs) out.push_back(fraction * utilization(ch));
  return out;
}

}  // namespace intersense
