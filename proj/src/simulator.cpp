#include "intersense/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "intersense/opt_limited_access.hpp"
#include "intersense/parallel.hpp"
#include "intersense/rng.hpp"

namespace intersense {

bool RenewalTrace::free_at(double t) const {
  const auto flips = std::upper_bound(transition_times.begin(), transition_times.end(), t) -
                     transition_times.begin();
  return (flips % 2 == 0) ? initial_free : !initial_free;
}

double RenewalTrace::free_time(double a, double b) const {
  if (!(b > a)) return 0.0;
  auto it = std::upper_bound(transition_times.begin(), transition_times.end(), a);
  bool free = free_at(a);
  double t = a, total = 0.0;
  for (; it != transition_times.end() && *it < b; ++it) {
    if (free) total += *it - t;
    t = *it;
    free = !free;
  }
  if (free) total += b - t;
  return total;
}

RenewalTrace generate_trace(const ChannelParams& ch, double horizon, std::uint64_t seed,
                            std::size_t channel_index) {
  if (!(horizon > 0)) throw InvalidArgument("trace horizon must be > 0");
  Rng rng(seed);
  RenewalTrace trace;
  trace.channel_index = channel_index;
  trace.horizon = horizon;
  trace.initial_free = rng.bernoulli(1.0 - utilization(ch));
  bool free = trace.initial_free;
  double t = 0.0;
  while (true) {
    t += rng.exponential(free ? ch.lambda_free : ch.lambda_busy);
    if (t >= horizon) break;
    // Two draws that round to the same instant collapse into a zero-length
    // period; drop both flips to keep the times strictly increasing.
    if (!trace.transition_times.empty() && t <= trace.transition_times.back()) {
      trace.transition_times.pop_back();
    } else {
      trace.transition_times.push_back(t);
    }
    free = !free;
  }
  return trace;
}

void SimConfig::validate() const {
  if (!(horizon > 0) || !(warmup >= 0) || !(horizon > warmup)) {
    throw InvalidArgument("simulation needs horizon > warmup >= 0");
  }
  if (runs < 1) throw InvalidArgument("simulation needs runs >= 1");
}

double default_warmup(std::span<const ChannelParams> chs) {
  double slowest = 0.0;
  for (const auto& ch : chs) slowest = std::max(slowest, ch.mean_free() + ch.mean_busy());
  return 20.0 * slowest;
}

OccupancyTotals accumulate_occupancy(const RenewalTrace& trace,
                                     std::span<const AccessWindow> windows,
                                     std::span<const Interval> pauses, double from, double to) {
  OccupancyTotals out;
  if (!(to > from)) return out;
  const auto& flips = trace.transition_times;

  std::size_t w = 0;
  while (w < windows.size() && windows[w].end <= from) ++w;
  std::size_t p = static_cast<std::size_t>(
      std::lower_bound(pauses.begin(), pauses.end(), from,
                       [](const Interval& iv, double x) { return iv.end <= x; }) -
      pauses.begin());
  std::size_t k = static_cast<std::size_t>(
      std::upper_bound(flips.begin(), flips.end(), from) - flips.begin());
  bool free = trace.free_at(from);

  double t = from;
  while (t < to) {
    double next = to;
    bool access = false;
    if (w < windows.size() && windows[w].start <= t) {
      access = windows[w].access;
      next = std::min(next, windows[w].end);
    } else if (w < windows.size()) {
      next = std::min(next, windows[w].start);
    }
    bool paused = false;
    if (p < pauses.size()) {
      if (pauses[p].start <= t) {
        paused = true;
        next = std::min(next, pauses[p].end);
      } else {
        next = std::min(next, pauses[p].start);
      }
    }
    if (k < flips.size()) next = std::min(next, flips[k]);

    const double dt = next - t;
    if (access) {
      if (!free) {
        out.interference += dt;
      } else if (paused) {
        out.overhead += dt;
      } else {
        out.throughput += dt;
      }
    } else {
      (free ? out.unexplored : out.idle) += dt;
    }

    t = next;
    while (w < windows.size() && windows[w].end <= t) ++w;
    while (p < pauses.size() && pauses[p].end <= t) ++p;
    while (k < flips.size() && flips[k] <= t) {
      free = !free;
      ++k;
    }
  }
  return out;
}

namespace {

struct RunChannel {
  OccupancyTotals totals;
};

struct RunResult {
  std::vector<OccupancyTotals> channels;
  double search_delay = std::numeric_limits<double>::quiet_NaN();
};

MetricEstimate estimate(const std::vector<double>& xs) {
  MetricEstimate m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / xs.size();
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.std_error = std::sqrt(ss / (xs.size() - 1) / xs.size());
  }
  return m;
}

PerformanceReport summarize(const std::vector<RunResult>& runs, const SimConfig& cfg) {
  const double span = cfg.horizon - cfg.warmup;
  const std::size_t n = runs.front().channels.size();
  PerformanceReport rep;
  rep.runs = static_cast<int>(runs.size());
  std::vector<double> agg(runs.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> thr, itf, unx, ovh, idl, fre, acc;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& o = runs[r].channels[i];
      thr.push_back(o.throughput / span);
      itf.push_back(o.interference / span);
      unx.push_back(o.unexplored / span);
      ovh.push_back(o.overhead / span);
      idl.push_back(o.idle / span);
      fre.push_back((o.throughput + o.overhead + o.unexplored) / span);
      acc.push_back(o.access_time() > 0 ? o.interference / o.access_time() : 0.0);
      agg[r] += o.throughput / span;
    }
    rep.channels.push_back({estimate(thr), estimate(itf), estimate(unx), estimate(ovh),
                            estimate(idl), estimate(fre), estimate(acc)});
  }
  rep.throughput = estimate(agg);
  if (!std::isnan(runs.front().search_delay)) {
    std::vector<double> delays;
    for (const auto& r : runs) delays.push_back(r.search_delay);
    rep.search_delay = estimate(delays);
  }
  return rep;
}

std::vector<RenewalTrace> make_traces(std::span<const ChannelParams> chs, const SimConfig& cfg,
                                      int run) {
  std::vector<RenewalTrace> traces;
  traces.reserve(chs.size());
  for (std::size_t i = 0; i < chs.size(); ++i) {
    traces.push_back(generate_trace(chs[i], cfg.horizon,
                                    stream_seed(cfg.seed, run, i, StreamPurpose::kTrace), i));
  }
  return traces;
}

std::vector<Rng> make_sensing_rngs(std::size_t n, const SimConfig& cfg, int run) {
  std::vector<Rng> rngs;
  for (std::size_t i = 0; i < n; ++i) {
    rngs.emplace_back(stream_seed(cfg.seed, run, i, StreamPurpose::kSensing));
  }
  return rngs;
}

bool sense(bool actually_free, const SensingErrorModel& err, Rng& rng) {
  // Draw on every call so the stream position does not depend on the outcome.
  const double x = rng.uniform();
  return actually_free ? !(x < err.p_fa) : (x < err.p_md);
}

template <typename RunFn>
PerformanceReport run_all(const SimConfig& cfg, RunFn&& fn) {
  cfg.validate();
  std::vector<RunResult> results(cfg.runs);
  parallel_for(results.size(), cfg.threads,
               [&](std::size_t r) { results[r] = fn(static_cast<int>(r)); });
  return summarize(results, cfg);
}

}  // namespace

PerformanceReport simulate_dual_period(std::span<const ChannelParams> chs,
                                       std::span<const SensingErrorModel> errs,
                                       std::span<const DualPeriodPolicy> pols,
                                       double sensing_time, const SimConfig& cfg) {
  const std::size_t n = chs.size();
  if (n == 0 || errs.size() != n || pols.size() != n) {
    throw InvalidArgument("channel, error and policy lists must be non-empty and equal length");
  }
  if (!(sensing_time >= 0)) throw InvalidArgument("sensing time must be >= 0");
  for (const auto& p : pols) {
    if (!(p.t_free > 0) || !(p.t_busy > 0) || p.t_free < sensing_time ||
        p.t_busy < sensing_time) {
      throw InvalidArgument("inter-sensing times must be positive and at least T_s");
    }
  }

  return run_all(cfg, [&](int run) {
    const auto traces = make_traces(chs, cfg, run);
    auto rngs = make_sensing_rngs(n, cfg, run);
    std::vector<std::vector<AccessWindow>> windows(n, {{0.0, 0.0, false}});
    std::vector<Interval> pauses;
    std::vector<double> next_due(n, 0.0);
    double sensor_free = 0.0;

    while (true) {
      std::size_t i = 0;
      for (std::size_t j = 1; j < n; ++j) {
        if (next_due[j] < next_due[i]) i = j;
      }
      const double start = std::max(next_due[i], sensor_free);
      if (start >= cfg.horizon) break;
      if (sensing_time > 0) {
        pauses.push_back({start, start + sensing_time});
        sensor_free = start + sensing_time;
      }
      const bool sensed_free = sense(traces[i].free_at(start), errs[i], rngs[i]);
      windows[i].back().end = start;
      windows[i].push_back({start, start, sensed_free});
      next_due[i] = start + (sensed_free ? pols[i].t_free : pols[i].t_busy);
    }

    RunResult res;
    for (std::size_t i = 0; i < n; ++i) {
      windows[i].back().end = cfg.horizon;
      res.channels.push_back(
          accumulate_occupancy(traces[i], windows[i], pauses, cfg.warmup, cfg.horizon));
    }
    return res;
  });
}

PerformanceReport simulate_full(std::span<const ChannelParams> chs,
                                std::span<const SensingErrorModel> errs,
                                const OutcomeDurationTable& table, double sensing_time,
                                const SimConfig& cfg) {
  const std::size_t n = chs.size();
  if (n == 0 || errs.size() != n || table.channels() != n) {
    throw InvalidArgument("channel, error and outcome table sizes must agree");
  }
  if (!(sensing_time >= 0)) throw InvalidArgument("sensing time must be >= 0");
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (!(table[k] > 0) || table[k] < sensing_time) {
      throw InvalidArgument("outcome durations must be positive and at least T_s");
    }
  }

  return run_all(cfg, [&](int run) {
    const auto traces = make_traces(chs, cfg, run);
    auto rngs = make_sensing_rngs(n, cfg, run);
    std::vector<std::vector<AccessWindow>> windows(n);
    std::vector<Interval> pauses;
    double t = 0.0;
    while (t < cfg.horizon) {
      if (sensing_time > 0) pauses.push_back({t, t + sensing_time});
      std::size_t omega = 0;
      std::vector<bool> sensed(n);
      for (std::size_t i = 0; i < n; ++i) {
        sensed[i] = sense(traces[i].free_at(t), errs[i], rngs[i]);
        omega = (omega << 1) | (sensed[i] ? 1u : 0u);
      }
      const double end = t + table[omega];
      for (std::size_t i = 0; i < n; ++i) windows[i].push_back({t, end, sensed[i]});
      t = end;
    }
    RunResult res;
    for (std::size_t i = 0; i < n; ++i) {
      res.channels.push_back(
          accumulate_occupancy(traces[i], windows[i], pauses, cfg.warmup, cfg.horizon));
    }
    return res;
  });
}

PerformanceReport simulate_limited_access(std::span<const ChannelParams> chs,
                                          std::span<const double> access_durations,
                                          double sensing_time, const SimConfig& cfg) {
  const std::size_t n = chs.size();
  if (n == 0 || access_durations.size() != n) {
    throw InvalidArgument("channel and access duration lists must be non-empty and equal length");
  }
  if (!(sensing_time > 0)) throw InvalidArgument("limited access needs a sensing time > 0");
  for (double d : access_durations) {
    if (!(d > 0) || !std::isfinite(d)) throw InvalidArgument("access durations must be finite and > 0");
  }

  return run_all(cfg, [&](int run) {
    const auto traces = make_traces(chs, cfg, run);
    std::vector<std::vector<AccessWindow>> windows(n);
    std::vector<Interval> pauses;
    std::vector<ChannelBelief> beliefs(n);
    double t = 0.0, last_access_end = 0.0, delay_sum = 0.0;
    long delay_count = 0;

    while (t < cfg.horizon) {
      const std::size_t c = next_channel_order(beliefs, chs, t, sensing_time).front();
      pauses.push_back({t, t + sensing_time});
      t += sensing_time;
      const bool free = traces[c].free_at(t);
      beliefs[c] = {free, t};
      if (!free) continue;
      if (t >= cfg.warmup) {
        delay_sum += t - last_access_end;
        ++delay_count;
      }
      windows[c].push_back({t, t + access_durations[c], true});
      t += access_durations[c];
      last_access_end = t;
    }

    RunResult res;
    for (std::size_t i = 0; i < n; ++i) {
      // Fill the gaps between accesses with non-access windows.
      std::vector<AccessWindow> full;
      double cursor = 0.0;
      for (const auto& w : windows[i]) {
        assert(traces[i].free_at(w.start));
        if (w.start > cursor) full.push_back({cursor, w.start, false});
        full.push_back(w);
        cursor = w.end;
      }
      if (cursor < cfg.horizon) full.push_back({cursor, cfg.horizon, false});
      res.channels.push_back(
          accumulate_occupancy(traces[i], full, pauses, cfg.warmup, cfg.horizon));
    }
    res.search_delay = delay_count > 0 ? delay_sum / delay_count : 0.0;
    return res;
  });
}

}  // namespace intersense
