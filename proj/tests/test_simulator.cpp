#include <doctest.h>

#include <cmath>
#include <vector>

#include "intersense/opt_limited_access.hpp"
#include "intersense/rng.hpp"
#include "intersense/simulator.hpp"

using namespace intersense;

TEST_CASE("rng streams") {
  CHECK(stream_seed(1, 0, 0, StreamPurpose::kTrace) != stream_seed(1, 0, 1, StreamPurpose::kTrace));
  CHECK(stream_seed(1, 0, 0, StreamPurpose::kTrace) != stream_seed(1, 1, 0, StreamPurpose::kTrace));
  CHECK(stream_seed(1, 0, 0, StreamPurpose::kTrace) != stream_seed(1, 0, 0, StreamPurpose::kSensing));
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  Rng r(9);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.exponential(2.0);
    CHECK(x >= 0);
    sum += x;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("trace structure and determinism") {
  const ChannelParams ch(0.3, 0.6);
  const auto a = generate_trace(ch, 5000, 17);
  const auto b = generate_trace(ch, 5000, 17);
  CHECK(a.initial_free == b.initial_free);
  CHECK(a.transition_times == b.transition_times);
  for (std::size_t k = 1; k < a.transition_times.size(); ++k) {
    CHECK(a.transition_times[k] > a.transition_times[k - 1]);
  }
  CHECK(a.transition_times.back() < 5000);
  CHECK(a.free_at(0.0) == a.initial_free);
  CHECK(a.free_at(a.transition_times[0]) != a.initial_free);
  CHECK_THROWS_AS(generate_trace(ch, 0.0, 1), InvalidArgument);
}

TEST_CASE("free fraction of a long trace") {
  const ChannelParams ch(0.4, 1.1);
  const double s = ch.total_rate();
  const double horizon = 1e6 / s;
  const auto tr = generate_trace(ch, horizon, 23);
  const double frac = tr.free_time(0, horizon) / horizon;
  // Variance of the time average of a two-state chain: 2 u (1-u) / (s T).
  const double u = utilization(ch);
  const double sigma = std::sqrt(2 * u * (1 - u) / (s * horizon));
  CHECK(std::abs(frac - (1 - u)) < 3 * sigma);
}

TEST_CASE("empirical transition probabilities") {
  const ChannelParams ch(0.5, 0.5);
  const double s = ch.total_rate();
  const double horizon = 4e5 / s;
  const auto tr = generate_trace(ch, horizon, 31);
  for (double mult : {0.5, 1.0, 2.0}) {
    const double lag = mult / s;
    long n = 0, hits = 0;
    for (double x = 0; x + lag < horizon; x += 5.0 / s) {
      if (!tr.free_at(x)) continue;
      ++n;
      hits += tr.free_at(x + lag);
    }
    const double p = prob_free_given_free(ch, lag);
    const double sigma = std::sqrt(p * (1 - p) / n);
    CAPTURE(mult);
    CHECK(std::abs(static_cast<double>(hits) / n - p) < 3 * sigma);
  }
}

TEST_CASE("occupancy accounting on a hand-made trace") {
  RenewalTrace tr;
  tr.initial_free = true;
  tr.transition_times = {2.0, 5.0, 7.0};  // free [0,2), busy [2,5), free [5,7), busy [7,10)
  tr.horizon = 10;
  const std::vector<AccessWindow> w{{0, 4, true}, {4, 6, false}, {6, 10, true}};
  const std::vector<Interval> pauses{{1.0, 1.5}, {6.0, 6.5}};
  const auto o = accumulate_occupancy(tr, w, pauses, 0, 10);
  CHECK(o.throughput == doctest::Approx(1.5 + 0.5));  // [0,1)+[1.5,2) and [6.5,7)
  CHECK(o.overhead == doctest::Approx(0.5 + 0.5));
  CHECK(o.interference == doctest::Approx(2.0 + 3.0));  // [2,4) and [7,10)
  CHECK(o.unexplored == doctest::Approx(1.0));         // [5,6)
  CHECK(o.idle == doctest::Approx(1.0));               // [4,5)
  CHECK(o.total() == doctest::Approx(10.0));
  const auto part = accumulate_occupancy(tr, w, pauses, 3, 8);
  CHECK(part.total() == doctest::Approx(5.0));
  CHECK(tr.free_time(1, 6) == doctest::Approx(2.0));
}

namespace {

const std::vector<ChannelParams> kChs{{0.2, 1.0}, {0.15, 0.8}};
const std::vector<SensingErrorModel> kPerfect(2);
const std::vector<DualPeriodPolicy> kPols{{0.6, 0.3}, {0.8, 0.35}};

SimConfig small_config(unsigned threads = 1) {
  SimConfig cfg;
  cfg.horizon = 4000;
  cfg.warmup = 100;
  cfg.runs = 6;
  cfg.seed = 5;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST_CASE("dual-period simulation partitions time and is deterministic") {
  const auto rep = simulate_dual_period(kChs, kPerfect, kPols, 0.01, small_config());
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = rep.channels[i];
    CHECK(c.throughput.mean + c.overhead.mean + c.interference.mean + c.unexplored.mean +
              c.idle.mean ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.free_fraction.mean == doctest::Approx(1 - utilization(kChs[i])).epsilon(0.05));
  }
  const auto again = simulate_dual_period(kChs, kPerfect, kPols, 0.01, small_config(3));
  CHECK(again.throughput.mean == rep.throughput.mean);
  CHECK(again.channels[1].interference.mean == rep.channels[1].interference.mean);
  CHECK(again.throughput.std_error == rep.throughput.std_error);
}

TEST_CASE("zero sensing time means zero overhead") {
  const auto rep = simulate_dual_period(kChs, kPerfect, kPols, 0.0, small_config());
  for (const auto& c : rep.channels) CHECK(c.overhead.mean == 0.0);
}

TEST_CASE("simulated metrics track the analytic chain") {
  SimConfig cfg = small_config();
  cfg.horizon = 40000;
  cfg.runs = 10;
  const std::vector<SensingErrorModel> errs{{0.1, 0.2}, {0.0, 0.0}};
  const auto rep = simulate_dual_period(kChs, errs, kPols, 0.0, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto cyc = evaluate_channel(kChs[i], errs[i], kPols[i]);
    const auto& c = rep.channels[i];
    CHECK(std::abs(c.interference.mean - cyc.interference) < 4 * c.interference.std_error + 1e-4);
    CHECK(std::abs(c.unexplored.mean - cyc.unexplored) < 4 * c.unexplored.std_error + 1e-4);
  }
}

TEST_CASE("misdetection of one puts every sensing into an access window") {
  SimConfig cfg = small_config();
  const std::vector<SensingErrorModel> errs(2, SensingErrorModel(0.0, 1.0));
  const auto rep = simulate_dual_period(kChs, errs, kPols, 0.0, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(rep.channels[i].unexplored.mean == 0.0);
    CHECK(rep.channels[i].idle.mean == 0.0);
    CHECK(rep.channels[i].interference.mean ==
          doctest::Approx(utilization(kChs[i])).epsilon(0.05));
  }
}

TEST_CASE("full-scheme simulation") {
  OutcomeDurationTable table(2);
  table.at({0, 0}) = 0.2;
  table.at({0, 1}) = 0.5;
  table.at({1, 0}) = 0.6;
  table.at({1, 1}) = 0.9;
  SimConfig cfg = small_config();
  cfg.horizon = 40000;
  const auto rep = simulate_full(kChs, kPerfect, table, 0.0, cfg);
  const auto ev = evaluate_joint(kChs, table, 0.0);
  CHECK(rep.throughput.mean == doctest::Approx(ev.throughput).epsilon(0.01));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(rep.channels[i].interference.mean ==
          doctest::Approx(ev.channels[i].interference_fraction).epsilon(0.03));
  }
  CHECK_THROWS_AS(simulate_full(kChs, kPerfect, OutcomeDurationTable(3, 1.0), 0.0, cfg),
                  InvalidArgument);
  CHECK_THROWS_AS(simulate_full(kChs, kPerfect, table, 0.3, cfg), InvalidArgument);
}

TEST_CASE("limited-access simulation") {
  const std::vector<ChannelParams> chs{{0.5, 0.5}, {0.3, 0.9}};
  const std::vector<double> lim{0.2, 0.1};
  SimConfig cfg = small_config();
  cfg.horizon = 2e4;
  cfg.runs = 10;
  const auto rep = run_limited_access_policy(chs, lim, 0.05, cfg);
  REQUIRE(rep.search_delay.has_value());
  CHECK(rep.search_delay->mean >= 0.05);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = rep.channels[i];
    CHECK(c.overhead.mean == 0.0);
    CHECK(c.access_interference.mean <= lim[i] + 3 * c.access_interference.std_error);
    CHECK(std::abs(c.access_interference.mean - lim[i]) < 4 * c.access_interference.std_error);
  }
  // Nearly always-busy channel: the user mostly senses.
  const std::vector<ChannelParams> busy{{1.0, 1e-4}};
  const auto idle = simulate_limited_access(busy, std::vector<double>{1.0}, 0.1, cfg);
  CHECK(idle.throughput.mean < 0.01);
}

TEST_CASE("config validation") {
  SimConfig cfg = small_config();
  cfg.warmup = cfg.horizon;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_config();
  cfg.runs = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK_THROWS_AS(simulate_dual_period(kChs, kPerfect, std::vector<DualPeriodPolicy>(1, {1, 1}),
                                       0.0, small_config()),
                  InvalidArgument);
  CHECK(default_warmup(kChs) == doctest::Approx(20 * (1 / 0.15 + 1 / 0.8)));
}
