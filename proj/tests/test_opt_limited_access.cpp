#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "intersense/opt_limited_access.hpp"

using namespace intersense;

namespace {

// Error-free access interference written out directly.
double interference_direct(double u, double s, double t) {
  return u * (1 + (std::exp(-s * t) - 1) / (s * t));
}

// Root of interference_direct = target, bracketed on a dense grid and then
// refined by secant steps inside the bracket.
double dense_root(double u, double s, double target) {
  double lo = 1e-6, hi = lo;
  const double step = 1e-3;
  while (interference_direct(u, s, hi) < target) {
    lo = hi;
    hi += step;
  }
  for (int i = 0; i < 100; ++i) {
    const double flo = interference_direct(u, s, lo) - target;
    const double fhi = interference_direct(u, s, hi) - target;
    const double mid = lo - flo * (hi - lo) / (fhi - flo);
    if (!(mid > lo && mid < hi)) break;
    (interference_direct(u, s, mid) < target ? lo : hi) = mid;
  }
  // Regula falsi keeps one end fixed, so return the end with the smaller residual.
  const double rlo = std::abs(interference_direct(u, s, lo) - target);
  const double rhi = std::abs(interference_direct(u, s, hi) - target);
  return rlo < rhi ? lo : hi;
}

}  // namespace

TEST_CASE("access duration for a half-busy channel") {
  const ChannelParams ch(1.0, 1.0);  // u = 0.5, s = 2
  const double t = access_duration_for_constraint(ch, 0.25);
  CHECK(t == doctest::Approx(0.7968).epsilon(1e-4));
  CHECK(t == doctest::Approx(dense_root(0.5, 2.0, 0.25)).epsilon(1e-9));
  CHECK(std::abs(access_interference(ch, t) - 0.25) <= 1e-10 * 0.25);
}

TEST_CASE("access interference is increasing between 0 and u") {
  const ChannelParams ch(0.3, 0.9);
  const double u = utilization(ch);
  double prev = 0;
  for (int k = 1; k <= 2000; ++k) {
    const double t = 0.01 * k;
    const double v = access_interference(ch, t);
    CHECK(v > prev);
    CHECK(v < u);
    CHECK(v == doctest::Approx(interference_direct(u, ch.total_rate(), t)).epsilon(1e-12));
    prev = v;
  }
  CHECK(access_interference(ch, 1e-9) < 1e-8);
  CHECK(access_interference(ch, 1e9) == doctest::Approx(u).epsilon(1e-8));
}

TEST_CASE("bisection residual over random channels") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> rate(1e-4, 5.0), frac(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const ChannelParams ch(rate(gen), rate(gen));
    const double target = frac(gen) * utilization(ch);
    const double t = access_duration_for_constraint(ch, target);
    CHECK(std::abs(access_interference(ch, t) - target) <= 1e-10 * target);
  }
}

TEST_CASE("limit edge cases") {
  const ChannelParams ch(1.0, 1.0);
  CHECK_THROWS_AS(access_duration_for_constraint(ch, 0.5), Unbounded);
  CHECK_THROWS_AS(access_duration_for_constraint(ch, 0.7), Unbounded);
  CHECK_THROWS_AS(access_duration_for_constraint(ch, 0.0), InvalidArgument);
  CHECK(access_duration_for_constraint(ch, 1e-6) < 1e-5);
  CHECK_THROWS_AS(access_interference(ch, 0.0), InvalidArgument);
}

TEST_CASE("interference with sensing errors") {
  const ChannelParams ch(0.4, 0.6);
  CHECK(access_interference(ch, SensingErrorModel{}, 2.0) == doctest::Approx(access_interference(ch, 2.0)));
  const double t = 2.0;
  const double expect = 0.8 * (t - delta_free(ch, t)) / t + 0.1 * (t - delta_busy(ch, t)) / t;
  CHECK(access_interference(ch, SensingErrorModel(0.2, 0.1), t) == doctest::Approx(expect));
}

TEST_CASE("channel rank") {
  const ChannelParams ch(0.3, 0.7);
  const double ts = 0.5;
  CHECK(channel_rank(ch, {true, 4.0}, 4.0, ts) == doctest::Approx(1 / ts));
  CHECK(channel_rank(ch, {false, 4.0}, 4.0, ts) == 0.0);
  const double limit = (1 - utilization(ch)) / ts;
  CHECK(channel_rank(ch, {true, 0.0}, 1e4, ts) == doctest::Approx(limit));
  CHECK(channel_rank(ch, {false, 0.0}, 1e4, ts) == doctest::Approx(limit));
  CHECK(channel_rank(ch, ChannelBelief{}, 3.0, ts) == doctest::Approx(limit));
  CHECK_THROWS_AS(channel_rank(ch, {true, 5.0}, 4.0, ts), InvalidArgument);
  CHECK_THROWS_AS(channel_rank(ch, {true, 0.0}, 4.0, 0.0), InvalidArgument);
}

TEST_CASE("channel order") {
  const std::vector<ChannelParams> chs{{0.3, 0.7}, {0.5, 0.5}, {0.2, 0.8}};
  const double ts = 0.1;
  SUBCASE("all just sensed busy keeps index order") {
    const std::vector<ChannelBelief> b(3, ChannelBelief{false, 2.0});
    CHECK(next_channel_order(b, chs, 2.0, ts) == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("a channel last sensed free comes first") {
    std::vector<ChannelBelief> b(3, ChannelBelief{false, 1.0});
    b[2].last_sensed_free = true;
    CHECK(next_channel_order(b, chs, 1.05, ts).front() == 2);
  }
  SUBCASE("equal total rate, lower utilization first") {
    const std::vector<ChannelParams> two{{0.6, 0.4}, {0.2, 0.8}};  // u = 0.6, 0.2
    const std::vector<ChannelBelief> b(2, ChannelBelief{false, 0.0});
    // Higher rank = larger (1 - u) (1 - e^{-s t}).
    CHECK(next_channel_order(b, two, 0.7, ts) == std::vector<std::size_t>{1, 0});
  }
  SUBCASE("always a permutation") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> when(0.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<ChannelBelief> b;
      for (int i = 0; i < 3; ++i) b.push_back({trial % 2 == 0, when(gen)});
      auto order = next_channel_order(b, chs, 10.0, ts);
      std::sort(order.begin(), order.end());
      CHECK(order == std::vector<std::size_t>{0, 1, 2});
    }
  }
  CHECK_THROWS_AS(next_channel_order(std::vector<ChannelBelief>(2), chs, 0.0, ts), InvalidArgument);
}

TEST_CASE("plans use the cap only when needed") {
  const std::vector<ChannelParams> chs{{1.0, 1.0}, {0.2, 0.8}};
  const std::vector<double> lim{0.25, 0.5};  // second limit exceeds u = 0.2
  CHECK_THROWS_AS(plan_limited_access(chs, lim), Unbounded);
  const auto plan = plan_limited_access(chs, lim, 50.0);
  CHECK(plan.access_durations[0] == doctest::Approx(0.7968).epsilon(1e-4));
  CHECK_FALSE(plan.capped[0]);
  CHECK(plan.access_durations[1] == 50.0);
  CHECK(plan.capped[1]);
  const auto tight = plan_limited_access(chs, std::vector<double>{0.25, 0.1}, 0.5);
  CHECK(tight.access_durations[0] == 0.5);
  CHECK(tight.capped[0]);
}
