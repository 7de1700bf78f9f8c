#include <doctest.h>

#include <cmath>

#include "intersense/delta_oracle.hpp"
#include "intersense/renewal.hpp"

using namespace intersense;

TEST_CASE("oracle matches the exponential closed forms") {
  const ChannelParams ch(0.4, 0.9);
  const auto f = SojournDistribution::exponential(ch.lambda_free);
  const auto b = SojournDistribution::exponential(ch.lambda_busy);
  for (double t : {0.1, 0.5, 1.0, 3.0, 8.0}) {
    CHECK(std::abs(delta_numeric_oracle(f, b, t, StartState::kFreeEquilibrium) -
                   delta_free(ch, t)) < 1e-4);
    CHECK(std::abs(delta_numeric_oracle(f, b, t, StartState::kBusyEquilibrium) -
                   delta_busy(ch, t)) < 1e-4);
  }
}

TEST_CASE("memoryless sojourns make fresh and equilibrium starts equal") {
  const auto f = SojournDistribution::exponential(0.5);
  const auto b = SojournDistribution::exponential(2.0);
  const double t = 4.0;
  CHECK(delta_numeric_oracle(f, b, t, StartState::kFreeFresh) ==
        doctest::Approx(delta_numeric_oracle(f, b, t, StartState::kFreeEquilibrium)).epsilon(1e-6));
  CHECK(delta_numeric_oracle(f, b, t, StartState::kBusyFresh) ==
        doctest::Approx(delta_numeric_oracle(f, b, t, StartState::kBusyEquilibrium)).epsilon(1e-6));
}

TEST_CASE("a free period that cannot end before t gives delta = t") {
  const auto f = SojournDistribution::uniform(2.0, 3.0);
  const auto b = SojournDistribution::exponential(1.0);
  CHECK(delta_numeric_oracle(f, b, 1.5, StartState::kFreeFresh) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(delta_numeric_oracle(f, b, 1.5, StartState::kBusyFresh) < 1.5);
}

TEST_CASE("long-run slope is the free share for non-exponential sojourns") {
  const auto f = SojournDistribution::erlang(3, 3.0);   // mean 1
  const auto b = SojournDistribution::erlang(2, 1.0);   // mean 2
  const double t = 60.0;
  const auto curve = delta_numeric_curve(f, b, t, StartState::kFreeEquilibrium, {0.02});
  const double slope = (curve.back() - curve[curve.size() / 2]) / (t / 2);
  CHECK(slope == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k] >= curve[k - 1] - 1e-12);
}

TEST_CASE("oracle options and distribution checks") {
  const auto f = SojournDistribution::exponential(1.0);
  const auto b = SojournDistribution::exponential(1.0);
  CHECK_THROWS(delta_numeric_oracle(f, b, 1.0, StartState::kFreeFresh, {0.0}));
  CHECK_THROWS(delta_numeric_oracle(f, b, 1.0, StartState::kFreeFresh, {-1.0}));
  CHECK_THROWS(delta_numeric_oracle(f, b, -1.0, StartState::kFreeFresh));
  CHECK(delta_numeric_oracle(f, b, 0.0, StartState::kFreeFresh) == 0.0);
  auto broken = SojournDistribution::exponential(1.0);
  broken.pdf = [](double x) { return 0.5 * std::exp(-x); };  // integrates to 1/2
  CHECK_THROWS(delta_numeric_oracle(broken, b, 1.0, StartState::kFreeFresh));
}
