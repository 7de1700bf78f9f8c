#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "intersense/markov_policy.hpp"

using namespace intersense;

namespace {

Eigen::VectorXd power_iteration(const Eigen::MatrixXd& m) {
  Eigen::RowVectorXd p = Eigen::RowVectorXd::Constant(m.rows(), 1.0 / m.rows());
  for (int i = 0; i < 20000; ++i) p = p * m;
  return p.transpose();
}

const std::vector<ChannelParams> kFiveChannels = {
    {0.2, 1.0}, {0.17, 0.9}, {0.15, 0.8}, {0.13, 0.7}, {0.11, 0.6}};
const std::vector<ChannelParams> kTwoChannels = {{0.4e-3, 0.6e-3}, {0.7e-3, 0.3e-3}};

}  // namespace

TEST_CASE("four-state matrix is row-stochastic and has the product form") {
  const ChannelParams ch(0.3, 0.8);
  const SensingErrorModel err(0.2, 0.1);
  const DualPeriodPolicy pol{1.5, 0.7};
  const auto m = four_state_matrix(ch, err, pol);
  for (int r = 0; r < 4; ++r) CHECK(m.row(r).sum() == doctest::Approx(1.0));
  // Row (busy, sensed free) uses t_free from a busy start.
  const double p = prob_free_given_busy(ch, 1.5);
  CHECK(m(kBusySensedFree, kFreeSensedFree) == doctest::Approx(p * 0.8));
  CHECK(m(kBusySensedFree, kBusySensedFree) == doctest::Approx((1 - p) * 0.1));
  // Row (free, sensed busy) uses t_busy from a free start.
  const double q = prob_free_given_free(ch, 0.7);
  CHECK(m(kFreeSensedBusy, kFreeSensedBusy) == doctest::Approx(q * 0.2));
  CHECK(m(kFreeSensedBusy, kBusySensedBusy) == doctest::Approx((1 - q) * 0.9));
}

TEST_CASE("steady state agrees with power iteration") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> rate(0.1, 2.0), dur(0.05, 5.0), err(0.0, 0.4);
  for (int trial = 0; trial < 25; ++trial) {
    const ChannelParams ch(rate(gen), rate(gen));
    const SensingErrorModel e(err(gen), err(gen));
    const DualPeriodPolicy pol{dur(gen), dur(gen)};
    const Eigen::Matrix4d m = four_state_matrix(ch, e, pol);
    const Eigen::Vector4d pi = steady_state(m);
    CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((pi - power_iteration(m)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((pi.transpose() * m - pi.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("steady state rejects bad chains") {
  Eigen::Matrix2d reducible;
  reducible << 1, 0, 0, 1;
  CHECK_THROWS_AS(steady_state(reducible), DegenerateChain);
  Eigen::Matrix2d not_stochastic;
  not_stochastic << 0.5, 0.4, 0.5, 0.5;
  CHECK_THROWS_AS(steady_state(not_stochastic), InvalidArgument);
  Eigen::MatrixXd rect(2, 3);
  rect.setConstant(1.0 / 3);
  CHECK_THROWS_AS(steady_state(rect), InvalidArgument);
}

TEST_CASE("occupancy identity under perfect sensing") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  for (int c = 0; c < 5; ++c) {
    const ChannelParams ch(rate(gen), rate(gen));
    for (int i = 1; i <= 20; ++i) {
      for (int j = 1; j <= 20; ++j) {
        const DualPeriodPolicy pol{0.25 * i, 0.25 * j};
        const auto cyc = evaluate_channel(ch, SensingErrorModel{}, pol);
        CHECK(cyc.discovered + cyc.unexplored == doctest::Approx(1 - utilization(ch)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("time fractions partition the cycle with sensing errors") {
  const ChannelParams ch(0.4, 0.6);
  const SensingErrorModel e(0.3, 0.2);
  const auto cyc = evaluate_channel(ch, e, DualPeriodPolicy{2.0, 1.0});
  // discovered + unexplored = free share, and interference <= busy share.
  CHECK(cyc.discovered + cyc.unexplored == doctest::Approx(1 - utilization(ch)).epsilon(1e-12));
  CHECK(cyc.interference <= utilization(ch));
  CHECK(cyc.mean_cycle > 1.0);
  CHECK(cyc.mean_cycle < 2.0);
}

TEST_CASE("misdetection of one means every busy sensing leads to transmission") {
  const ChannelParams ch(0.4, 0.6);
  const DualPeriodPolicy pol{2.0, 1.0};
  const auto cyc = evaluate_channel(ch, SensingErrorModel(0.0, 1.0), pol);
  // Every sensing reads free, so the channel is always in an access window.
  CHECK(cyc.pi(kBusySensedBusy) == doctest::Approx(0.0).scale(1.0));
  CHECK(cyc.pi(kFreeSensedBusy) == doctest::Approx(0.0).scale(1.0));
  CHECK(cyc.interference == doctest::Approx(utilization(ch)).epsilon(1e-12));
  CHECK(cyc.unexplored == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("network evaluation at reported limited-sensing optima") {
  // Evaluation at the optimizer's own output reproduces the reported rate.
  const std::vector<SensingErrorModel> errs(5);
  const std::vector<DualPeriodPolicy> pols{
      {0.615419, 0.334955}, {0.680185, 0.319186}, {0.764662, 0.350724},
      {0.871666, 0.361424}, {1.01528, 0.392963}};
  const auto ev = evaluate_network(kFiveChannels, errs, pols, 0.01);
  CHECK(ev.throughput == doctest::Approx(3.8068).epsilon(2e-4));
  double mu_sum = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    mu_sum += 0.01 / evaluate_channel(kFiveChannels[i], errs[i], pols[i]).mean_cycle;
  }
  CHECK(ev.overhead_sum == doctest::Approx(mu_sum));
  double r = 0;
  for (const auto& c : ev.channels) {
    r += c.throughput;
    CHECK(c.throughput + c.overhead_fraction + c.unexplored_fraction ==
          doctest::Approx(1 - utilization(kFiveChannels[&c - ev.channels.data()])).epsilon(1e-12));
  }
  CHECK(r == doctest::Approx(ev.throughput));
  CHECK_THROWS_AS(evaluate_network(kFiveChannels, errs, std::vector<DualPeriodPolicy>(5, {0.01, 0.01}), 0.01),
                  Infeasible);
}

TEST_CASE("free-period overhead model is available") {
  const std::vector<SensingErrorModel> errs(5);
  const std::vector<DualPeriodPolicy> pols(5, DualPeriodPolicy{0.8, 0.4});
  const auto a = evaluate_network(kFiveChannels, errs, pols, 0.01, OverheadModel::kSensingRate);
  const auto b = evaluate_network(kFiveChannels, errs, pols, 0.01, OverheadModel::kFreePeriod);
  CHECK(b.overhead_sum == doctest::Approx(5 * 0.01 / 0.8));
  CHECK(a.overhead_sum > b.overhead_sum);
}

TEST_CASE("joint chain of two channels") {
  OutcomeDurationTable table(2);
  table.at({0, 0}) = 10;
  table.at({0, 1}) = 181;
  table.at({1, 0}) = 215;
  table.at({1, 1}) = 650;
  const auto m2 = joint_transition_matrix_2ch(kTwoChannels[0], kTwoChannels[1], table);
  const Eigen::MatrixXd mn = joint_transition_matrix(kTwoChannels, table);
  CHECK((Eigen::MatrixXd(m2) - mn).cwiseAbs().maxCoeff() < 1e-15);
  for (int r = 0; r < 4; ++r) CHECK(mn.row(r).sum() == doctest::Approx(1.0));
  // Entry (1,0) -> (0,1): channel 0 goes free->busy, channel 1 busy->free over T_{1,0}.
  const double t = 215;
  CHECK(mn(2, 1) == doctest::Approx((1 - prob_free_given_free(kTwoChannels[0], t)) *
                                    prob_free_given_busy(kTwoChannels[1], t)));

  const auto ev = evaluate_joint(kTwoChannels, table, 10.0);
  CHECK(ev.throughput == doctest::Approx(0.85063).epsilon(1e-4));
  CHECK(ev.pi.sum() == doctest::Approx(1.0));
  CHECK(ev.mean_cycle == doctest::Approx(ev.pi.dot(Eigen::Vector4d(10, 181, 215, 650))));
  const auto rep = two_channel_throughput(kTwoChannels[0], kTwoChannels[1], table, 10.0);
  CHECK(rep.throughput == doctest::Approx(ev.throughput));
  CHECK(rep.interference[1] == doctest::Approx(ev.channels[1].interference_fraction));
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = ev.channels[i];
    CHECK(c.throughput + c.overhead_fraction + c.unexplored_fraction ==
          doctest::Approx(1 - utilization(kTwoChannels[i])).epsilon(1e-12));
  }
}

TEST_CASE("joint evaluation with one channel equals the dual-period chain") {
  // A lone channel under the full scheme is a dual-period policy with the
  // sensing pause charged to its own window only.
  const ChannelParams ch(0.3, 0.5);
  OutcomeDurationTable table(1);
  table[0] = 1.2;
  table[1] = 3.4;
  const auto joint = evaluate_joint(std::vector<ChannelParams>{ch}, table, 0.0);
  const auto cyc = evaluate_channel(ch, SensingErrorModel{}, DualPeriodPolicy{3.4, 1.2});
  CHECK(joint.mean_cycle == doctest::Approx(cyc.mean_cycle));
  CHECK(joint.channels[0].interference_fraction == doctest::Approx(cyc.interference));
  CHECK(joint.throughput == doctest::Approx(cyc.discovered));
}

TEST_CASE("joint evaluation rejects durations below the sensing time") {
  OutcomeDurationTable table(2, 5.0);
  CHECK_THROWS_AS(evaluate_joint(kTwoChannels, table, 10.0), InvalidArgument);
}
