// Embedded Markov chains for sensing policies.
//
// Per-channel chain: states are (actual, sensed) pairs sampled at sensing
// instants, ordered (0,0), (0,1), (1,0), (1,1). The inter-sensing interval that
// follows a sensing instant is t_busy if the channel was sensed busy and
// t_free if it was sensed free.
//
// Joint chain (full sensing capability, perfect sensing): states are joint
// outcomes of all channels, each followed by its own duration.

#ifndef INTERSENSE_MARKOV_POLICY_HPP_
#define INTERSENSE_MARKOV_POLICY_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "intersense/errors.hpp"
#include "intersense/outcome_table.hpp"
#include "intersense/renewal.hpp"
#include "intersense/sensing.hpp"

namespace intersense {

template <typename Scalar>
struct DualPeriodPolicyT {
  Scalar t_free;  // inter-sensing time after sensing free
  Scalar t_busy;  // inter-sensing time after sensing busy
};
using DualPeriodPolicy = DualPeriodPolicyT<double>;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Indices of the per-channel chain, named (actual, sensed).
enum FourState : int {
  kBusySensedBusy = 0,
  kBusySensedFree = 1,
  kFreeSensedBusy = 2,
  kFreeSensedFree = 3,
};

template <typename Scalar>
Matrix4<Scalar> four_state_matrix(const ChannelParamsT<Scalar>& ch,
                                  const SensingErrorModel& err,
                                  const DualPeriodPolicyT<Scalar>& pol) {
  const Scalar pfa(err.p_fa), pmd(err.p_md);
  const Scalar one(1);
  Matrix4<Scalar> m;
  for (int row = 0; row < 4; ++row) {
    const int actual = row >> 1;
    const int sensed = row & 1;
    const Scalar t = sensed ? pol.t_free : pol.t_busy;
    const Scalar p_free = prob_free_given(ch, actual, t);
    m(row, kBusySensedBusy) = (one - p_free) * (one - pmd);
    m(row, kBusySensedFree) = (one - p_free) * pmd;
    m(row, kFreeSensedBusy) = p_free * pfa;
    m(row, kFreeSensedFree) = p_free * (one - pfa);
  }
  return m;
}

/// Stationary distribution of a row-stochastic matrix.
///
/// The last balance equation of (M^T - I) pi = 0 is replaced by sum(pi) = 1
/// and the system is solved by LU with partial pivoting. Throws
/// DegenerateChain when the system is singular (no unique stationary law).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, 1> steady_state(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using Square =
      Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
  using Vector = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, 1>;
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw InvalidArgument("steady_state needs a square matrix");
  for (Eigen::Index r = 0; r < n; ++r) {
    if (abs(m.row(r).sum() - Scalar(1)) > Scalar(1e-9) ||
        (m.row(r).array() < Scalar(-1e-12)).any()) {
      throw InvalidArgument("steady_state needs a row-stochastic matrix");
    }
  }
  Square a = m.transpose() - Square::Identity(n, n);
  a.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b(n - 1) = Scalar(1);

  Eigen::PartialPivLU<Square> lu(a);
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  if (!(diag.minCoeff() > Scalar(1e-12) * std::max(Scalar(1), diag.maxCoeff()))) {
    throw DegenerateChain("Markov chain has no unique stationary distribution");
  }
  Vector pi = lu.solve(b);
  if (!pi.allFinite()) throw DegenerateChain("stationary solve produced non-finite values");
  return pi.cwiseMax(Scalar(0));
}

/// Per-channel quantities of the embedded chain that do not depend on the
/// other channels. Fractions are long-run time fractions.
template <typename Scalar>
struct ChannelCycleT {
  Vector4<Scalar> pi;
  Scalar mean_cycle;    // mean time between sensing events
  Scalar discovered;    // free time inside access windows
  Scalar interference;  // busy time inside access windows
  Scalar unexplored;    // free time outside access windows
};
using ChannelCycle = ChannelCycleT<double>;

template <typename Scalar>
ChannelCycleT<Scalar> evaluate_channel(const ChannelParamsT<Scalar>& ch,
                                       const SensingErrorModel& err,
                                       const DualPeriodPolicyT<Scalar>& pol) {
  ChannelCycleT<Scalar> out;
  out.pi = steady_state(four_state_matrix(ch, err, pol));
  const auto& pi = out.pi;
  const Scalar tf = pol.t_free, tb = pol.t_busy;
  out.mean_cycle = (pi(kBusySensedBusy) + pi(kFreeSensedBusy)) * tb +
                   (pi(kBusySensedFree) + pi(kFreeSensedFree)) * tf;
  const Scalar d1f = delta_free(ch, tf), d0f = delta_busy(ch, tf);
  const Scalar d1b = delta_free(ch, tb), d0b = delta_busy(ch, tb);
  out.discovered = (pi(kFreeSensedFree) * d1f + pi(kBusySensedFree) * d0f) / out.mean_cycle;
  out.interference =
      (pi(kFreeSensedFree) * (tf - d1f) + pi(kBusySensedFree) * (tf - d0f)) / out.mean_cycle;
  out.unexplored = (pi(kBusySensedBusy) * d0b + pi(kFreeSensedBusy) * d1b) / out.mean_cycle;
  return out;
}

/// Free time per unit time inside the channel's own sensing pauses when the
/// pause opens the next window: sensed-free windows start with T_s from the
/// sensed state.
template <typename Scalar>
Scalar own_pause_overhead(const ChannelParamsT<Scalar>& ch, const ChannelCycleT<Scalar>& cycle,
                          Scalar sensing_time) {
  const auto& pi = cycle.pi;
  return (pi(kFreeSensedFree) * delta_free(ch, sensing_time) +
          pi(kBusySensedFree) * delta_busy(ch, sensing_time)) /
         cycle.mean_cycle;
}

struct ChannelMetrics {
  double mean_cycle = 0;
  double throughput = 0;
  double interference_fraction = 0;
  double overhead_fraction = 0;
  double unexplored_fraction = 0;
  /// Overhead with each channel's own sensing pause placed at the start of
  /// the window it opens, where the sensed state is known. Other channels'
  /// pauses are weighted by the discovered share as in overhead_fraction.
  /// Not used by the objective; it is what a timeline simulation measures.
  double aligned_overhead_fraction = 0;
};

/// How the network-wide sensing overhead sum is formed.
enum class OverheadModel {
  kSensingRate,        // sum_j T_s / mu_j: fraction of time the sensor is busy
  kFreePeriod,  // sum_j T_s / T_j^F
};

/// Completes a channel's metrics given the network-wide overhead sum.
/// Throws Infeasible when overhead_sum >= 1.
ChannelMetrics channel_metrics(const ChannelParams& ch, const SensingErrorModel& err,
                               const DualPeriodPolicy& pol, double overhead_sum);
ChannelMetrics channel_metrics(const ChannelCycle& cycle, double overhead_sum);

double overhead_sum(std::span<const ChannelCycle> cycles, std::span<const DualPeriodPolicy> pols,
                    double sensing_time, OverheadModel model = OverheadModel::kSensingRate);

struct NetworkEvaluation {
  double throughput = 0;  // R
  double overhead_sum = 0;
  std::vector<ChannelMetrics> channels;
};

/// Limited-sensing network: one sensor shared by all channels, transmission
/// on every channel sensed free.
NetworkEvaluation evaluate_network(std::span<const ChannelParams> chs,
                                   std::span<const SensingErrorModel> errs,
                                   std::span<const DualPeriodPolicy> pols, double sensing_time,
                                   OverheadModel model = OverheadModel::kSensingRate);

double network_throughput(std::span<const ChannelParams> chs,
                          std::span<const SensingErrorModel> errs,
                          std::span<const DualPeriodPolicy> pols, double sensing_time,
                          OverheadModel model = OverheadModel::kSensingRate);

/// Transition matrix of the joint sensed outcome under perfect sensing.
Eigen::MatrixXd joint_transition_matrix(std::span<const ChannelParams> chs,
                                        const OutcomeDurationTable& durations);

Matrix4<double> joint_transition_matrix_2ch(const ChannelParams& ch1, const ChannelParams& ch2,
                                            const OutcomeDurationTable& durations);

struct JointEvaluation {
  Eigen::VectorXd pi;
  double mean_cycle = 0;
  double throughput = 0;  // R
  std::vector<ChannelMetrics> channels;
};

/// Long-run metrics of a full-capability schedule (all channels sensed
/// together, each sensing costs T_s of the following interval).
JointEvaluation evaluate_joint(std::span<const ChannelParams> chs,
                               const OutcomeDurationTable& durations, double sensing_time);

struct TwoChannelReport {
  double throughput = 0;  // R
  double interference[2] = {0, 0};
  double mean_cycle = 0;
};

TwoChannelReport two_channel_throughput(const ChannelParams& ch1, const ChannelParams& ch2,
                                        const OutcomeDurationTable& durations,
                                        double sensing_time);

}  // namespace intersense

#endif  // INTERSENSE_MARKOV_POLICY_HPP_
