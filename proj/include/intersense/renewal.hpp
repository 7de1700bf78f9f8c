// Renewal-theory primitives for a primary channel that alternates between
// exponentially distributed busy and free periods.
//
// Channel states follow the usual convention: 1 is free, 0 is busy.
// delta_free(t) is the expected free time accumulated over [0, t] when the
// channel is free at 0; delta_busy(t) is the same quantity when it starts busy.

#ifndef INTERSENSE_RENEWAL_HPP_
#define INTERSENSE_RENEWAL_HPP_

#include <cmath>
#include <limits>

#include "intersense/errors.hpp"

namespace intersense {

template <typename Scalar>
struct ChannelParamsT {
  Scalar lambda_free;  // rate of the free-period duration, 1 / E[T^1]
  Scalar lambda_busy;  // rate of the busy-period duration, 1 / E[T^0]

  ChannelParamsT() = default;
  ChannelParamsT(Scalar free_rate, Scalar busy_rate)
      : lambda_free(free_rate), lambda_busy(busy_rate) {
    using std::isfinite;
    if (!(free_rate > 0) || !(busy_rate > 0) || !isfinite(free_rate) ||
        !isfinite(busy_rate)) {
      throw InvalidArgument("channel rates must be positive and finite");
    }
  }

  Scalar total_rate() const { return lambda_free + lambda_busy; }
  Scalar mean_free() const { return Scalar(1) / lambda_free; }
  Scalar mean_busy() const { return Scalar(1) / lambda_busy; }
};

using ChannelParams = ChannelParamsT<double>;

/// Long-run fraction of time the channel is busy.
template <typename Scalar>
Scalar utilization(const ChannelParamsT<Scalar>& ch) {
  return ch.lambda_free / (ch.lambda_free + ch.lambda_busy);
}

namespace detail {

/// (e^{-x} - 1) / x, stable for small x.
template <typename Scalar>
Scalar expm1_neg_over_x(Scalar x) {
  using std::abs;
  using std::expm1;
  if (abs(x) < Scalar(1e-8)) return Scalar(-1) + x / 2 - x * x / 6;
  return expm1(-x) / x;
}

/// t + (e^{-st} - 1)/s, the integral of 1 - e^{-sy} over [0, t].
template <typename Scalar>
Scalar relaxation_integral(Scalar s, Scalar t) {
  return t * (Scalar(1) + expm1_neg_over_x(s * t));
}

template <typename Scalar>
void require_nonnegative_time(Scalar t) {
  if (!(t >= Scalar(0))) throw InvalidArgument("time argument must be >= 0");
}

}  // namespace detail

/// Expected free time over [0, t] given the channel is busy at 0.
template <typename Scalar>
Scalar delta_busy(const ChannelParamsT<Scalar>& ch, Scalar t) {
  detail::require_nonnegative_time(t);
  return (Scalar(1) - utilization(ch)) *
         detail::relaxation_integral(ch.total_rate(), t);
}

/// Expected free time over [0, t] given the channel is free at 0.
template <typename Scalar>
Scalar delta_free(const ChannelParamsT<Scalar>& ch, Scalar t) {
  detail::require_nonnegative_time(t);
  return t - utilization(ch) * detail::relaxation_integral(ch.total_rate(), t);
}

/// P(free at t | free at 0).
template <typename Scalar>
Scalar prob_free_given_free(const ChannelParamsT<Scalar>& ch, Scalar t) {
  using std::exp;
  detail::require_nonnegative_time(t);
  const Scalar u = utilization(ch);
  return (Scalar(1) - u) + u * exp(-ch.total_rate() * t);
}

/// P(free at t | busy at 0).
template <typename Scalar>
Scalar prob_free_given_busy(const ChannelParamsT<Scalar>& ch, Scalar t) {
  using std::expm1;
  detail::require_nonnegative_time(t);
  return -(Scalar(1) - utilization(ch)) * expm1(-ch.total_rate() * t);
}

/// P(free at t | state at 0), state 1 = free.
template <typename Scalar>
Scalar prob_free_given(const ChannelParamsT<Scalar>& ch, int state, Scalar t) {
  return state ? prob_free_given_free(ch, t) : prob_free_given_busy(ch, t);
}

/// Expected free time over [0, t] given the state at 0.
template <typename Scalar>
Scalar delta_given(const ChannelParamsT<Scalar>& ch, int state, Scalar t) {
  return state ? delta_free(ch, t) : delta_busy(ch, t);
}

}  // namespace intersense

#endif  // INTERSENSE_RENEWAL_HPP_
