#include "intersense/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace intersense {

SensingErrorModel::SensingErrorModel(double false_alarm, double misdetection)
    : p_fa(false_alarm), p_md(misdetection) {
  if (!(p_fa >= 0.0 && p_fa <= 1.0) || !(p_md >= 0.0 && p_md <= 1.0)) {
    throw InvalidArgument("sensing error probabilities must lie in [0, 1]");
  }
}

DetectorSpec::DetectorSpec(double fs, double snr_linear)
    : sampling_freq(fs), snr(snr_linear) {
  if (!(fs > 0) || !(snr_linear > 0)) {
    throw InvalidArgument("detector sampling frequency and SNR must be > 0");
  }
}

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation to the standard normal quantile.
double normal_quantile_approx(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - kLow) {
    const double q = std::sqrt(-2 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double inverse_q(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("inverse_q needs p in (0, 1)");
  if (p == 0.5) return 0.0;
  // Q^{-1}(p) = Phi^{-1}(1 - p) = -Phi^{-1}(p).
  double x = -normal_quantile_approx(p);
  // Newton on Q(x) - p; Q'(x) = -phi(x).
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
  x += (gaussian_tail(x) - p) / pdf;
  return x;
}

double required_sensing_time(const DetectorSpec& det, double p_fa, double p_md) {
  if (!(p_fa > 0.0 && p_fa < 1.0) || !(p_md > 0.0 && p_md < 1.0)) {
    throw InvalidArgument("required_sensing_time needs p_fa, p_md in (0, 1)");
  }
  const double bracket =
      inverse_q(p_fa) - inverse_q(1.0 - p_md) * std::sqrt(1.0 + 2.0 * det.snr);
  return 2.0 / det.sampling_freq * bracket * bracket / (det.snr * det.snr);
}

std::optional<std::string> sensing_time_warning(std::span<const ChannelParams> channels,
                                                double sensing_time) {
  if (channels.empty()) return std::nullopt;
  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& ch : channels) {
    shortest = std::min({shortest, ch.mean_free(), ch.mean_busy()});
  }
  if (sensing_time <= 0.1 * shortest) return std::nullopt;
  std::ostringstream os;
  os << "sensing time " << sensing_time
     << " is not small against the shortest mean sojourn " << shortest
     << "; the channel may change state while being sensed";
  return os.str();
}

}  // namespace intersense
