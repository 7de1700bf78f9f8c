#ifndef INTERSENSE_SENSING_HPP_
#define INTERSENSE_SENSING_HPP_

#include <optional>
#include <span>
#include <string>

#include "intersense/renewal.hpp"

namespace intersense {

/// Per-channel sensing error probabilities.
struct SensingErrorModel {
  double p_fa = 0.0;  // P(sensed busy | free)
  double p_md = 0.0;  // P(sensed free | busy)

  SensingErrorModel() = default;
  SensingErrorModel(double false_alarm, double misdetection);

  bool perfect() const { return p_fa == 0.0 && p_md == 0.0; }
};

/// Energy detector parameters.
struct DetectorSpec {
  double sampling_freq;  // samples per time unit
  double snr;            // linear power ratio

  DetectorSpec(double fs, double snr_linear);
};

/// Standard Gaussian tail probability Q(x) = P(Z > x).
double gaussian_tail(double x);

/// x such that Q(x) = p, for p in (0, 1).
double inverse_q(double p);

/// Minimum energy-detector sensing time achieving (p_fa, p_md).
double required_sensing_time(const DetectorSpec& det, double p_fa, double p_md);

/// Warning text when T_s is not small against the mean sojourn times
/// (threshold 0.1 * shortest mean), or nullopt.
std::optional<std::string> sensing_time_warning(std::span<const ChannelParams> channels,
                                                double sensing_time);

}  // namespace intersense

#endif  // INTERSENSE_SENSING_HPP_
