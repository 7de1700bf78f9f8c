#ifndef INTERSENSE_OUTCOME_TABLE_HPP_
#define INTERSENSE_OUTCOME_TABLE_HPP_

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "intersense/errors.hpp"

namespace intersense {

/// Inter-sensing duration for every joint sensing outcome of N channels.
///
/// Outcomes are bitmasks with channel 0 in the most significant position, so
/// for two channels index 1 is (0,1) (channel 2 free) and index 2 is (1,0).
class OutcomeDurationTable {
 public:
  explicit OutcomeDurationTable(std::size_t channels, double fill = 0.0)
      : channels_(channels), durations_(std::size_t{1} << channels, fill) {
    if (channels == 0 || channels > 4) {
      throw InvalidArgument("outcome tables support 1 to 4 channels");
    }
  }

  std::size_t channels() const { return channels_; }
  std::size_t size() const { return durations_.size(); }

  double& operator[](std::size_t outcome) { return durations_.at(outcome); }
  double operator[](std::size_t outcome) const { return durations_.at(outcome); }

  double& at(std::initializer_list<int> omega) { return durations_.at(index_of(omega)); }
  double at(std::initializer_list<int> omega) const { return durations_.at(index_of(omega)); }

  /// Sensed state of channel i under the given outcome index.
  int sensed(std::size_t outcome, std::size_t channel) const {
    return static_cast<int>((outcome >> (channels_ - 1 - channel)) & 1u);
  }

  std::size_t index_of(std::initializer_list<int> omega) const {
    if (omega.size() != channels_) throw InvalidArgument("outcome length mismatch");
    std::size_t idx = 0;
    for (int s : omega) idx = (idx << 1) | (s ? 1u : 0u);
    return idx;
  }

  /// "(0,1)" style label.
  std::string label(std::size_t outcome) const {
    std::string out = "(";
    for (std::size_t i = 0; i < channels_; ++i) {
      if (i) out += ',';
      out += sensed(outcome, i) ? '1' : '0';
    }
    return out + ")";
  }

  const std::vector<double>& durations() const { return durations_; }

 private:
  std::size_t channels_;
  std::vector<double> durations_;
};

}  // namespace intersense

#endif  // INTERSENSE_OUTCOME_TABLE_HPP_
