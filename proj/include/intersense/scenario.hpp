// Scenario files: channels, sensing, interference limits, scheme and search
// and simulation settings, stored as JSON.
//
// {
//   "name": "five_channels_tight",
//   "scheme": "limited-sensing",
//   "channels": [{"lambda_free": 0.2, "lambda_busy": 1.0}, ...],
//   "sensing_errors": {"p_fa": 0, "p_md": 0},          // or one object per channel
//   "sensing_time": 0.01,                              // or "detector": {...}
//   "interference_limit": {"fraction_of_u": 0.25},     // or {"absolute": [...]}
//   "grid": {"divisions": 400},                        // optional
//   "simulation": {"horizon": 1e5, "runs": 20, "seed": 1},  // optional
//   "access_cap": 500                                  // optional, limited-access only
// }

#ifndef INTERSENSE_SCENARIO_HPP_
#define INTERSENSE_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intersense/grid.hpp"
#include "intersense/renewal.hpp"
#include "intersense/sensing.hpp"

namespace intersense {

enum class Scheme {
  kLimitedSensing,
  kSingleBaseline,
  kFullMyopic,
  kFullOptimal,
  kLimitedAccess,
};

std::string_view scheme_name(Scheme s);
/// Throws ConfigError for unknown names.
Scheme parse_scheme(std::string_view name);

struct InterferenceLimit {
  std::optional<double> fraction_of_u;
  std::vector<double> absolute;

  std::vector<double> resolve(const std::vector<ChannelParams>& chs) const;
};

/// Energy detector from which T_s is derived: the largest time any channel
/// needs to reach its (p_fa, p_md).
struct DetectorConfig {
  double sampling_freq = 0;
  double snr = 0;
};

/// Grid overrides; unset fields fall back to default_grid.
struct GridConfig {
  std::optional<int> divisions;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<double> step;
  std::optional<int> refine_levels;
  std::optional<double> refine_shrink;
};

struct SimulationConfig {
  std::optional<double> horizon;  // default: 2000 mean cycles of the slowest channel
  std::optional<double> warmup;   // default: default_warmup
  int runs = 20;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name;
  Scheme scheme = Scheme::kLimitedSensing;
  std::vector<ChannelParams> channels;
  std::vector<SensingErrorModel> errors;  // one per channel
  std::optional<double> sensing_time;
  std::optional<DetectorConfig> detector;
  InterferenceLimit limit;
  GridConfig grid;
  std::optional<SimulationConfig> simulation;
  std::optional<double> access_cap;

  /// T_s given directly or derived from the detector.
  double resolved_sensing_time() const;
  std::vector<double> interference_limits() const { return limit.resolve(channels); }
  /// Throws ConfigError when the scenario cannot run `s`.
  void check_scheme(Scheme s) const;
};

/// Parses and validates; errors name the line (syntax) or the field path.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
/// Canonical JSON text; parse_scenario(serialize_scenario(s)) serializes
/// to the same text.
std::string serialize_scenario(const Scenario& s);

}  // namespace intersense

#endif  // INTERSENSE_SCENARIO_HPP_
