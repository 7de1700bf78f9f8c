#include "intersense/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "intersense/errors.hpp"

namespace intersense {

using nlohmann::json;

namespace {

constexpr std::pair<Scheme, std::string_view> kSchemeNames[] = {
    {Scheme::kLimitedSensing, "limited-sensing"},
    {Scheme::kSingleBaseline, "single-period-baseline"},
    {Scheme::kFullMyopic, "full-myopic"},
    {Scheme::kFullOptimal, "full-optimal"},
    {Scheme::kLimitedAccess, "limited-access"},
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("field " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "/" + key, "missing");
  return obj.at(key);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0)) fail(path, "must be > 0");
  return v;
}

int integer(const json& j, const std::string& path, int min) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min || v > 1'000'000'000) fail(path, "must be >= " + std::to_string(min));
  return static_cast<int>(v);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(path + "/" + key, "unknown field");
    }
  }
}

SensingErrorModel parse_errors(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"p_fa", "p_md"});
  const double pfa = j.contains("p_fa") ? number(j["p_fa"], path + "/p_fa") : 0.0;
  const double pmd = j.contains("p_md") ? number(j["p_md"], path + "/p_md") : 0.0;
  if (pfa < 0 || pfa > 1) fail(path + "/p_fa", "must be in [0, 1]");
  if (pmd < 0 || pmd > 1) fail(path + "/p_md", "must be in [0, 1]");
  return SensingErrorModel(pfa, pmd);
}

Scenario from_json(const json& root) {
  require_object(root, "");
  reject_unknown(root, "",
                 {"name", "scheme", "channels", "sensing_errors", "sensing_time", "detector",
                  "interference_limit", "grid", "simulation", "access_cap"});
  Scenario s;
  if (root.contains("name")) {
    if (!root["name"].is_string()) fail("/name", "expected a string");
    s.name = root["name"].get<std::string>();
  }

  const json& scheme = require(root, "", "scheme");
  if (!scheme.is_string()) fail("/scheme", "expected a string");
  try {
    s.scheme = parse_scheme(scheme.get<std::string>());
  } catch (const ConfigError& e) {
    fail("/scheme", e.what());
  }

  const json& chs = require(root, "", "channels");
  if (!chs.is_array()) fail("/channels", "expected an array");
  if (chs.empty()) fail("/channels", "at least one channel is required");
  for (std::size_t i = 0; i < chs.size(); ++i) {
    const std::string p = "/channels/" + std::to_string(i);
    require_object(chs[i], p);
    reject_unknown(chs[i], p, {"lambda_free", "lambda_busy"});
    const double lf = positive(require(chs[i], p, "lambda_free"), p + "/lambda_free");
    const double lb = positive(require(chs[i], p, "lambda_busy"), p + "/lambda_busy");
    s.channels.emplace_back(lf, lb);
  }
  const std::size_t n = s.channels.size();

  if (root.contains("sensing_errors")) {
    const json& e = root["sensing_errors"];
    if (e.is_array()) {
      if (e.size() != n) fail("/sensing_errors", "needs one entry per channel");
      for (std::size_t i = 0; i < n; ++i) {
        s.errors.push_back(parse_errors(e[i], "/sensing_errors/" + std::to_string(i)));
      }
    } else {
      s.errors.assign(n, parse_errors(e, "/sensing_errors"));
    }
  } else {
    s.errors.assign(n, SensingErrorModel{});
  }

  if (root.contains("sensing_time") == root.contains("detector")) {
    fail("/sensing_time", "give exactly one of sensing_time and detector");
  }
  if (root.contains("sensing_time")) {
    const double ts = number(root["sensing_time"], "/sensing_time");
    if (ts < 0) fail("/sensing_time", "must be >= 0");
    s.sensing_time = ts;
  } else {
    const json& d = root["detector"];
    require_object(d, "/detector");
    reject_unknown(d, "/detector", {"sampling_freq", "snr"});
    s.detector = DetectorConfig{
        positive(require(d, "/detector", "sampling_freq"), "/detector/sampling_freq"),
        positive(require(d, "/detector", "snr"), "/detector/snr")};
    for (std::size_t i = 0; i < n; ++i) {
      if (s.errors[i].p_fa <= 0 || s.errors[i].p_md <= 0) {
        fail("/sensing_errors", "a detector needs non-zero p_fa and p_md on every channel");
      }
    }
  }

  const json& lim = require(root, "", "interference_limit");
  require_object(lim, "/interference_limit");
  reject_unknown(lim, "/interference_limit", {"fraction_of_u", "absolute"});
  if (lim.contains("fraction_of_u") == lim.contains("absolute")) {
    fail("/interference_limit", "give exactly one of fraction_of_u and absolute");
  }
  if (lim.contains("fraction_of_u")) {
    s.limit.fraction_of_u =
        positive(lim["fraction_of_u"], "/interference_limit/fraction_of_u");
  } else {
    const json& a = lim["absolute"];
    if (!a.is_array() || a.size() != n) {
      fail("/interference_limit/absolute", "needs one value per channel");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::string p = "/interference_limit/absolute/" + std::to_string(i);
      const double v = positive(a[i], p);
      if (v >= 1) fail(p, "must be < 1");
      s.limit.absolute.push_back(v);
    }
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    require_object(g, "/grid");
    reject_unknown(g, "/grid",
                   {"divisions", "t_min", "t_max", "step", "refine_levels", "refine_shrink"});
    if (g.contains("divisions")) s.grid.divisions = integer(g["divisions"], "/grid/divisions", 1);
    if (g.contains("t_min")) s.grid.t_min = positive(g["t_min"], "/grid/t_min");
    if (g.contains("t_max")) s.grid.t_max = positive(g["t_max"], "/grid/t_max");
    if (g.contains("step")) s.grid.step = positive(g["step"], "/grid/step");
    if (g.contains("refine_levels")) {
      s.grid.refine_levels = integer(g["refine_levels"], "/grid/refine_levels", 0);
    }
    if (g.contains("refine_shrink")) {
      const double r = positive(g["refine_shrink"], "/grid/refine_shrink");
      if (r >= 1) fail("/grid/refine_shrink", "must be in (0, 1)");
      s.grid.refine_shrink = r;
    }
  }

  if (root.contains("simulation")) {
    const json& m = root["simulation"];
    require_object(m, "/simulation");
    reject_unknown(m, "/simulation", {"horizon", "warmup", "runs", "seed"});
    SimulationConfig sim;
    if (m.contains("horizon")) sim.horizon = positive(m["horizon"], "/simulation/horizon");
    if (m.contains("warmup")) {
      const double w = number(m["warmup"], "/simulation/warmup");
      if (w < 0) fail("/simulation/warmup", "must be >= 0");
      sim.warmup = w;
    }
    if (m.contains("runs")) sim.runs = integer(m["runs"], "/simulation/runs", 1);
    if (m.contains("seed")) {
      if (!m["seed"].is_number_unsigned()) fail("/simulation/seed", "expected a non-negative integer");
      sim.seed = m["seed"].get<std::uint64_t>();
    }
    if (sim.horizon && sim.warmup && !(*sim.horizon > *sim.warmup)) {
      fail("/simulation/horizon", "must exceed warmup");
    }
    s.simulation = sim;
  }

  if (root.contains("access_cap")) s.access_cap = positive(root["access_cap"], "/access_cap");

  s.check_scheme(s.scheme);
  return s;
}

json errors_to_json(const SensingErrorModel& e) { return {{"p_fa", e.p_fa}, {"p_md", e.p_md}}; }

}  // namespace

std::string_view scheme_name(Scheme s) {
  for (const auto& [k, name] : kSchemeNames) {
    if (k == s) return name;
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (const auto& [k, n] : kSchemeNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

std::vector<double> InterferenceLimit::resolve(const std::vector<ChannelParams>& chs) const {
  if (fraction_of_u) {
    std::vector<double> out;
    for (const auto& ch : chs) out.push_back(*fraction_of_u * utilization(ch));
    return out;
  }
  if (absolute.size() != chs.size()) throw ConfigError("interference limit count mismatch");
  return absolute;
}

double Scenario::resolved_sensing_time() const {
  if (sensing_time) return *sensing_time;
  if (!detector) throw ConfigError("scenario has neither sensing_time nor detector");
  const DetectorSpec det(detector->sampling_freq, detector->snr);
  double ts = 0.0;
  for (const auto& e : errors) ts = std::max(ts, required_sensing_time(det, e.p_fa, e.p_md));
  return ts;
}

void Scenario::check_scheme(Scheme s) const {
  const std::string name(scheme_name(s));
  if (channels.empty()) throw ConfigError("field /channels: at least one channel is required");
  switch (s) {
    case Scheme::kFullOptimal:
      if (channels.size() != 2) {
        throw ConfigError("scheme " + name + " needs exactly 2 channels");
      }
      for (const auto& e : errors) {
        if (!e.perfect()) throw ConfigError("scheme " + name + " needs perfect sensing");
      }
      break;
    case Scheme::kFullMyopic:
      if (channels.size() > 4) throw ConfigError("scheme " + name + " supports up to 4 channels");
      break;
    case Scheme::kLimitedAccess: {
      for (const auto& e : errors) {
        if (!e.perfect()) throw ConfigError("scheme " + name + " needs perfect sensing");
      }
      if (!(resolved_sensing_time() > 0)) {
        throw ConfigError("scheme " + name + " needs sensing_time > 0");
      }
      const auto lim = interference_limits();
      for (std::size_t i = 0; i < channels.size(); ++i) {
        if (lim[i] >= utilization(channels[i]) && !access_cap) {
          throw ConfigError("scheme " + name + ": channel " + std::to_string(i) +
                            " has a limit not below its busy fraction and no access_cap");
        }
      }
      break;
    }
    default:
      break;
  }
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("syntax: ") + e.what());
  }
  return from_json(root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& s) {
  json root;
  root["name"] = s.name;
  root["scheme"] = std::string(scheme_name(s.scheme));
  root["channels"] = json::array();
  for (const auto& ch : s.channels) {
    root["channels"].push_back({{"lambda_free", ch.lambda_free}, {"lambda_busy", ch.lambda_busy}});
  }
  root["sensing_errors"] = json::array();
  for (const auto& e : s.errors) root["sensing_errors"].push_back(errors_to_json(e));
  if (s.sensing_time) root["sensing_time"] = *s.sensing_time;
  if (s.detector) {
    root["detector"] = {{"sampling_freq", s.detector->sampling_freq}, {"snr", s.detector->snr}};
  }
  if (s.limit.fraction_of_u) {
    root["interference_limit"] = {{"fraction_of_u", *s.limit.fraction_of_u}};
  } else {
    root["interference_limit"] = {{"absolute", s.limit.absolute}};
  }
  json g = json::object();
  if (s.grid.divisions) g["divisions"] = *s.grid.divisions;
  if (s.grid.t_min) g["t_min"] = *s.grid.t_min;
  if (s.grid.t_max) g["t_max"] = *s.grid.t_max;
  if (s.grid.step) g["step"] = *s.grid.step;
  if (s.grid.refine_levels) g["refine_levels"] = *s.grid.refine_levels;
  if (s.grid.refine_shrink) g["refine_shrink"] = *s.grid.refine_shrink;
  if (!g.empty()) root["grid"] = g;
  if (s.simulation) {
    json m = {{"runs", s.simulation->runs}, {"seed", s.simulation->seed}};
    if (s.simulation->horizon) m["horizon"] = *s.simulation->horizon;
    if (s.simulation->warmup) m["warmup"] = *s.simulation->warmup;
    root["simulation"] = m;
  }
  if (s.access_cap) root["access_cap"] = *s.access_cap;
  return root.dump(2) + "\n";
}

}  // namespace intersense
