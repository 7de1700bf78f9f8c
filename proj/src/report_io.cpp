#include "intersense/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace intersense {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void add(std::vector<ComparisonRow>& rows, const SchemeResult& r, const std::string& channel,
         const std::string& metric, double analytic, const MetricEstimate* est) {
  rows.push_back({std::string(scheme_name(r.scheme)), channel, metric, analytic,
                  est ? est->mean : kNaN, est ? est->std_error : kNaN});
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<ComparisonRow> comparison_rows(const SchemeResult& r) {
  std::vector<ComparisonRow> rows;
  const PerformanceReport* sim = r.simulation ? &*r.simulation : nullptr;
  add(rows, r, "all", "throughput", r.analytic_throughput, sim ? &sim->throughput : nullptr);
  if (sim && sim->search_delay) add(rows, r, "all", "search_delay", kNaN, &*sim->search_delay);

  const std::size_t n = r.i_max.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string ch = std::to_string(i);
    const ChannelMetrics* a = r.analytic.empty() ? nullptr : &r.analytic[i];
    const ChannelReport* s = sim ? &sim->channels[i] : nullptr;
    add(rows, r, ch, "throughput", a ? a->throughput : kNaN, s ? &s->throughput : nullptr);
    add(rows, r, ch, "interference", a ? a->interference_fraction : kNaN,
        s ? &s->interference : nullptr);
    add(rows, r, ch, "overhead", a ? a->overhead_fraction : kNaN, s ? &s->overhead : nullptr);
    add(rows, r, ch, "overhead_aligned", a ? a->aligned_overhead_fraction : kNaN,
        s ? &s->overhead : nullptr);
    add(rows, r, ch, "unexplored", a ? a->unexplored_fraction : kNaN,
        s ? &s->unexplored : nullptr);
    if (!r.analytic_access_interference.empty()) {
      add(rows, r, ch, "access_interference", r.analytic_access_interference[i],
          s ? &s->access_interference : nullptr);
    }
    add(rows, r, ch, "i_max", r.i_max[i], nullptr);
  }
  return rows;
}

std::string policy_csv(const SchemeResult& r) {
  std::ostringstream out;
  if (r.table) {
    out << "outcome,duration" << (r.outcome_feasible.empty() ? "" : ",feasible") << "\n";
    for (std::size_t k = 0; k < r.table->size(); ++k) {
      out << '"' << r.table->label(k) << "\"," << format_number((*r.table)[k]);
      if (!r.outcome_feasible.empty()) out << ',' << (r.outcome_feasible[k] ? 1 : 0);
      out << "\n";
    }
  } else if (r.access) {
    out << "channel,access_duration,capped\n";
    for (std::size_t i = 0; i < r.access->access_durations.size(); ++i) {
      out << i << ',' << format_number(r.access->access_durations[i]) << ','
          << (r.access->capped[i] ? 1 : 0) << "\n";
    }
  } else {
    out << "channel,t_free,t_busy,constraint_active\n";
    for (std::size_t i = 0; i < r.policies.size(); ++i) {
      out << i << ',' << format_number(r.policies[i].t_free) << ','
          << format_number(r.policies[i].t_busy) << ',' << (r.constraint_active[i] ? 1 : 0)
          << "\n";
    }
  }
  return out.str();
}

std::string analytic_csv(const SchemeResult& r) {
  std::ostringstream out;
  out << "channel,throughput,interference,overhead,overhead_aligned,unexplored,i_max\n";
  for (std::size_t i = 0; i < r.i_max.size(); ++i) {
    const ChannelMetrics* a = r.analytic.empty() ? nullptr : &r.analytic[i];
    out << i << ',' << format_number(a ? a->throughput : kNaN) << ','
        << format_number(a ? a->interference_fraction : kNaN) << ','
        << format_number(a ? a->overhead_fraction : kNaN) << ','
        << format_number(a ? a->aligned_overhead_fraction : kNaN) << ','
        << format_number(a ? a->unexplored_fraction : kNaN) << ','
        << format_number(r.i_max[i]) << "\n";
  }
  out << "all," << format_number(r.analytic_throughput) << ",,,,,\n";
  return out.str();
}

std::string simulation_csv(const SchemeResult& r) {
  std::ostringstream out;
  out << "channel,metric,mean,stderr\n";
  if (!r.simulation) return out.str();
  const auto& sim = *r.simulation;
  auto row = [&](const std::string& ch, const char* metric, const MetricEstimate& m) {
    out << ch << ',' << metric << ',' << format_number(m.mean) << ','
        << format_number(m.std_error) << "\n";
  };
  row("all", "throughput", sim.throughput);
  if (sim.search_delay) row("all", "search_delay", *sim.search_delay);
  for (std::size_t i = 0; i < sim.channels.size(); ++i) {
    const auto& c = sim.channels[i];
    const std::string ch = std::to_string(i);
    row(ch, "throughput", c.throughput);
    row(ch, "interference", c.interference);
    row(ch, "overhead", c.overhead);
    row(ch, "unexplored", c.unexplored);
    row(ch, "idle", c.idle);
    row(ch, "free_fraction", c.free_fraction);
    row(ch, "access_interference", c.access_interference);
  }
  return out.str();
}

std::string comparison_csv(std::span<const SchemeResult> results) {
  std::ostringstream out;
  out << "scheme,channel,metric,analytic,empirical,stderr\n";
  for (const auto& r : results) {
    for (const auto& row : comparison_rows(r)) {
      out << row.scheme << ',' << row.channel << ',' << row.metric << ','
          << format_number(row.analytic) << ',' << format_number(row.empirical) << ','
          << format_number(row.std_error) << "\n";
    }
  }
  return out.str();
}

std::string summary_text(const Scenario& sc, std::span<const SchemeResult> results) {
  std::ostringstream out;
  out << "scenario: " << (sc.name.empty() ? "(unnamed)" : sc.name) << "\n";
  out << "channels: " << sc.channels.size() << "\n";
  for (const auto& r : results) {
    out << "\n[" << scheme_name(r.scheme) << "]\n";
    out << "sensing time: " << format_number(r.sensing_time) << "\n";
    if (!std::isnan(r.analytic_throughput)) {
      out << "R analytic: " << format_number(r.analytic_throughput) << "\n";
    }
    if (r.simulation) {
      out << "R simulated: " << format_number(r.simulation->throughput.mean) << " +/- "
          << format_number(r.simulation->throughput.std_error) << " (" << r.simulation->runs
          << " runs)\n";
      if (r.simulation->search_delay) {
        out << "mean search delay: " << format_number(r.simulation->search_delay->mean) << "\n";
      }
    }
    if (r.table) {
      out << "durations:";
      for (std::size_t k = 0; k < r.table->size(); ++k) {
        out << ' ' << r.table->label(k) << '=' << format_number((*r.table)[k]);
      }
      out << "\n";
    }
    for (std::size_t i = 0; i < r.policies.size(); ++i) {
      out << "channel " << i << ": T_free=" << format_number(r.policies[i].t_free)
          << " T_busy=" << format_number(r.policies[i].t_busy) << "\n";
    }
    if (r.access) {
      for (std::size_t i = 0; i < r.access->access_durations.size(); ++i) {
        out << "channel " << i << ": access=" << format_number(r.access->access_durations[i])
            << "\n";
      }
    }
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  }
  return out.str();
}

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& text) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace intersense
