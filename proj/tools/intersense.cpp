// intersense: optimize and simulate secondary-user sensing schedules.
//
//   intersense run SCENARIO.json -o OUTDIR [--scheme NAME] [flags]
//   intersense compare SCENARIO.json --schemes a,b,... -o OUTDIR [flags]
//
// Exit codes: 0 ok, 2 config error, 3 infeasible, 4 numeric failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "intersense/errors.hpp"
#include "intersense/report_io.hpp"
#include "intersense/runner.hpp"
#include "intersense/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumeric = 4;

struct CommonFlags {
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<double> horizon;
  std::optional<double> grid_step;
  bool no_sim = false;
  unsigned threads = 1;

  intersense::RunOptions options() const {
    intersense::RunOptions o;
    o.simulate = !no_sim;
    o.seed = seed;
    o.runs = runs;
    o.horizon = horizon;
    o.grid_step = grid_step;
    o.threads = threads;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("scenario", f.scenario, "scenario JSON file")->required();
  cmd->add_option("-o,--out", f.out_dir, "output directory")->required();
  cmd->add_option("--seed", f.seed, "simulation seed");
  cmd->add_option("--runs", f.runs, "independent simulation runs")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", f.horizon, "simulated time per run")->check(CLI::PositiveNumber);
  cmd->add_option("--grid-step", f.grid_step, "coarse grid step")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  cmd->add_flag("--no-sim", f.no_sim, "skip simulation");
}

void write_outputs(const CommonFlags& f, const intersense::Scenario& sc,
                   const std::vector<intersense::SchemeResult>& results, bool single) {
  using namespace intersense;
  if (single) {
    const auto& r = results.front();
    write_file(f.out_dir, "policy.csv", policy_csv(r));
    write_file(f.out_dir, "analytic.csv", analytic_csv(r));
    if (r.simulation) write_file(f.out_dir, "simulation.csv", simulation_csv(r));
  }
  write_file(f.out_dir, "comparison.csv", comparison_csv(results));
  const std::string summary = summary_text(sc, results);
  write_file(f.out_dir, "summary.txt", summary);
  std::cout << summary;
}

int execute(const CommonFlags& f, const std::vector<std::string>& scheme_names,
            bool single) {
  using namespace intersense;
  try {
    const Scenario sc = load_scenario(f.scenario);
    std::vector<Scheme> schemes;
    if (scheme_names.empty()) {
      schemes.push_back(sc.scheme);
    } else {
      for (const auto& name : scheme_names) schemes.push_back(parse_scheme(name));
    }
    std::vector<SchemeResult> results;
    for (Scheme s : schemes) results.push_back(run_scheme(sc, s, f.options()));
    write_outputs(f, sc, results, single);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Unbounded& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensing schedules for opportunistic access to unslotted primary channels"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string run_scheme;
  auto* run = app.add_subcommand("run", "optimize one scheme and validate it by simulation");
  add_common(run, run_flags);
  run->add_option("--scheme", run_scheme, "override the scenario's scheme");

  CommonFlags cmp_flags;
  std::vector<std::string> cmp_schemes;
  auto* cmp = app.add_subcommand("compare", "run several schemes on one scenario");
  add_common(cmp, cmp_flags);
  cmp->add_option("--schemes", cmp_schemes, "comma-separated scheme names")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run) {
    std::vector<std::string> names;
    if (!run_scheme.empty()) names.push_back(run_scheme);
    return execute(run_flags, names, true);
  }
  return execute(cmp_flags, cmp_schemes, cmp_schemes.size() == 1);
}
