#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwave/runner.hpp"
#include "rwave/scenario.hpp"
#include "rwave/version.hpp"

namespace {

struct CommonArgs {
  std::string scenario;
  std::string out = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool check = false;
};

int run_one(const std::string& forced_experiment, const CommonArgs& args) {
  if (args.check) return rwave::run_check(std::cout) == 0 ? 0 : 1;
  if (args.scenario.empty()) {
    std::cerr << "error: --scenario is required (or use --check)\n";
    return 2;
  }
  rwave::Scenario sc;
  try {
    sc = rwave::load_scenario(args.scenario);
  } catch (const rwave::ScenarioError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  if (!forced_experiment.empty() && sc.experiment != forced_experiment) {
    std::cerr << "error: scenario declares experiment '" << sc.experiment
              << "' but the '" << forced_experiment << "' subcommand was invoked\n";
    return 2;
  }
  if (args.seed_set) sc.seed = args.seed;

  rwave::RunOutcome outcome;
  try {
    outcome = rwave::run_scenario(sc);
  } catch (const rwave::ScenarioError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  try {
    rwave::write_outcome(outcome, args.out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  if (!outcome.ok) {
    std::cerr << "assertion failure:";
    for (const auto& f : outcome.failures) std::cerr << " " << f;
    std::cerr << "\n";
    return 1;
  }
  std::cout << "record written to " << args.out << "/record.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rwave: a numerical laboratory for the radial defocusing "
               "energy-critical wave equation with potential"};
  app.set_version_flag("--version", rwave::artifact_version());
  app.require_subcommand(0, 1);

  bool top_check = false;
  app.add_flag("--check", top_check, "run the built-in invariant suite and exit");

  const std::vector<std::string> experiments = {
      "evolve",  "channel-test",   "steady-census",    "bs-spectrum",
      "resolve", "support-growth", "scale-robustness", "dependence"};

  struct SubSpec {
    CLI::App* sub = nullptr;
    CommonArgs args;
    std::string forced;
  };
  std::vector<SubSpec> subs(experiments.size() + 1);

  auto wire = [](CLI::App* sub, CommonArgs& args) {
    sub->add_option("--scenario", args.scenario, "scenario file to run");
    sub->add_option("--out", args.out, "output directory for the record and series files");
    sub->add_option("--seed", args.seed, "override the scenario seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    sub->add_flag("--check", args.check, "run the built-in invariant suite instead");
  };

  subs[0].sub = app.add_subcommand("run", "run a scenario with its declared experiment");
  subs[0].forced = "";
  wire(subs[0].sub, subs[0].args);
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    auto& spec = subs[i + 1];
    spec.forced = experiments[i];
    spec.sub = app.add_subcommand(experiments[i],
                                  "run a scenario declaring the " + experiments[i] +
                                      " experiment");
    wire(spec.sub, spec.args);
  }

  std::string rec_path, series_name, plot_out = "series.dat";
  CLI::App* emit = app.add_subcommand("emit-plot-data",
                                      "extract a stored series as a plain-text table");
  emit->add_option("--record", rec_path, "record.json produced by a run")->required();
  emit->add_option("--series", series_name, "series name to extract")->required();
  emit->add_option("--out", plot_out, "output file path");

  CLI11_PARSE(app, argc, argv);

  if (top_check) return rwave::run_check(std::cout) == 0 ? 0 : 1;

  if (emit->parsed()) {
    try {
      rwave::emit_plot_data(rec_path, series_name, plot_out);
    } catch (const std::exception& err) {
      std::cerr << "error: " << err.what() << "\n";
      return 1;
    }
    std::cout << "series written to " << plot_out << "\n";
    return 0;
  }

  for (const auto& spec : subs)
    if (spec.sub && spec.sub->parsed()) return run_one(spec.forced, spec.args);

  std::cout << app.help();
  return 0;
}
