#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwave/evolver.hpp"
#include "rwave/potential.hpp"

namespace rwave {

// Parse/validation failure; carries "file:line: field: message" text.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PotentialSpec {
  std::string kind = "zero";  // zero|manufactured_star|gaussian|power_well|tabulated
  double alpha = 1.0;         // gaussian / power_well prefactor
  double sigma = 2.0;         // gaussian width
  double beta = 2.5;          // power_well decay exponent
  double scale = 1.0;         // optional overall multiplier
  std::string file;           // tabulated source

  Potential build() const;
};

struct DataSpec {
  std::string kind = "zero";  // zero|random_bumps|gaussian|bump|steady_plus_bump|file
  double r_max = 10.0;        // data grid extent
  double amplitude = 1.0;     // gaussian: v = amplitude * r * exp(-(r/width)^2)
  double width = 1.0;
  double r_lo = 2.0;          // bump window and reduced-norm target
  double r_hi = 4.0;
  double norm = 0.3;
  double slope = 1.0;         // steady_plus_bump: census entry selector (by a)
  std::string file;           // rows "r v vt"
};

struct SolverSpec {
  double h = 0.01;
  double cfl = 0.5;
  double T = 10.0;
  std::string boundary = "causal_pad";  // causal_pad|fixed_domain
  double margin = 2.0;
  double r_max = 0.0;
  bool nonlinearity = true;
  double blowup_cap = 1e6;

  SolverConfig to_config() const;
};

// One declarative run description.  The text form is sectioned key=value
// (exact grammar in the README); unknown sections or keys are hard errors.
struct Scenario {
  int schema_version = 1;
  std::string experiment;  // evolve|channel-test|steady-census|bs-spectrum|
                           // resolve|support-growth|scale-robustness|dependence
  std::uint64_t seed = 0;

  PotentialSpec potential;
  DataSpec data;
  std::optional<DataSpec> perturbation;  // dependence only
  SolverSpec solver;

  // [params] — which keys are legal depends on the experiment.
  int snapshots = 21;                              // evolve
  int trials = 200;                                // channel-test
  double R_max = 5.0;                              // channel-test cone radius draw
  double a_max = 5.0, step = 0.05;                 // census scan
  double r_big = 500.0, rep_dr = 0.01;             // census integration/profile
  double r_spec = 100.0;                           // bs-spectrum
  int n_quad = 800, k_eigs = 8;                    // bs-spectrum
  std::vector<double> ladder = {10.0, 20.0, 30.0, 40.0};  // resolve
  double a_buf = 5.0, a_mismatch = 5.0;            // resolve windows
  double slack = 0.10, final_factor = 0.25;        // resolve assertions
  std::vector<double> lambdas = {0.01, 1.0, 1000.0};  // scale-robustness
  std::vector<double> eps = {1e-2, 1e-3, 1e-4};    // dependence
  double interior_r = 0.0;                         // dependence causal window
};

// Parse scenario text; `origin` names the source in diagnostics.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");

Scenario load_scenario(const std::string& path);

// Canonical text form: fixed section/key order, defaults materialized,
// doubles at 17 significant digits.  serialize(parse(x)) is a fixed point.
std::string serialize_scenario(const Scenario& sc);

}  // namespace rwave
