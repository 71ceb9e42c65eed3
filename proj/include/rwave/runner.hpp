#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwave/scenario.hpp"
#include "rwave/state.hpp"
#include "rwave/steady.hpp"

namespace rwave {

// Result of executing one scenario.  The record splits into a meta object
// (timestamps, wall time — excluded from the determinism contract) and a
// body that is byte-identical across runs of an equal scenario.
struct RunOutcome {
  nlohmann::ordered_json record;       // {"meta": {...}, "body": {...}}
  bool ok = true;                      // every experiment assertion held
  std::vector<std::string> failures;   // names of failed assertions
};

RunOutcome run_scenario(const Scenario& sc);

// Write record.json (one line, atomically) plus one sidecar .dat file per
// series found at the top level of body.results.
void write_outcome(const RunOutcome& outcome, const std::string& out_dir);

// Extract a named series from a persisted record into a plain-text table
// (header line + rows at 17 significant digits).  Throws on unknown series.
void emit_plot_data(const std::string& record_path, const std::string& series,
                    const std::string& out_path);

// Fast self-contained invariant battery (used by --check); prints one line
// per check and returns the number of failures.
int run_check(std::ostream& log);

// Deterministic initial data for a spec.  steady_plus_bump requires the
// census of the active potential.
ReducedState build_data(const DataSpec& d, double h, const Potential& V, std::uint64_t seed,
                        const CensusResult* census = nullptr);

}  // namespace rwave
