#include "rwave/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rwave/dalembert.hpp"
#include "rwave/energy.hpp"
#include "rwave/evolver.hpp"
#include "rwave/resolution.hpp"
#include "rwave/rng.hpp"
#include "rwave/spectrum.hpp"
#include "rwave/steady.hpp"
#include "rwave/version.hpp"

namespace rwave {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json make_series(std::vector<std::string> columns, std::vector<std::string> units,
                 std::vector<std::vector<double>> rows) {
  json s;
  s["columns"] = std::move(columns);
  s["units"] = std::move(units);
  s["rows"] = std::move(rows);
  return s;
}

double interp_profile(const std::vector<double>& r, const std::vector<double>& w, double c,
                      double x) {
  if (r.size() < 2 || x >= r.back()) return c;
  if (x <= r.front()) return w.front();
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - r.begin());
  const double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
  return w[i - 1] + t * (w[i] - w[i - 1]);
}

void add_bump(ReducedState& s, double r_lo, double r_hi, double norm) {
  if (!(r_hi > r_lo)) throw ScenarioError("bump window needs r_hi > r_lo");
  ReducedState b = ReducedState::zero(s.grid);
  const double mid = 0.5 * (r_lo + r_hi), half = 0.5 * (r_hi - r_lo);
  for (std::size_t j = 1; j < s.grid.n; ++j) {
    const double x = (s.grid.r(j) - mid) / half;
    if (std::abs(x) < 1.0) b.v[j] = std::exp(-1.0 / (1.0 - x * x));
  }
  const double d = annulus_distance(b, ReducedState::zero(s.grid), 0.0, s.grid.r_max());
  if (!(d > 0.0)) throw ScenarioError("bump window does not overlap the grid");
  const double scale = norm / d;
  for (std::size_t j = 0; j < s.grid.n; ++j) s.v[j] += scale * b.v[j];
}

}  // namespace

ReducedState build_data(const DataSpec& d, double h, const Potential& V, std::uint64_t seed,
                        const CensusResult* census) {
  (void)V;  // data families are potential-independent; kept for interface symmetry
  const RadialGrid grid = RadialGrid::with_rmax(h, d.r_max);
  ReducedState s = ReducedState::zero(grid);
  if (d.kind == "zero") {
    return s;
  }
  if (d.kind == "random_bumps") {
    SeededRng rng(seed);
    return random_bump_data(grid, rng);
  }
  if (d.kind == "gaussian") {
    for (std::size_t j = 1; j < grid.n; ++j) {
      const double r = grid.r(j);
      const double q = r / d.width;
      s.v[j] = d.amplitude * r * std::exp(-q * q);
    }
    return s;
  }
  if (d.kind == "bump") {
    add_bump(s, d.r_lo, d.r_hi, d.norm);
    return s;
  }
  if (d.kind == "steady_plus_bump") {
    if (!census) throw ScenarioError("steady_plus_bump data needs a census");
    const SteadyState* best = nullptr;
    for (const auto& e : census->states)
      if (!best || std::abs(e.a - d.slope) < std::abs(best->a - d.slope)) best = &e;
    if (!best) throw ScenarioError("census is empty");
    for (std::size_t j = 1; j < grid.n; ++j)
      s.v[j] = interp_profile(best->r, best->w, best->c, grid.r(j));
    add_bump(s, d.r_lo, d.r_hi, d.norm);
    return s;
  }
  if (d.kind == "file") {
    std::ifstream in(d.file);
    if (!in) throw ScenarioError(d.file + ": cannot open data file");
    std::vector<double> rr, vv, tt;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
      ++ln;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream row(line);
      double r, v, vt;
      if (!(row >> r >> v >> vt))
        throw ScenarioError(d.file + ":" + std::to_string(ln) + ": expected 'r v vt' row");
      double extra;
      if (row >> extra)
        throw ScenarioError(d.file + ":" + std::to_string(ln) + ": too many columns");
      if (!rr.empty() && r <= rr.back())
        throw ScenarioError(d.file + ":" + std::to_string(ln) + ": radii must increase");
      rr.push_back(r);
      vv.push_back(v);
      tt.push_back(vt);
    }
    if (rr.size() < 2 || rr.front() != 0.0)
      throw ScenarioError(d.file + ": need at least two rows starting at r = 0");
    for (std::size_t j = 1; j < grid.n; ++j) {
      s.v[j] = interp_profile(rr, vv, vv.back(), grid.r(j));
      s.vt[j] = interp_profile(rr, tt, tt.back(), grid.r(j));
    }
    return s;
  }
  throw ScenarioError("unknown data kind '" + d.kind + "'");
}

namespace {

struct ExpOut {
  json results;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

ExpOut run_evolve(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  const ReducedState data = build_data(sc.data, sc.solver.h, V, sc.seed);
  const SolverConfig cfg = sc.solver.to_config();
  std::vector<double> snaps;
  for (int k = 0; k < sc.snapshots; ++k)
    snaps.push_back(cfg.T * static_cast<double>(k) / static_cast<double>(sc.snapshots - 1));
  const Trajectory traj = evolve(data, CoefficientField::static_v(V), cfg, snaps);

  out.results["status"] =
      traj.status == Trajectory::Status::Completed ? "completed" : "blow_up";
  if (traj.status == Trajectory::Status::BlowUp) {
    out.results["blow_t"] = traj.blow_t;
    out.results["blow_r"] = traj.blow_r;
    out.failures.push_back("completed");
    return out;
  }
  const double E0 = traj.energy.empty() ? 0.0 : traj.energy.front();
  std::vector<std::vector<double>> rows, srows;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double E = traj.energy[i];
    const double drift = E0 != 0.0 ? (E - E0) / E0 : E - E0;
    rows.push_back({traj.times[i], E, drift});
    srows.push_back({traj.times[i], support_radius(traj.snapshots[i], 1e-8)});
  }
  out.results["spacetime_norm"] = spacetime_norm(traj, 0.0, cfg.T);
  out.results["energy_drift"] =
      make_series({"t", "E", "rel_drift"}, {"time", "energy", "1"}, rows);
  out.results["support"] = make_series({"t", "rho"}, {"time", "length"}, srows);
  return out;
}

ExpOut run_channel_test(const Scenario& sc) {
  ExpOut out;
  const double h = 0.01;  // sampling lattice of the closed-form free engine
  const RadialGrid grid = RadialGrid::with_rmax(h, 12.0);
  SeededRng rng(sc.seed);
  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> rows;
  for (int trial = 0; trial < sc.trials; ++trial) {
    const double R = rng.uniform(0.0, sc.R_max);
    const ReducedState data = random_bump_data(grid, rng);
    const CharacteristicPair pair = split(data);
    const ChannelReport rep = channel_direction(pair, data, R);
    const double tol = 1e-8 * std::max(1.0, rep.e0);
    const bool bad = rep.margin < -tol;
    if (bad) ++violations;
    min_margin = std::min(min_margin, rep.margin);
    const double dir = rep.direction == Direction::Both
                           ? 2.0
                           : (rep.direction == Direction::Forward ? 1.0 : -1.0);
    rows.push_back({static_cast<double>(trial), R, rep.r_snapped, rep.r_snapped - R, rep.e0,
                    rep.margin_forward, rep.margin_backward, dir});
  }
  out.results["trials"] = sc.trials;
  out.results["violations"] = violations;
  out.results["min_margin"] = min_margin;
  out.results["suite"] = make_series(
      {"trial", "R", "R_snapped", "snap_distance", "e0", "margin_forward", "margin_backward",
       "direction"},
      {"1", "length", "length", "length", "energy", "energy", "energy", "1"}, rows);
  if (violations > 0) out.failures.push_back("channel_dichotomy");
  return out;
}

CensusOptions census_options(const Scenario& sc) {
  CensusOptions opt;
  opt.A_max = sc.a_max;
  opt.step = sc.step;
  opt.shot.R_big = sc.r_big;
  opt.rep_dr_out = sc.rep_dr;
  return opt;
}

json census_json(const CensusResult& census) {
  std::vector<std::vector<double>> rows;
  for (const auto& e : census.states)
    rows.push_back({e.a, e.c, static_cast<double>(e.sign_changes), e.J, e.residual_max});
  return make_series({"a", "c", "sign_changes", "J", "residual_max"},
                     {"1", "1", "1", "energy", "1"}, rows);
}

ExpOut run_census(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  const CensusResult census = rwave::census(V, census_options(sc));
  out.results["roots"] = census.roots;
  out.results["shots"] = census.shots;
  out.results["census"] = census_json(census);
  return out;
}

ExpOut run_spectrum(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  SpectrumOptions opt;
  opt.k = sc.k_eigs;
  opt.n_quad = static_cast<std::size_t>(sc.n_quad);
  opt.R_spec = sc.r_spec;
  const SpectrumResult res = bs_spectrum(V, opt);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < res.lambda.size(); ++j) {
    const double lam = res.lambda[j];
    rows.push_back({static_cast<double>(j + 1), lam, lam > 1e-14 ? 1.0 / lam : 0.0});
  }
  out.results["tail_bound"] = res.tail_bound;
  out.results["converged"] = res.converged;
  out.results["off_final"] = res.off_final;
  out.results["resonance_distance"] = resonance_check(V, 1e-6, opt).distance;
  out.results["spectrum"] = make_series({"j", "lambda", "alpha"}, {"1", "1", "1"}, rows);
  if (!res.converged) out.failures.push_back("jacobi_converged");
  return out;
}

ExpOut run_resolve(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  CensusOptions copt = census_options(sc);
  // Sample representatives at the solver spacing.  A coarser piecewise-linear
  // profile has curvature kinks between grid nodes; those seed the
  // zero-group-velocity grid mode of the leapfrog stencil, which then rings
  // at the origin forever and pollutes the interior distance.
  copt.rep_dr_out = sc.solver.h;
  const CensusResult census = rwave::census(V, copt);
  const ReducedState data = build_data(sc.data, sc.solver.h, V, sc.seed, &census);
  ResolutionConfig rcfg;
  rcfg.ladder = sc.ladder;
  rcfg.A_buf = sc.a_buf;
  rcfg.A_mismatch = sc.a_mismatch;
  rcfg.slack = sc.slack;
  rcfg.final_factor = sc.final_factor;
  const ResolutionReport rep =
      resolution_experiment(data, V, census, sc.solver.to_config(), rcfg);

  std::vector<std::vector<double>> drows, mrows;
  for (std::size_t k = 0; k < rep.ladder.size(); ++k) {
    drows.push_back({rep.ladder[k], rep.distance[k], static_cast<double>(rep.argmin[k]),
                     rep.argmin_a[k]});
    mrows.push_back({rep.ladder[k], rep.mismatch[k], rep.incoming[k]});
  }
  out.results["initial_perturbation"] = rep.initial_perturbation;
  out.results["nonincreasing"] = rep.nonincreasing;
  out.results["final_small"] = rep.final_small;
  out.results["mismatch_improves"] = rep.mismatch_improves;
  out.results["census"] = census_json(census);
  out.results["distance_ladder"] = make_series(
      {"T", "distance", "argmin", "argmin_a"}, {"time", "1", "index", "1"}, drows);
  out.results["mismatch_ladder"] =
      make_series({"T", "mismatch", "incoming_residual"}, {"time", "1", "1"}, mrows);
  if (!rep.nonincreasing) out.failures.push_back("distance_nonincreasing");
  if (!rep.final_small) out.failures.push_back("final_distance_small");
  return out;
}

ExpOut run_support(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  const ReducedState data = build_data(sc.data, sc.solver.h, V, sc.seed);
  const SupportGrowthReport rep =
      support_growth_experiment(data, CoefficientField::static_v(V), sc.solver.to_config());
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    rows.push_back({rep.times[i], rep.rho_forward[i], rep.rho_backward[i],
                    rep.rho0 + rep.times[i]});
  out.results["rho0"] = rep.rho0;
  out.results["saturates_forward"] = rep.saturates_forward;
  out.results["saturates_backward"] = rep.saturates_backward;
  out.results["cone_bounded"] = rep.cone_bounded;
  out.results["max_overshoot"] = rep.max_overshoot;
  out.results["support_growth"] = make_series(
      {"t", "rho_forward", "rho_backward", "rho_expected"},
      {"time", "length", "length", "length"}, rows);
  return out;
}

ExpOut run_scale(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  const ScaleRobustnessReport rep = scale_robustness_experiment(
      [](double r) { return std::exp(-r * r); }, sc.lambdas, V, sc.solver.to_config());
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.lambda.size(); ++i)
    rows.push_back({rep.lambda[i], rep.d[i]});
  out.results["small_end_decreases"] = rep.small_end_decreases;
  out.results["large_end_decreases"] = rep.large_end_decreases;
  out.results["scale_robustness"] = make_series({"lambda", "d"}, {"1", "1"}, rows);
  if (!(rep.small_end_decreases && rep.large_end_decreases))
    out.failures.push_back("ends_decrease");
  return out;
}

ExpOut run_dependence(const Scenario& sc) {
  ExpOut out;
  const Potential V = sc.potential.build();
  const ReducedState base = build_data(sc.data, sc.solver.h, V, sc.seed);
  DataSpec pspec = sc.perturbation ? *sc.perturbation : DataSpec{};
  if (!sc.perturbation) {
    pspec.kind = "bump";
    out.warnings.push_back("no [perturbation] section; using the default bump");
  }
  if (pspec.r_max != sc.data.r_max) {
    pspec.r_max = sc.data.r_max;
    out.warnings.push_back("perturbation r_max coerced to the data grid extent");
  }
  const ReducedState pert = build_data(pspec, sc.solver.h, V, sc.seed + 1);
  const DependenceReport rep = continuous_dependence_experiment(
      base, pert, CoefficientField::static_v(V), sc.solver.to_config(), sc.eps,
      sc.interior_r);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    rows.push_back({rep.eps[i], rep.sup_dist[i], rep.ratio[i]});
  out.results["ratios_bounded"] = rep.ratios_bounded;
  out.results["interior_distance"] = rep.interior_distance;
  out.results["dependence"] = make_series({"eps", "sup_dist", "ratio"}, {"1", "1", "1"}, rows);
  if (!rep.ratios_bounded) out.failures.push_back("dependence_ratio");
  return out;
}

}  // namespace

RunOutcome run_scenario(const Scenario& sc) {
  const auto t0 = std::chrono::steady_clock::now();
  ExpOut exp;
  try {
    if (sc.experiment == "evolve")
      exp = run_evolve(sc);
    else if (sc.experiment == "channel-test")
      exp = run_channel_test(sc);
    else if (sc.experiment == "steady-census")
      exp = run_census(sc);
    else if (sc.experiment == "bs-spectrum")
      exp = run_spectrum(sc);
    else if (sc.experiment == "resolve")
      exp = run_resolve(sc);
    else if (sc.experiment == "support-growth")
      exp = run_support(sc);
    else if (sc.experiment == "scale-robustness")
      exp = run_scale(sc);
    else if (sc.experiment == "dependence")
      exp = run_dependence(sc);
    else
      throw ScenarioError("unknown experiment '" + sc.experiment + "'");
  } catch (const ScenarioError&) {
    throw;  // configuration problems are the caller's to report
  } catch (const std::exception& err) {
    exp.results["error"] = err.what();
    exp.failures.push_back("no_exception");
  }

  RunOutcome out;
  json body;
  body["artifact"] = "rwave";
  body["version"] = artifact_version();
  body["schema_version"] = sc.schema_version;
  body["experiment"] = sc.experiment;
  body["seed"] = sc.seed;
  body["scenario"] = serialize_scenario(sc);
  body["results"] = std::move(exp.results);
  body["warnings"] = exp.warnings;
  body["ok"] = exp.failures.empty();
  body["failures"] = exp.failures;

  const auto t1 = std::chrono::steady_clock::now();
  json meta;
  meta["created_unix"] = static_cast<long long>(std::time(nullptr));
  meta["wall_seconds"] = std::chrono::duration<double>(t1 - t0).count();

  out.record["meta"] = std::move(meta);
  out.record["body"] = std::move(body);
  out.ok = exp.failures.empty();
  out.failures = std::move(exp.failures);
  return out;
}

namespace {

bool is_series(const json& j) {
  return j.is_object() && j.contains("columns") && j.contains("rows");
}

void write_series_file(const json& series, const fs::path& path) {
  std::ofstream outf(path);
  if (!outf) throw std::runtime_error("cannot write " + path.string());
  outf << "#";
  for (const auto& c : series["columns"]) outf << " " << c.get<std::string>();
  outf << "\n";
  if (series.contains("units")) {
    outf << "# units:";
    for (const auto& u : series["units"]) outf << " " << u.get<std::string>();
    outf << "\n";
  }
  char buf[64];
  for (const auto& row : series["rows"]) {
    bool first = true;
    for (const auto& x : row) {
      std::snprintf(buf, sizeof(buf), "%.17g", x.get<double>());
      outf << (first ? "" : " ") << buf;
      first = false;
    }
    outf << "\n";
  }
}

}  // namespace

void write_outcome(const RunOutcome& outcome, const std::string& out_dir) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const fs::path tmp = dir / "record.json.tmp";
  {
    std::ofstream outf(tmp);
    if (!outf) throw std::runtime_error("cannot write " + tmp.string());
    outf << outcome.record.dump() << "\n";
  }
  fs::rename(tmp, dir / "record.json");

  const json& results = outcome.record.at("body").at("results");
  for (const auto& [key, value] : results.items())
    if (is_series(value)) write_series_file(value, dir / (key + ".dat"));
}

namespace {

const json* find_series(const json& node, const std::string& name) {
  if (!node.is_object()) return nullptr;
  for (const auto& [key, value] : node.items()) {
    if (key == name && is_series(value)) return &value;
    if (const json* hit = find_series(value, name)) return hit;
  }
  return nullptr;
}

}  // namespace

void emit_plot_data(const std::string& record_path, const std::string& series,
                    const std::string& out_path) {
  std::ifstream in(record_path);
  if (!in) throw std::runtime_error(record_path + ": cannot open record");
  json record = json::parse(in);
  const json* hit = find_series(record, series);
  if (!hit) throw std::runtime_error("unknown series '" + series + "' in " + record_path);
  write_series_file(*hit, out_path);
}

// ---- --check battery --------------------------------------------------------

namespace {

struct Check {
  std::ostream& log;
  int failures = 0;
  void report(const std::string& name, bool ok, const std::string& detail) {
    log << (ok ? "ok   " : "FAIL ") << name << " (" << detail << ")\n";
    if (!ok) ++failures;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

}  // namespace

int run_check(std::ostream& log) {
  Check chk{log};

  {  // identical seeds give identical streams
    SeededRng a(7), b(7);
    bool same = true;
    for (int i = 0; i < 128; ++i)
      if (a.canonical() != b.canonical()) same = false;
    chk.report("rng_determinism", same, "128 draws");
  }

  {  // u <-> v round trip is idempotent
    const RadialGrid grid(0.05, 128);
    SeededRng rng(3);
    const ReducedState s = random_bump_data(grid, rng);
    const ReducedState s2 = reduce(lift(s));
    const ReducedState s3 = reduce(lift(s2));
    chk.report("reduction_roundtrip", s3.v == s2.v && s3.vt == s2.vt, "double pass exact");
  }

  {  // energy report is an exact sum of its parts
    const RadialGrid grid(0.05, 256);
    SeededRng rng(11);
    const ReducedState s = random_bump_data(grid, rng);
    const Potential V = Potential::gaussian(1.0, 2.0);
    const EnergyReport e = energy(s, [&](double r) { return V(r); });
    const bool exact =
        e.total_E == e.kinetic + e.gradient + e.potential_term + e.sextic &&
        e.functional_J == e.total_E - e.kinetic;
    chk.report("energy_identity", exact, "bit-exact sums");
  }

  double split_err = 0.0;
  {  // mover split against the closed form for v = r exp(-r^2)
    const RadialGrid grid = RadialGrid::with_rmax(0.01, 12.0);
    ReducedState s = ReducedState::zero(grid);
    for (std::size_t j = 1; j < grid.n; ++j) {
      const double r = grid.r(j);
      s.v[j] = r * std::exp(-r * r);
    }
    const CharacteristicPair pair = split(s);
    for (std::size_t k = 0; k < pair.size(); ++k) {
      const double x = pair.s(k);
      const double want = 0.5 * (1.0 - 2.0 * x * x) * std::exp(-x * x);
      split_err = std::max(split_err, std::abs(pair.fp[k] - want));
    }
    chk.report("split_oracle", split_err < 1e-3, "max err " + sci(split_err));

    const double e0 = exterior_energy_free(pair, 0.0, 0.0);
    double drift = 0.0;
    for (double t : {1.3, 2.9, 4.4})
      drift = std::max(drift, std::abs(exterior_energy_free(pair, t, 0.0) - e0));
    chk.report("flux_conservation", drift <= 1e-10 * std::max(1.0, e0),
               "max drift " + sci(drift));
  }

  {  // the manufactured potential's steady profile comes back from a = 1
    ShootOptions opt;
    opt.R_big = 200.0;
    const ShootResult res = shoot(1.0, Potential::manufactured_star(), opt);
    const bool ok = res.cls == ShootClass::Decay && std::abs(res.c - 1.0) < 1e-3;
    chk.report("manufactured_shot", ok, "c = " + sci(res.c));
  }

  {  // leapfrog time reversal
    const Potential V = Potential::manufactured_star();
    SolverConfig cfg;
    cfg.h = 0.02;
    cfg.T = 2.0;
    const RadialGrid grid = RadialGrid::with_rmax(cfg.h, 8.0);
    ReducedState s = ReducedState::zero(grid);
    for (std::size_t j = 1; j < grid.n; ++j) {
      const double r = grid.r(j);
      s.v[j] = 0.3 * r * std::exp(-(r - 2.0) * (r - 2.0));
    }
    const CoefficientField coeff = CoefficientField::static_v(V);
    const Trajectory fwd = evolve(s, coeff, cfg, {cfg.T});
    ReducedState back = fwd.snapshots.back();
    for (double& x : back.vt) x = -x;
    SolverConfig cfg2 = cfg;
    cfg2.boundary = SolverConfig::Boundary::FixedDomain;
    cfg2.r_max = back.grid.r_max();
    const Trajectory rtn = evolve(back, coeff, cfg2, {cfg.T});
    ReducedState fin = rtn.snapshots.back();
    for (double& x : fin.vt) x = -x;
    ReducedState ref = ReducedState::zero(fin.grid);
    std::copy(s.v.begin(), s.v.end(), ref.v.begin());
    std::copy(s.vt.begin(), s.vt.end(), ref.vt.begin());
    const double d = annulus_distance(ref, fin, 0.0, fin.grid.r_max());
    chk.report("time_reversal", d < 1e-8, "distance " + sci(d));
  }

  log << (chk.failures == 0 ? "all checks passed\n"
                            : std::to_string(chk.failures) + " check(s) failed\n");
  return chk.failures;
}

}  // namespace rwave
