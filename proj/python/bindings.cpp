#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "rwave/dalembert.hpp"
#include "rwave/energy.hpp"
#include "rwave/evolver.hpp"
#include "rwave/potential.hpp"
#include "rwave/resolution.hpp"
#include "rwave/rng.hpp"
#include "rwave/runner.hpp"
#include "rwave/scenario.hpp"
#include "rwave/spectrum.hpp"
#include "rwave/steady.hpp"
#include "rwave/version.hpp"

namespace py = pybind11;
using namespace rwave;

namespace {

ReducedState make_state(double h, const std::vector<double>& v, const std::vector<double>& vt,
                        double time) {
  RadialGrid grid(h, v.size());
  return ReducedState(grid, v, vt, time);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical laboratory for the radial defocusing energy-critical "
            "wave equation with potential";
  m.attr("__version__") = artifact_version();

  // ---- grid and state ------------------------------------------------------
  py::class_<RadialGrid>(m, "RadialGrid")
      .def(py::init<double, std::size_t>(), py::arg("h"), py::arg("n"))
      .def_static("with_rmax", &RadialGrid::with_rmax, py::arg("h"), py::arg("r_max"))
      .def_readonly("h", &RadialGrid::h)
      .def_readonly("n", &RadialGrid::n)
      .def("r", &RadialGrid::r, py::arg("j"))
      .def("r_max", &RadialGrid::r_max)
      .def("nodes", &RadialGrid::nodes);

  py::class_<ReducedState>(m, "ReducedState")
      .def(py::init(&make_state), py::arg("h"), py::arg("v"), py::arg("vt"),
           py::arg("time") = 0.0)
      .def_static("zero", &ReducedState::zero, py::arg("grid"))
      .def_readonly("grid", &ReducedState::grid)
      .def_readonly("v", &ReducedState::v)
      .def_readonly("vt", &ReducedState::vt)
      .def_readonly("t", &ReducedState::t);

  m.def("reduce", &reduce, py::arg("field"), "field state (u, ut) -> reduced state (ru, r ut)");
  m.def("lift", &lift, py::arg("state"), "reduced state -> field state, with the origin "
                                         "value extrapolated");

  py::class_<FieldState>(m, "FieldState")
      .def_readonly("grid", &FieldState::grid)
      .def_readonly("u", &FieldState::u)
      .def_readonly("ut", &FieldState::ut)
      .def_readonly("t", &FieldState::t);

  // ---- potentials ----------------------------------------------------------
  py::class_<Potential>(m, "Potential")
      .def_static("zero", &Potential::zero)
      .def_static("manufactured_star", &Potential::manufactured_star)
      .def_static("gaussian", &Potential::gaussian, py::arg("alpha"), py::arg("sigma"))
      .def_static("power_well", &Potential::power_well, py::arg("alpha"), py::arg("beta"))
      .def_static("scaled", &Potential::scaled, py::arg("alpha"), py::arg("base"))
      .def_static("tabulated", &Potential::tabulated, py::arg("r"), py::arg("value"))
      .def_static("tabulated_from_file", &Potential::tabulated_from_file, py::arg("path"))
      .def("__call__", &Potential::operator(), py::arg("r"))
      .def("beta", &Potential::beta)
      .def("nonnegative", &Potential::nonnegative)
      .def("describe", &Potential::describe);
  m.def("y_norm", &y_norm, py::arg("potential"), "weighted sup norm r^2 (1+r)^(beta-2) V");

  // ---- energy bookkeeping --------------------------------------------------
  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("kinetic", &EnergyReport::kinetic)
      .def_readonly("gradient", &EnergyReport::gradient)
      .def_readonly("potential_term", &EnergyReport::potential_term)
      .def_readonly("sextic", &EnergyReport::sextic)
      .def_readonly("total_E", &EnergyReport::total_E)
      .def_readonly("functional_J", &EnergyReport::functional_J);
  m.def(
      "energy",
      [](const ReducedState& s, const Potential& V, bool with_sextic) {
        return energy(s, [&](double r) { return V(r); }, with_sextic);
      },
      py::arg("state"), py::arg("potential"), py::arg("with_sextic") = true);
  m.def("exterior_energy", &exterior_energy, py::arg("state"), py::arg("R"));
  m.def("annulus_distance", &annulus_distance, py::arg("a"), py::arg("b"), py::arg("r_lo"),
        py::arg("r_hi"));
  m.def("support_radius", &support_radius, py::arg("state"), py::arg("threshold") = 1e-8);

  // ---- free-wave engine ----------------------------------------------------
  py::class_<CharacteristicPair>(m, "CharacteristicPair")
      .def_readonly("h", &CharacteristicPair::h)
      .def_readonly("L", &CharacteristicPair::L)
      .def_readonly("fp", &CharacteristicPair::fp)
      .def_readonly("gp", &CharacteristicPair::gp)
      .def("total_flux", &CharacteristicPair::total_flux);
  m.def("split", &split, py::arg("state"));
  m.def("split_padded", &split_padded, py::arg("state"), py::arg("L_min"));
  m.def("evolve_free", &evolve_free, py::arg("pair"), py::arg("t"), py::arg("grid"));
  m.def("exterior_energy_free", &exterior_energy_free, py::arg("pair"), py::arg("t"),
        py::arg("R"));
  m.def("forward_time", &forward_time, py::arg("pair"));

  py::enum_<Direction>(m, "Direction")
      .value("Forward", Direction::Forward)
      .value("Backward", Direction::Backward)
      .value("Both", Direction::Both);
  py::class_<ChannelReport>(m, "ChannelReport")
      .def_readonly("direction", &ChannelReport::direction)
      .def_readonly("margin", &ChannelReport::margin)
      .def_readonly("margin_forward", &ChannelReport::margin_forward)
      .def_readonly("margin_backward", &ChannelReport::margin_backward)
      .def_readonly("e0", &ChannelReport::e0)
      .def_readonly("e_plus", &ChannelReport::e_plus)
      .def_readonly("e_minus", &ChannelReport::e_minus);
  m.def("channel_direction", &channel_direction, py::arg("pair"), py::arg("initial"),
        py::arg("R"));

  // ---- evolution -----------------------------------------------------------
  py::class_<CoefficientField>(m, "CoefficientField")
      .def_static("zero", &CoefficientField::zero)
      .def_static("static_v", &CoefficientField::static_v, py::arg("potential"))
      .def_static("truncated", &CoefficientField::truncated, py::arg("potential"),
                  py::arg("t_n"))
      .def("a", &CoefficientField::a, py::arg("t"), py::arg("r"));

  py::class_<SolverConfig> solver(m, "SolverConfig");
  solver.def(py::init<>())
      .def_readwrite("h", &SolverConfig::h)
      .def_readwrite("cfl", &SolverConfig::cfl)
      .def_readwrite("T", &SolverConfig::T)
      .def_readwrite("boundary", &SolverConfig::boundary)
      .def_readwrite("margin", &SolverConfig::margin)
      .def_readwrite("r_max", &SolverConfig::r_max)
      .def_readwrite("nonlinearity", &SolverConfig::nonlinearity)
      .def_readwrite("blowup_cap", &SolverConfig::blowup_cap);
  py::enum_<SolverConfig::Boundary>(solver, "Boundary")
      .value("CausalPad", SolverConfig::Boundary::CausalPad)
      .value("FixedDomain", SolverConfig::Boundary::FixedDomain);

  py::class_<Trajectory> traj(m, "Trajectory");
  traj.def_readonly("status", &Trajectory::status)
      .def_readonly("blow_t", &Trajectory::blow_t)
      .def_readonly("blow_r", &Trajectory::blow_r)
      .def_readonly("grid", &Trajectory::grid)
      .def_readonly("dt", &Trajectory::dt)
      .def_readonly("times", &Trajectory::times)
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_readonly("energy", &Trajectory::energy);
  py::enum_<Trajectory::Status>(traj, "Status")
      .value("Completed", Trajectory::Status::Completed)
      .value("BlowUp", Trajectory::Status::BlowUp);

  m.def("evolve", &evolve, py::arg("initial"), py::arg("coefficient"), py::arg("config"),
        py::arg("snapshot_times"));
  m.def("evolve_signed", &evolve_signed, py::arg("initial"), py::arg("coefficient"),
        py::arg("config"), py::arg("snapshot_times"));
  m.def("discrete_energy", &discrete_energy, py::arg("state"), py::arg("coefficient"),
        py::arg("t"), py::arg("nonlinearity"));
  m.def("spacetime_norm", &spacetime_norm, py::arg("trajectory"), py::arg("t_lo"),
        py::arg("t_hi"));

  // ---- steady states -------------------------------------------------------
  py::enum_<ShootClass>(m, "ShootClass")
      .value("Decay", ShootClass::Decay)
      .value("Blow", ShootClass::Blow)
      .value("Indeterminate", ShootClass::Indeterminate);
  py::class_<ShootResult>(m, "ShootResult")
      .def_readonly("cls", &ShootResult::cls)
      .def_readonly("a", &ShootResult::a)
      .def_readonly("c", &ShootResult::c)
      .def_readonly("blow_sign", &ShootResult::blow_sign)
      .def_readonly("sign_changes", &ShootResult::sign_changes)
      .def_readonly("r", &ShootResult::r)
      .def_readonly("w", &ShootResult::w);
  m.def(
      "shoot",
      [](double a, const Potential& V, double R_big, double rtol) {
        ShootOptions opt;
        opt.R_big = R_big;
        opt.rtol = rtol;
        return shoot(a, V, opt);
      },
      py::arg("a"), py::arg("potential"), py::arg("R_big") = 500.0, py::arg("rtol") = 1e-10);

  py::class_<SteadyState>(m, "SteadyState")
      .def_readonly("a", &SteadyState::a)
      .def_readonly("c", &SteadyState::c)
      .def_readonly("sign_changes", &SteadyState::sign_changes)
      .def_readonly("J", &SteadyState::J)
      .def_readonly("residual_max", &SteadyState::residual_max)
      .def_readonly("r", &SteadyState::r)
      .def_readonly("w", &SteadyState::w);
  py::class_<CensusResult>(m, "CensusResult")
      .def_readonly("states", &CensusResult::states)
      .def_readonly("roots", &CensusResult::roots)
      .def_readonly("shots", &CensusResult::shots);
  m.def(
      "census",
      [](const Potential& V, double A_max, double step) {
        CensusOptions opt;
        opt.A_max = A_max;
        opt.step = step;
        return census(V, opt);
      },
      py::arg("potential"), py::arg("A_max") = 5.0, py::arg("step") = 0.05);

  py::class_<ExteriorSolution>(m, "ExteriorSolution")
      .def_readonly("lambda_", &ExteriorSolution::lambda)
      .def_readonly("R", &ExteriorSolution::R)
      .def_readonly("R_inf", &ExteriorSolution::R_inf)
      .def_readonly("r", &ExteriorSolution::r)
      .def_readonly("u", &ExteriorSolution::u);
  m.def("exterior_solve", &exterior_solve, py::arg("c"), py::arg("potential"), py::arg("R"));
  m.def("c_of_lambda", &c_of_lambda, py::arg("lambda_"), py::arg("potential"), py::arg("R"),
        py::arg("c_max") = 100.0, py::arg("tol") = 1e-10);

  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("ell", &DecayFit::ell)
      .def_readonly("gamma", &DecayFit::gamma)
      .def_readonly("K", &DecayFit::K)
      .def_readonly("rms_residual", &DecayFit::rms_residual)
      .def_readonly("below_floor", &DecayFit::below_floor);
  m.def("decay_fit", &decay_fit, py::arg("r"), py::arg("w"), py::arg("r_lo"), py::arg("r_hi"));

  // ---- kernel spectrum -----------------------------------------------------
  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_readonly("lambdas", &SpectrumResult::lambda)
      .def_readonly("alpha", &SpectrumResult::alpha)
      .def_readonly("n_quad", &SpectrumResult::n_quad)
      .def_readonly("R_spec", &SpectrumResult::R_spec)
      .def_readonly("tail_bound", &SpectrumResult::tail_bound)
      .def_readonly("converged", &SpectrumResult::converged);
  m.def(
      "bs_spectrum",
      [](const Potential& V, int k, std::size_t n_quad, double R_spec) {
        SpectrumOptions opt;
        opt.k = k;
        opt.n_quad = n_quad;
        opt.R_spec = R_spec;
        return bs_spectrum(V, opt);
      },
      py::arg("potential"), py::arg("k") = 8, py::arg("n_quad") = 800,
      py::arg("R_spec") = 100.0);

  py::class_<ResonanceReport>(m, "ResonanceReport")
      .def_readonly("resonant", &ResonanceReport::resonant)
      .def_readonly("distance", &ResonanceReport::distance)
      .def_readonly("margin", &ResonanceReport::margin);
  m.def(
      "resonance_check",
      [](const Potential& V, double margin) { return resonance_check(V, margin); },
      py::arg("potential"), py::arg("margin") = 1e-6);

  // ---- resolution tooling ----------------------------------------------------
  py::class_<SigmaDistance>(m, "SigmaDistance")
      .def_readonly("distance", &SigmaDistance::distance)
      .def_readonly("argmin", &SigmaDistance::argmin)
      .def_readonly("argmin_a", &SigmaDistance::argmin_a)
      .def_readonly("mirrored", &SigmaDistance::mirrored);
  m.def("distance_to_sigma", &distance_to_sigma, py::arg("state"), py::arg("census"),
        py::arg("R_int"));

  py::class_<ChannelMeter>(m, "ChannelMeter")
      .def_readonly("delta_plus", &ChannelMeter::delta_plus)
      .def_readonly("delta_minus", &ChannelMeter::delta_minus)
      .def_readonly("t_at_plus", &ChannelMeter::t_at_plus)
      .def_readonly("t_at_minus", &ChannelMeter::t_at_minus);
  m.def("channel_meter", &channel_meter, py::arg("initial"), py::arg("potential"),
        py::arg("R"), py::arg("T_probe"), py::arg("config") = SolverConfig{},
        py::arg("dt_sample") = 0.25);

  py::class_<ResolutionConfig>(m, "ResolutionConfig")
      .def(py::init<>())
      .def_readwrite("ladder", &ResolutionConfig::ladder)
      .def_readwrite("A_buf", &ResolutionConfig::A_buf)
      .def_readwrite("A_mismatch", &ResolutionConfig::A_mismatch)
      .def_readwrite("slack", &ResolutionConfig::slack)
      .def_readwrite("final_factor", &ResolutionConfig::final_factor);
  py::class_<ResolutionReport>(m, "ResolutionReport")
      .def_readonly("ladder", &ResolutionReport::ladder)
      .def_readonly("distance", &ResolutionReport::distance)
      .def_readonly("argmin_a", &ResolutionReport::argmin_a)
      .def_readonly("mismatch", &ResolutionReport::mismatch)
      .def_readonly("incoming", &ResolutionReport::incoming)
      .def_readonly("initial_perturbation", &ResolutionReport::initial_perturbation)
      .def_readonly("nonincreasing", &ResolutionReport::nonincreasing)
      .def_readonly("final_small", &ResolutionReport::final_small)
      .def_readonly("mismatch_improves", &ResolutionReport::mismatch_improves);
  m.def("resolution_experiment", &resolution_experiment, py::arg("initial"),
        py::arg("potential"), py::arg("census"), py::arg("config"),
        py::arg("resolution_config") = ResolutionConfig{});

  // ---- seeded data and scenarios -------------------------------------------
  m.def(
      "random_bump_data",
      [](const RadialGrid& grid, std::uint64_t seed) { return random_bump_data(grid, seed); },
      py::arg("grid"), py::arg("seed"));

  py::register_exception<ScenarioError>(m, "ScenarioError");
  m.def(
      "run_scenario_text",
      [](const std::string& text, const std::string& origin) {
        const Scenario sc = parse_scenario(text, origin);
        const RunOutcome out = run_scenario(sc);
        return py::make_tuple(out.record.dump(), out.ok, out.failures);
      },
      py::arg("text"), py::arg("origin") = "<python>",
      "parse and run a scenario; returns (record_json, ok, failures)");
  m.def(
      "run_scenario_file",
      [](const std::string& path, const std::string& out_dir) {
        const Scenario sc = load_scenario(path);
        const RunOutcome out = run_scenario(sc);
        if (!out_dir.empty()) write_outcome(out, out_dir);
        return py::make_tuple(out.record.dump(), out.ok, out.failures);
      },
      py::arg("path"), py::arg("out_dir") = "",
      "load and run a scenario file, optionally persisting the record");
  m.def(
      "canonical_scenario",
      [](const std::string& text, const std::string& origin) {
        return serialize_scenario(parse_scenario(text, origin));
      },
      py::arg("text"), py::arg("origin") = "<python>",
      "canonical serialized form (defaults materialized, fixed key order)");
}
