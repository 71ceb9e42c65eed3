"""Numerical laboratory for the radial defocusing energy-critical wave
equation with potential.

The heavy lifting lives in the compiled extension ``rwave._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    ChannelMeter,
    ChannelReport,
    CharacteristicPair,
    CensusResult,
    CoefficientField,
    DecayFit,
    Direction,
    EnergyReport,
    ExteriorSolution,
    FieldState,
    Potential,
    RadialGrid,
    ReducedState,
    ResolutionConfig,
    ResolutionReport,
    ResonanceReport,
    ScenarioError,
    ShootClass,
    ShootResult,
    SigmaDistance,
    SolverConfig,
    SpectrumResult,
    SteadyState,
    Trajectory,
    __version__,
    annulus_distance,
    bs_spectrum,
    c_of_lambda,
    canonical_scenario,
    census,
    channel_direction,
    channel_meter,
    decay_fit,
    discrete_energy,
    distance_to_sigma,
    energy,
    evolve,
    evolve_free,
    evolve_signed,
    exterior_energy,
    exterior_energy_free,
    exterior_solve,
    forward_time,
    lift,
    random_bump_data,
    reduce,
    resolution_experiment,
    resonance_check,
    run_scenario_file,
    run_scenario_text,
    shoot,
    spacetime_norm,
    split,
    split_padded,
    support_radius,
    y_norm,
)
