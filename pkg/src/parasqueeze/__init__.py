"""Parametric squeezing of a tunable-frequency oscillator: phase-space maps,
frequency-switching schedules, occupation statistics, and the entropy/heat
cost of squeezing."""

from .entropy import (
    EntropyMethod,
    EntropyReport,
    delta_s_exact,
    delta_s_leading,
    delta_s_perturbative,
    energy_entropy,
    entropy_n_max,
    entropy_tail_bound,
    equilibrium_entropy,
    equilibrium_entropy_leading,
    heat_cost,
)
from .errors import (
    ConsistencyError,
    DomainError,
    ParasqueezeError,
    PrecisionError,
    QuadratureError,
    RangeError,
    ScheduleFormatError,
    TruncationError,
)
from .schedules import (
    EvolutionResult,
    FrequencyProfile,
    Regime,
    RunawayVerdict,
    StepRecord,
    SwitchSchedule,
    Trajectory,
    custom_schedule,
    evolve_schedule,
    flow_map,
    integrate_characteristics,
    is_runaway,
    load_schedule,
    parse_schedule,
    ratchet_schedule,
    runaway_threshold,
    seesaw_schedule,
)
from .specfun import bessel_i0, hyp2f1_half, hyp2f1_half_family, laguerre, laguerre_weighted
from .states import (
    Method,
    OccupationDistribution,
    SqueezedCoherentParams,
    SqueezedThermalState,
    boundary_level,
    default_n_max,
    empirical_boundary_level,
    geometric_tail_estimate,
    nbar,
    occupation_distribution,
    pn_approx,
    pn_equilibrium,
    pn_exact,
    pn_wigner_integral,
    wigner_squeezed_coherent,
    wigner_squeezed_thermal,
)
from .symplectic import (
    PhasePoint,
    SqueezeDecomposition,
    SymplecticMap2,
    axis_squeeze,
    compose,
    decompose_squeezing,
    frequency_jump_bogoliubov,
    gaussian_transport,
    jump_map,
    rotation_map,
    step_map,
    two_step_ratchet,
    two_step_seesaw,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "DomainError",
    "EntropyMethod",
    "EntropyReport",
    "EvolutionResult",
    "FrequencyProfile",
    "Method",
    "OccupationDistribution",
    "ParasqueezeError",
    "PhasePoint",
    "PrecisionError",
    "QuadratureError",
    "RangeError",
    "Regime",
    "RunawayVerdict",
    "ScheduleFormatError",
    "SqueezeDecomposition",
    "SqueezedCoherentParams",
    "SqueezedThermalState",
    "StepRecord",
    "SwitchSchedule",
    "SymplecticMap2",
    "Trajectory",
    "TruncationError",
    "axis_squeeze",
    "bessel_i0",
    "boundary_level",
    "compose",
    "custom_schedule",
    "decompose_squeezing",
    "default_n_max",
    "delta_s_exact",
    "delta_s_leading",
    "delta_s_perturbative",
    "empirical_boundary_level",
    "energy_entropy",
    "entropy_n_max",
    "entropy_tail_bound",
    "equilibrium_entropy",
    "equilibrium_entropy_leading",
    "evolve_schedule",
    "flow_map",
    "frequency_jump_bogoliubov",
    "gaussian_transport",
    "geometric_tail_estimate",
    "heat_cost",
    "hyp2f1_half",
    "hyp2f1_half_family",
    "integrate_characteristics",
    "is_runaway",
    "jump_map",
    "laguerre",
    "laguerre_weighted",
    "load_schedule",
    "nbar",
    "occupation_distribution",
    "parse_schedule",
    "pn_approx",
    "pn_equilibrium",
    "pn_exact",
    "pn_wigner_integral",
    "ratchet_schedule",
    "rotation_map",
    "runaway_threshold",
    "seesaw_schedule",
    "step_map",
    "two_step_ratchet",
    "two_step_seesaw",
    "wigner_squeezed_coherent",
    "wigner_squeezed_thermal",
]
