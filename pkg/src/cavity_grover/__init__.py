"""Adiabatic Grover search in a cavity-laser-atom system.

Simulation and pulse-design toolkit: Hamiltonians at three reduction levels,
constant-adiabaticity pulse schedules, Schrödinger propagation, and the
sqrt(N) duration-scaling studies.
"""

from .hamiltonians import (
    AdiabaticFrame,
    CavityEigensystem,
    HermitianOperator,
    SystemParams,
    adiabatic_frame,
    build_blocks,
    build_full,
    build_h1,
    build_heff,
    build_heff_adiabatic,
    cavity_eigensystem,
    t_matrix,
    w_matrix,
)
from .propagator import (
    StepSizeError,
    Trajectory,
    adiabatic_projections,
    collective_populations,
    default_steps,
    propagate,
)
from .pulsedesign import (
    AdiabaticityReport,
    GaussianPulse,
    PulsePair,
    PulseSchedule,
    cumulative_area,
    design_schedule,
    figure3_pulse,
    ratio_from_rho,
    verify_adiabaticity,
)
from .statespace import (
    Level,
    StateVector,
    default_mixing_matrix,
    full_to_collective,
    marked_state,
    uniform_collective,
    uniform_effective,
    uniform_superposition,
)
from .experiments import (
    Figure3Result,
    ModelComparison,
    ScalingRecord,
    SweepResult,
    compare_models,
    run_figure3,
    rwa_fidelity_gap,
    sweep_scaling,
)

__version__ = "0.1.0"
