"""Collective-spin quantum battery toolkit.

Simulates kicked-top charging of a symmetric spin ensemble, computes the
actual charging power next to the Robertson and Fisher-information power
bounds, reproduces their size scaling, and ships closed-form scenarios
showing where bound-based advantage claims break down.
"""

from .floquet import (
    FloquetParams,
    Trajectory,
    battery_operator,
    build_floquet,
    charger_operator,
    evolve,
    rotate_partial,
)
from .observables import (
    BoundSeries,
    EnergyDistribution,
    average_power,
    bound_series,
    energy_populations,
    expectation,
    fisher_analytic,
    fisher_bound,
    fisher_discrete,
    instantaneous_power,
    kl_divergence,
    robertson_bound,
    variance,
)
from .scenarios import ScenarioResult, degenerate_scenario, parallel_baseline, rabi_scenario
from .sectors import (
    HermitianOperator,
    SpinSector,
    StateVector,
    build_collective_operator,
    coherent_state,
    dicke_state,
    unitary_from_generator,
)
from .spectral import (
    BlockSpectrum,
    SectorMultiplicity,
    SpectralStats,
    block_spectrum,
    sector_multiplicities,
    trace_moments,
    zeeman_degeneracy,
)
from .sweep import PowerLawFit, SweepRecord, emit, fit_power_law, run_single, run_sweep

__version__ = "0.1.0"

__all__ = [
    "FloquetParams",
    "Trajectory",
    "battery_operator",
    "build_floquet",
    "charger_operator",
    "evolve",
    "rotate_partial",
    "BoundSeries",
    "EnergyDistribution",
    "average_power",
    "bound_series",
    "energy_populations",
    "expectation",
    "fisher_analytic",
    "fisher_bound",
    "fisher_discrete",
    "instantaneous_power",
    "kl_divergence",
    "robertson_bound",
    "variance",
    "ScenarioResult",
    "degenerate_scenario",
    "parallel_baseline",
    "rabi_scenario",
    "HermitianOperator",
    "SpinSector",
    "StateVector",
    "build_collective_operator",
    "coherent_state",
    "dicke_state",
    "unitary_from_generator",
    "BlockSpectrum",
    "SectorMultiplicity",
    "SpectralStats",
    "block_spectrum",
    "sector_multiplicities",
    "trace_moments",
    "zeeman_degeneracy",
    "PowerLawFit",
    "SweepRecord",
    "emit",
    "fit_power_law",
    "run_single",
    "run_sweep",
    "__version__",
]
