"""Kicked-top charger dynamics on the symmetric sector.

One drive period of length tau: an instantaneous nonlinear kick of strength
beta (diagonal J_z^2 phases) followed by a continuous precession about y
through the fixed angle pi/2. Stroboscopic tracking applies the one-period
propagator repeatedly; rotate_partial exposes the continuous between-kick
segment for instantaneous-power checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .sectors import (
    CONVENTIONS,
    HermitianOperator,
    SpinSector,
    StateVector,
    build_collective_operator,
)

CHARGER_FORMS = ("between_kicks", "at_kicks")
ORDERS = ("kick_then_rotate", "rotate_then_kick")


@dataclass(frozen=True)
class FloquetParams:
    beta: float
    precession: float = math.pi / 2
    tau: float = 1.0
    order: str = "kick_then_rotate"
    convention: str = "spin_half"

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ValueError(f"beta must be finite, got {self.beta!r}")
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order!r}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}, got {self.convention!r}")


@dataclass(frozen=True)
class Trajectory:
    """Stroboscopic snapshots (step_index, state), starting from step 0."""

    params: FloquetParams
    sector: SpinSector
    snapshots: tuple[tuple[int, StateVector], ...]

    def state(self, step: int) -> StateVector:
        return self.snapshots[step][1]

    @property
    def n_steps(self) -> int:
        return len(self.snapshots) - 1


def battery_operator(sector: SpinSector, convention: str = "spin_half") -> HermitianOperator:
    """The stored-energy observable: total magnetization J_z."""
    return build_collective_operator(sector, "z", convention)


def charger_operator(
    sector: SpinSector,
    form: str,
    beta: float,
    convention: str = "spin_half",
    precession: float = math.pi / 2,
) -> HermitianOperator:
    """Static charger Hamiltonian: precession*J_y, plus beta*J_z^2/(2j) at kicks."""
    if form not in CHARGER_FORMS:
        raise ValueError(f"form must be one of {CHARGER_FORMS}, got {form!r}")
    jy = build_collective_operator(sector, "y", convention).matrix
    mat = precession * jy
    if form == "at_kicks":
        jz = build_collective_operator(sector, "z", convention).matrix
        mat = mat + (beta / (2 * sector.j)) * (jz @ jz)
    return HermitianOperator(sector, mat)


@lru_cache(maxsize=None)
def _jy_eigh(n_spins: int) -> tuple[np.ndarray, np.ndarray]:
    sector = SpinSector(n_spins)
    jy = build_collective_operator(sector, "y").matrix
    eigvals, eigvecs = np.linalg.eigh(jy)
    eigvals.setflags(write=False)
    eigvecs.setflags(write=False)
    return eigvals, eigvecs


def _rotation(sector: SpinSector, angle: float, convention: str) -> np.ndarray:
    # pauli operators are twice the spin-half ones, same eigenvectors
    eigvals, eigvecs = _jy_eigh(sector.n_spins)
    scale = 2.0 if convention == "pauli" else 1.0
    return (eigvecs * np.exp(-1j * angle * scale * eigvals)) @ eigvecs.conj().T


def kick_phases(sector: SpinSector, params: FloquetParams) -> np.ndarray:
    """Diagonal of the kick factor: exp(-i * beta * m^2 / (2j)) per J_z eigenvalue m."""
    jz_diag = np.real(np.diag(build_collective_operator(sector, "z", params.convention).matrix))
    return np.exp(-1j * (params.beta / (2 * sector.j)) * jz_diag**2)


def build_floquet(sector: SpinSector, params: FloquetParams) -> np.ndarray:
    """One-period unitary. Default order applies the kick first, then the rotation."""
    rotation = _rotation(sector, params.precession, params.convention)
    phases = kick_phases(sector, params)
    if params.order == "kick_then_rotate":
        return rotation * phases[np.newaxis, :]
    return phases[:, np.newaxis] * rotation


def evolve(initial: StateVector, params: FloquetParams, n_steps: int) -> Trajectory:
    """Apply the one-period propagator n_steps times, keeping every snapshot."""
    if n_steps < 0:
        raise ValueError(f"n_steps must be >= 0, got {n_steps}")
    sector = initial.sector
    propagator = build_floquet(sector, params)
    snapshots = [(0, initial)]
    amps = initial.amplitudes
    for step in range(1, n_steps + 1):
        amps = propagator @ amps
        snapshots.append((step, StateVector(sector, amps)))
    return Trajectory(params, sector, tuple(snapshots))


def rotate_partial(
    state: StateVector,
    fraction: float,
    precession: float = math.pi / 2,
    convention: str = "spin_half",
) -> StateVector:
    """Advance a state through a fraction of the between-kick precession."""
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction!r}")
    rotation = _rotation(state.sector, fraction * precession, convention)
    return StateVector(state.sector, rotation @ state.amplitudes)
