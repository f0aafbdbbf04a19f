"""Collective spin spaces, Dicke-basis states, and Hermitian-generator unitaries.

Everything downstream (Floquet charging, bounds, spectral statistics) works in
the symmetric subspace of N spin-1/2 particles: total spin j = N/2, dimension
N + 1, basis ordered by descending projection m = j, j-1, ..., -j.

Operator normalization is spin-1/2 by default (J_a = sum_i sigma_a^i / 2), so
J_z has half-integer steps and the projection degeneracy counting C(N, j+m)
is consistent. The "pauli" convention (J_a = sum_i sigma_a^i) is available as
a switch; it doubles every collective operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-10

CONVENTIONS = ("spin_half", "pauli")


class EigendecompositionError(RuntimeError):
    """Raised when the Hermitian eigensolver fails; carries a matrix report."""


def _convention_scale(convention: str) -> float:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown operator convention {convention!r}, expected one of {CONVENTIONS}")
    return 2.0 if convention == "pauli" else 1.0


@dataclass(frozen=True)
class SpinSector:
    """The symmetric collective-spin space for N spin-1/2 particles."""

    n_spins: int

    def __post_init__(self):
        if not isinstance(self.n_spins, (int, np.integer)) or self.n_spins < 1:
            raise ValueError(f"n_spins must be a positive integer, got {self.n_spins!r}")

    @property
    def j(self) -> float:
        return self.n_spins / 2

    @property
    def dim(self) -> int:
        return self.n_spins + 1

    def m_values(self) -> np.ndarray:
        """Projection quantum numbers, strictly descending from +j to -j."""
        return self.j - np.arange(self.dim)


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over the Dicke basis of a sector."""

    sector: SpinSector
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.sector.dim,):
            raise ValueError(f"amplitudes shape {amps.shape} does not match sector dim {self.sector.dim}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes contain non-finite entries")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix acting on one sector (energy units, hbar = 1)."""

    sector: SpinSector
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        d = self.sector.dim
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match sector dim {d}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("matrix contains non-finite entries")
        deviation = np.max(np.abs(mat - mat.conj().T)) if d else 0.0
        if deviation > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |A - A^dag| = {deviation:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def angular_momentum_matrices(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_x, J_y, J_z) for total spin j in the descending-m basis.

    J_z is diagonal with entries m; the ladder elements are
    sqrt(j(j+1) - m(m +/- 1)). Valid for any non-negative half-integer j
    (j = 0 gives 1x1 zero matrices), which block-spectrum code relies on.
    """
    dim = int(round(2 * j)) + 1
    m = j - np.arange(dim)
    jz = np.diag(m.astype(complex))
    jplus = np.zeros((dim, dim), dtype=complex)
    if dim > 1:
        # raising moves index i -> i-1 (ascending m with descending index)
        lower_m = m[1:]
        jplus[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(j * (j + 1) - lower_m * (lower_m + 1))
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    return jx, jy, jz


def build_collective_operator(sector: SpinSector, axis: str, convention: str = "spin_half") -> HermitianOperator:
    """Collective angular-momentum operator J_axis on the sector."""
    jx, jy, jz = angular_momentum_matrices(sector.j)
    try:
        mat = {"x": jx, "y": jy, "z": jz}[axis]
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None
    return HermitianOperator(sector, _convention_scale(convention) * mat)


def unitary_from_generator(g: HermitianOperator, scale: float) -> np.ndarray:
    """exp(-i * scale * g) via Hermitian eigendecomposition."""
    mat = g.matrix
    try:
        eigvals, eigvecs = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as err:
        n_bad = int(np.count_nonzero(~np.isfinite(mat)))
        raise EigendecompositionError(
            f"eigh failed on {mat.shape[0]}x{mat.shape[1]} generator: "
            f"max|entry|={np.max(np.abs(mat[np.isfinite(mat)]), initial=0.0):.3e}, "
            f"non-finite entries={n_bad}"
        ) from err
    phases = np.exp(-1j * scale * eigvals)
    return (eigvecs * phases) @ eigvecs.conj().T


def dicke_state(sector: SpinSector, m: float) -> StateVector:
    """Basis state |j, m> of the sector."""
    idx = sector.j - m
    i = int(round(idx))
    if abs(idx - i) > 1e-9 or not 0 <= i < sector.dim:
        raise ValueError(f"m={m!r} is not a projection of j={sector.j}")
    amps = np.zeros(sector.dim, dtype=complex)
    amps[i] = 1.0
    return StateVector(sector, amps)


def coherent_state(sector: SpinSector, theta: float, phi: float) -> StateVector:
    """Spin coherent state: exp{i*theta*(J_x sin(phi) - J_y cos(phi))} |j, j>.

    The most classical collective state; <J_z> = j*cos(theta). The global
    phase is not pinned, so compare modulo phase or through observables.
    """
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError(f"theta and phi must be finite, got theta={theta!r}, phi={phi!r}")
    jx, jy, _ = angular_momentum_matrices(sector.j)
    generator = HermitianOperator(sector, math.sin(phi) * jx - math.cos(phi) * jy)
    u = unitary_from_generator(generator, -theta)  # exp(+i*theta*g)
    return StateVector(sector, u[:, 0])
