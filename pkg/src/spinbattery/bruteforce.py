"""Full 2^N tensor-product construction, used only to cross-check sector code.

Hard-capped at N <= 8 spins (matrix dimension 256). Single-spin basis order is
(up, down), so a full-space basis index b has m = N/2 - popcount(b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .sectors import HERMITICITY_TOL

MAX_FULL_SPINS = 8

_SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class FullSpaceOperator:
    n_spins: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.n_spins > MAX_FULL_SPINS:
            raise ValueError(f"full-space operators are capped at N={MAX_FULL_SPINS}, got {self.n_spins}")
        mat = np.array(self.matrix, dtype=complex)
        d = 2**self.n_spins
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match 2^{self.n_spins}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("matrix contains non-finite entries")
        deviation = np.max(np.abs(mat - mat.conj().T))
        if deviation > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |A - A^dag| = {deviation:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def _site_operator(single: np.ndarray, site: int, n_spins: int) -> np.ndarray:
    factors = [_ID2] * n_spins
    factors[site] = single
    return reduce(np.kron, factors)


def _collective(axis: str, n_spins: int, scale: float) -> np.ndarray:
    total = np.zeros((2**n_spins, 2**n_spins), dtype=complex)
    for site in range(n_spins):
        total += _site_operator(scale * _SIGMA[axis], site, n_spins)
    return total


def build_full(kind: str, n_spins: int, beta: float = 0.0, convention: str = "spin_half") -> FullSpaceOperator:
    """Full-space operator: a collective component or a static charger form.

    kind: 'x' | 'y' | 'z' | 'between_kicks' | 'at_kicks'.
    The kick term squares the collective J_z and divides by 2j = N.
    """
    if n_spins > MAX_FULL_SPINS:
        raise ValueError(f"full-space operators are capped at N={MAX_FULL_SPINS}, got {n_spins}")
    scale = 1.0 if convention == "spin_half" else 2.0
    if convention not in ("spin_half", "pauli"):
        raise ValueError(f"unknown convention {convention!r}")
    if kind in _SIGMA:
        return FullSpaceOperator(n_spins, _collective(kind, n_spins, scale / 2))
    if kind not in ("between_kicks", "at_kicks"):
        raise ValueError(f"unknown kind {kind!r}")
    jy = _collective("y", n_spins, scale / 2)
    mat = (math.pi / 2) * jy
    if kind == "at_kicks":
        jz = _collective("z", n_spins, scale / 2)
        mat = mat + (beta / n_spins) * (jz @ jz)
    return FullSpaceOperator(n_spins, mat)


def full_dicke_embedding(n_spins: int) -> np.ndarray:
    """Isometry V from the symmetric sector into the full product space.

    Column i is the Dicke state with i spins down (m = N/2 - i), the uniform
    symmetric combination of the C(N, i) matching product states; V^dag V = I.
    """
    if n_spins > MAX_FULL_SPINS:
        raise ValueError(f"full-space embedding is capped at N={MAX_FULL_SPINS}, got {n_spins}")
    dim_full = 2**n_spins
    v = np.zeros((dim_full, n_spins + 1), dtype=complex)
    for b in range(dim_full):
        n_down = bin(b).count("1")
        v[b, n_down] = 1.0 / math.sqrt(math.comb(n_spins, n_down))
    return v


def product_state(n_spins: int, theta: float, phi: float) -> np.ndarray:
    """All spins in cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>."""
    single = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)], dtype=complex)
    return reduce(np.kron, [single] * n_spins)


def full_floquet(n_spins: int, beta: float, precession: float = math.pi / 2, convention: str = "spin_half") -> np.ndarray:
    """One-period propagator in the full space: rotation after the kick."""
    jy = build_full("y", n_spins, convention=convention).matrix
    jz = build_full("z", n_spins, convention=convention).matrix
    eigvals, eigvecs = np.linalg.eigh(jy)
    rotation = (eigvecs * np.exp(-1j * precession * eigvals)) @ eigvecs.conj().T
    kick_phases = np.exp(-1j * (beta / n_spins) * np.real(np.diag(jz)) ** 2)
    return rotation * kick_phases[np.newaxis, :]
