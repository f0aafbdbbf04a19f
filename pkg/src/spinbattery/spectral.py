"""Exact full-space (2^N) spectral statistics of the static charger forms.

Two independent routes give the mean and variance of H = a*J_y + b*J_z^2 over
all 2^N product states:

* closed-form trace identities over iid spin-1/2 moments (ground truth), and
* diagonalization of every total-spin block, weighted by its multiplicity
  d(N, j') = C(N, N/2 - j') - C(N, N/2 - j' - 1),

which must agree to high precision. The block route additionally yields the
operator norm and the full multiplicity-weighted eigenvalue histogram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .floquet import CHARGER_FORMS
from .sectors import _convention_scale, angular_momentum_matrices

MAX_BLOCK_SPINS = 128


@dataclass(frozen=True)
class SectorMultiplicity:
    """How many times total spin j_total occurs among N spin-1/2 particles."""

    j_total: float
    multiplicity: int


@dataclass(frozen=True)
class SpectralStats:
    space_dim: int
    mean: float
    variance: float
    mean_abs: float | None = None
    max_abs: float | None = None


@dataclass(frozen=True)
class BlockSpectrum:
    stats: SpectralStats
    eigenvalues: np.ndarray
    weights: tuple[int, ...]  # exact integers; sum equals 2^N


def sector_multiplicities(n_spins: int) -> list[SectorMultiplicity]:
    """Total-spin decomposition of N spin-1/2 particles, ascending in j_total."""
    if n_spins < 1:
        raise ValueError(f"n_spins must be >= 1, got {n_spins}")
    out = []
    for k in range(n_spins // 2, -1, -1):  # k = N/2 - j_total
        j_total = n_spins / 2 - k
        mult = math.comb(n_spins, k) - (math.comb(n_spins, k - 1) if k >= 1 else 0)
        out.append(SectorMultiplicity(j_total, mult))
    return out


def zeeman_degeneracy(n_spins: int, m: float) -> int:
    """Number of product configurations with total projection m: C(N, j+m)."""
    k = n_spins / 2 + m
    k_int = int(round(k))
    if abs(k - k_int) > 1e-9 or not 0 <= k_int <= n_spins:
        raise ValueError(f"m={m!r} is out of range for N={n_spins}")
    return math.comb(n_spins, k_int)


def _coefficients(form: str, n_spins: int, beta: float) -> tuple[float, float]:
    if form not in CHARGER_FORMS:
        raise ValueError(f"form must be one of {CHARGER_FORMS}, got {form!r}")
    a = math.pi / 2
    b = beta / n_spins if form == "at_kicks" else 0.0  # 1/(2j) with j = N/2
    return a, b


def trace_moments(form: str, n_spins: int, beta: float, convention: str = "spin_half") -> SpectralStats:
    """Closed-form full-space mean and variance of a*J_y + b*J_z^2.

    With the spin-1/2 normalization, iid single-site moments give
    E[J_z^2] = N/4 and E[J_z^4] = (3N^2 - 2N)/16, the J_y/J_z^2 cross term
    vanishes (every contributing Pauli string is traceless), hence
    mean = b*N/4 and variance = a^2*N/4 + b^2*N*(N-1)/8.
    """
    if n_spins < 1:
        raise ValueError(f"n_spins must be >= 1, got {n_spins}")
    a, b = _coefficients(form, n_spins, beta)
    s = _convention_scale(convention)
    mean = b * s**2 * n_spins / 4
    var = a**2 * s**2 * n_spins / 4 + b**2 * s**4 * n_spins * (n_spins - 1) / 8
    return SpectralStats(space_dim=2**n_spins, mean=mean, variance=var)


def block_spectrum(form: str, n_spins: int, beta: float, convention: str = "spin_half") -> BlockSpectrum:
    """Full-space spectrum via per-block diagonalization with multiplicities.

    Every block uses the global kick normalization b = beta/N regardless of
    its own total spin. Costs O(N) blocks of dimension <= N+1; guarded at
    N <= 128.
    """
    if not 1 <= n_spins <= MAX_BLOCK_SPINS:
        raise ValueError(f"block spectra require 1 <= N <= {MAX_BLOCK_SPINS}, got {n_spins}")
    a, b = _coefficients(form, n_spins, beta)
    s = _convention_scale(convention)
    values, weights = [], []
    for block in sector_multiplicities(n_spins):
        jx, jy, jz = angular_momentum_matrices(block.j_total)
        h = a * (s * jy) + b * (s * jz) @ (s * jz)
        values.append(np.linalg.eigvalsh(h))
        weights.extend([block.multiplicity] * (int(round(2 * block.j_total)) + 1))
    eigenvalues = np.concatenate(values)
    space_dim = 2**n_spins
    prob = np.array([w / space_dim for w in weights])
    mean = float(np.sum(prob * eigenvalues))
    var = float(np.sum(prob * eigenvalues**2) - mean**2)
    stats = SpectralStats(
        space_dim=space_dim,
        mean=mean,
        variance=var,
        mean_abs=float(np.sum(prob * np.abs(eigenvalues))),
        max_abs=float(np.max(np.abs(eigenvalues))),
    )
    return BlockSpectrum(stats=stats, eigenvalues=eigenvalues, weights=tuple(weights))
