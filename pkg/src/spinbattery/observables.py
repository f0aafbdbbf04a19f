"""Expectations, variances, charging power, and the two power bounds.

The Robertson bound 2*dH_B*dH_C comes straight from the uncertainty relation;
the Fisher-information bound sqrt(Var(H_B) * I_E) replaces the charger
variance with the energy-space activity I_E = sum_k pdot_k^2 / p_k. KL
divergences are natural-log internally (that makes the small-step relation
I_E ~ 2*KL/dt^2 exact at second order); bits are available for reporting.

Infinite Fisher information and KL support violations are detected against a
population tolerance and returned as an explicit math.inf, never produced by
a silent division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .floquet import Trajectory, battery_operator, charger_operator
from .sectors import HermitianOperator, StateVector

GROUPINGS = ("per_eigenvector", "per_distinct_energy")
ZERO_TOL = 1e-12
DEGENERACY_TOL = 1e-9
_LN2 = math.log(2.0)


def _check_sectors(op: HermitianOperator, state: StateVector) -> None:
    if op.sector != state.sector:
        raise ValueError(f"sector mismatch: operator N={op.sector.n_spins}, state N={state.sector.n_spins}")


def expectation(op: HermitianOperator, state: StateVector) -> float:
    """<psi| A |psi>, asserted real to 1e-10."""
    _check_sectors(op, state)
    amps = state.amplitudes
    value = np.vdot(amps, op.matrix @ amps)
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {value.imag:.3e}")
    return float(value.real)


def variance(op: HermitianOperator, state: StateVector) -> float:
    """<A^2> - <A>^2, computed as ||(A - <A>)psi||^2 so it is never negative."""
    _check_sectors(op, state)
    amps = state.amplitudes
    mean = expectation(op, state)
    residual = op.matrix @ amps - mean * amps
    return float(max(np.real(np.vdot(residual, residual)), 0.0))


def average_power(traj: Trajectory, h_b: HermitianOperator, step: int) -> float:
    """(<H_B>_step - <H_B>_0) / (step * tau)."""
    if not 1 <= step <= traj.n_steps:
        raise ValueError(f"step must be in [1, {traj.n_steps}], got {step}")
    e_now = expectation(h_b, traj.state(step))
    e_start = expectation(h_b, traj.state(0))
    return (e_now - e_start) / (step * traj.params.tau)


def instantaneous_power(state: StateVector, drive: HermitianOperator, h_b: HermitianOperator) -> float:
    """dE/dt under the drive: i<[drive, H_B]> = -2 Im <drive H_B> for Hermitian pairs."""
    _check_sectors(drive, state)
    _check_sectors(h_b, state)
    amps = state.amplitudes
    cross = np.vdot(drive.matrix @ amps, h_b.matrix @ amps)
    return float(-2.0 * cross.imag)


def robertson_bound(state: StateVector, h_b: HermitianOperator, h_c: HermitianOperator) -> float:
    """Uncertainty-relation power bound 2*sqrt(Var(H_B) Var(H_C))."""
    return 2.0 * math.sqrt(variance(h_b, state) * variance(h_c, state))


@dataclass(frozen=True)
class EnergyDistribution:
    """Populations over battery energy levels, per eigenvector or per distinct energy."""

    energies: np.ndarray
    populations: np.ndarray
    grouping: str

    def __post_init__(self):
        if self.grouping not in GROUPINGS:
            raise ValueError(f"grouping must be one of {GROUPINGS}, got {self.grouping!r}")
        energies = np.array(self.energies, dtype=float)
        populations = np.array(self.populations, dtype=float)
        if energies.shape != populations.shape or energies.ndim != 1:
            raise ValueError("energies and populations must be 1-d arrays of equal length")
        if np.any(populations < -ZERO_TOL):
            raise ValueError(f"negative population {populations.min():.3e}")
        populations = np.maximum(populations, 0.0)
        total = populations.sum()
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"populations sum to {total!r}, not 1")
        if self.grouping == "per_distinct_energy" and np.any(np.diff(energies) <= 0):
            raise ValueError("per_distinct_energy requires strictly increasing energies")
        energies.setflags(write=False)
        populations.setflags(write=False)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "populations", populations)


def _group_distinct(energies: np.ndarray, populations: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    grouped_e, grouped_p = [], []
    start = 0
    for i in range(1, len(energies) + 1):
        if i == len(energies) or energies[i] - energies[i - 1] > tol:
            grouped_e.append(energies[start:i].mean())
            grouped_p.append(populations[start:i].sum())
            start = i
    return np.array(grouped_e), np.array(grouped_p)


def energy_populations(
    state: StateVector,
    h_b: HermitianOperator,
    grouping: str = "per_distinct_energy",
    degeneracy_tol: float = DEGENERACY_TOL,
) -> EnergyDistribution:
    """p_k = |<e_k|psi>|^2 over the eigenlevels of h_b.

    A matrix that is already diagonal (J_z in the Dicke basis, the scenario
    batteries) keeps its own basis, so degenerate subspaces resolve in the
    natural basis instead of an arbitrary eigensolver rotation.
    """
    _check_sectors(h_b, state)
    if grouping not in GROUPINGS:
        raise ValueError(f"grouping must be one of {GROUPINGS}, got {grouping!r}")
    mat = h_b.matrix
    off_diag = mat - np.diag(np.diag(mat))
    if np.max(np.abs(off_diag), initial=0.0) <= ZERO_TOL:
        energies = np.real(np.diag(mat))
        populations = np.abs(state.amplitudes) ** 2
    else:
        eigvals, eigvecs = np.linalg.eigh(mat)
        energies = eigvals
        populations = np.abs(eigvecs.conj().T @ state.amplitudes) ** 2
    order = np.argsort(energies, kind="stable")
    energies, populations = energies[order], populations[order]
    if grouping == "per_distinct_energy":
        energies, populations = _group_distinct(energies, populations, degeneracy_tol)
    total = populations.sum()
    if abs(total - 1.0) <= 1e-10 and total != 1.0:
        populations = populations / total
    return EnergyDistribution(energies, populations, grouping)


def kl_divergence(
    p: EnergyDistribution,
    q: EnergyDistribution,
    base: str = "nats",
    zero_tol: float = ZERO_TOL,
) -> float:
    """sum_k p_k log(p_k / q_k); math.inf when p has weight outside q's support."""
    if base not in ("nats", "bits"):
        raise ValueError(f"base must be 'nats' or 'bits', got {base!r}")
    if p.grouping != q.grouping:
        raise ValueError(f"grouping mismatch: {p.grouping} vs {q.grouping}")
    if p.energies.shape != q.energies.shape or not np.allclose(p.energies, q.energies, atol=DEGENERACY_TOL):
        raise ValueError("energy level sets do not match")
    supported = p.populations > zero_tol
    if np.any(supported & (q.populations <= zero_tol)):
        return math.inf
    pk = p.populations[supported]
    qk = q.populations[supported]
    # Gibbs: the true value is >= 0, so a tiny negative sum is pure roundoff
    value = max(float(np.sum(pk * np.log(pk / qk))), 0.0)
    return value / _LN2 if base == "bits" else value


def fisher_analytic(p, p_dot, zero_tol: float = ZERO_TOL) -> float:
    """Energy-space activity sum_k pdot_k^2 / p_k over populated levels.

    Levels with p_k below zero_tol are dropped; if such a level still has a
    flow |pdot_k| >= sqrt(zero_tol) the quotient has no finite limit and
    math.inf is returned.
    """
    p = np.asarray(p, dtype=float)
    p_dot = np.asarray(p_dot, dtype=float)
    if p.shape != p_dot.shape or p.ndim != 1:
        raise ValueError("p and p_dot must be 1-d arrays of equal length")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"populations sum to {p.sum()!r}, not 1")
    if abs(p_dot.sum()) > 1e-9:
        raise ValueError(f"population rates sum to {p_dot.sum()!r}, not 0")
    supported = p >= zero_tol
    if np.any(~supported & (np.abs(p_dot) >= math.sqrt(zero_tol))):
        return math.inf
    return float(np.sum(p_dot[supported] ** 2 / p[supported]))


def fisher_discrete(p_next: EnergyDistribution, p_now: EnergyDistribution, dt: float) -> float:
    """Finite-step activity estimate 2*KL(p_next || p_now)/dt^2, in nats."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    return 2.0 * kl_divergence(p_next, p_now, base="nats") / dt**2


def fisher_bound(state: StateVector, h_b: HermitianOperator, i_e: float) -> float:
    """Activity-based power bound sqrt(Var(H_B) * I_E)."""
    if i_e < 0:
        raise ValueError(f"i_e must be non-negative, got {i_e!r}")
    if math.isinf(i_e):
        return math.inf
    return math.sqrt(variance(h_b, state) * i_e)


@dataclass(frozen=True)
class BoundSeries:
    """Per-step diagnostics along a stroboscopic trajectory (steps 1..n)."""

    steps: np.ndarray
    times: np.ndarray
    avg_power: np.ndarray
    inst_power: np.ndarray
    var_hb: np.ndarray
    var_hc: np.ndarray
    robertson: np.ndarray
    kl_step: np.ndarray  # nats, vs the previous step; inf on support violations
    i_e_step: np.ndarray
    fisher: np.ndarray
    energy: np.ndarray


def bound_series(
    traj: Trajectory,
    grouping: str = "per_distinct_energy",
    charger_form: str = "at_kicks",
) -> BoundSeries:
    """Evaluate powers, variances, both bounds, and step KL along a trajectory.

    The charger variance defaults to the at-kick form evaluated on the
    post-period states; the instantaneous power always uses the between-kick
    precession term, the generator actually acting at those instants.
    """
    params = traj.params
    sector = traj.sector
    h_b = battery_operator(sector, params.convention)
    h_c = charger_operator(sector, charger_form, params.beta, params.convention, params.precession)
    drive = charger_operator(sector, "between_kicks", params.beta, params.convention, params.precession)
    n = traj.n_steps
    out = {key: np.empty(n) for key in
           ("avg_power", "inst_power", "var_hb", "var_hc", "robertson", "kl_step", "i_e_step", "fisher", "energy")}
    prev_dist = energy_populations(traj.state(0), h_b, grouping)
    tau = params.tau
    for step in range(1, n + 1):
        state = traj.state(step)
        i = step - 1
        out["energy"][i] = expectation(h_b, state)
        out["avg_power"][i] = average_power(traj, h_b, step)
        out["inst_power"][i] = instantaneous_power(state, drive, h_b)
        out["var_hb"][i] = variance(h_b, state)
        out["var_hc"][i] = variance(h_c, state)
        out["robertson"][i] = 2.0 * math.sqrt(out["var_hb"][i] * out["var_hc"][i])
        dist = energy_populations(state, h_b, grouping)
        out["kl_step"][i] = kl_divergence(dist, prev_dist)
        out["i_e_step"][i] = 2.0 * out["kl_step"][i] / tau**2
        out["fisher"][i] = math.inf if math.isinf(out["i_e_step"][i]) else math.sqrt(out["var_hb"][i] * out["i_e_step"][i])
        prev_dist = dist
    steps = np.arange(1, n + 1)
    return BoundSeries(steps=steps, times=steps * tau, **out)
