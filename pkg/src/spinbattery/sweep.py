"""N-sweeps of the kicked battery and power-law fits of the time averages.

One record per system size: variances of battery and charger, the Robertson
bound, and the stepwise KL divergence, each averaged over the post-period
snapshots of a fixed-length run. Stepwise KL terms that hit a support
violation are infinite by construction; they are excluded from the average
and counted on the record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .floquet import FloquetParams, battery_operator, charger_operator, evolve
from .observables import BoundSeries, bound_series, expectation, variance
from .sectors import SpinSector, coherent_state

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SweepRecord:
    n_spins: int
    beta: float
    steps: int
    time_avg_var_hb: float
    time_avg_var_hc: float
    time_avg_bound: float
    time_avg_kl_bits: float
    time_avg_kl_nats: float
    kl_support_violations: int
    final_energy: float
    avg_power: float


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    log_prefactor: float
    r_squared: float

    @property
    def prefactor(self) -> float:
        return math.exp(self.log_prefactor)


def run_single(
    n_spins: int,
    beta: float = 7.0,
    steps: int = 50,
    theta: float = math.pi,
    phi: float = 0.0,
    convention: str = "spin_half",
    order: str = "kick_then_rotate",
    grouping: str = "per_distinct_energy",
    charger_form: str = "at_kicks",
) -> BoundSeries:
    """One kicked-battery run from a coherent state, as a per-step series."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    sector = SpinSector(n_spins)
    params = FloquetParams(beta=beta, order=order, convention=convention)
    initial = coherent_state(sector, theta, phi)
    traj = evolve(initial, params, steps)
    return bound_series(traj, grouping=grouping, charger_form=charger_form)


def run_sweep(
    n_list,
    beta: float = 7.0,
    steps: int = 50,
    theta: float = math.pi,
    phi: float = 0.0,
    convention: str = "spin_half",
    grouping: str = "per_distinct_energy",
    include_initial: bool = False,
) -> list[SweepRecord]:
    """One record per N; averages run over the post-period snapshots only.

    include_initial additionally folds the step-0 state into the variance and
    bound averages (KL has no step-0 term either way).
    """
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(n < 2 for n in n_list):
        raise ValueError(f"all spin counts must be >= 2, got {n_list}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    records = []
    for n_spins in sorted(n_list):
        sector = SpinSector(n_spins)
        params = FloquetParams(beta=beta, convention=convention)
        initial = coherent_state(sector, theta, phi)
        traj = evolve(initial, params, steps)
        series = bound_series(traj, grouping=grouping)
        h_b = battery_operator(sector, convention)
        var_hb, var_hc, bound = series.var_hb, series.var_hc, series.robertson
        if include_initial:
            h_c = charger_operator(sector, "at_kicks", beta, convention)
            v0_hb = variance(h_b, traj.state(0))
            v0_hc = variance(h_c, traj.state(0))
            var_hb = np.concatenate([[v0_hb], var_hb])
            var_hc = np.concatenate([[v0_hc], var_hc])
            bound = np.concatenate([[2.0 * math.sqrt(v0_hb * v0_hc)], bound])
        finite = np.isfinite(series.kl_step)
        kl_nats = float(np.mean(series.kl_step[finite])) if np.any(finite) else 0.0
        records.append(
            SweepRecord(
                n_spins=n_spins,
                beta=beta,
                steps=steps,
                time_avg_var_hb=float(np.mean(var_hb)),
                time_avg_var_hc=float(np.mean(var_hc)),
                time_avg_bound=float(np.mean(bound)),
                time_avg_kl_bits=kl_nats / _LN2,
                time_avg_kl_nats=kl_nats,
                kl_support_violations=int(np.sum(~finite)),
                final_energy=expectation(h_b, traj.state(steps)),
                avg_power=float(series.avg_power[-1]),
            )
        )
    return records


def emit(records: list[SweepRecord], fmt: str, destination) -> None:
    """Write sweep records to a path or file-like destination as CSV or JSON."""
    from .serialize import sweep_rows, write_rows

    if not records:
        raise ValueError("nothing to emit: records are empty")
    write_rows(destination, "sweep", sweep_rows(records), fmt)


def fit_power_law(points) -> PowerLawFit:
    """Least-squares fit of log y against log N; exact on clean power laws."""
    points = [(float(n), float(y)) for n, y in points]
    if len(points) < 3:
        raise ValueError(f"need at least 3 points, got {len(points)}")
    if any(n <= 0 or y <= 0 for n, y in points):
        raise ValueError("power-law fits require positive N and y")
    log_n = np.log([n for n, _ in points])
    log_y = np.log([y for _, y in points])
    design = np.column_stack([log_n, np.ones_like(log_n)])
    (slope, intercept), *_ = np.linalg.lstsq(design, log_y, rcond=None)
    residuals = log_y - design @ (slope, intercept)
    total = np.sum((log_y - log_y.mean()) ** 2)
    r_squared = 1.0 - float(np.sum(residuals**2) / total) if total > 0 else 1.0
    return PowerLawFit(exponent=float(slope), log_prefactor=float(intercept), r_squared=min(max(r_squared, 0.0), 1.0))
