"""Command-line interface: simulate, sweep, spectra, counterexample, fit.

Exit codes: 0 success, 2 configuration error (bad flags or values), 1 runtime
error. Spin-count lists accept either 'a..b:step' ranges or comma lists.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import scenarios, serialize, spectral, sweep

FORMS = ("between_kicks", "at_kicks")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the simulation subcommands."""

    subcommand: str
    n_list: tuple[int, ...]
    beta: float = 7.0
    steps: int = 50
    theta: float = math.pi
    phi: float = 0.0
    grouping: str = "per_distinct_energy"
    convention: str = "spin_half"
    fmt: str = "csv"
    out: str | None = None
    order: str = "kick_then_rotate"
    charger_form: str = "at_kicks"
    include_initial: bool = False

    def __post_init__(self):
        if not self.n_list:
            raise ConfigError("no spin counts given")
        if not math.isfinite(self.beta):
            raise ConfigError(f"beta must be finite, got {self.beta!r}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ConfigError(f"theta/phi must be finite, got {self.theta!r}, {self.phi!r}")

    @classmethod
    def from_args(cls, args: argparse.Namespace, n_list) -> "RunConfig":
        return cls(
            subcommand=args.subcommand,
            n_list=tuple(n_list),
            beta=args.beta,
            steps=args.steps,
            theta=args.theta,
            phi=args.phi,
            grouping=args.grouping,
            convention=args.convention,
            fmt=args.fmt,
            out=args.out,
            order=getattr(args, "order", "kick_then_rotate"),
            charger_form=getattr(args, "charger_form", "at_kicks"),
            include_initial=getattr(args, "include_initial", False),
        )


def parse_spin_counts(text: str) -> list[int]:
    """'4..64:4' or '4,8,12' -> sorted list of spin counts."""
    text = text.strip()
    try:
        if ".." in text:
            start_text, _, rest = text.partition("..")
            stop_text, _, step_text = rest.partition(":")
            start, stop = int(start_text), int(stop_text)
            step = int(step_text) if step_text else 1
            if step <= 0 or stop < start:
                raise ValueError
            values = list(range(start, stop + 1, step))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
        if not values or any(v < 1 for v in values):
            raise ValueError
    except ValueError:
        raise ConfigError(f"invalid spin-count list {text!r}; use 'a..b:step' or 'n1,n2,...'") from None
    return sorted(set(values))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=float, default=7.0, help="kick strength (default 7)")
    parser.add_argument("--steps", type=int, default=50, help="number of drive periods (default 50)")
    parser.add_argument("--theta", type=float, default=math.pi, help="initial polar angle (default pi)")
    parser.add_argument("--phi", type=float, default=0.0, help="initial azimuth (default 0)")
    parser.add_argument("--grouping", choices=["per_eigenvector", "per_distinct_energy"],
                        default="per_distinct_energy")
    parser.add_argument("--convention", choices=["spin_half", "pauli"], default="spin_half")
    parser.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinbattery",
                                     description="Collective-spin battery charging and power-bound audits")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p_sim = subs.add_parser("simulate", help="one kicked trajectory with per-step diagnostics")
    p_sim.add_argument("--n", type=int, required=True, help="number of spins")
    p_sim.add_argument("--order", choices=["kick_then_rotate", "rotate_then_kick"], default="kick_then_rotate")
    p_sim.add_argument("--charger-form", dest="charger_form", choices=list(FORMS), default="at_kicks",
                       help="charger variance form for the uncertainty bound")
    _add_common(p_sim)

    p_sweep = subs.add_parser("sweep", help="time-averaged diagnostics over a range of N")
    p_sweep.add_argument("--n", required=True, help="spin counts, e.g. 4..64:4 or 4,8,12")
    p_sweep.add_argument("--include-initial", action="store_true",
                         help="fold the step-0 snapshot into the time averages")
    _add_common(p_sweep)

    p_spec = subs.add_parser("spectra", help="static charger spectral statistics per N")
    p_spec.add_argument("--n", required=True, help="spin counts, e.g. 4..64:4")
    p_spec.add_argument("--beta", type=float, default=7.0)
    p_spec.add_argument("--form", choices=["both", *FORMS], default="both")
    p_spec.add_argument("--histogram", action="store_true",
                        help="emit the multiplicity-weighted eigenvalue histogram instead of summary stats")
    p_spec.add_argument("--convention", choices=["spin_half", "pauli"], default="spin_half")
    p_spec.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    p_spec.add_argument("--out", default=None)

    p_cx = subs.add_parser("counterexample", help="closed-form scenarios where the bounds mislead")
    p_cx.add_argument("name", choices=["rabi", "degenerate", "parallel", "turning-point"])
    p_cx.add_argument("--gap", type=float, default=1.0)
    p_cx.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p_cx.add_argument("--t-max", type=float, default=None, help="grid end (default: one full cycle pi/lambda)")
    p_cx.add_argument("--samples", type=int, default=1001)
    p_cx.add_argument("--dt", type=float, default=scenarios.DEFAULT_FD_DT,
                      help="finite-difference step for the discrete activity estimate")
    p_cx.add_argument("--n", type=int, default=10, help="cell count for the parallel baseline")
    p_cx.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    p_cx.add_argument("--out", default=None)

    p_fit = subs.add_parser("fit", help="power-law fit of a CSV column against N")
    p_fit.add_argument("--in", dest="source", required=True, help="input CSV (sweep or spectra schema)")
    p_fit.add_argument("--column", required=True, help="column to fit against N")
    p_fit.add_argument("--form", choices=FORMS, default=None,
                       help="restrict spectra rows to one charger form")
    return parser


def _emit(schema: str, rows: list[dict], fmt: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(serialize.rows_to_text(schema, rows, fmt))
    else:
        serialize.write_rows(out, schema, rows, fmt)


def _cmd_simulate(args) -> int:
    config = RunConfig.from_args(args, [args.n])
    series = sweep.run_single(config.n_list[0], beta=config.beta, steps=config.steps,
                              theta=config.theta, phi=config.phi, convention=config.convention,
                              order=config.order, grouping=config.grouping,
                              charger_form=config.charger_form)
    _emit("series", serialize.series_rows(series), config.fmt, config.out)
    return 0


def _cmd_sweep(args) -> int:
    config = RunConfig.from_args(args, parse_spin_counts(args.n))
    records = sweep.run_sweep(config.n_list, beta=config.beta, steps=config.steps,
                              theta=config.theta, phi=config.phi, convention=config.convention,
                              grouping=config.grouping, include_initial=config.include_initial)
    _emit("sweep", serialize.sweep_rows(records), config.fmt, config.out)
    return 0


def _cmd_spectra(args) -> int:
    forms = list(FORMS) if args.form == "both" else [args.form]
    rows = []
    for n_spins in parse_spin_counts(args.n):
        for form in forms:
            block = spectral.block_spectrum(form, n_spins, args.beta, args.convention)
            if args.histogram:
                rows += serialize.histogram_rows(n_spins, args.beta, form, block)
            else:
                rows += serialize.spectra_rows(n_spins, args.beta, form, block)
    _emit("spectra_hist" if args.histogram else "spectra", rows, args.fmt, args.out)
    return 0


def _cmd_counterexample(args) -> int:
    t_max = args.t_max if args.t_max is not None else math.pi / args.lam
    if args.name == "rabi":
        result = scenarios.rabi_scenario(args.gap, args.lam, t_max, args.samples, fd_dt=args.dt)
        rows = serialize.scenario_rows(result)
    elif args.name == "turning-point":
        # force an odd grid so the exact turning point t = pi/(2 lambda) is sampled
        samples = args.samples if args.samples % 2 == 1 else args.samples + 1
        result = scenarios.rabi_scenario(args.gap, args.lam, math.pi / args.lam, samples, fd_dt=args.dt)
        rows = serialize.scenario_rows(result)
    elif args.name == "degenerate":
        both = scenarios.degenerate_scenario(args.lam, t_max, args.samples, fd_dt=args.dt)
        rows = serialize.scenario_rows(both["per_eigenvector"]) + serialize.scenario_rows(both["per_distinct_energy"])
    else:
        result = scenarios.parallel_baseline(args.n, args.lam, t_max, args.samples, fd_dt=args.dt)
        rows = serialize.scenario_rows(result)
    _emit("scenario", rows, args.fmt, args.out)
    return 0


def _cmd_fit(args) -> int:
    name, version, rows = serialize.read_csv(args.source)
    if version != serialize.SCHEMA_VERSION:
        raise ConfigError(f"schema version v{version} not supported (expected v{serialize.SCHEMA_VERSION})")
    if args.form is not None:
        rows = [r for r in rows if r.get("form") == args.form]
    if not rows:
        raise ConfigError("no rows to fit")
    if args.column not in rows[0]:
        raise ConfigError(f"column {args.column!r} not in {sorted(rows[0])}")
    if "N" not in rows[0]:
        raise ConfigError("input schema has no N column to fit against")
    points = [(row["N"], row[args.column]) for row in rows]
    fit = sweep.fit_power_law(points)
    json.dump({"column": args.column, "exponent": fit.exponent, "prefactor": fit.prefactor,
               "log_prefactor": fit.log_prefactor, "r_squared": fit.r_squared}, sys.stdout)
    sys.stdout.write("\n")
    return 0


_HANDLERS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "spectra": _cmd_spectra,
    "counterexample": _cmd_counterexample,
    "fit": _cmd_fit,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code) if exc.code else 0
    try:
        return _HANDLERS[args.subcommand](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - single-line runtime diagnostic
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
