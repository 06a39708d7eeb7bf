"""Command-line front end: parameter sweeps to CSV/JSON datasets.

Subcommands:

* ``occupations``: level populations vs squeezing strength (exact,
  approximate and equilibrium columns); defaults reproduce the stock
  two-panel dataset (omega/T = 0.2 with levels 8..12, omega/T = 0.4 with
  levels 3..7, epsilon from 0 to 0.5 in 0.01 steps).
* ``evolve``: run a switching schedule from a JSON file; per-step CSV plus a
  JSON summary of the total map.
* ``entropy``: entropy excess and heat columns on an (omega/T, epsilon) grid.
* ``resonance-scan``: spectral radius and runaway flag on a (theta, s) grid
  against the analytic threshold.  Here s is the per-switch amplitude gain.

Output is deterministic: floats are printed with 12 significant digits, grid
order is fixed, rows are computed in parallel (capped by the
PARASQUEEZE_THREADS environment variable) but written in grid order.
Exit codes: 0 ok, 2 configuration error, 3 numerical/precision error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from typing import Callable, Iterable, Optional, Sequence

from .entropy import (
    EntropyMethod,
    delta_s_exact,
    delta_s_leading,
    delta_s_perturbative,
    heat_cost,
)
from .errors import (
    DomainError,
    ParasqueezeError,
    PrecisionError,
    ScheduleFormatError,
)
from .schedules import (
    Regime,
    evolve_schedule,
    is_runaway,
    load_schedule,
    runaway_threshold,
)
from .states import (
    SqueezedThermalState,
    boundary_level,
    pn_approx,
    pn_equilibrium,
    pn_exact,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_LEVEL_HARD_CAP = 2000


class ConfigError(ParasqueezeError, ValueError):
    """Invalid command-line configuration."""


def fmt(x: float) -> str:
    """Fixed 12-significant-digit float formatting ('.' decimal, no locale)."""
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.12g}"


def _parse_float_list(text: str, name: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"--{name}: expected comma-separated floats, got {text!r}") from exc
    if not values:
        raise ConfigError(f"--{name}: empty list")
    return values


def _parse_int_list(text: str, name: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"--{name}: expected comma-separated integers, got {text!r}") from exc
    if not values:
        raise ConfigError(f"--{name}: empty list")
    return values


def parse_range_step(text: str, name: str) -> list[float]:
    """Inclusive float grid from 'start:stop:step'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--{name}: expected 'start:stop:step', got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--{name}: non-numeric field in {text!r}") from exc
    if step <= 0.0 or stop < start:
        raise ConfigError(f"--{name}: need stop >= start and step > 0 in {text!r}")
    count = int(round((stop - start) / step))
    grid = [start + k * step for k in range(count + 1)]
    if grid[-1] > stop + 0.5 * step:
        grid.pop()
    return grid


def parse_range_count(text: str, name: str) -> list[float]:
    """Uniform float grid from 'start:stop:count'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--{name}: expected 'start:stop:count', got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"--{name}: non-numeric field in {text!r}") from exc
    if count < 2 or stop <= start:
        raise ConfigError(f"--{name}: need stop > start and count >= 2 in {text!r}")
    h = (stop - start) / (count - 1)
    return [start + k * h for k in range(count)]


def _workers() -> int:
    cap = os.environ.get("PARASQUEEZE_THREADS")
    if cap is not None:
        try:
            n = int(cap)
        except ValueError as exc:
            raise ConfigError(f"PARASQUEEZE_THREADS must be an integer, got {cap!r}") from exc
        return max(1, n)
    return min(8, os.cpu_count() or 1)


def _parallel_map(fn: Callable, items: Sequence) -> list:
    workers = _workers()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_rows(header: list[str], rows: Iterable[Sequence[str]], out: Optional[str], fmt_kind: str) -> None:
    if fmt_kind == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        payload = "\n".join(lines) + "\n"
    else:
        records = [dict(zip(header, row)) for row in rows]
        payload = json.dumps(records, indent=1) + "\n"
    if out is None:
        sys.stdout.write(payload)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)


def _default_levels(omega_over_t: float) -> list[int]:
    # Five levels straddling the boundary level N0, e.g. 8..12 at 0.2 and
    # 3..7 at 0.4.
    base = max(0, math.floor(boundary_level(omega_over_t)) - 1)
    return list(range(base, base + 5))


def _cmd_occupations(args) -> int:
    omegas = _parse_float_list(args.omega_over_t, "omega-over-t")
    eps_grid = parse_range_step(args.epsilon_range, "epsilon-range")
    explicit_levels = _parse_int_list(args.levels, "levels") if args.levels else None
    if explicit_levels is not None:
        for n in explicit_levels:
            if n < 0 or n > _LEVEL_HARD_CAP:
                raise PrecisionError(f"level {n} outside the supported range 0..{_LEVEL_HARD_CAP}")
    grid = []
    for u in omegas:
        if u <= 0.0:
            raise ConfigError(f"--omega-over-t values must be > 0, got {u}")
        levels = explicit_levels if explicit_levels is not None else _default_levels(u)
        for eps in eps_grid:
            for n in levels:
                grid.append((u, eps, n))

    def row(point):
        u, eps, n = point
        status = "ok"
        p_ex = p_ap = math.nan
        try:
            state = SqueezedThermalState(u, 1.0 + eps)
            p_ex = pn_exact(state, n, n_cap=max(n, 60))
            p_ap = pn_approx(state, n)
        except PrecisionError as exc:
            status = f"precision: {exc}"
        return (fmt(u), fmt(eps), str(n), fmt(p_ex), fmt(p_ap), fmt(pn_equilibrium(u, n)), status)

    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = _parallel_map(row, grid)
    header = ["omega_over_t", "epsilon", "n", "p_exact", "p_approx", "p_eq", "status"]
    _write_rows(header, rows, args.out, args.format)
    return EXIT_OK


def _cmd_evolve(args) -> int:
    schedule = load_schedule(args.schedule)
    result = evolve_schedule(schedule)
    header = ["step", "s_eff", "theta", "phase", "det_drift"]
    rows = [
        (str(r.index), fmt(r.s_eff), fmt(r.theta), fmt(r.phase), fmt(r.det_drift))
        for r in result.records
    ]
    _write_rows(header, rows, args.out, args.format)
    total = result.total
    summary = {
        "total_map": [[_round12(total.a), _round12(total.b)], [_round12(total.c), _round12(total.d)]],
        "s_eff": _round12(result.s_eff),
        "det_drift": _round12(total.det_drift),
        "steps": len(result.records),
        "runaway": result.runaway,
        "runaway_at": result.runaway_at,
    }
    payload = json.dumps(summary, indent=1) + "\n"
    if args.summary is None:
        sys.stdout.write(payload)
    else:
        with open(args.summary, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    return EXIT_OK


def _round12(x: float) -> float:
    return float(fmt(x))


def _cmd_entropy(args) -> int:
    omegas = _parse_float_list(args.omega_over_t, "omega-over-t")
    eps_grid = parse_range_step(args.epsilon_range, "epsilon-range")
    grid = [(u, eps) for u in omegas for eps in eps_grid]

    def row(point):
        u, eps = point
        if u <= 0.0:
            raise ConfigError(f"--omega-over-t values must be > 0, got {u}")
        ds_exact = delta_s_exact(u, 1.0 + eps) if eps > 0.0 else 0.0
        ds_pert = delta_s_perturbative(u, eps)
        ds_lead = delta_s_leading(u, eps)
        return (
            fmt(u),
            fmt(eps),
            fmt(ds_exact),
            fmt(ds_pert),
            fmt(ds_lead),
            fmt(ds_exact),
            fmt(ds_exact / math.log(2.0)),
        )

    rows = _parallel_map(row, grid)
    header = [
        "omega_over_t",
        "epsilon",
        "delta_s_exact",
        "delta_s_pert",
        "delta_s_leading",
        "delta_q_over_t",
        "landauer_ratio",
    ]
    _write_rows(header, rows, args.out, args.format)
    return EXIT_OK


def _cmd_resonance_scan(args) -> int:
    thetas = parse_range_count(args.theta_range, "theta-range")
    s_grid = parse_range_count(args.s_range, "s-range")
    # Rotation angles at the 1/cos pole have an infinite threshold; drop them.
    thetas = [t for t in thetas if abs(math.cos(t)) > 1e-9]
    grid = [(t, s) for t in thetas for s in s_grid]

    def row(point):
        theta, s = point
        verdict = is_runaway(s, theta, Regime.RATCHET)
        return (
            fmt(theta),
            fmt(s),
            fmt(verdict.spectral_radius),
            "1" if verdict.runaway else "0",
            fmt(runaway_threshold(theta)),
        )

    rows = _parallel_map(row, grid)
    header = ["theta", "s", "spectral_radius", "runaway_flag", "s_c_formula"]
    _write_rows(header, rows, args.out, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parasqueeze",
        description="Parametric squeezing datasets: occupations, schedules, entropy, resonance maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--tol", type=float, default=1e-9, help="quadrature tolerance override")

    p_occ = sub.add_parser("occupations", help="level populations vs squeezing strength")
    p_occ.add_argument("--omega-over-t", default="0.2,0.4")
    p_occ.add_argument("--epsilon-range", default="0:0.5:0.01", metavar="A:B:STEP")
    p_occ.add_argument("--levels", default=None, help="comma-separated level indices")
    add_common(p_occ)
    p_occ.set_defaults(func=_cmd_occupations)

    p_ev = sub.add_parser("evolve", help="run a switching schedule from a JSON file")
    p_ev.add_argument("--schedule", required=True, metavar="FILE")
    p_ev.add_argument("--summary", default=None, help="summary JSON path (default: stdout)")
    add_common(p_ev)
    p_ev.set_defaults(func=_cmd_evolve)

    p_en = sub.add_parser("entropy", help="entropy excess and heat columns")
    p_en.add_argument("--omega-over-t", default="0.2,0.4")
    p_en.add_argument("--epsilon-range", default="0:0.02:0.002", metavar="A:B:STEP")
    add_common(p_en)
    p_en.set_defaults(func=_cmd_entropy)

    p_rs = sub.add_parser("resonance-scan", help="runaway map on a (theta, s) grid")
    p_rs.add_argument("--theta-range", default="0.05:1.5:50", metavar="A:B:COUNT")
    p_rs.add_argument("--s-range", default="1:5:50", metavar="A:B:COUNT")
    add_common(p_rs)
    p_rs.set_defaults(func=_cmd_resonance_scan)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ScheduleFormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PrecisionError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def console_entry() -> None:
    raise SystemExit(main())
