"""Time evolution under frequency-switching schedules.

Two stock switching regimes between frequencies omega_0 and omega_1:

* ratchet: one sudden transition per cycle (the return leg is adiabatic and
  contributes only rotation), so every step carries the same ratio s;
* seesaw: both transitions sudden, so the steps alternate 1/s, s.

At the resonant rotation angles (theta = pi q for the ratchet, pi (q + 1/2)
for the seesaw) the two-step composite is diagonal and N cycles stretch x by
exactly s^N.  Schedule-level reports therefore quote ``s_eff`` as the
coordinate stretch sigma_max of the accumulated map; the squeezing parameter
of the corresponding Gaussian state is its square (see
:mod:`parasqueeze.symplectic`).

Runaway analysis follows the per-switch amplitude convention: the argument
``s`` of :func:`is_runaway` and the threshold ``s_c(theta) =
(1 + |sin theta|)/|cos theta|`` refer to the coordinate gain of one switch,
i.e. the square root of the frequency ratio.  In that variable the spectral
criterion |trace| > 2 of the periodic two-step map reproduces the threshold
formula exactly.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, ScheduleFormatError
from .symplectic import (
    PhasePoint,
    SqueezeDecomposition,
    SymplecticMap2,
    compose,
    decompose_squeezing,
    step_map,
    two_step_ratchet,
    two_step_seesaw,
)

RUNAWAY_LIMIT = 1e12


class Regime(str, Enum):
    RATCHET = "ratchet"
    SEESAW = "seesaw"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SwitchSchedule:
    """Ordered switching schedule: (ratio, rotation angle) per step."""

    regime: Regime
    steps: tuple[tuple[float, float], ...]
    s: Optional[float] = None

    def __post_init__(self):
        for i, (s_n, theta_n) in enumerate(self.steps):
            if not math.isfinite(s_n) or s_n <= 0.0:
                raise DomainError(f"step {i}: ratio must be finite and > 0, got {s_n!r}")
            if not math.isfinite(theta_n):
                raise DomainError(f"step {i}: angle must be finite, got {theta_n!r}")

    def __len__(self) -> int:
        return len(self.steps)


def ratchet_schedule(s: float, theta: float, cycles: int) -> SwitchSchedule:
    """2*cycles equal-ratio steps (one fast transition per half-cycle)."""
    _check_cycles(cycles)
    steps = tuple((float(s), float(theta)) for _ in range(2 * cycles))
    return SwitchSchedule(Regime.RATCHET, steps, float(s))


def seesaw_schedule(s: float, theta: float, cycles: int) -> SwitchSchedule:
    """2*cycles alternating steps: down by 1/s, then up by s."""
    _check_cycles(cycles)
    s = float(s)
    steps = []
    for _ in range(cycles):
        steps.append((1.0 / s, float(theta)))
        steps.append((s, float(theta)))
    return SwitchSchedule(Regime.SEESAW, tuple(steps), s)


def custom_schedule(steps: Sequence[Sequence[float]]) -> SwitchSchedule:
    return SwitchSchedule(Regime.CUSTOM, tuple((float(s), float(t)) for s, t in steps))


def _check_cycles(cycles: int) -> None:
    if not isinstance(cycles, int) or cycles < 0:
        raise DomainError(f"cycles must be a non-negative integer, got {cycles!r}")


def parse_schedule(doc) -> SwitchSchedule:
    """Build a schedule from a JSON document (text or parsed dict).

    Accepted shapes: ``{"regime": "ratchet"|"seesaw", "s": float,
    "theta": float, "cycles": int}`` or ``{"steps": [[s, theta], ...]}``.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ScheduleFormatError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    if not isinstance(doc, dict):
        raise ScheduleFormatError(f"schedule document must be an object, got {type(doc).__name__}")
    if "steps" in doc:
        steps = doc["steps"]
        if not isinstance(steps, list) or not all(
            isinstance(p, (list, tuple)) and len(p) == 2 for p in steps
        ):
            raise ScheduleFormatError("field 'steps' must be a list of [s, theta] pairs")
        try:
            return custom_schedule(steps)
        except DomainError as exc:
            raise ScheduleFormatError(f"field 'steps': {exc}") from exc
    for name in ("regime", "s", "theta", "cycles"):
        if name not in doc:
            raise ScheduleFormatError(f"missing field '{name}' (or provide 'steps')")
    try:
        regime = Regime(str(doc["regime"]).lower())
    except ValueError as exc:
        raise ScheduleFormatError(f"field 'regime': unknown value {doc['regime']!r}") from exc
    try:
        s = float(doc["s"])
        theta = float(doc["theta"])
        cycles = int(doc["cycles"])
    except (TypeError, ValueError) as exc:
        raise ScheduleFormatError(f"fields (s, theta, cycles) must be numeric: {exc}") from exc
    try:
        if regime is Regime.RATCHET:
            return ratchet_schedule(s, theta, cycles)
        if regime is Regime.SEESAW:
            return seesaw_schedule(s, theta, cycles)
    except DomainError as exc:
        raise ScheduleFormatError(str(exc)) from exc
    raise ScheduleFormatError("regime 'custom' requires an explicit 'steps' list")


def load_schedule(path) -> SwitchSchedule:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_schedule(fh.read())


@dataclass(frozen=True)
class StepRecord:
    """State after one schedule step.

    ``s_eff`` is the coordinate stretch sigma_max of the accumulated map
    (schedule convention); ``theta`` and ``phase`` come from the polar
    decomposition; ``det_drift`` monitors numerical area preservation.
    """

    index: int
    s_n: float
    theta_n: float
    s_eff: float
    theta: float
    phase: float
    det_drift: float


@dataclass(frozen=True)
class EvolutionResult:
    """Total map plus the per-step squeezing trajectory.

    ``runaway_at`` is the step index at which the stretch first exceeded the
    runaway limit (evolution stops there); None if the schedule completed.
    Runaway is a physical outcome, not an error.
    """

    total: SymplecticMap2
    records: tuple[StepRecord, ...]
    runaway_at: Optional[int] = None

    @property
    def runaway(self) -> bool:
        return self.runaway_at is not None

    @property
    def s_eff(self) -> float:
        return self.total.stretch

    @property
    def decomposition(self) -> SqueezeDecomposition:
        return decompose_squeezing(self.total, det_tol=1e-6)


def evolve_schedule(schedule: SwitchSchedule, runaway_limit: float = RUNAWAY_LIMIT) -> EvolutionResult:
    """Left-to-right product of the schedule's step maps.

    Records the squeezing decomposition after every step; stops early with a
    typed runaway flag once the stretch exceeds ``runaway_limit``.
    """
    total = SymplecticMap2.identity()
    records = []
    for i, (s_n, theta_n) in enumerate(schedule.steps):
        total = compose(step_map(s_n, theta_n), total)
        dec = decompose_squeezing(total, det_tol=1e-6)
        records.append(
            StepRecord(
                index=i,
                s_n=s_n,
                theta_n=theta_n,
                s_eff=dec.stretch,
                theta=dec.theta,
                phase=dec.phase,
                det_drift=total.det_drift,
            )
        )
        if dec.stretch > runaway_limit:
            return EvolutionResult(total, tuple(records), runaway_at=i)
    return EvolutionResult(total, tuple(records), runaway_at=None)


# Rotation angles closer to the pole of 1/cos(theta) than this are reported
# as an infinite threshold.
_POLE_TOL = 1e-12


def runaway_threshold(theta: float) -> float:
    """Critical per-switch amplitude gain s_c = (1 + |sin theta|)/|cos theta|.

    Periodic ratchet switching with per-switch coordinate gain above s_c
    squeezes without bound.  Near cos(theta) = 0 the threshold diverges and
    math.inf is returned.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError(f"runaway_threshold requires finite theta, got {theta!r}")
    c = abs(math.cos(theta))
    if c < _POLE_TOL:
        return math.inf
    return (1.0 + abs(math.sin(theta))) / c


class RunawayVerdict(NamedTuple):
    runaway: bool
    spectral_radius: float


def is_runaway(s: float, theta: float, regime: Regime = Regime.RATCHET) -> RunawayVerdict:
    """Spectral runaway test for periodic two-step switching.

    ``s`` is the per-switch amplitude gain (square root of the frequency
    ratio), matching the convention of :func:`runaway_threshold`.  The
    periodic two-step map is hyperbolic, and the squeezing unbounded, when
    its spectral radius exceeds 1; for the ratchet this reproduces
    ``s > runaway_threshold(theta)`` exactly, and the same spectral test
    extends to the seesaw.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"is_runaway requires finite s > 0, got {s!r}")
    if regime is Regime.RATCHET:
        pair = two_step_ratchet(s * s, theta, theta)
    elif regime is Regime.SEESAW:
        pair = two_step_seesaw(s * s, theta, theta)
    else:
        raise DomainError("is_runaway is defined for the ratchet and seesaw regimes")
    tr = pair.a + pair.d
    if abs(tr) <= 2.0:
        rho = 1.0
    else:
        rho = 0.5 * (abs(tr) + math.sqrt(tr * tr - 4.0))
    return RunawayVerdict(rho > 1.0 + 1e-12, rho)


@dataclass(frozen=True)
class FrequencyProfile:
    """Oscillator frequency omega(t) on [t_start, t_end], with omega > 0.

    ``omega_dot`` may be omitted, in which case a central difference is
    used; piecewise-linear profiles carry exact slopes and are integrated
    segment by segment.
    """

    omega: Callable[[float], float]
    t_start: float
    t_end: float
    omega_dot: Optional[Callable[[float], float]] = None
    breakpoints: Optional[tuple[tuple[float, float], ...]] = None

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise DomainError("profile endpoints must be finite")
        if self.t_end <= self.t_start:
            raise DomainError("profile requires t_end > t_start")

    @classmethod
    def piecewise_linear(cls, points: Sequence[Sequence[float]]) -> "FrequencyProfile":
        """Profile through breakpoints [[t0, w0], [t1, w1], ...]."""
        pts = [(float(t), float(w)) for t, w in points]
        if len(pts) < 2:
            raise DomainError("piecewise profile needs at least two breakpoints")
        times = [t for t, _ in pts]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            raise DomainError("breakpoint times must be strictly increasing")
        for t, w in pts:
            if not math.isfinite(w) or w <= 0.0:
                raise DomainError(f"frequency must be finite and > 0, got {w!r} at t={t!r}")
        omegas = [w for _, w in pts]

        def omega(t: float) -> float:
            return float(np.interp(t, times, omegas))

        def omega_dot(t: float) -> float:
            i = min(max(bisect.bisect_right(times, t) - 1, 0), len(pts) - 2)
            return (omegas[i + 1] - omegas[i]) / (times[i + 1] - times[i])

        return cls(omega, times[0], times[-1], omega_dot, tuple(pts))

    def omega_max(self) -> Optional[float]:
        if self.breakpoints is not None:
            return max(w for _, w in self.breakpoints)
        return None

    def _segments(self) -> list[tuple[float, float]]:
        if self.breakpoints is None:
            return [(self.t_start, self.t_end)]
        times = [t for t, _ in self.breakpoints]
        return list(zip(times, times[1:]))


@dataclass(frozen=True)
class Trajectory:
    """Characteristic trajectory sampled at the integrator's accepted steps."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @property
    def endpoint(self) -> PhasePoint:
        return PhasePoint(float(self.x[-1]), float(self.y[-1]))


def _derivative(profile: FrequencyProfile) -> Callable[[float], float]:
    if profile.omega_dot is not None:
        return profile.omega_dot
    h = 1e-7 * max(profile.t_end - profile.t_start, 1.0)

    def central(t: float) -> float:
        return (profile.omega(t + h) - profile.omega(t - h)) / (2.0 * h)

    return central


def integrate_characteristics(
    profile: FrequencyProfile,
    p0: PhasePoint,
    dt_max: Optional[float] = None,
    rtol: float = 1e-10,
) -> Trajectory:
    """Integrate dx/dt = (wdot/2w) x - w y, dy/dt = w x - (wdot/2w) y.

    Adaptive embedded Runge-Kutta pair (RK45) at relative tolerance
    ``rtol``; piecewise-linear profiles are integrated one segment at a time
    so slope discontinuities never sit inside a step.  For constant omega
    the flow is the counterclockwise rotation by omega*(t - t0).
    """
    wdot = _derivative(profile)
    wmax = profile.omega_max()
    if dt_max is not None:
        if dt_max <= 0.0:
            raise DomainError("dt_max must be positive")
        if wmax is not None and dt_max * wmax >= 0.1:
            raise DomainError("step control requires dt_max * max(omega) < 0.1")
    max_step = dt_max if dt_max is not None else np.inf

    def rhs(t, v):
        w = profile.omega(t)
        if w <= 0.0:
            raise DomainError(f"omega(t) must stay positive, got {w!r} at t={t!r}")
        g = wdot(t) / (2.0 * w)
        return (g * v[0] - w * v[1], w * v[0] - g * v[1])

    ts = [np.array([profile.t_start])]
    xs = [np.array([p0.x])]
    ys = [np.array([p0.y])]
    state = (p0.x, p0.y)
    for a, b in profile._segments():
        sol = solve_ivp(
            rhs,
            (a, b),
            state,
            method="RK45",
            rtol=rtol,
            atol=1e-14,
            max_step=max_step,
        )
        if not sol.success:
            raise DomainError(f"integration failed on [{a}, {b}]: {sol.message}")
        ts.append(sol.t[1:])
        xs.append(sol.y[0][1:])
        ys.append(sol.y[1][1:])
        state = (sol.y[0][-1], sol.y[1][-1])
    return Trajectory(np.concatenate(ts), np.concatenate(xs), np.concatenate(ys))


def flow_map(
    profile: FrequencyProfile,
    dt_max: Optional[float] = None,
    rtol: float = 1e-10,
) -> SymplecticMap2:
    """Linearized flow map of the characteristics over the profile span.

    Obtained by integrating the two unit initial conditions; the flow is
    area preserving, so the determinant deviates from 1 only by integrator
    error.
    """
    cols = []
    for x0, y0 in ((1.0, 0.0), (0.0, 1.0)):
        traj = integrate_characteristics(profile, PhasePoint(x0, y0), dt_max=dt_max, rtol=rtol)
        end = traj.endpoint
        cols.append((end.x, end.y))
    return SymplecticMap2(cols[0][0], cols[1][0], cols[0][1], cols[1][1])
