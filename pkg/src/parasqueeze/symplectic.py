"""Algebra of 2x2 area-preserving phase-space maps.

A sudden frequency switch by the ratio s stretches the phase-plane
coordinates (x, y) = (Re alpha, Im alpha) by diag(sqrt(s), 1/sqrt(s)); slow
evolution between switches rotates them.  One switch plus the accumulated
rotation gives the step map

    L(s, theta) = [[ sqrt(s) cos(theta),  sqrt(s) sin(theta)],
                   [-sin(theta)/sqrt(s),  cos(theta)/sqrt(s)]],

with det L = 1.  Everything else here is composition and extraction of the
squeezing content of such maps.

Note the two squeezing conventions in use:

* :func:`jump_map`'s argument s (the frequency ratio) equals the
  singular-value ratio sigma_max/sigma_min of the map, which is also the
  squeezing parameter of the Gaussian state the map produces.
  :func:`decompose_squeezing` reports this ratio as ``s_eff``.
* Schedule-level code reports the coordinate stretch sigma_max
  (= sqrt(s_eff)), since a resonant run of N cycles with ratio s multiplies
  x by exactly s^N.  See :mod:`parasqueeze.schedules`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError

# Scale-aware sanity gate on construction.  Genuine precision claims
# (1e-12 per composition, 1e-9 over 1e4 compositions) are asserted in the
# test suite; the constructor gate only has to catch corrupted data while
# admitting ODE-derived flow maps whose determinant drifts with the
# integrator tolerance.
_DET_GATE = 1e-6


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise DomainError(f"{name} requires finite values, got {v!r}")


@dataclass(frozen=True)
class PhasePoint:
    """Phase-plane point (x, y) = (Re alpha, Im alpha)."""

    x: float
    y: float

    def __post_init__(self):
        _require_finite("PhasePoint", self.x, self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])


@dataclass(frozen=True)
class SymplecticMap2:
    """Real 2x2 map [[a, b], [c, d]] with unit determinant.

    The determinant is checked on construction against a scale-aware gate
    and exposed through :attr:`det_drift` for monitoring; it is never
    silently renormalized.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        _require_finite("SymplecticMap2", self.a, self.b, self.c, self.d)
        scale = max(1.0, abs(self.a * self.d) + abs(self.b * self.c))
        if abs(self.det - 1.0) > _DET_GATE * scale:
            raise ConsistencyError(
                f"map determinant {self.det!r} deviates from 1 beyond the gate"
            )

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def det_drift(self) -> float:
        return self.det - 1.0

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @classmethod
    def from_array(cls, m) -> "SymplecticMap2":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 array, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "SymplecticMap2":
        return cls(1.0, 0.0, 0.0, 1.0)

    def apply(self, pt: PhasePoint) -> PhasePoint:
        return PhasePoint(self.a * pt.x + self.b * pt.y, self.c * pt.x + self.d * pt.y)

    def __matmul__(self, other: "SymplecticMap2") -> "SymplecticMap2":
        return compose(self, other)

    @property
    def stretch(self) -> float:
        """Largest singular value sigma_max (coordinate amplification)."""
        t = self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2
        if t <= 2.0:
            return 1.0
        return math.sqrt(0.5 * (t + math.sqrt(t * t - 4.0)))


@dataclass(frozen=True)
class SqueezeDecomposition:
    """Squeezing content of a map: rotation(phase) . axis_squeeze(s_eff, theta).

    ``s_eff`` is the singular-value ratio sigma_max/sigma_min >= 1 (the
    squeezing parameter of the transported Gaussian state), ``theta`` the
    direction of the stretched axis folded into [0, pi), and ``phase`` the
    residual rotation in the convention of :func:`rotation_map`.
    """

    s_eff: float
    theta: float
    phase: float

    @property
    def stretch(self) -> float:
        """Coordinate stretch sigma_max = sqrt(s_eff)."""
        return math.sqrt(self.s_eff)


def jump_map(s: float) -> SymplecticMap2:
    """Map of a sudden frequency switch by the ratio s: diag(sqrt(s), 1/sqrt(s))."""
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"jump_map requires finite s > 0, got {s!r}")
    r = math.sqrt(s)
    return SymplecticMap2(r, 0.0, 0.0, 1.0 / r)


def rotation_map(theta: float) -> SymplecticMap2:
    """Rotation accumulated between switches: [[cos, sin], [-sin, cos]].

    This is the s = 1 step map.  Note the sign convention: the free flow of
    the characteristic equations advances a point counterclockwise, which
    corresponds to ``rotation_map(-omega*dt)``.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError(f"rotation_map requires finite theta, got {theta!r}")
    c, sn = math.cos(theta), math.sin(theta)
    return SymplecticMap2(c, sn, -sn, c)


def step_map(s: float, theta: float) -> SymplecticMap2:
    """One switch of ratio s after an accumulated rotation theta."""
    s = float(s)
    theta = float(theta)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"step_map requires finite s > 0, got {s!r}")
    if not math.isfinite(theta):
        raise DomainError(f"step_map requires finite theta, got {theta!r}")
    r = math.sqrt(s)
    c, sn = math.cos(theta), math.sin(theta)
    return SymplecticMap2(r * c, r * sn, -sn / r, c / r)


def compose(m2: SymplecticMap2, m1: SymplecticMap2) -> SymplecticMap2:
    """Matrix product m2 . m1 (m1 acts first)."""
    return SymplecticMap2(
        m2.a * m1.a + m2.b * m1.c,
        m2.a * m1.b + m2.b * m1.d,
        m2.c * m1.a + m2.d * m1.c,
        m2.c * m1.b + m2.d * m1.d,
    )


def two_step_ratchet(s: float, theta_a: float, theta_b: float) -> SymplecticMap2:
    """Closed form of two consecutive equal-ratio steps.

    Equals ``compose(step_map(s, theta_a), step_map(s, theta_b))`` with
    theta_a the later and theta_b the earlier rotation angle.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"two_step_ratchet requires finite s > 0, got {s!r}")
    _require_finite("two_step_ratchet", theta_a, theta_b)
    ca, cb = math.cos(theta_a), math.cos(theta_b)
    sb = math.sin(theta_b)
    cab, sab = math.cos(theta_a + theta_b), math.sin(theta_a + theta_b)
    return SymplecticMap2(
        (s - 1.0) * ca * cb + cab,
        (s - 1.0) * ca * sb + sab,
        -(1.0 / s - 1.0) * ca * sb - sab,
        (1.0 / s - 1.0) * ca * cb + cab,
    )


def two_step_seesaw(s: float, theta_a: float, theta_b: float) -> SymplecticMap2:
    """Closed form of an up-jump step following a down-jump step.

    Equals ``compose(step_map(s, theta_a), step_map(1/s, theta_b))``: the
    earlier switch has ratio 1/s, the later one s.  At theta_a = theta_b =
    pi/2 this is diag(-s, -1/s), the resonant squeezer.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"two_step_seesaw requires finite s > 0, got {s!r}")
    _require_finite("two_step_seesaw", theta_a, theta_b)
    sa, sb = math.sin(theta_a), math.sin(theta_b)
    cb = math.cos(theta_b)
    cab, sab = math.cos(theta_a + theta_b), math.sin(theta_a + theta_b)
    return SymplecticMap2(
        -(s - 1.0) * sa * sb + cab,
        (s - 1.0) * sa * cb + sab,
        -(1.0 / s - 1.0) * sa * cb - sab,
        -(1.0 / s - 1.0) * sa * sb + cab,
    )


def axis_squeeze(s_eff: float, theta: float) -> SymplecticMap2:
    """Symmetric squeeze by ratio s_eff along the axis at angle theta.

    Stretches the direction (cos theta, sin theta) by sqrt(s_eff) and
    compresses the orthogonal one by the same factor.
    """
    s_eff = float(s_eff)
    if not math.isfinite(s_eff) or s_eff <= 0.0:
        raise DomainError(f"axis_squeeze requires finite s_eff > 0, got {s_eff!r}")
    _require_finite("axis_squeeze", theta)
    r = math.sqrt(s_eff)
    c, sn = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -sn], [sn, c]])
    h = rot @ np.diag([r, 1.0 / r]) @ rot.T
    return SymplecticMap2.from_array(h)


def decompose_squeezing(m: SymplecticMap2, det_tol: float = 1e-9) -> SqueezeDecomposition:
    """Extract (s_eff, theta, phase) from a map by polar decomposition.

    Writes m = Q H with Q a rotation and H symmetric positive definite;
    then s_eff is the ratio of H's eigenvalues, theta the direction of its
    major axis, and phase the rotation angle of Q.  The reconstruction
    ``rotation_map(phase) . axis_squeeze(s_eff, theta)`` reproduces the map.

    ``det_tol`` bounds the acceptable determinant drift (scale-aware);
    ODE-derived flow maps may need a looser value than the default.
    """
    arr = m.as_array()
    scale = max(1.0, abs(m.a * m.d) + abs(m.b * m.c))
    if abs(m.det - 1.0) > det_tol * scale:
        raise ConsistencyError(
            f"decompose_squeezing: determinant {m.det!r} drifted beyond {det_tol}"
        )
    u, sig, vt = np.linalg.svd(arr)
    s_eff = float(sig[0] / sig[1])
    q = u @ vt
    phase = math.atan2(q[0, 1], q[0, 0])
    if s_eff - 1.0 < 1e-12:
        theta = 0.0
        s_eff = max(s_eff, 1.0)
    else:
        v1 = vt[0]
        theta = math.atan2(v1[1], v1[0]) % math.pi
    return SqueezeDecomposition(s_eff=s_eff, theta=theta, phase=phase)


def gaussian_transport(cov, m: SymplecticMap2) -> np.ndarray:
    """Transport a 2x2 phase-space covariance matrix: m . cov . m^T.

    The input must be symmetric positive definite; the area-preserving map
    leaves det(cov) unchanged.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (2, 2):
        raise DomainError(f"covariance must be 2x2, got shape {cov.shape}")
    scale = np.abs(cov).max()
    if not np.isfinite(cov).all() or abs(cov[0, 1] - cov[1, 0]) > 1e-10 * max(scale, 1.0):
        raise DomainError("covariance must be finite and symmetric")
    if cov[0, 0] <= 0.0 or cov[1, 1] <= 0.0 or np.linalg.det(cov) <= 0.0:
        raise DomainError("covariance must be positive definite")
    arr = m.as_array()
    out = arr @ cov @ arr.T
    return 0.5 * (out + out.T)


def frequency_jump_bogoliubov(s: float) -> tuple[float, float]:
    """Mode-mixing coefficients (u, v) for a frequency switch by ratio s.

    The annihilation operator of the new mode is u a - v a^dagger with
    u = (s+1)/(2 sqrt(s)) and v = (s-1)/(2 sqrt(s)); u^2 - v^2 = 1.
    Exposed for completeness next to the phase-space jump with the same s.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"frequency_jump_bogoliubov requires finite s > 0, got {s!r}")
    r = 2.0 * math.sqrt(s)
    return ((s + 1.0) / r, (s - 1.0) / r)
