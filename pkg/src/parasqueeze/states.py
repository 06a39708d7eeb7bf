"""Squeezed thermal and squeezed coherent states: Wigner values and level
occupations.

A thermal state of a mode at frequency/temperature ratio u = omega/T
(hbar = k_B = 1) squeezed by s along the axis at angle theta has the
Gaussian Wigner function

    W(x, y) = (2/pi)/(1+2 nbar) exp{-2/(1+2 nbar) [s u'^2 + v'^2/s]},

with (u', v') the coordinates rotated by theta and
nbar = 1/(e^u - 1).  Its level populations come through three routes:

* ``pn_exact``: the closed binomial-hypergeometric sum

      p_n = kappa sum_q C(n,q) (-1)^q (2/(1+kappa/s))^{n+1-q}
             2F1(1/2, n+1-q; 1; -kappa(s-1/s)/(1+kappa/s)),

  kappa = tanh(u/2).  The outer sum cancels catastrophically (about
  0.35 n decimal digits at moderate temperature), so after a compensated
  double-precision attempt the same printed sum is re-evaluated in
  arbitrary precision sized from the measured term magnitudes.

* ``pn_wigner_integral``: the phase-space integral
  p_n = 2 (-1)^n int e^{-2 r^2} L_n(4 r^2) W dx dy, evaluated with a
  Gauss-Hermite product rule aligned to the Gaussian envelope in the
  state's principal axes.  The remaining factor is the degree-n Laguerre
  polynomial, so order n+1 is already exact; the rule is still stepped up
  until two successive orders agree.  This is the independent oracle for
  ``pn_exact``.

* ``pn_approx``: the small-squeezing form p_n ~ (p_n^eq / C) I0(z_n) with a
  numerically fixed normalization constant.

Both exact routes are invariant under s -> 1/s and independent of theta
(the integral kernel is radial); inputs with s < 1 are canonicalized to 1/s
so the hypergeometric argument stays non-positive.
"""

from __future__ import annotations

import functools
import math
import threading
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import mpmath as mp
import numpy as np

from .errors import DomainError, PrecisionError, QuadratureError
from .specfun import (
    bessel_i0,
    hyp2f1_half,
    hyp2f1_half_family,
    hyp2f1_half_family_mp,
    laguerre_weighted,
)
from .symplectic import PhasePoint

_EPS = 2.220446049250313e-16

# mpmath's working precision is process-global; escalated evaluations take
# this lock so parameter sweeps can run in threads.
_MP_LOCK = threading.Lock()

PointLike = Union[PhasePoint, Sequence[float]]


def _point_xy(pt: PointLike) -> tuple[float, float]:
    if isinstance(pt, PhasePoint):
        return pt.x, pt.y
    x, y = pt
    return float(x), float(y)


@dataclass(frozen=True)
class SqueezedThermalState:
    """Squeezed thermal state (omega/T ratio, squeezing s, axis angle theta)."""

    omega_over_t: float
    s: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.omega_over_t) or self.omega_over_t <= 0.0:
            raise DomainError(f"omega_over_t must be finite and > 0, got {self.omega_over_t!r}")
        if not math.isfinite(self.s) or self.s <= 0.0:
            raise DomainError(f"squeezing s must be finite and > 0, got {self.s!r}")
        if not math.isfinite(self.theta):
            raise DomainError(f"theta must be finite, got {self.theta!r}")

    @property
    def kappa(self) -> float:
        """Thermal parameter tanh(omega/2T), in (0, 1)."""
        return math.tanh(0.5 * self.omega_over_t)

    @property
    def nbar(self) -> float:
        """Average photon number of the unsqueezed thermal state."""
        return nbar(self.omega_over_t)

    @property
    def mean_photons(self) -> float:
        """Exact mean level of the squeezed state: nbar + (2 nbar + 1)(s + 1/s - 2)/4."""
        n = self.nbar
        return n + (2.0 * n + 1.0) * (self.s + 1.0 / self.s - 2.0) / 4.0


@dataclass(frozen=True)
class SqueezedCoherentParams:
    """Squeezed coherent state: squeezing (s, theta) and center (x0, y0)."""

    s: float = 1.0
    theta: float = 0.0
    x0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.s) or self.s <= 0.0:
            raise DomainError(f"squeezing s must be finite and > 0, got {self.s!r}")
        for name in ("theta", "x0", "y0"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")


class Method(str, Enum):
    EXACT = "exact"
    WIGNER_INTEGRAL = "wigner_integral"
    APPROX = "approx"


@dataclass(frozen=True)
class OccupationDistribution:
    """Level populations p_0..p_{n_max} plus the probability left in the tail."""

    p: tuple[float, ...]
    n_max: int
    tail: float
    method: Method

    def __post_init__(self):
        if len(self.p) != self.n_max + 1:
            raise DomainError("length of p must be n_max + 1")
        for n, pn in enumerate(self.p):
            if not math.isfinite(pn) or pn < 0.0 or pn > 1.0:
                raise DomainError(f"p_{n} = {pn!r} is not a probability")
        if self.tail < -1e-9:
            raise DomainError(f"tail {self.tail!r} below -1e-9")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.p)

    @property
    def mean(self) -> float:
        return math.fsum(n * pn for n, pn in enumerate(self.p))


def nbar(omega_over_t: float) -> float:
    """Thermal occupancy 1/(exp(omega/T) - 1)."""
    u = float(omega_over_t)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"nbar requires omega_over_t > 0, got {u!r}")
    return 1.0 / math.expm1(u)


def pn_equilibrium(omega_over_t: float, n: int) -> float:
    """Boltzmann population (1 - e^{-u}) e^{-n u} of level n."""
    u = float(omega_over_t)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"pn_equilibrium requires omega_over_t > 0, got {u!r}")
    n = _check_level(n)
    return -math.expm1(-u) * math.exp(-n * u)


def boundary_level(omega_over_t: float) -> float:
    """Estimated boundary level N0 = 2T/omega - 1/2.

    Populations of levels below N0 initially drop under small squeezing of a
    thermal state, those above initially grow.  Compare with
    :func:`empirical_boundary_level` for the crossing the exact formula
    actually produces.
    """
    u = float(omega_over_t)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"boundary_level requires omega_over_t > 0, got {u!r}")
    return 2.0 / u - 0.5


def wigner_squeezed_coherent(params: SqueezedCoherentParams, pt: PointLike) -> float:
    """Wigner density of a squeezed coherent state at a phase-space point."""
    x, y = _point_xy(pt)
    dx, dy = x - params.x0, y - params.y0
    c, sn = math.cos(params.theta), math.sin(params.theta)
    up = dx * c + dy * sn
    vp = dy * c - dx * sn
    return (2.0 / math.pi) * math.exp(-2.0 * params.s * up * up - (2.0 / params.s) * vp * vp)


def wigner_squeezed_thermal(state: SqueezedThermalState, pt: PointLike) -> float:
    """Wigner density of a squeezed thermal state at a phase-space point."""
    x, y = _point_xy(pt)
    c, sn = math.cos(state.theta), math.sin(state.theta)
    up = x * c + y * sn
    vp = y * c - x * sn
    width = 1.0 + 2.0 * state.nbar
    expo = -(2.0 / width) * (state.s * up * up + vp * vp / state.s)
    return (2.0 / math.pi) / width * math.exp(expo)


def _check_level(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"level index must be a non-negative integer, got {n!r}")
    return int(n)


def _canonical_s(s: float) -> float:
    # p_n is invariant under s <-> 1/s (radial integral kernel); keeping
    # s >= 1 keeps the hypergeometric argument z <= 0.
    return s if s >= 1.0 else 1.0 / s


def _eq23_parameters(u: float, s: float) -> tuple[float, float, float]:
    kappa = math.tanh(0.5 * u)
    beta = 2.0 / (1.0 + kappa / s)
    z = -kappa * (s - 1.0 / s) / (1.0 + kappa / s)
    return kappa, beta, z


def _pn_exact_double(u: float, s: float, n: int) -> tuple[float, float]:
    """Compensated double-precision pass; returns (value, error bound)."""
    kappa, beta, z = _eq23_parameters(u, s)
    fam = hyp2f1_half_family(n + 1, z)
    terms = []
    bpow = beta
    for m in range(1, n + 2):
        q = n + 1 - m
        t = math.comb(n, q) * bpow * fam[m]
        terms.append(-t if q % 2 else t)
        bpow *= beta
    total = math.fsum(terms)
    abssum = math.fsum(abs(t) for t in terms)
    err = _EPS * (n + 4.0) * kappa * abssum
    return kappa * total, err


def _pn_exact_mp(u: float, s: float, n: int) -> float:
    """The same printed sum at escalated precision.

    Working precision is sized from the positive-term magnitude
    kappa beta (1+beta)^n (the hypergeometric factors are <= 1 for z <= 0),
    plus the contamination budget of the upward hypergeometric recurrence;
    a second pass at higher precision runs if the result comes out so small
    that the first pass cannot certify ~1e-15 relative accuracy.
    """
    kappa_d, beta_d, z_d = _eq23_parameters(u, s)
    log10_abs = math.log10(kappa_d * beta_d) + n * math.log10(1.0 + beta_d)
    rec_margin = (n + 1) * math.log10(max(1.0 - z_d, 1.0))
    dps = 25 + max(0, math.ceil(log10_abs)) + math.ceil(rec_margin) + 8

    def evaluate(prec: int):
        with mp.workdps(prec):
            u_, s_ = mp.mpf(u), mp.mpf(s)
            kappa = mp.tanh(u_ / 2)
            beta = 2 / (1 + kappa / s_)
            z = -kappa * (s_ - 1 / s_) / (1 + kappa / s_)
            fam = hyp2f1_half_family_mp(n + 1, z, mp)
            total = mp.mpf(0)
            bpow = beta
            for m in range(1, n + 2):
                q = n + 1 - m
                t = mp.mpf(math.comb(n, q)) * bpow * fam[m]
                total += -t if q % 2 else t
                bpow *= beta
            return kappa * total

    with _MP_LOCK:
        val = evaluate(dps)
        if val != 0:
            lost = log10_abs - float(mp.log10(abs(val)))
            if lost + 20 > dps:
                val = evaluate(25 + math.ceil(lost) + math.ceil(rec_margin) + 8)
        return float(val)


def pn_exact(state: SqueezedThermalState, n: int, n_cap: int = 60) -> float:
    """Exact population of level n from the binomial-hypergeometric sum.

    Independent of the squeezing angle and of the s <-> 1/s replacement.
    ``n_cap`` guards against accidentally huge level indices; raise it
    explicitly when a deeper distribution is wanted (the arbitrary-precision
    path keeps full accuracy at any practical n).
    """
    n = _check_level(n)
    if n > n_cap:
        raise PrecisionError(
            f"level {n} beyond n_cap={n_cap}; pass n_cap >= {n} to evaluate deeper levels"
        )
    u = state.omega_over_t
    s = _canonical_s(state.s)
    if n <= 16:
        val, err = _pn_exact_double(u, s, n)
        if err <= max(1e-16, 1e-13 * abs(val)):
            return val
    return _pn_exact_mp(u, s, n)


@functools.lru_cache(maxsize=128)
def _gh_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.hermite.hermgauss(order)
    return t, np.log(w)


_WIGNER_N_LIMIT = 200


def _gh_value(u: float, s: float, n: int, order: int) -> float:
    # Gauss-Hermite product rule in the principal axes.  The total Gaussian
    # weight (kernel times state) is absorbed into the nodes; what remains
    # is the degree-n Laguerre polynomial, split as exp(-x/2) L_n(x) times
    # exp(+x/2) with the growing half folded into the node weights so no
    # intermediate overflows.
    kappa = math.tanh(0.5 * u)
    a = 2.0 + 2.0 * s * kappa
    b = 2.0 + 2.0 * kappa / s
    t, logw = _gh_nodes(order)
    u2 = (t * t) / a
    v2 = (t * t) / b
    x = 4.0 * (u2[:, None] + v2[None, :])
    f = laguerre_weighted(n, x)
    wi = np.exp(logw + 2.0 * u2)
    wj = np.exp(logw + 2.0 * v2)
    total = wi @ f @ wj
    sign = -1.0 if n % 2 else 1.0
    return 2.0 * sign * (2.0 / math.pi) * kappa / math.sqrt(a * b) * float(total)


def pn_wigner_integral(state: SqueezedThermalState, n: int, abs_tol: float = 1e-9) -> float:
    """Population of level n by quadrature of the phase-space integral.

    Serves as the independent oracle for :func:`pn_exact`.  The quadrature
    order starts at n+1 (where the product rule is already exact for the
    polynomial part) and grows until two successive orders agree within
    ``abs_tol``.
    """
    n = _check_level(n)
    if n > _WIGNER_N_LIMIT:
        raise DomainError(f"pn_wigner_integral supports n <= {_WIGNER_N_LIMIT}, got {n}")
    u = state.omega_over_t
    s = _canonical_s(state.s)
    order = n + 1
    prev = None
    achieved = math.inf
    for bump in (1, 1, 1, 4, 8, 16):
        val = _gh_value(u, s, n, order)
        if prev is not None:
            achieved = abs(val - prev)
            if achieved <= abs_tol:
                return val
        prev = val
        order += bump
    raise QuadratureError(
        f"quadrature for p_{n} did not converge to {abs_tol}", achieved=achieved
    )


# Soft validity edge of the small-squeezing approximation.
_APPROX_SOFT_LIMIT = 0.3


def _i0_argument(u: float, kappa: float, eps: float, n: int) -> float:
    if u < 0.05:
        # Printed high-temperature simplification of the argument.
        return u * eps * (n + 0.5)
    return kappa * eps * (n / (1.0 - kappa) + (n + 1.0) / (1.0 + kappa))


@functools.lru_cache(maxsize=256)
def _approx_norm(u: float, s: float) -> float:
    """Normalization sum over all levels of p_n^eq I0(z_n).

    Converges whenever the I0 growth rate stays below the Boltzmann decay;
    at equality the approximation has left its validity region entirely.
    """
    kappa = math.tanh(0.5 * u)
    eps = s - 1.0
    rate = _i0_argument(u, kappa, eps, 1) - _i0_argument(u, kappa, eps, 0)
    if rate >= u:
        raise PrecisionError(
            "small-squeezing approximation diverges for these parameters "
            f"(I0 growth rate {rate:.3g} >= omega/T {u:.3g})"
        )
    terms = []
    n = 0
    while True:
        t = pn_equilibrium(u, n) * bessel_i0(_i0_argument(u, kappa, eps, n))
        terms.append(t)
        if n > 5 and t < 1e-19:
            break
        if n > 200_000:
            raise PrecisionError("normalization sum for pn_approx did not converge")
        n += 1
    return math.fsum(terms)


def pn_approx(state: SqueezedThermalState, n: int) -> float:
    """Small-squeezing approximation p_n ~ (p_n^eq / C) I0(z_n).

    ``z_n = kappa eps (n/(1-kappa) + (n+1)/(1+kappa))`` with eps = |s - 1|,
    switching to the high-temperature form ``(omega eps/T)(n + 1/2)`` for
    omega/T < 0.05.  The normalization constant C is fixed numerically so
    the populations sum to one.  Intended for kappa*eps << 1; a warning is
    issued beyond kappa*eps = 0.3.
    """
    n = _check_level(n)
    u = state.omega_over_t
    s = _canonical_s(state.s)
    eps = s - 1.0
    kappa = math.tanh(0.5 * u)
    if kappa * eps >= _APPROX_SOFT_LIMIT:
        warnings.warn(
            f"pn_approx outside its validity region: kappa*eps = {kappa * eps:.3g}",
            stacklevel=2,
        )
    c = _approx_norm(u, s)
    return pn_equilibrium(u, n) * bessel_i0(_i0_argument(u, kappa, eps, n)) / c


def default_n_max(omega_over_t: float) -> int:
    """Truncation covering roughly an e^{-12} Boltzmann tail."""
    return max(60, math.ceil(12.0 / omega_over_t))


def occupation_distribution(
    state: SqueezedThermalState,
    n_max: Optional[int] = None,
    method: Method = Method.EXACT,
    abs_tol: float = 1e-9,
) -> OccupationDistribution:
    """Populations p_0..p_{n_max} by the chosen route, with the tail balance.

    Negative roundoff down to -1e-9 is clipped to zero; anything larger in
    magnitude is a genuine error and rejected by the distribution type.
    """
    if n_max is None:
        n_max = default_n_max(state.omega_over_t)
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max!r}")
    if method is Method.EXACT:
        values = [pn_exact(state, n, n_cap=n_max) for n in range(n_max + 1)]
    elif method is Method.WIGNER_INTEGRAL:
        if n_max > _WIGNER_N_LIMIT:
            raise DomainError(
                f"wigner-integral distributions support n_max <= {_WIGNER_N_LIMIT}"
            )
        values = [pn_wigner_integral(state, n, abs_tol=abs_tol) for n in range(n_max + 1)]
    elif method is Method.APPROX:
        values = [pn_approx(state, n) for n in range(n_max + 1)]
    else:
        raise DomainError(f"unknown method {method!r}")
    cleaned = []
    for n, v in enumerate(values):
        if v < 0.0:
            if v < -1e-9:
                raise DomainError(f"p_{n} = {v!r} is negative beyond roundoff")
            v = 0.0
        cleaned.append(v)
    tail = 1.0 - math.fsum(cleaned)
    return OccupationDistribution(tuple(cleaned), n_max, tail, method)


def geometric_tail_estimate(dist: OccupationDistribution) -> float:
    """Tail probability from a geometric envelope of the last levels.

    The level ratio of a squeezed thermal tail still drifts like
    r_n = r_inf - beta/n at practical truncations, so the drift is fitted
    from the last three levels and the envelope extended level by level
    until it is negligible.
    """
    p = dist.p
    if len(p) < 2 or p[-1] <= 0.0 or p[-2] <= 0.0:
        return 0.0
    r2 = p[-1] / p[-2]
    if not (0.0 < r2 < 1.0):
        return 0.0
    big_l = dist.n_max
    beta = 0.0
    if len(p) >= 3 and p[-3] > 0.0:
        r1 = p[-2] / p[-3]
        beta = (r2 - r1) * big_l * (big_l - 1.0)
    total = 0.0
    pk = p[-1]
    for j in range(1, 100_000):
        rj = r2 + beta * (1.0 / big_l - 1.0 / (big_l + j))
        if not (0.0 < rj < 1.0):
            rj = r2
        pk *= rj
        total += pk
        if pk < 1e-18 * max(total, 1e-300):
            break
    return total


def empirical_boundary_level(
    omega_over_t: float,
    probe_epsilon: float = 0.02,
    n_span: Optional[int] = None,
) -> float:
    """Crossing level where the exact populations switch from dropping to
    growing under a small squeezing probe.

    Finite differences of ``pn_exact`` at s = 1 + probe_epsilon against the
    Boltzmann populations; the sign change is interpolated to a fractional
    level.  Returns NaN when no crossing exists in the scanned span.
    """
    u = float(omega_over_t)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"empirical_boundary_level requires omega_over_t > 0, got {u!r}")
    if n_span is None:
        n_span = math.ceil(4.0 / u) + 8
    state = SqueezedThermalState(u, 1.0 + probe_epsilon)
    prev = None
    for n in range(n_span + 1):
        d = pn_exact(state, n, n_cap=n_span) - pn_equilibrium(u, n)
        if prev is not None and prev < 0.0 <= d:
            n_neg = n - 1
            return n_neg + abs(prev) / (abs(prev) + abs(d))
        prev = d
    return math.nan
