"""Complex-plane quadrature of counting integrals.

Integrals of the form ``int d^2z/pi F(z)`` are taken on a tensor polar
grid around a centre c: with ``z = c + sqrt(r) e^{i theta}`` the measure
becomes ``dr dtheta / (2 pi)``.  The radial variable r runs over
Gauss-Legendre nodes on [0, R]; the angle uses the periodic trapezoid
rule, which converges spectrally for the smooth periodic integrands met
here.  R is picked from the integrand itself: the smallest probed radius
beyond which max_theta |F| stays below ``abs_tol * 1e-3``.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..errors import CapabilityError, DivergenceError, ParameterError
from ..special_fn import check_degree, laguerre_values
from ..states import (
    Coherent,
    DisplacedThermal,
    FockMixture,
    SqueezedVacuum,
    Thermal,
    log_antidiagonal,
)

_PROBE_R = np.geomspace(1e-10, 1e4, 281)


@dataclass(frozen=True)
class QuadratureConfig:
    radial_nodes: int = 128
    angular_nodes: int = 128
    radial_cutoff: Optional[float] = None  # |z - c|; None selects it from the integrand
    abs_tol: float = 1e-10

    def __post_init__(self):
        if self.radial_nodes < 8 or self.angular_nodes < 8:
            raise ParameterError(
                f"radial_nodes={self.radial_nodes}, angular_nodes={self.angular_nodes} violate nodes >= 8"
            )
        if self.radial_cutoff is not None and not self.radial_cutoff > 0:
            raise ParameterError(f"radial_cutoff={self.radial_cutoff} violates radial_cutoff > 0")
        if not self.abs_tol > 0:
            raise ParameterError(f"abs_tol={self.abs_tol} violates abs_tol > 0")

    def refined(self, factor=2):
        """Same configuration with ``factor`` times the nodes in each direction."""
        return replace(
            self,
            radial_nodes=factor * self.radial_nodes,
            angular_nodes=factor * self.angular_nodes,
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    cutoff: float  # in r = |z - c|^2
    tail_envelope: float


def _legendre_newton(x, n, steps):
    # Newton refinement of Legendre roots; returns nodes and weights in the
    # dtype of x
    for _ in range(steps + 1):
        p0, p1 = np.ones_like(x), x
        for k in range(1, n):
            p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
        dp = n * (x * p1 - p0) / (x * x - 1)
        if _ == steps:
            break
        x = x - p1 / dp
    return x, 2 / ((1 - x * x) * dp * dp)


@lru_cache(maxsize=32)
def _legendre_nodes(n, long_double=None):
    """Gauss-Legendre rule rounded from extended precision.

    The counting integrands cancel to ~1e-9 of their peak, which exposes
    the ~1e-14 weight errors of a plain double-precision rule.  Newton
    steps run in np.longdouble where that type is wider than float64,
    otherwise in mpmath.
    """
    x0, _ = np.polynomial.legendre.leggauss(n)
    if long_double is None:
        long_double = np.finfo(np.longdouble).eps < 1e-18
    if long_double:
        x, w = _legendre_newton(x0.astype(np.longdouble), n, steps=3)
        return x.astype(float), w.astype(float)
    import mpmath

    with mpmath.workdps(34):
        xs, ws = zip(*(_legendre_newton(mpmath.mpf(float(v)), n, steps=3) for v in x0))
    return np.array(xs, dtype=float), np.array(ws, dtype=float)


def _envelope(values):
    mags = np.abs(values)
    mags[~np.isfinite(mags)] = np.inf
    return mags.max(axis=-1)


def _auto_cutoff(sample, threshold):
    # sample(r) -> array of |F| envelopes over the probe radii r
    env = sample(_PROBE_R)
    above = np.flatnonzero(env >= threshold)
    if above.size == 0:
        return _PROBE_R[0], float(env[0])
    last = above[-1]
    if last == len(_PROBE_R) - 1:
        raise DivergenceError(
            f"integrand envelope {env[-1]:.3g} still above {threshold:.3g} at |z|^2 = {_PROBE_R[-1]:g}"
        )
    return float(_PROBE_R[last + 1]), float(env[last + 1])


def polar_integral(func, cfg=None, center=0j):
    """``int d^2z/pi func(z)`` for a vectorized complex ``func``."""
    cfg = cfg or QuadratureConfig()
    theta = 2 * np.pi * np.arange(cfg.angular_nodes) / cfg.angular_nodes
    phase = np.exp(1j * theta)

    def at(r):
        z = center + np.sqrt(r)[:, None] * phase[None, :]
        with np.errstate(all="ignore"):
            return func(z)

    if cfg.radial_cutoff is None:
        R, tail = _auto_cutoff(lambda r: _envelope(at(r)), cfg.abs_tol * 1e-3)
    else:
        R = cfg.radial_cutoff**2
        tail = float(_envelope(at(np.array([R])))[0])
    x, w = _legendre_nodes(cfg.radial_nodes)
    r = 0.5 * R * (x + 1.0)
    vals = at(r)
    value = 0.5 * R * np.sum(w * vals.mean(axis=1))
    return QuadratureResult(complex(value), R, tail)


def radial_integral(func, cfg=None):
    """``int_0^inf func(r) dr`` with the same Gauss-Legendre cutoff logic."""
    cfg = cfg or QuadratureConfig()

    def at(r):
        with np.errstate(all="ignore"):
            return np.asarray(func(r), dtype=complex)

    if cfg.radial_cutoff is None:
        R, tail = _auto_cutoff(lambda r: _envelope(at(r)[:, None]), cfg.abs_tol * 1e-3)
    else:
        R = float(cfg.radial_cutoff)
        tail = float(abs(at(np.array([R]))[0]))
    x, w = _legendre_nodes(cfg.radial_nodes)
    r = 0.5 * R * (x + 1.0)
    return QuadratureResult(complex(0.5 * R * np.sum(w * at(r))), R, tail)


# -- counting integrals ------------------------------------------------------


def _log_poisson_weight(mean, m):
    # log of mean^m e^{-mean} / m!, vectorized, with 0^0 = 1
    with np.errstate(divide="ignore"):
        logm = m * np.log(mean) if m else 0.0
    return logm - mean - gammaln(m + 1)


def p_function_quadrature(state, xi, m, cfg=None):
    """Average the coherent-state Poisson count over the Gaussian P-function.

    Valid for ``Thermal`` and ``DisplacedThermal`` with nbar > 0, whose
    P-function is ``exp(-|a - alpha|^2 / nbar) / (pi nbar)``.
    """
    cfg = cfg or QuadratureConfig()
    m = check_degree(m)
    xi = float(xi)
    if not 0 < xi <= 1:
        raise ParameterError(f"xi={xi} violates 0 < xi <= 1")
    if isinstance(state, Thermal):
        alpha, nbar = 0j, state.nbar
    elif isinstance(state, DisplacedThermal):
        alpha, nbar = state.alpha, state.nbar
    else:
        raise CapabilityError(
            f"P-function quadrature needs a regular Gaussian P-function; got {type(state).__name__}"
        )
    if not nbar > 0:
        raise CapabilityError(f"nbar={nbar} gives a singular P-function; P-quadrature needs nbar > 0")

    def integrand(z):
        rho2 = np.abs(z - alpha) ** 2
        return np.exp(-rho2 / nbar + _log_poisson_weight(xi * np.abs(z) ** 2, m)) / nbar

    return polar_integral(integrand, cfg, center=alpha).value.real


def formula9_bound(state):
    """Open interval of xi on which the antidiagonal counting integral
    converges absolutely: ``(lo, hi)``."""
    if isinstance(state, SqueezedVacuum):
        t = math.tanh(state.lam)
        return 1.0, (math.inf if t == 0 else 1.0 + 1.0 / t)
    if isinstance(state, (Coherent, Thermal, DisplacedThermal, FockMixture)):
        return 1.0, math.inf
    raise TypeError(f"unknown state {state!r}")


def _log_kernel(state, beta):
    if isinstance(state, FockMixture):
        # e^{-|beta|^2} sum_n P_n (-|beta|^2)^n / n!
        b2 = np.abs(beta) ** 2
        series = np.zeros_like(b2)
        term = np.ones_like(b2)
        for n, p in enumerate(state.probs):
            if n:
                term = term * (-b2) / n
            series = series + p * term
        with np.errstate(divide="ignore"):
            return np.log(series.astype(complex)) - b2
    return log_antidiagonal(state, beta)


def formula9_quadrature(state, xi, m, cfg=None):
    """Counting probability from the antidiagonal element <-beta|rho|beta>:

        p(m) = xi^m / (xi-1)^(m+1) int d^2beta/pi <-beta|rho|beta>
               exp((xi-2)/(xi-1) |beta|^2) L_m(|beta|^2 / (xi-1))

    The integral converges only for xi above 1 (and, for squeezed vacuum,
    below 1 + coth(lambda)); there the result equals the analytic
    continuation of the physical closed forms.
    """
    cfg = cfg or QuadratureConfig()
    m = check_degree(m)
    xi = float(xi)
    lo, hi = formula9_bound(state)
    if not lo < xi < hi:
        raise DivergenceError(
            f"xi={xi} outside the convergence region {lo} < xi < {hi:g} for {type(state).__name__}"
        )
    s = xi - 1.0
    log_pref = m * math.log(xi) - (m + 1) * math.log(s)
    growth = (xi - 2.0) / s

    def integrand(beta):
        b2 = np.abs(beta) ** 2
        return np.exp(log_pref + _log_kernel(state, beta) + growth * b2) * laguerre_values(m, b2 / s)

    return polar_integral(integrand, cfg).value.real
