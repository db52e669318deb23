"""Photoelectron counting distributions p(m) at detector efficiency xi.

Two families of evaluators live here:

* ``bernoulli_transform`` thins any photon-number distribution with a
  binomial kernel and works for every state;
* the closed forms ``coherent_closed``, ``thermal_closed``,
  ``squeezed_closed`` and ``displaced_thermal_closed``.

Physical callers pass ``0 < xi <= 1`` and ``nbar >= 0``.  Values outside
that box are reachable only with ``continuation=True`` (or through
``continued_distribution``); the quadrature checks of the antidiagonal
counting integral live at xi > 1 and need it.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import CapabilityError, ParameterError, SingularParameterError
from .special_fn import check_degree, laguerre_sequence, legendre_ratio_sequence
from .states import (
    DEFAULT_TAIL_TOL,
    Coherent,
    DisplacedThermal,
    SqueezedVacuum,
    Thermal,
    cutoff_for,
    fock_distribution,
    fock_probs,
    tail_bound,
)

# below this index products are formed directly, above it in log space
_DIRECT_MAX = 30


class Method(str, enum.Enum):
    CLOSED = "closed"
    BERNOULLI = "bernoulli"
    PQUADRATURE = "pquad"
    FORMULA9 = "formula9"
    MONTECARLO = "mc"


@dataclass(frozen=True)
class CountDistribution:
    probs: np.ndarray
    mmax: int
    method: Method
    trunc_err: float
    xi: float = math.nan
    state: object = None
    meta: dict = field(default_factory=dict)

    def mean(self):
        return float(np.arange(self.mmax + 1) @ self.probs)

    def to_dict(self):
        return {
            "state": None if self.state is None else self.state.to_dict(),
            "xi": self.xi,
            "method": Method(self.method).value,
            "mmax": self.mmax,
            "trunc_err": None if math.isnan(self.trunc_err) else self.trunc_err,
            "probs": [float(p) for p in self.probs],
        }


def check_efficiency(xi, continuation=False):
    xi = float(xi)
    if not math.isfinite(xi):
        raise ParameterError(f"xi={xi} must be finite")
    if continuation:
        if xi <= 0:
            raise ParameterError(f"xi={xi} violates xi > 0")
    elif not 0 < xi <= 1:
        raise ParameterError(f"xi={xi} violates 0 < xi <= 1")
    return xi


def _check_nbar(nbar, continuation):
    nbar = float(nbar)
    if not math.isfinite(nbar) or (nbar < 0 and not continuation):
        raise ParameterError(f"nbar={nbar} violates nbar >= 0")
    return nbar


# -- Bernoulli (binomial) thinning -------------------------------------------


def bernoulli_transform(fock, xi, mmax):
    """p(m) = sum_{n>=m} P_n C(n,m) xi^m (1-xi)^(n-m) for m = 0..mmax."""
    xi = check_efficiency(xi)
    mmax = check_degree(mmax, "mmax")
    probs = np.asarray(fock.probs, dtype=float)
    total = math.fsum(probs)
    if total > 1 + 1e-12 or 1 - total > fock.tail_bound + 1e-12:
        raise ParameterError(
            f"fock sums to {total!r}, violates 1 - tail_bound <= sum <= 1 (tail_bound={fock.tail_bound})"
        )
    cutoff = len(probs) - 1
    out = np.zeros(mmax + 1)
    if xi == 1.0:
        k = min(mmax, cutoff) + 1
        out[:k] = probs[:k]
    else:
        n = np.arange(cutoff + 1)
        nz = probs > 0
        log_p = np.full(cutoff + 1, -np.inf)
        log_p[nz] = np.log(probs[nz])
        log_nfact = gammaln(n + 1)
        log_xi, log_q = math.log(xi), math.log1p(-xi)
        for m in range(min(mmax, cutoff) + 1):
            k = n[m:]
            log_terms = (
                log_p[m:]
                + log_nfact[m:]
                - log_nfact[m]
                - log_nfact[k - m]
                + m * log_xi
                + (k - m) * log_q
            )
            out[m] = math.fsum(np.exp(log_terms))
    missing = math.fsum(probs[mmax + 1:]) if mmax < cutoff else 0.0
    return CountDistribution(
        probs=out,
        mmax=mmax,
        method=Method.BERNOULLI,
        trunc_err=fock.tail_bound + missing,
        xi=xi,
    )


# -- closed forms -------------------------------------------------------------


def coherent_pmf(alpha, xi, mmax, *, continuation=False):
    """Poisson counts with mean xi*|alpha|^2 for m = 0..mmax."""
    xi = check_efficiency(xi, continuation)
    mmax = check_degree(mmax, "mmax")
    mu = xi * abs(complex(alpha)) ** 2
    m = np.arange(mmax + 1)
    if mu == 0:
        return (m == 0).astype(float)
    out = np.empty(mmax + 1)
    head = min(mmax, _DIRECT_MAX) + 1
    out[:head] = [mu**k * math.exp(-mu) / math.factorial(k) for k in range(head)]
    if mmax > _DIRECT_MAX:
        k = m[head:]
        out[head:] = np.exp(k * math.log(mu) - mu - gammaln(k + 1))
    return out


def coherent_closed(alpha, xi, m, *, continuation=False):
    m = check_degree(m)
    return float(coherent_pmf(alpha, xi, m, continuation=continuation)[m])


def thermal_pmf(nbar, xi, mmax, *, continuation=False):
    """Bose-Einstein counts (xi nbar)^m / (1 + xi nbar)^(m+1)."""
    xi = check_efficiency(xi, continuation)
    nbar = _check_nbar(nbar, continuation)
    mmax = check_degree(mmax, "mmax")
    mean = xi * nbar
    if 1 + mean == 0:
        raise SingularParameterError(f"xi*nbar={mean} sits on the pole xi*nbar = -1")
    m = np.arange(mmax + 1)
    if mean == 0:
        return (m == 0).astype(float)
    out = np.empty(mmax + 1)
    head = min(mmax, _DIRECT_MAX) + 1
    out[:head] = [mean**k / (1 + mean) ** (k + 1) for k in range(head)]
    if mmax > _DIRECT_MAX:
        k = m[head:]
        if mean < 0:
            # continuation only: alternating sign, so no log form
            out[head:] = (mean / (1 + mean)) ** k / (1 + mean)
        else:
            out[head:] = np.exp(k * math.log(mean) - (k + 1) * math.log1p(mean))
    return out


def thermal_closed(nbar, xi, m, *, continuation=False):
    m = check_degree(m)
    return float(thermal_pmf(nbar, xi, m, continuation=continuation)[m])


def thermal_closed_f(f, xi, m, *, continuation=False):
    """Chaotic-light counts parameterized by f, where nbar = 1/(e^f - 1)."""
    xi = check_efficiency(xi, continuation)
    m = check_degree(m)
    f = float(f)
    if not f > 0:
        raise ParameterError(f"f={f} violates f > 0")
    ef1 = math.expm1(f)  # e^f - 1
    if m <= _DIRECT_MAX:
        return ef1 * xi**m / (ef1 + xi) ** (m + 1)
    return math.exp(math.log(ef1) + m * math.log(xi) - (m + 1) * math.log(ef1 + xi))


def squeezed_pmf(lam, xi, mmax, *, continuation=False):
    """Squeezed-vacuum counts:

        p(m) = xi^m sech(lam) tanh(lam)^m (1 - G^2)^(-1/2) Q_m(G),
        G = (xi - 1) tanh(lam),

    with Q_m the real Legendre ratio.  G carries the sign of xi - 1; the
    opposite sign flips odd-m terms negative.
    """
    xi = check_efficiency(xi, continuation)
    lam = float(lam)
    if not lam >= 0:
        raise ParameterError(f"lambda={lam} violates lambda >= 0")
    mmax = check_degree(mmax, "mmax")
    if lam == 0:
        return (np.arange(mmax + 1) == 0).astype(float)
    if xi == 1.0:
        # G = 0: sech tanh^m (m-1)!!/m!! for even m, 0 for odd m
        return fock_probs(SqueezedVacuum(lam), mmax)
    t = math.tanh(lam)
    g = (xi - 1.0) * t
    if not abs(g) < 1:
        raise SingularParameterError(f"|G|={abs(g)} violates |(xi - 1) tanh(lambda)| < 1")
    scaled = legendre_ratio_sequence(mmax, g, scale=xi * t)
    return scaled / (math.cosh(lam) * math.sqrt(1.0 - g * g))


def squeezed_closed(lam, xi, m, *, continuation=False):
    m = check_degree(m)
    return float(squeezed_pmf(lam, xi, m, continuation=continuation)[m])


def displaced_thermal_pmf(alpha, nbar, xi, mmax, *, continuation=False):
    """Displaced chaotic light:

        p(m) = (nbar xi)^m / (nbar xi + 1)^(m+1) exp(-xi |alpha|^2 / (1 + nbar xi))
               * L_m(-|alpha|^2 / (nbar (nbar xi + 1)))
    """
    xi = check_efficiency(xi, continuation)
    nbar = _check_nbar(nbar, continuation)
    mmax = check_degree(mmax, "mmax")
    if nbar == 0:
        raise CapabilityError("nbar=0 is a coherent state; use coherent_closed")
    d = nbar * xi + 1.0
    if d == 0:
        raise SingularParameterError(f"nbar*xi={nbar * xi} sits on the pole nbar*xi = -1")
    a2 = abs(complex(alpha)) ** 2
    lag = laguerre_sequence(mmax, -a2 / (nbar * d), scale=nbar * xi / d)
    return lag * math.exp(-xi * a2 / d) / d


def displaced_thermal_closed(alpha, nbar, xi, m, *, continuation=False):
    m = check_degree(m)
    return float(displaced_thermal_pmf(alpha, nbar, xi, m, continuation=continuation)[m])


def closed_pmf(state, xi, mmax, *, continuation=False):
    """Dispatch a state to its closed form."""
    if isinstance(state, Coherent):
        return coherent_pmf(state.alpha, xi, mmax, continuation=continuation)
    if isinstance(state, Thermal):
        return thermal_pmf(state.nbar, xi, mmax, continuation=continuation)
    if isinstance(state, SqueezedVacuum):
        return squeezed_pmf(state.lam, xi, mmax, continuation=continuation)
    if isinstance(state, DisplacedThermal):
        if state.nbar == 0:
            return coherent_pmf(state.alpha, xi, mmax, continuation=continuation)
        return displaced_thermal_pmf(state.alpha, state.nbar, xi, mmax, continuation=continuation)
    raise CapabilityError(f"no closed form for {type(state).__name__}; use method 'bernoulli'")


# -- dispatcher ---------------------------------------------------------------


def default_mmax(state, tail_tol=DEFAULT_TAIL_TOL):
    return cutoff_for(state, tail_tol)


def _evaluate(state, xi, mmax, method, tail_tol, quad, samples, seed, mc_route, continuation):
    from . import oracle  # oracle builds on this module

    method = Method(method)
    if mmax is None:
        mmax = 8 if method is Method.FORMULA9 else default_mmax(state, tail_tol)
    mmax = check_degree(mmax, "mmax")
    xi = check_efficiency(xi, continuation)

    if method is Method.CLOSED:
        probs = closed_pmf(state, xi, mmax, continuation=continuation)
    elif method is Method.BERNOULLI:
        if xi > 1:
            raise ParameterError(f"xi={xi} violates 0 < xi <= 1 (binomial thinning)")
        dist = bernoulli_transform(fock_distribution(state, tail_tol), xi, mmax)
        return CountDistribution(dist.probs, mmax, method, dist.trunc_err, xi, state)
    elif method is Method.PQUADRATURE:
        cfg = quad or oracle.QuadratureConfig()
        probs = np.array([oracle.p_function_quadrature(state, xi, m, cfg) for m in range(mmax + 1)])
    elif method is Method.FORMULA9:
        cfg = quad or oracle.QuadratureConfig()
        probs = np.array([oracle.formula9_quadrature(state, xi, m, cfg) for m in range(mmax + 1)])
    else:
        return oracle.mc_counts(state, xi, samples, seed, mmax, route=mc_route, tail_tol=tail_tol)

    trunc = math.nan if xi > 1 else tail_bound(state, mmax)
    return CountDistribution(probs, mmax, method, trunc, xi, state)


def distribution(state, xi, mmax=None, method=Method.CLOSED, *, tail_tol=DEFAULT_TAIL_TOL,
                 quad=None, samples=1_000_000, seed=0, mc_route="fock"):
    """Counting distribution for a physical efficiency 0 < xi <= 1.

    ``mmax=None`` picks the Fock cutoff at ``tail_tol`` (8 for the
    antidiagonal quadrature).
    """
    return _evaluate(state, xi, mmax, method, tail_tol, quad, samples, seed, mc_route, False)


def continued_distribution(state, xi, mmax=None, method=Method.CLOSED, *,
                           tail_tol=DEFAULT_TAIL_TOL, quad=None):
    """Same as ``distribution`` but accepts xi > 1 (analytic continuation).

    The result is not a probability distribution in general; ``trunc_err``
    is NaN whenever xi > 1.
    """
    if Method(method) in (Method.BERNOULLI, Method.MONTECARLO, Method.PQUADRATURE):
        raise CapabilityError(f"method {Method(method).value!r} is defined for 0 < xi <= 1 only")
    return _evaluate(state, xi, mmax, method, tail_tol, quad, 0, 0, "fock", True)
