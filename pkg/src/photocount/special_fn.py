"""Laguerre and Legendre polynomials by upward three-term recurrence.

All routines run in plain float/complex arithmetic.  The ``*_sequence``
variants return every degree from 0 to ``mmax`` at once and accept a
geometric ``scale`` so that ``scale**k * poly_k`` is built inside the
recurrence; this keeps long sequences away from overflow when the caller
multiplies by a decaying power anyway.
"""

import math

import numpy as np

from .errors import DegreeLimitError, ParameterError, SingularParameterError

MAX_DEGREE = 10_000


def check_degree(m, name="m"):
    """Validate a polynomial degree / count index and return it as int."""
    if isinstance(m, bool) or int(m) != m:
        raise ParameterError(f"{name}={m!r} must be an integer")
    m = int(m)
    if m < 0:
        raise ParameterError(f"{name}={m} violates {name} >= 0")
    if m > MAX_DEGREE:
        raise DegreeLimitError(f"{name}={m} exceeds the degree ceiling {MAX_DEGREE}")
    return m


def laguerre_sequence(mmax, x, scale=1.0):
    """Return ``[scale**k * L_k(x) for k in 0..mmax]``.

    Uses ``(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}``.  Negative ``x`` is
    allowed.
    """
    mmax = check_degree(mmax, "mmax")
    x = float(x)
    if not math.isfinite(x):
        raise ParameterError(f"x={x} must be finite")
    out = np.empty(mmax + 1)
    out[0] = 1.0
    if mmax == 0:
        return out
    c = float(scale)
    out[1] = c * (1.0 - x)
    for k in range(1, mmax):
        out[k + 1] = (c * (2 * k + 1 - x) * out[k] - c * c * k * out[k - 1]) / (k + 1)
    return out


def laguerre(m, x):
    """Laguerre polynomial ``L_m(x)``."""
    return float(laguerre_sequence(m, x)[-1])


def legendre_complex(m, z):
    """Legendre polynomial ``P_m(z)`` for complex ``z``."""
    m = check_degree(m)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParameterError(f"z={z} must be finite")
    p0, p1 = 1.0 + 0j, z
    if m == 0:
        return p0
    for k in range(1, m):
        p0, p1 = p1, ((2 * k + 1) * z * p1 - k * p0) / (k + 1)
    return p1


def legendre_ratio_sequence(mmax, g, scale=1.0):
    """Return ``scale**k * Q_k(g)`` for ``k = 0..mmax`` where
    ``Q_k(g) = (g**2 - 1)**(-k/2) * P_k(g / sqrt(g**2 - 1))``.

    The transformed recurrence

        (k+1)(g^2-1) Q_{k+1} = (2k+1) g Q_k - k Q_{k-1}

    stays real for real ``g``; the parity of ``P_k`` makes the branch of
    the square root irrelevant.
    """
    mmax = check_degree(mmax, "mmax")
    g = float(g)
    u = g * g - 1.0
    if u == 0.0:
        raise SingularParameterError(f"g={g} violates |g| != 1 (Q_m is singular there)")
    c = float(scale)
    out = np.empty(mmax + 1)
    out[0] = 1.0
    if mmax == 0:
        return out
    out[1] = c * g / u
    for k in range(1, mmax):
        out[k + 1] = c * ((2 * k + 1) * g * out[k] - c * k * out[k - 1]) / ((k + 1) * u)
    return out


def legendre_ratio(m, g):
    """``(g^2-1)^(-m/2) P_m(g/sqrt(g^2-1))`` in real arithmetic, ``|g| != 1``."""
    return float(legendre_ratio_sequence(m, g)[-1])


def laguerre_genfun_check(x, t, nmax):
    """Residual of the Laguerre generating function truncated at ``nmax``:

    ``|sum_{n<=nmax} L_n(x) t^n - exp(-x t / (1-t)) / (1-t)|``.
    """
    if not abs(t) < 1:
        raise ParameterError(f"t={t} violates |t| < 1")
    partial = float(np.sum(laguerre_sequence(nmax, x, scale=t)))
    exact = math.exp(-x * t / (1.0 - t)) / (1.0 - t)
    return abs(partial - exact)


def laguerre_values(m, x):
    """``L_m(x)`` evaluated elementwise over an array ``x``."""
    m = check_degree(m)
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), 1.0 - x
    if m == 0:
        return prev
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur
