"""Single-mode light-field states.

Each state knows its photon-number distribution, its mean photon number
and its antidiagonal coherent-state matrix element <-beta|rho|beta>.
Parameters are validated on construction; states are immutable.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import linalg, optimize, special

from .errors import CapabilityError, ParameterError, TruncationError
from .special_fn import MAX_DEGREE, check_degree, laguerre_sequence

DEFAULT_TAIL_TOL = 1e-14


def _finite_nonneg(name, value):
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ParameterError(f"{name}={value} violates {name} >= 0")
    return value


@dataclass(frozen=True)
class Coherent:
    alpha: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))

    def to_dict(self):
        return {"kind": "coherent", "alpha": [self.alpha.real, self.alpha.imag]}


@dataclass(frozen=True)
class Thermal:
    nbar: float

    def __post_init__(self):
        object.__setattr__(self, "nbar", _finite_nonneg("nbar", self.nbar))

    @property
    def f(self):
        """Dimensionless inverse temperature, nbar = 1/(e^f - 1)."""
        return math.inf if self.nbar == 0 else math.log1p(1.0 / self.nbar)

    def to_dict(self):
        return {"kind": "thermal", "nbar": self.nbar}


@dataclass(frozen=True)
class SqueezedVacuum:
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _finite_nonneg("lambda", self.lam))

    def to_dict(self):
        return {"kind": "squeezed", "lambda": self.lam}


@dataclass(frozen=True)
class DisplacedThermal:
    alpha: complex
    nbar: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "nbar", _finite_nonneg("nbar", self.nbar))

    def to_dict(self):
        return {
            "kind": "displaced-thermal",
            "alpha": [self.alpha.real, self.alpha.imag],
            "nbar": self.nbar,
        }


@dataclass(frozen=True)
class FockMixture:
    probs: tuple = field(default=(1.0,))

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if p.size == 0:
            raise ParameterError("probs must contain at least one entry")
        if p.size - 1 > MAX_DEGREE:
            raise ParameterError(f"probs has {p.size} entries, above the ceiling {MAX_DEGREE + 1}")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ParameterError("probs violates probs[n] >= 0")
        total = float(np.sum(p))
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"probs sums to {total!r}, violates |sum - 1| <= 1e-12")
        object.__setattr__(self, "probs", tuple(float(v) for v in p))

    def to_dict(self):
        return {"kind": "fock", "probs": list(self.probs)}


StateModel = Union[Coherent, Thermal, SqueezedVacuum, DisplacedThermal, FockMixture]


@dataclass(frozen=True)
class FockDistribution:
    """Photon-number probabilities P_n for n = 0..cutoff.

    ``tail_bound`` is a rigorous upper bound on the mass above ``cutoff``.
    """

    probs: np.ndarray
    cutoff: int
    tail_bound: float

    def __len__(self):
        return self.cutoff + 1


# -- tail bounds -------------------------------------------------------------


def _chernoff_tail(abs_alpha2, nbar, n):
    # P(N > n) <= min_s G(s) / s^(n+1), with G the photon-number generating
    # function of a state with Gaussian P-function.
    def log_bound(u):
        d = 1.0 - u * nbar
        return u * abs_alpha2 / d - math.log(d) - (n + 1) * math.log1p(u)

    upper = 1e3 if nbar == 0 else (1.0 - 1e-12) / nbar
    res = optimize.minimize_scalar(log_bound, bounds=(1e-12, upper), method="bounded")
    return min(1.0, math.exp(min(0.0, res.fun)))


def tail_bound(state, n):
    """Upper bound on P(N > n) for the photon number N of ``state``."""
    n = int(n)
    if n < 0:
        return 1.0
    if isinstance(state, Coherent):
        mu = abs(state.alpha) ** 2
        return 0.0 if mu == 0 else float(special.gammainc(n + 1, mu))
    if isinstance(state, Thermal):
        q = state.nbar / (1.0 + state.nbar)
        return q ** (n + 1)
    if isinstance(state, SqueezedVacuum):
        t2 = math.tanh(state.lam) ** 2
        if t2 == 0:
            return 0.0
        j = n // 2 + 1
        # P_2j = sech * c_j * t^2j with c_j decreasing, so the even tail is
        # dominated by a geometric series in t^2.
        log_c = special.gammaln(2 * j + 1) - 2 * special.gammaln(j + 1) - j * math.log(4.0)
        return math.exp(log_c + j * math.log(t2)) / math.cosh(state.lam) / (1.0 - t2)
    if isinstance(state, DisplacedThermal):
        if state.nbar == 0:
            return tail_bound(Coherent(state.alpha), n)
        return _chernoff_tail(abs(state.alpha) ** 2, state.nbar, n)
    if isinstance(state, FockMixture):
        return float(math.fsum(state.probs[n + 1:]))
    raise TypeError(f"unknown state {state!r}")


def cutoff_for(state, tail_tol):
    """Smallest n with ``tail_bound(state, n) <= tail_tol``."""
    if not 0 < tail_tol < 1:
        raise ParameterError(f"tail_tol={tail_tol} violates 0 < tail_tol < 1")
    if isinstance(state, FockMixture):
        return len(state.probs) - 1
    if tail_bound(state, 0) <= tail_tol:
        return 0
    hi = 1
    while tail_bound(state, hi) > tail_tol:
        if hi >= MAX_DEGREE:
            achieved = tail_bound(state, MAX_DEGREE)
            raise TruncationError(
                f"tail_tol={tail_tol} unreachable below n={MAX_DEGREE} (achieved {achieved:.3g})",
                achieved=achieved,
            )
        hi = min(2 * hi, MAX_DEGREE)
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_bound(state, mid) <= tail_tol:
            hi = mid
        else:
            lo = mid
    return hi


# -- photon-number distributions ---------------------------------------------


def fock_probs(state, cutoff):
    """Exact P_n for n = 0..cutoff (no truncation bookkeeping)."""
    cutoff = check_degree(cutoff, "cutoff")
    n = np.arange(cutoff + 1)
    if isinstance(state, Coherent):
        mu = abs(state.alpha) ** 2
        if mu == 0:
            return (n == 0).astype(float)
        return np.exp(n * math.log(mu) - mu - special.gammaln(n + 1))
    if isinstance(state, Thermal):
        nb = state.nbar
        if nb == 0:
            return (n == 0).astype(float)
        return np.exp(n * math.log(nb / (1 + nb))) / (1 + nb)
    if isinstance(state, SqueezedVacuum):
        t2 = math.tanh(state.lam) ** 2
        p = np.zeros(cutoff + 1)
        p[0] = 1.0 / math.cosh(state.lam)
        for j in range(1, cutoff // 2 + 1):
            p[2 * j] = p[2 * j - 2] * t2 * (2 * j - 1) / (2 * j)
        return p
    if isinstance(state, DisplacedThermal):
        nb, a2 = state.nbar, abs(state.alpha) ** 2
        if nb == 0:
            return fock_probs(Coherent(state.alpha), cutoff)
        # unit-efficiency counting distribution of the displaced thermal field
        lag = laguerre_sequence(cutoff, -a2 / (nb * (nb + 1)), scale=nb / (nb + 1))
        return lag * math.exp(-a2 / (1 + nb)) / (1 + nb)
    if isinstance(state, FockMixture):
        p = np.zeros(cutoff + 1)
        k = min(cutoff + 1, len(state.probs))
        p[:k] = state.probs[:k]
        return p
    raise TypeError(f"unknown state {state!r}")


def fock_distribution(state, tail_tol=DEFAULT_TAIL_TOL):
    """Truncated photon-number distribution with neglected mass <= tail_tol."""
    cutoff = cutoff_for(state, tail_tol)
    return FockDistribution(
        probs=fock_probs(state, cutoff),
        cutoff=cutoff,
        tail_bound=tail_bound(state, cutoff),
    )


def mean_photon(state):
    if isinstance(state, Coherent):
        return abs(state.alpha) ** 2
    if isinstance(state, Thermal):
        return state.nbar
    if isinstance(state, SqueezedVacuum):
        return math.sinh(state.lam) ** 2
    if isinstance(state, DisplacedThermal):
        return state.nbar + abs(state.alpha) ** 2
    if isinstance(state, FockMixture):
        return float(math.fsum(n * p for n, p in enumerate(state.probs)))
    raise TypeError(f"unknown state {state!r}")


# -- antidiagonal coherent-state elements ------------------------------------


def log_antidiagonal(state, beta):
    """Complex logarithm of ``<-beta|rho|beta>`` (coherent-state overlaps
    included), vectorized over ``beta``.

    Kept in log form so callers can merge it with growing exponentials
    without overflow.
    """
    beta = np.asarray(beta, dtype=complex)
    b2 = np.abs(beta) ** 2
    bc = beta.conj()
    if isinstance(state, Coherent):
        a = state.alpha
        return -abs(a) ** 2 - b2 + a.conjugate() * beta - a * bc
    if isinstance(state, Thermal):
        w = state.nbar / (1.0 + state.nbar)  # e^{-f}
        return math.log1p(-w) - (1.0 + w) * b2 + 0j
    if isinstance(state, SqueezedVacuum):
        t = math.tanh(state.lam)
        return -math.log(math.cosh(state.lam)) - b2 + 0.5 * t * (beta**2 + bc**2)
    if isinstance(state, DisplacedThermal):
        a, d = state.alpha, state.nbar + 1.0
        return -math.log(d) - 2 * b2 - (a - beta) * (a.conjugate() + bc) / d
    raise CapabilityError(
        f"no analytic antidiagonal element for {type(state).__name__}; use antidiagonal_series"
    )


def antidiagonal_element(state, beta):
    """Analytic ``<-beta|rho|beta>``, coherent-state overlaps included."""
    return complex(np.exp(log_antidiagonal(state, complex(beta))))


def _number_amplitudes(z, nmax):
    # e^{-|z|^2/2} z^n / sqrt(n!) for n = 0..nmax
    out = np.empty(nmax + 1, dtype=complex)
    out[0] = math.exp(-0.5 * abs(z) ** 2)
    for n in range(nmax):
        out[n + 1] = out[n] * z / math.sqrt(n + 1)
    return out


def fock_matrix(state, nmax):
    """Density matrix rho_{n,n'} for n, n' <= nmax, built in the number basis
    independently of any normal-ordered form."""
    nmax = check_degree(nmax, "nmax")
    if isinstance(state, Coherent):
        c = _number_amplitudes(state.alpha, nmax)
        return np.outer(c, c.conj())
    if isinstance(state, SqueezedVacuum):
        t = math.tanh(state.lam)
        psi = np.zeros(nmax + 1, dtype=complex)
        psi[0] = 1.0 / math.sqrt(math.cosh(state.lam))
        # e^{(t/2) a^dag^2}|0> = sum_k (t/2)^k sqrt((2k)!)/k! |2k>
        for k in range(1, nmax // 2 + 1):
            psi[2 * k] = psi[2 * k - 2] * (t / 2) * math.sqrt((2 * k) * (2 * k - 1)) / k
        return np.outer(psi, psi.conj())
    if isinstance(state, DisplacedThermal):
        size = 64 * ((nmax + 64) // 64)
        return _displaced_thermal_matrix(state, size)[: nmax + 1, : nmax + 1].copy()
    return np.diag(fock_probs(state, nmax)).astype(complex)


@lru_cache(maxsize=16)
def _displaced_thermal_matrix(state, size):
    # D(alpha) rho_th D(alpha)^dagger in a padded basis, cached per block size
    a = state.alpha
    thermal_cut = cutoff_for(Thermal(state.nbar), 1e-18)
    dim = size + thermal_cut + int(10 * abs(a) ** 2) + 60
    lower = np.diag(np.sqrt(np.arange(1, dim)), -1)  # a^dagger
    disp = linalg.expm(a * lower - a.conjugate() * lower.T)
    p = np.zeros(dim)
    p[: thermal_cut + 1] = fock_probs(Thermal(state.nbar), thermal_cut)
    rho = (disp * p) @ disp.conj().T
    return rho[:size, :size]


def default_series_nmax(beta):
    return int(math.ceil(4 * abs(beta) ** 2 + 40))


def antidiagonal_series(state, beta, nmax=None):
    """``<-beta|rho|beta>`` as a truncated double sum over Fock elements."""
    beta = complex(beta)
    nmax = default_series_nmax(beta) if nmax is None else check_degree(nmax, "nmax")
    bra = _number_amplitudes(-beta, nmax).conj()  # <-beta|n>
    ket = _number_amplitudes(beta, nmax)  # <n'|beta>
    if isinstance(state, (Thermal, FockMixture)):
        return complex(np.sum(bra * fock_probs(state, nmax) * ket))
    return complex(bra @ fock_matrix(state, nmax) @ ket)


def antidiagonal_series_check(state, beta, nmax=None):
    """Absolute gap between the Fock-series and analytic antidiagonal element."""
    return abs(antidiagonal_series(state, beta, nmax) - antidiagonal_element(state, beta))
