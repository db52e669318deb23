"""Monte Carlo photocount histograms.

Samples are split into fixed-size chunks.  Chunk k draws from its own
generator seeded by ``SeedSequence(seed, spawn_key=(k,))`` and histograms
are merged by addition, so the result depends on (seed, samples,
chunk_size) only, never on how many workers ran the chunks.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..counting import CountDistribution, Method, check_efficiency
from ..errors import CapabilityError, ParameterError
from ..special_fn import check_degree
from ..states import (
    DEFAULT_TAIL_TOL,
    Coherent,
    DisplacedThermal,
    Thermal,
    fock_distribution,
)

ROUTES = ("fock", "pfunction")
DEFAULT_CHUNK = 1 << 16


def _chunk_rng(seed, k):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(k,)))


def _fock_sampler(state, xi, tail_tol):
    cdf = np.cumsum(fock_distribution(state, tail_tol).probs)
    cdf /= cdf[-1]

    def draw(rng, size):
        # inverse CDF on the truncated (renormalized) photon-number vector
        n = np.searchsorted(cdf, rng.random(size), side="right")
        return rng.binomial(np.minimum(n, len(cdf) - 1), xi)

    return draw


def _pfunction_sampler(state, xi):
    if isinstance(state, Coherent):
        alpha, nbar = state.alpha, 0.0
    elif isinstance(state, Thermal):
        alpha, nbar = 0j, state.nbar
    elif isinstance(state, DisplacedThermal):
        alpha, nbar = state.alpha, state.nbar
    else:
        raise CapabilityError(
            f"{type(state).__name__} has no regular P-function; use route='fock'"
        )
    sd = np.sqrt(nbar / 2)

    def draw(rng, size):
        re = alpha.real + sd * rng.standard_normal(size)
        im = alpha.imag + sd * rng.standard_normal(size)
        return rng.poisson(xi * (re * re + im * im))

    return draw


def mc_counts(state, xi, samples, seed, mmax, *, route="fock", chunk_size=DEFAULT_CHUNK,
              workers=1, tail_tol=DEFAULT_TAIL_TOL):
    """Empirical photocount frequencies for m = 0..mmax.

    ``route="fock"`` draws n from the photon-number distribution and thins
    it binomially; ``route="pfunction"`` draws a complex amplitude from
    the Gaussian P-function and then a Poisson count.  Counts above
    ``mmax`` are dropped and their share reported as ``trunc_err``.
    """
    xi = check_efficiency(xi)
    mmax = check_degree(mmax, "mmax")
    samples = int(samples)
    if samples < 1:
        raise ParameterError(f"samples={samples} violates samples >= 1")
    if chunk_size < 1:
        raise ParameterError(f"chunk_size={chunk_size} violates chunk_size >= 1")
    if route == "fock":
        draw = _fock_sampler(state, xi, tail_tol)
    elif route == "pfunction":
        draw = _pfunction_sampler(state, xi)
    else:
        raise ParameterError(f"route={route!r} must be one of {ROUTES}")

    nchunks = -(-samples // chunk_size)

    def run(k):
        size = min(chunk_size, samples - k * chunk_size)
        m = draw(_chunk_rng(seed, k), size)
        hist = np.bincount(np.minimum(m, mmax + 1), minlength=mmax + 2)
        return hist.astype(np.int64)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hists = list(pool.map(run, range(nchunks)))
    else:
        hists = [run(k) for k in range(nchunks)]
    total = np.sum(hists, axis=0)

    return CountDistribution(
        probs=total[: mmax + 1] / samples,
        mmax=mmax,
        method=Method.MONTECARLO,
        trunc_err=total[mmax + 1] / samples,
        xi=xi,
        state=state,
        meta={"samples": samples, "seed": seed, "route": route, "chunk_size": chunk_size},
    )
