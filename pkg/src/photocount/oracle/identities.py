"""Numerical checks of the complex-plane integral identities behind the
closed forms.

Each ``identity_*`` function integrates the left-hand side with the polar
quadrature of :mod:`photocount.oracle.quadrature`, evaluates the closed
right-hand side, and returns a :class:`ComparisonReport`.  ``run_suite``
repeats one identity over random parameters drawn strictly inside its
convergence domain.
"""

import cmath
import math

import numpy as np

from ..errors import DivergenceError, ParameterError
from ..special_fn import check_degree, laguerre_values
from .quadrature import QuadratureConfig, polar_integral, radial_integral
from .report import ComparisonReport

DEFAULT_TOL = 1e-6
DEFAULT_DRAWS = 20


def _c(z):
    z = complex(z)
    return [z.real, z.imag]


def _report(name, lhs, rhs, tol, params):
    return ComparisonReport.from_errors(
        [abs(lhs - rhs)], tol, identity=name, params=params, lhs=_c(lhs), rhs=_c(rhs)
    )


def _check_epsilon(epsilon):
    epsilon = complex(epsilon)
    if not epsilon.real < 0:
        raise DivergenceError(f"epsilon={epsilon} violates Re(epsilon) < 0")
    return epsilon


# -- Gaussian integrals -------------------------------------------------------


def gaussian_c5_rhs(epsilon, B, C):
    return -cmath.exp(-B * C / epsilon) / epsilon


def identity_gaussian_c5(epsilon, B, C, cfg=None, tol=DEFAULT_TOL):
    """int d^2z/pi exp(eps|z|^2 + Bz + Cz*) = -exp(-BC/eps)/eps."""
    eps = _check_epsilon(epsilon)
    B, C = complex(B), complex(C)

    def f(z):
        return np.exp(eps * np.abs(z) ** 2 + B * z + C * z.conj())

    lhs = polar_integral(f, cfg).value
    params = {"epsilon": _c(eps), "B": _c(B), "C": _c(C)}
    return _report("gaussian-c5", lhs, gaussian_c5_rhs(eps, B, C), tol, params)


def gaussian_moments_rhs(n, m, epsilon, B, C):
    total = 0j
    for l in range(min(m, n) + 1):
        total += (
            math.factorial(n) * math.factorial(m) * B ** (m - l) * C ** (n - l)
            / (math.factorial(l) * math.factorial(n - l) * math.factorial(m - l)
               * (-epsilon) ** (n + m - l + 1))
        )
    # the prefactor is exp(-BC/eps)
    return cmath.exp(-B * C / epsilon) * total


def identity_gaussian_moments_10(n, m, epsilon, B, C, cfg=None, tol=DEFAULT_TOL):
    """int d^2z/pi z^n z*^m exp(eps|z|^2 + Bz + Cz*) against its finite sum."""
    n, m = check_degree(n, "n"), check_degree(m, "m")
    eps = _check_epsilon(epsilon)
    B, C = complex(B), complex(C)

    def f(z):
        return z**n * z.conj() ** m * np.exp(eps * np.abs(z) ** 2 + B * z + C * z.conj())

    lhs = polar_integral(f, cfg).value
    params = {"n": n, "m": m, "epsilon": _c(eps), "B": _c(B), "C": _c(C)}
    return _report("gaussian-moments", lhs, gaussian_moments_rhs(n, m, eps, B, C), tol, params)


def quadratic_domain_ok(zeta, f, g):
    """Stated domain of the quadratic Gaussian formula (either branch pair)."""
    d = zeta * zeta - 4 * f * g
    for s in (zeta + f + g, zeta - f - g):
        if s != 0 and s.real < 0 and (d / s).real < 0:
            return True
    return False


def gaussian_quadratic_rhs(zeta, xi_c, eta_c, f, g):
    d = zeta * zeta - 4 * f * g
    return cmath.exp((-zeta * xi_c * eta_c + xi_c**2 * g + eta_c**2 * f) / d) / cmath.sqrt(d)


def identity_gaussian_quadratic_25(zeta, xi_c, eta_c, f, g, cfg=None, tol=DEFAULT_TOL):
    """int d^2z/pi exp(zeta|z|^2 + xi z + eta z* + f z^2 + g z*^2)."""
    zeta, xi_c, eta_c, f, g = map(complex, (zeta, xi_c, eta_c, f, g))
    if not quadratic_domain_ok(zeta, f, g):
        raise DivergenceError(
            f"zeta={zeta}, f={f}, g={g} violate Re(zeta +/- (f+g)) < 0 with "
            "Re((zeta^2 - 4fg)/(zeta +/- (f+g))) < 0"
        )
    # polar quadrature needs absolute convergence in every direction
    if not zeta.real + abs(f + g.conjugate()) < 0:
        raise DivergenceError(
            f"zeta={zeta}, f={f}, g={g} violate Re(zeta) + |f + g*| < 0 (absolute convergence)"
        )

    def h(z):
        zc = z.conj()
        return np.exp(zeta * np.abs(z) ** 2 + xi_c * z + eta_c * zc + f * z**2 + g * zc**2)

    lhs = polar_integral(h, cfg).value
    params = {"zeta": _c(zeta), "xi": _c(xi_c), "eta": _c(eta_c), "f": _c(f), "g": _c(g)}
    return _report("gaussian-quadratic", lhs, gaussian_quadratic_rhs(zeta, xi_c, eta_c, f, g), tol, params)


# -- Laguerre integrals -------------------------------------------------------


def identity_laguerre_radial_20(m, g, cfg=None, tol=DEFAULT_TOL):
    """int_0^inf L_m(r) e^{-g r} dr = (g-1)^m / g^(m+1)."""
    m = check_degree(m)
    g = float(g)
    if not g > 0:
        raise DivergenceError(f"g={g} violates g > 0")
    lhs = radial_integral(lambda r: laguerre_values(m, r) * np.exp(-g * r), cfg).value
    rhs = (g - 1.0) ** m / g ** (m + 1)
    return _report("laguerre-radial", lhs, rhs, tol, {"m": m, "g": g})


def identity_laguerre_c6(m, xi, alpha, cfg=None, tol=DEFAULT_TOL):
    """int d^2beta/pi L_m(|beta|^2/(xi-1)) exp(-|beta|^2/(xi-1) + beta alpha* - alpha beta*)
    = (xi-1)^(m+1) |alpha|^(2m) e^{(1-xi)|alpha|^2} / m!, checked for xi > 1."""
    m = check_degree(m)
    xi = float(xi)
    if not xi > 1:
        raise DivergenceError(f"xi={xi} violates xi > 1 (below it the identity holds by continuation only)")
    alpha = complex(alpha)
    s = xi - 1.0

    def f(beta):
        b2 = np.abs(beta) ** 2
        return laguerre_values(m, b2 / s) * np.exp(-b2 / s + beta * alpha.conjugate() - alpha * beta.conjugate())

    lhs = polar_integral(f, cfg).value
    a2 = abs(alpha) ** 2
    rhs = s ** (m + 1) * a2**m * math.exp(-s * a2) / math.factorial(m)
    return _report("laguerre-c6", lhs, rhs, tol, {"m": m, "xi": xi, "alpha": _c(alpha)})


def identity_laguerre_c7(m, cfg=None, tol=DEFAULT_TOL):
    """int d^2beta/pi e^{-|beta|^2} L_m(|beta|^2) = 1 if m == 0 else 0."""
    m = check_degree(m)

    def f(beta):
        b2 = np.abs(beta) ** 2
        return laguerre_values(m, b2) * np.exp(-b2)

    lhs = polar_integral(f, cfg).value
    return _report("laguerre-c7", lhs, 1.0 if m == 0 else 0.0, tol, {"m": m})


# -- randomized suites --------------------------------------------------------


def _cplx(rng, half_width):
    return complex(*rng.uniform(-half_width, half_width, 2))


def _draw_c5(rng):
    return dict(epsilon=rng.uniform(-3, -0.5), B=_cplx(rng, 1.0), C=_cplx(rng, 1.0))


def _draw_moments(rng):
    return dict(n=int(rng.integers(0, 5)), m=int(rng.integers(0, 5)),
                epsilon=rng.uniform(-3, -0.5), B=_cplx(rng, 0.7), C=_cplx(rng, 0.7))


def _draw_quadratic(rng):
    zeta = rng.uniform(-3, -0.5)
    # |f| + |g| <= 0.8 |zeta| keeps zeta +/- (f+g) < 0 and zeta^2 > 4fg
    f, g = rng.uniform(-0.4, 0.4, 2) * abs(zeta)
    return dict(zeta=zeta, xi_c=_cplx(rng, 0.7), eta_c=_cplx(rng, 0.7), f=f, g=g)


def _draw_radial(rng):
    return dict(m=int(rng.integers(0, 11)), g=rng.uniform(0.5, 3.0))


def _draw_c6(rng):
    alpha = cmath.rect(rng.uniform(0, 1.2), rng.uniform(0, 2 * np.pi))
    return dict(m=int(rng.integers(0, 7)), xi=rng.uniform(1.2, 3.0), alpha=alpha)


def _draw_c7(rng):
    return dict(m=int(rng.integers(0, 11)))


SUITES = {
    "gaussian-c5": (identity_gaussian_c5, _draw_c5),
    "gaussian-moments": (identity_gaussian_moments_10, _draw_moments),
    "gaussian-quadratic": (identity_gaussian_quadratic_25, _draw_quadratic),
    "laguerre-radial": (identity_laguerre_radial_20, _draw_radial),
    "laguerre-c6": (identity_laguerre_c6, _draw_c6),
    "laguerre-c7": (identity_laguerre_c7, _draw_c7),
}


def run_suite(name, draws=DEFAULT_DRAWS, seed=0, cfg=None, tol=DEFAULT_TOL):
    """Aggregate report over ``draws`` random in-domain parameter sets."""
    if name not in SUITES:
        raise ParameterError(f"identity {name!r} is not one of {sorted(SUITES)}")
    if draws < 1:
        raise ParameterError(f"draws={draws} violates draws >= 1")
    check, draw = SUITES[name]
    index = list(SUITES).index(name)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    reports = [check(**draw(rng), cfg=cfg, tol=tol) for _ in range(draws)]
    return ComparisonReport.from_errors(
        [r.max_abs_err for r in reports], tol,
        identity=name, draws=draws, seed=seed,
        params=[r.metadata["params"] for r in reports],
    )


def run_all(draws=DEFAULT_DRAWS, seed=0, cfg=None, tol=DEFAULT_TOL):
    return [run_suite(name, draws, seed, cfg, tol) for name in SUITES]
