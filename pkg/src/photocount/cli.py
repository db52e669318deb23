"""Command-line front end.

    photocount dist --state thermal --nbar 1 --xi 0.5 --mmax 4
    photocount verify --state squeezed --lambda 0.8 --xi 0.6 --against bernoulli
    photocount identities --seed 1

Results go to stdout (JSON, or CSV for ``dist --format csv``); summaries
and errors go to stderr.  The exit status is 0 exactly when every emitted
report passed.
"""

import argparse
import json
import os
import sys

from . import oracle
from .counting import Method, closed_pmf, continued_distribution, default_mmax, distribution
from .errors import CapabilityError, ParameterError, PhotocountError
from .oracle import identities
from .states import (
    DEFAULT_TAIL_TOL,
    Coherent,
    DisplacedThermal,
    FockMixture,
    SqueezedVacuum,
    Thermal,
)

TOL_ENV = "PHOTOCOUNT_DEFAULT_TOL"

DEFAULT_TOLERANCES = {
    "bernoulli": 1e-10,
    "pquad": 1e-7,
    "formula9": 1e-6,
    "mc": 4.0,  # in standard deviations
    "identities": 1e-6,
}

STATE_KINDS = ("coherent", "thermal", "squeezed", "displaced-thermal", "fock")


def parse_complex(text):
    """Accept ``1``, ``-0.5``, ``1+0.5j``, ``0.3-1.2i``."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a complex number") from None


def parse_probs(text):
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                values = [line.strip() for line in fh]
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"--probs file {text[1:]!r}: {exc.strerror}") from None
        values = [v for v in values if v and not v.startswith("#")]
    else:
        values = [v for v in text.split(",") if v.strip()]
    try:
        return tuple(float(v) for v in values)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--probs {text!r} must be numbers") from None


def _need(args, attr, flag):
    value = getattr(args, attr)
    if value is None:
        raise ParameterError(f"{flag} is required for --state {args.state}")
    return value


def build_state(args):
    kind = args.state
    if kind == "coherent":
        return Coherent(_need(args, "alpha", "--alpha"))
    if kind == "thermal":
        return Thermal(_need(args, "nbar", "--nbar"))
    if kind == "squeezed":
        return SqueezedVacuum(_need(args, "lam", "--lambda"))
    if kind == "displaced-thermal":
        return DisplacedThermal(_need(args, "alpha", "--alpha"), _need(args, "nbar", "--nbar"))
    return FockMixture(_need(args, "probs", "--probs"))


def default_tolerance(kind):
    env = os.environ.get(TOL_ENV)
    if env and kind != "mc":
        try:
            value = float(env)
        except ValueError:
            raise ParameterError(f"{TOL_ENV}={env!r} must be a positive number") from None
        if not value > 0:
            raise ParameterError(f"{TOL_ENV}={env!r} violates tolerance > 0")
        return value
    return DEFAULT_TOLERANCES[kind]


def _dump(obj):
    return json.dumps(obj, indent=2)


# -- dist ---------------------------------------------------------------------


def cmd_dist(args, out):
    state = build_state(args)
    method = Method(args.method)
    kwargs = dict(tail_tol=args.tail_tol)
    if args.continuation:
        dist = continued_distribution(state, args.xi, args.mmax, method, **kwargs)
    else:
        dist = distribution(state, args.xi, args.mmax, method, samples=args.samples,
                            seed=args.seed, mc_route=args.route, **kwargs)
    record = dist.to_dict()
    if args.format == "csv":
        out.write(f"# state={json.dumps(record['state'])}\n")
        for key in ("xi", "method", "mmax", "trunc_err"):
            out.write(f"# {key}={record[key]}\n")
        out.write("m,probability\n")
        for m, p in enumerate(dist.probs):
            out.write(f"{m},{p:.12g}\n")
    else:
        out.write(_dump(record) + "\n")
    return 0


# -- verify -------------------------------------------------------------------


def _mc_route(state, route):
    if route != "auto":
        return route
    return "pfunction" if isinstance(state, (Coherent, Thermal, DisplacedThermal)) else "fock"


def run_verify(state, xi, against, mmax=None, tol=None, samples=1_000_000, seed=0,
               route="auto", tail_tol=DEFAULT_TAIL_TOL):
    """Compare a state's closed form with one oracle; returns a report."""
    if isinstance(state, FockMixture):
        raise CapabilityError("fock mixtures have no closed form to verify")
    tol = default_tolerance(against) if tol is None else tol
    meta = {"state": state.to_dict(), "xi": xi, "methods": ["closed", against]}

    if against == "formula9":
        mmax = 8 if mmax is None else mmax
        ref = continued_distribution(state, xi, mmax, Method.CLOSED).probs
        got = continued_distribution(state, xi, mmax, Method.FORMULA9).probs
        return oracle.compare(got, ref, tol, **meta)

    if against == "pquad":
        mmax = 10 if mmax is None else mmax
        ref = distribution(state, xi, mmax).probs
        got = distribution(state, xi, mmax, Method.PQUADRATURE).probs
        return oracle.compare(got, ref, tol, **meta)

    mmax = default_mmax(state, tail_tol) if mmax is None else mmax
    ref = closed_pmf(state, xi, mmax)
    if against == "bernoulli":
        got = distribution(state, xi, mmax, Method.BERNOULLI, tail_tol=tail_tol).probs
        return oracle.compare(got, ref, tol, **meta)

    route = _mc_route(state, route)
    dist = oracle.mc_counts(state, xi, samples, seed, mmax, route=route, tail_tol=tail_tol)
    meta.update(seed=seed, route=route)
    return oracle.compare_histogram(dist.probs, ref, samples, sigmas=tol, **meta)


def cmd_verify(args, out):
    report = run_verify(build_state(args), args.xi, args.against, args.mmax, args.tol,
                        args.samples, args.seed, args.route, args.tail_tol)
    out.write(_dump(report.to_dict()) + "\n")
    verdict = "PASSED" if report.passed else "FAILED"
    print(f"max error {report.max_abs_err:.3e} (tolerance {report.tolerance:g}): {verdict}",
          file=sys.stderr)
    return 0 if report.passed else 1


# -- identities ---------------------------------------------------------------

_EXPLICIT = {
    "gaussian-c5": {"epsilon": -1.0, "B": 0j, "C": 0j},
    "gaussian-moments": {"n": 0, "m": 0, "epsilon": -1.0, "B": 0j, "C": 0j},
    "gaussian-quadratic": {"zeta": -1.0, "xi_c": 0j, "eta_c": 0j, "f": 0.0, "g": 0.0},
    "laguerre-radial": {"m": 0, "g": 1.0},
    "laguerre-c6": {"m": 0, "xi": 2.0, "alpha": 0j},
    "laguerre-c7": {"m": 0},
}

# CLI flag attribute -> identity keyword
_FLAG_KEYS = {
    "epsilon": "epsilon", "B": "B", "C": "C", "n": "n", "m": "m", "zeta": "zeta",
    "xi_coef": "xi_c", "eta_coef": "eta_c", "f": "f", "g": "g", "xi": "xi", "alpha": "alpha",
}


def cmd_identities(args, out):
    tol = default_tolerance("identities") if args.tol is None else args.tol
    if tol <= 0:
        raise ParameterError(f"--tol={tol} violates tol > 0")
    given = {key: getattr(args, flag) for flag, key in _FLAG_KEYS.items()
             if getattr(args, flag) is not None}
    if args.only and given:
        params = dict(_EXPLICIT[args.only])
        unknown = set(given) - set(params)
        if unknown:
            raise ParameterError(f"identity {args.only!r} takes no {sorted(unknown)}")
        params.update(given)
        check, _ = identities.SUITES[args.only]
        reports = [check(**params, tol=tol)]
    elif args.only:
        reports = [identities.run_suite(args.only, args.draws, args.seed, tol=tol)]
    else:
        if given:
            raise ParameterError("explicit identity parameters need --only")
        reports = identities.run_all(args.draws, args.seed, tol=tol)
    out.write(_dump([r.to_dict() for r in reports]) + "\n")
    for r in reports:
        verdict = "PASSED" if r.passed else "FAILED"
        print(f"{r.metadata['identity']}: max error {r.max_abs_err:.3e}: {verdict}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


# -- parser -------------------------------------------------------------------


def _positive_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} violates value >= 0")
    return value


def _add_state_args(p):
    p.add_argument("--state", required=True, choices=STATE_KINDS)
    p.add_argument("--alpha", type=parse_complex, help="complex amplitude, e.g. 1+0.5j")
    p.add_argument("--nbar", type=float, help="mean thermal photon number")
    p.add_argument("--lambda", dest="lam", type=float, help="squeezing parameter")
    p.add_argument("--probs", type=parse_probs,
                   help="photon-number probabilities: comma separated or @file")
    p.add_argument("--xi", type=float, required=True, help="detector efficiency")
    p.add_argument("--mmax", type=_positive_int)
    p.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(prog="photocount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="compute p(m) for one state")
    _add_state_args(p)
    p.add_argument("--method", choices=[m.value for m in Method], default="closed")
    p.add_argument("--route", choices=("fock", "pfunction"), default="fock",
                   help="Monte Carlo sampling route")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--continuation", action="store_true",
                   help="allow xi > 1 (closed and formula9 methods only)")
    p.set_defaults(handler=cmd_dist)

    p = sub.add_parser("verify", help="compare the closed form with an oracle")
    _add_state_args(p)
    p.add_argument("--against", required=True, choices=("bernoulli", "pquad", "formula9", "mc"))
    p.add_argument("--route", choices=("auto", "fock", "pfunction"), default="auto")
    p.add_argument("--tol", type=float, help="absolute tolerance (sigmas for mc)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("identities", help="check the integral identities numerically")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=identities.DEFAULT_DRAWS)
    p.add_argument("--only", choices=sorted(identities.SUITES))
    p.add_argument("--tol", type=float)
    p.add_argument("--epsilon", type=parse_complex)
    p.add_argument("--B", type=parse_complex)
    p.add_argument("--C", type=parse_complex)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--m", type=_positive_int)
    p.add_argument("--zeta", type=parse_complex)
    p.add_argument("--xi-coef", type=parse_complex, help="linear z coefficient (quadratic identity)")
    p.add_argument("--eta-coef", type=parse_complex, help="linear z* coefficient (quadratic identity)")
    p.add_argument("--f", type=float)
    p.add_argument("--g", type=float)
    p.add_argument("--xi", type=float)
    p.add_argument("--alpha", type=parse_complex)
    p.set_defaults(handler=cmd_identities)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, out)
    except (PhotocountError, OSError) as exc:
        print(f"photocount {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
