"""Command line front end: run verification suites, evaluate quantities.

Complex flags use the shell-safe "re,im" spelling; a bare real part is
accepted.  Exit codes: 0 all checks pass, 1 a check failed, 2 usage or
parameter domain error, 3 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    ContourError,
    DegeneracyError,
    DomainError,
    NumericalLimitError,
    PoleError,
    RangeError,
    TruncationError,
)
from .nome import Nome
from .report import canonical_json
from .suites import SUITE_NAMES, run_suite

USAGE_EXIT = 2
DEGENERATE_EXIT = 3

_DEGENERATE = (DegeneracyError, PoleError, NumericalLimitError, TruncationError,
               ContourError)
_USAGE = (DomainError, RangeError)


def parse_complex(text: str) -> complex:
    """Parse "re,im" (or a bare real) into a complex number."""
    parts = str(text).split(",")
    if len(parts) not in (1, 2):
        raise ValueError(f"expected 're,im' or 're', got {text!r}")
    re = float(parts[0])
    im = float(parts[1]) if len(parts) == 2 else 0.0
    return complex(re, im)


def _json_value(value):
    """JSON encoding of results: reals stay scalars, else an [re, im] pair."""
    if isinstance(value, int):
        return value
    value = complex(value)
    if value.imag == 0.0:
        return value.real
    return [value.real, value.imag]


def _matrix_json(mat):
    return [[_json_value(v) for v in row] for row in mat]


# --- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, tol_scale=args.tol)
    text = report.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.all_passed else 1


# --- eval --------------------------------------------------------------------

def _require(args, parser, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        parser.error(
            f"target {args.target!r} needs " + ", ".join("--" + n for n in missing)
        )


def _eval_theta(args, parser):
    from .theta import theta_p

    _require(args, parser, "x", "p")
    return _json_value(theta_p(args.x, args.p))


def _eval_p(args, parser):
    from .pfaffians import PointConfig, p_sigma

    _require(args, parser, "sigma", "tau")
    if not args.z:
        parser.error("target 'P' needs at least one --z (repeat the flag per point)")
    cfg = PointConfig(tuple(args.z), Nome(args.tau))
    return _json_value(p_sigma(args.sigma, cfg))


def _eval_partition(args, parser):
    from .lattice import partition_z

    _require(args, parser, "lam", "p", "q")
    if not args.u or not args.v:
        parser.error("target 'Z' needs --u and --v spectral parameters")
    if len(args.u) != len(args.v):
        parser.error(f"need as many --u as --v, got {len(args.u)} and {len(args.v)}")
    if args.n is not None and args.n != len(args.u):
        parser.error(f"--n {args.n} disagrees with {len(args.u)} spectral parameters")
    return _json_value(partition_z(args.u, args.v, args.lam, args.p, args.q))


def _eval_three_colour(args, parser):
    from .lattice import ThreeColourWeights, three_colour_z

    _require(args, parser, "n", "t0", "t1", "t2")
    weights = ThreeColourWeights(args.t0, args.t1, args.t2)
    return _json_value(three_colour_z(args.n, weights))


def _one_u(args, parser) -> complex:
    if not args.u or len(args.u) != 1:
        parser.error(f"target {args.target!r} needs exactly one --u")
    return args.u[0]


def _eval_q(args, parser):
    from .eightvertex import EVParams, q_sigma

    _require(args, parser, "sigma", "tau")
    u = _one_u(args, parser)
    if not args.inhom:
        parser.error("target 'Q' needs --inhom (repeat the flag per chain site)")
    params = EVParams(Nome(args.tau), tuple(args.inhom))
    return _json_value(q_sigma(args.sigma, u, params))


def _eval_transfer(args, parser):
    from .eightvertex import EVParams, transfer_matrix

    _require(args, parser, "tau")
    u = _one_u(args, parser)
    if not args.inhom:
        parser.error("target 'T-matrix' needs --inhom (repeat the flag per site)")
    if len(args.inhom) > 3:
        parser.error("T-matrix dumps are limited to 3 chain sites")
    params = EVParams(Nome(args.tau), tuple(args.inhom))
    return _matrix_json(transfer_matrix(u, params))


def _eval_hankel(args, parser):
    from .moments import moment_hankel

    _require(args, parser, "sigma", "n", "tau")
    return _json_value(moment_hankel(args.sigma, args.n, Nome(args.tau)))


def _eval_glaisher(args, parser):
    from .moments import glaisher_t

    _require(args, parser, "j")
    return _json_value(glaisher_t(args.j))


_EVAL = {
    "theta": _eval_theta,
    "P": _eval_p,
    "Z": _eval_partition,
    "Z3C": _eval_three_colour,
    "Q": _eval_q,
    "T-matrix": _eval_transfer,
    "hankel": _eval_hankel,
    "glaisherT": _eval_glaisher,
}


def cmd_eval(args, parser) -> int:
    value = _EVAL[args.target](args, parser)
    print(canonical_json(value))
    return 0


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellpf",
        description="Verification suites and evaluators for the twelve-family "
        "theta pfaffians and their lattice counterparts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run a named check suite")
    ver.add_argument("--suite", required=True, choices=SUITE_NAMES)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--tol", type=float, default=1.0,
                     help="multiply every tolerance in the suite by this factor")
    ver.add_argument("--out", help="write the JSON report here instead of stdout")

    ev = sub.add_parser("eval", help="evaluate one quantity at given parameters")
    ev.add_argument("--target", required=True, choices=sorted(_EVAL))
    ev.add_argument("--x", type=parse_complex, help="theta argument")
    ev.add_argument("--p", type=parse_complex, help="nome value")
    ev.add_argument("--q", type=parse_complex, help="crossing parameter")
    ev.add_argument("--tau", type=parse_complex, help="modulus, as 're,im'")
    ev.add_argument("--sigma", help="family label, e.g. '1' or '1h'")
    ev.add_argument("--n", type=int, help="board size or matrix order")
    ev.add_argument("--j", type=int, help="index into the integer table")
    ev.add_argument("--u", type=parse_complex, action="append",
                    help="spectral parameter (repeatable for Z)")
    ev.add_argument("--v", type=parse_complex, action="append",
                    help="column spectral parameter (repeatable)")
    ev.add_argument("--z", type=parse_complex, action="append",
                    help="configuration point (repeat per point)")
    ev.add_argument("--lam", type=parse_complex, help="dynamical parameter")
    ev.add_argument("--t0", type=parse_complex, help="colour weight 0")
    ev.add_argument("--t1", type=parse_complex, help="colour weight 1")
    ev.add_argument("--t2", type=parse_complex, help="colour weight 2")
    ev.add_argument("--inhom", type=parse_complex, action="append",
                    help="chain inhomogeneity (repeat per site)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_eval(args, parser)
    except _DEGENERATE as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return DEGENERATE_EXIT
    except _USAGE as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
