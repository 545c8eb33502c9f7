import argparse
import os
from typing import Dict, Optional

from src.solvers import ALGORITHMS, COORDINATE_ASCENT, DEFAULT_MAX_ITERS

CLI_VARIANTS = ("lipschitz", "modulus", "connected")
SUBCOMMANDS = ("solve", "verify", "constants", "compare", "oracle")


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--eps", type=float, help="Regularization strength epsilon > 0")
    p.add_argument("--config", help="JSON file of option defaults (keys are option destinations)")
    p.add_argument(
        "--out-dir",
        default=os.environ.get("QOT_OUT_DIR", os.path.join(os.getcwd(), "out")),
        help="Directory for reports, traces and potentials (default: ./out or $QOT_OUT_DIR)",
    )
    p.add_argument(
        "--unsafe-step",
        action="store_true",
        help="Allow step sizes outside the proven range; such traces skip the rate checks",
    )
    p.add_argument("--variant", choices=CLI_VARIANTS, default="lipschitz", help="Which constant set to use")
    return p


def _instance_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--instance", help="Directory holding P.json, Q.json and cost.json")
    p.add_argument("--source", help="Measure file for P (JSON or CSV); overrides --instance")
    p.add_argument("--target", help="Measure file for Q (JSON or CSV); overrides --instance")
    p.add_argument("--cost", help="Cost JSON; overrides --instance")
    return p


def _geometry_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--density-bounds", type=float, nargs=2, metavar=("LAMBDA", "UPPER"),
        help="Density bounds of P (inferred on grid-discretized P)",
    )
    p.add_argument("--delta-p", type=float, help="Ball-measure constant of P in (0, 1] (default 1 on grids)")
    p.add_argument("--estimate-delta", action="store_true", help="Estimate delta_P from the atoms of P")
    p.add_argument("--lipschitz", type=float, help="Lipschitz constant of the cost (default: computed)")
    p.add_argument("--modulus", help="Modulus JSON for --variant modulus")
    p.add_argument("--c-omega", type=float, help="Atlas constant C_Omega >= 1 for --variant connected")
    p.add_argument("--delta-omega", type=float, help="delta_Omega for --variant connected")
    p.add_argument("--delta-p-tilde", type=float,
                   help="delta_P tilde for --variant connected (overrides --delta-omega)")
    return p


def _solver_flags(multi: bool = False) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    if multi:
        p.add_argument(
            "--algorithms", nargs="+", choices=ALGORITHMS, default=list(ALGORITHMS),
            help="Algorithms to run (default: all three)",
        )
    else:
        p.add_argument("--algorithm", choices=ALGORITHMS, default=COORDINATE_ASCENT)
    p.add_argument("--step-size", type=float, help="Step size eta (default eps/2)")
    p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    p.add_argument("--grad-tol", type=float, help="Stop when the gradient norm reaches this value")
    p.add_argument("--no-trace", action="store_true", help="Keep only the final trace row")
    p.add_argument("--init", help="Potentials JSON to start from (default: zeros)")
    p.add_argument("--reference", help="Reference potentials JSON (default: computed by coordinate ascent)")
    p.add_argument("--reference-tol", type=float, default=1e-12, help="Gradient tolerance of the reference solve")
    p.add_argument("--log-every", type=int, default=1000, help="Log progress every N iterations at DEBUG")
    return p


def build_arg_parser(defaults: Optional[Dict] = None) -> argparse.ArgumentParser:
    """Top-level parser; `defaults` (from --config) are installed on every subcommand."""
    p = argparse.ArgumentParser(description="Dual solvers and certificates for quadratically regularized OT.")
    sub = p.add_subparsers(dest="command", required=True)
    glob, inst, geom = _global_flags(), _instance_flags(), _geometry_flags()

    sub.add_parser("solve", parents=[glob, inst, _solver_flags()], help="Run one ascent algorithm")

    verify = sub.add_parser(
        "verify", parents=[glob, inst, geom, _solver_flags(multi=True)],
        help="Check PL, error-bound, rate, iterate and coercivity guarantees",
    )
    verify.add_argument("--no-pl", action="store_true", help="Skip the PL ratio check")
    verify.add_argument("--no-error-bound", action="store_true", help="Skip the error-bound ratio check")
    verify.add_argument("--no-rate-bound", action="store_true", help="Skip the rate and L2 iterate bounds")
    verify.add_argument("--no-iterate-bound", action="store_true", help="Skip the sup-norm iterate bounds")
    verify.add_argument("--no-coercivity", action="store_true", help="Skip the spectral certificate")
    verify.add_argument("--r-samples", type=float, nargs="+", help="Sample radii in [0, r0] (default: five)")

    sub.add_parser("constants", parents=[glob, inst, geom], help="Print the PL constants of an instance")

    sub.add_parser(
        "compare", parents=[glob, inst, geom, _solver_flags(multi=True)],
        help="Run several algorithms from one start and compare contraction",
    )

    oracle = sub.add_parser("oracle", parents=[glob, inst], help="Solve the primal QP on a small instance")
    oracle.add_argument("--cache-dir", help="Reuse oracle results cached in this directory")

    if defaults:
        for subparser in sub.choices.values():
            subparser.set_defaults(**defaults)
    return p
