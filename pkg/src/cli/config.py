import argparse
import logging
import os
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from src.constants import (
    ConnectedGeometry,
    PLConstants,
    compute_pl_constants,
    compute_pl_constants_connected,
    compute_pl_constants_modulus,
)
from src.costs import CostSpec, lipschitz_constant
from src.dual_core import DualPotentials, ProblemInstance
from src.errors import ConfigError, ReferenceNotOptimal
from src.measures import GeometryConstants, empirical_cone_constant, empirical_geometry
from src.oracle import KKTReport, kkt_certificate
from src.solvers import COORDINATE_ASCENT, SolverConfig, coordinate_ascent_run

from .args import build_arg_parser
from .files import load_cost, load_measure, load_modulus, load_potentials, read_json

logger = logging.getLogger(__name__)

REFERENCE_KKT_TOL = 1e-8


def parse_args(argv=None) -> argparse.Namespace:
    """Parse twice when --config is given: file values become defaults, explicit flags win."""
    args = build_arg_parser().parse_args(argv)
    if not args.config:
        return args
    data = read_json(args.config)
    if not isinstance(data, dict):
        raise ConfigError(f"{args.config}: expected a JSON object")
    known = vars(args)
    unknown = sorted(k for k in data if k not in known)
    if unknown:
        logger.warning("Ignoring config keys not used by '%s': %s", args.command, ", ".join(unknown))
    return build_arg_parser({k: v for k, v in data.items() if k in known}).parse_args(argv)


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI command needs, resolved from flags, --config and the environment."""

    command: str
    eps: float
    out_dir: str
    source: str
    target: str
    cost: str
    variant: str = "lipschitz"
    unsafe_step: bool = False
    # geometry
    density_bounds: Optional[Tuple[float, float]] = None
    delta_p: Optional[float] = None
    estimate_delta: bool = False
    lipschitz: Optional[float] = None
    modulus: Optional[str] = None
    c_omega: Optional[float] = None
    delta_omega: Optional[float] = None
    delta_p_tilde: Optional[float] = None
    # solver
    algorithm: str = COORDINATE_ASCENT
    algorithms: Tuple[str, ...] = ()
    step_size: Optional[float] = None
    max_iters: int = 100000
    grad_tol: Optional[float] = None
    record_trace: bool = True
    init: Optional[str] = None
    reference: Optional[str] = None
    reference_tol: float = 1e-12
    log_every: int = 1000
    # verification toggles
    check_pl: bool = True
    check_error_bound: bool = True
    check_rate_bound: bool = True
    check_iterate_bound: bool = True
    check_coercivity: bool = True
    r_samples: Optional[Tuple[float, ...]] = None
    cache_dir: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        eps = getattr(args, "eps", None)
        if eps is None or not eps > 0:
            raise ConfigError(f"--eps must be a positive number, got {eps!r}")
        paths = {}
        for key, name in (("source", "P.json"), ("target", "Q.json"), ("cost", "cost.json")):
            path = getattr(args, key, None)
            if path is None and getattr(args, "instance", None):
                path = os.path.join(args.instance, name)
            if path is None:
                raise ConfigError(f"--{key} or --instance is required")
            if not os.path.exists(path):
                raise FileNotFoundError(path)
            paths[key] = path
        for key in ("init", "reference", "modulus"):
            path = getattr(args, key, None)
            if path is not None and not os.path.exists(path):
                raise FileNotFoundError(path)
        if getattr(args, "max_iters", 0) < 0:
            raise ConfigError("--max-iters must be nonnegative")

        bounds = getattr(args, "density_bounds", None)
        samples = getattr(args, "r_samples", None)
        return cls(
            command=args.command,
            eps=float(eps),
            out_dir=args.out_dir,
            variant=args.variant,
            unsafe_step=bool(args.unsafe_step),
            density_bounds=tuple(bounds) if bounds is not None else None,
            delta_p=getattr(args, "delta_p", None),
            estimate_delta=bool(getattr(args, "estimate_delta", False)),
            lipschitz=getattr(args, "lipschitz", None),
            modulus=getattr(args, "modulus", None),
            c_omega=getattr(args, "c_omega", None),
            delta_omega=getattr(args, "delta_omega", None),
            delta_p_tilde=getattr(args, "delta_p_tilde", None),
            algorithm=getattr(args, "algorithm", COORDINATE_ASCENT),
            algorithms=tuple(getattr(args, "algorithms", None) or ()),
            step_size=getattr(args, "step_size", None),
            max_iters=int(getattr(args, "max_iters", 100000)),
            grad_tol=getattr(args, "grad_tol", None),
            record_trace=not getattr(args, "no_trace", False),
            init=getattr(args, "init", None),
            reference=getattr(args, "reference", None),
            reference_tol=float(getattr(args, "reference_tol", 1e-12)),
            log_every=int(getattr(args, "log_every", 1000)),
            check_pl=not getattr(args, "no_pl", False),
            check_error_bound=not getattr(args, "no_error_bound", False),
            check_rate_bound=not getattr(args, "no_rate_bound", False),
            check_iterate_bound=not getattr(args, "no_iterate_bound", False),
            check_coercivity=not getattr(args, "no_coercivity", False),
            r_samples=tuple(samples) if samples is not None else None,
            cache_dir=getattr(args, "cache_dir", None),
            **paths,
        )

    # --- Instance and geometry ------------------------------------------------------
    def cost_spec(self) -> CostSpec:
        return load_cost(self.cost)

    def build_instance(self) -> ProblemInstance:
        P, Q = load_measure(self.source), load_measure(self.target)
        return ProblemInstance.build(P, Q, self.cost_spec(), self.eps)

    def build_geometry(self, inst: ProblemInstance) -> GeometryConstants:
        L = self.lipschitz
        if L is None:
            L = lipschitz_constant(self.cost_spec(), inst.P, inst.Q).value
        delta = self.delta_p
        if delta is None and self.estimate_delta:
            delta = empirical_cone_constant(inst.P)
            logger.info("Estimated delta_P = %.6g from the atoms of P", delta)
        geom = empirical_geometry(inst.P, inst.Q, self.density_bounds, delta, lipschitz_L=L)
        if self.estimate_delta and self.delta_p is None:
            geom = replace(geom, empirical=True, inferred=geom.inferred + ("delta_P",))
        return geom

    def pl_constants(self, geom: GeometryConstants) -> PLConstants:
        if self.variant == "lipschitz":
            return compute_pl_constants(geom, self.eps)
        if self.variant == "modulus":
            if self.modulus is None:
                raise ConfigError("--variant modulus needs --modulus")
            return compute_pl_constants_modulus(geom, load_modulus(self.modulus), self.eps)
        if self.c_omega is None:
            raise ConfigError("--variant connected needs --c-omega")
        tilde = ConnectedGeometry(C_Omega=self.c_omega, delta_Omega=self.delta_omega, delta_P_tilde=self.delta_p_tilde)
        return compute_pl_constants_connected(tilde, geom, self.eps)

    # --- Solver inputs --------------------------------------------------------------
    def start_potentials(self, inst: ProblemInstance) -> DualPotentials:
        if self.init is None:
            return DualPotentials.zeros(inst.n, inst.m)
        pot = load_potentials(self.init)
        pot.check_dims(inst)
        return pot

    def solver_config(
        self,
        algorithm: str,
        reference: Optional[DualPotentials] = None,
        pl_constants: Optional[PLConstants] = None,
    ) -> SolverConfig:
        return SolverConfig(
            algorithm=algorithm,
            step_size=self.step_size,
            max_iters=self.max_iters,
            grad_tol=self.grad_tol,
            record_trace=self.record_trace,
            reference_potentials=reference,
            unsafe_step=self.unsafe_step,
            pl_constants=pl_constants,
            log_every=self.log_every,
        )

    def algorithm_list(self) -> List[str]:
        return list(self.algorithms) if self.algorithms else [self.algorithm]

    def output_path(self, name: str) -> str:
        os.makedirs(self.out_dir, exist_ok=True)
        return os.path.join(self.out_dir, name)


def certify_reference(config: RunConfig, inst: ProblemInstance) -> Tuple[DualPotentials, KKTReport]:
    """Reference potentials with their KKT report: loaded from --reference, else a tight coordinate ascent solve."""
    if config.reference is not None:
        ref = load_potentials(config.reference)
        ref.check_dims(inst)
    else:
        solver = SolverConfig(
            algorithm=COORDINATE_ASCENT,
            grad_tol=config.reference_tol,
            max_iters=config.max_iters,
            record_trace=False,
            log_every=config.log_every,
        )
        ref, _ = coordinate_ascent_run(inst, DualPotentials.zeros(inst.n, inst.m).g, solver)
    return ref, kkt_certificate(inst, ref, REFERENCE_KKT_TOL)


def reference_failure(report: KKTReport) -> ReferenceNotOptimal:
    return ReferenceNotOptimal(
        f"reference potentials fail the KKT certificate (foc={report.foc_residual:.3g}, "
        f"marginals={report.marginal_residual:.3g}, gap={report.duality_gap:.3g})"
    )


def resolve_reference(config: RunConfig, inst: ProblemInstance) -> Tuple[DualPotentials, KKTReport]:
    """Certified optimal potentials; raises ReferenceNotOptimal when the KKT certificate fails."""
    ref, report = certify_reference(config, inst)
    if not report.passed:
        raise reference_failure(report)
    return ref, report
