import logging
from typing import Any, Dict

from src.constants import empirical_pl_constant
from src.solvers import (
    check_iterate_bounds,
    check_l2_iterate_bound,
    check_monotone,
    check_pl_rows,
    check_rate_bound,
    iterate_l2_constant,
    run_solver,
    theoretical_rate,
)
from src.spectral import coercivity_certificate

from .config import RunConfig, certify_reference, reference_failure
from .error_handling import EXIT_CHECK, EXIT_OK, with_args_and_error_handling
from .files import write_json

logger = logging.getLogger(__name__)


def _violations(items) -> list:
    return [v.to_dict() for v in items]


def _finish(config: RunConfig, report: Dict[str, Any], passed: bool) -> int:
    report["pass"] = passed
    path = write_json(config.output_path("verify_report.json"), report)
    print(f"Verification {'passed' if passed else 'FAILED'}; report saved to {path}")
    return EXIT_OK if passed else EXIT_CHECK


@with_args_and_error_handling
def cmd_verify(config: RunConfig) -> int:
    """Run each algorithm against a certified reference and check every enabled guarantee.

    The report is written before the exit code is decided, so failed runs still leave it behind.
    """
    inst = config.build_instance()
    consts = config.pl_constants(config.build_geometry(inst))
    reference, kkt = certify_reference(config, inst)

    report: Dict[str, Any] = {
        "eps": inst.eps,
        "constants": consts.to_report(),
        "reference": kkt.to_dict(),
        "algorithms": {},
        "coercivity": None,
    }
    if not kkt.passed:
        logger.error("%s", reference_failure(kkt))
        return _finish(config, report, False)

    start = config.start_potentials(inst)
    with_ratios = config.check_pl or config.check_error_bound
    passed = True
    for algorithm in config.algorithm_list():
        solver = config.solver_config(algorithm, reference, consts if with_ratios else None)
        pot, trace = run_solver(inst, start, solver)
        trace.save_csv(config.output_path(f"trace_{algorithm}.csv"))

        q = theoretical_rate(inst, solver, start, consts.gamma_eps)
        checks = {"monotone": _violations(check_monotone(trace))}
        if config.check_rate_bound:
            checks["rate"] = _violations(check_rate_bound(trace, q))
            K = iterate_l2_constant(inst, solver, start, consts.gamma_eps)
            checks["l2_iterate"] = _violations(check_l2_iterate_bound(trace, q, K))
        if config.check_iterate_bound:
            checks["iterate"] = _violations(check_iterate_bounds(trace))
        if with_ratios:
            ratio_rows = check_pl_rows(trace)
            if config.check_pl:
                checks["pl_ratio"] = _violations(v for v in ratio_rows if v.check == "pl_ratio")
            if config.check_error_bound:
                checks["error_bound"] = _violations(v for v in ratio_rows if v.check == "error_bound")

        ok = not any(checks.values())
        passed = passed and ok
        report["algorithms"][algorithm] = {
            "iterations": trace.last.iter,
            "converged": trace.converged,
            "step_size": trace.step_size,
            "unsafe_step": trace.unsafe,
            "q": q,
            "empirical_pl_constant": empirical_pl_constant(trace, inst.eps),
            "checks": checks,
            "pass": ok,
        }
        for name, found in checks.items():
            if found:
                logger.warning("%s: %d violation(s) of the %s check", algorithm, len(found), name)

    if config.check_coercivity:
        cert = coercivity_certificate(inst, reference, start, consts, config.r_samples)
        report["coercivity"] = cert.to_dict()
        passed = passed and cert.passed

    return _finish(config, report, passed)
