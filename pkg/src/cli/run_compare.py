import logging
from typing import Any, Dict

from src.errors import ConfigError
from src.solvers import run_solver, theoretical_rate

from .config import RunConfig, resolve_reference
from .error_handling import EXIT_OK, with_args_and_error_handling
from .files import save_columns_csv, write_json

logger = logging.getLogger(__name__)

RATE_RTOL = 1e-12


@with_args_and_error_handling
def cmd_compare(config: RunConfig) -> int:
    """Run several algorithms from one start; write compare.csv (gap per algorithm) and a summary."""
    algorithms = config.algorithm_list()
    if len(algorithms) < 2:
        raise ConfigError("compare needs at least two algorithms")
    inst = config.build_instance()
    consts = config.pl_constants(config.build_geometry(inst))
    reference, _ = resolve_reference(config, inst)
    start = config.start_potentials(inst)

    header, columns = ["iter"], []
    summary: Dict[str, Any] = {}
    longest = 0
    for algorithm in algorithms:
        solver = config.solver_config(algorithm, reference)
        _, trace = run_solver(inst, start, solver)
        q = theoretical_rate(inst, solver, start, consts.gamma_eps)
        empirical = trace.empirical_contraction()
        # None: the gap fell below the floor before a tail formed
        within_rate = empirical is None or empirical <= (1.0 - q) * (1.0 + RATE_RTOL)
        if not within_rate:
            logger.warning("%s contracts by %.6g per step, slower than the bound %.6g", algorithm, empirical, 1.0 - q)
        header.append(f"gap_{algorithm}")
        columns.append(trace.column("gap"))
        longest = max(longest, len(trace))
        summary[algorithm] = {
            "iterations": trace.last.iter,
            "converged": trace.converged,
            "q": q,
            "theoretical_factor": 1.0 - q,
            "empirical_factor": empirical,
            "within_rate": within_rate,
        }
        shown = "n/a" if empirical is None else f"{empirical:.6g}"
        print(f"{algorithm}: {trace.last.iter} iterations, empirical factor {shown}, theoretical {1.0 - q:.6g}")

    iters = [float(k) for k in range(longest)]
    save_columns_csv(header, [iters] + columns, config.output_path("compare.csv"))
    path = write_json(config.output_path("compare_summary.json"), {"eps": inst.eps, "algorithms": summary})
    print(f"Saved to: {path}")
    return EXIT_OK
