import logging

from src.dual_core import primal_from_dual
from src.errors import NonFiniteIterate
from src.solvers import run_solver

from .config import RunConfig, resolve_reference
from .error_handling import EXIT_OK, with_args_and_error_handling
from .files import save_coupling_csv, save_potentials

logger = logging.getLogger(__name__)


@with_args_and_error_handling
def cmd_solve(config: RunConfig) -> int:
    """Run the configured algorithm; write potentials.json, coupling.csv and trace.csv."""
    inst = config.build_instance()
    reference = resolve_reference(config, inst)[0] if config.reference else None
    start = config.start_potentials(inst)
    trace_path = config.output_path("trace.csv")
    try:
        pot, trace = run_solver(inst, start, config.solver_config(config.algorithm, reference))
    except NonFiniteIterate as e:
        if e.trace is not None:
            e.trace.save_csv(trace_path)
            logger.error("Partial trace written to %s", trace_path)
        raise

    save_potentials(pot, config.output_path("potentials.json"))
    save_coupling_csv(primal_from_dual(inst, pot), config.output_path("coupling.csv"))
    trace.save_csv(trace_path)

    last = trace.last
    print(f"Algorithm: {trace.algorithm}")
    print(f"Iterations: {last.iter} (converged: {trace.converged})")
    print(f"Final objective: {last.objective:.12g}")
    if last.gap is not None:
        print(f"Gap to reference: {last.gap:.3e}")
    print(f"Saved to: {config.out_dir}")
    return EXIT_OK
