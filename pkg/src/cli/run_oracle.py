from src.oracle import OracleCache, solve_primal_small

from .config import RunConfig
from .error_handling import EXIT_OK, with_args_and_error_handling
from .files import save_coupling_csv, write_json


@with_args_and_error_handling
def cmd_oracle(config: RunConfig) -> int:
    inst = config.build_instance()
    if config.cache_dir:
        solution = OracleCache(config.cache_dir).solve(inst)
    else:
        solution = solve_primal_small(inst)
    write_json(config.output_path("oracle.json"), solution.to_dict())
    save_coupling_csv(solution.coupling, config.output_path("oracle_coupling.csv"))
    print(f"Primal value: {solution.primal_value:.12g}")
    print(f"Method: {solution.method} (tolerance {solution.tolerance_achieved:.3e})")
    print(f"Support size: {solution.coupling.support_size}")
    return EXIT_OK
