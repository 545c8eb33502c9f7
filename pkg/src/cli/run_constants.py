import json

from .config import RunConfig
from .error_handling import EXIT_OK, with_args_and_error_handling
from .files import write_json


@with_args_and_error_handling
def cmd_constants(config: RunConfig) -> int:
    """Print and save the constants report of the selected variant."""
    inst = config.build_instance()
    consts = config.pl_constants(config.build_geometry(inst))
    report = consts.to_report()
    write_json(config.output_path("constants.json"), report)
    print(json.dumps(report, sort_keys=True, indent=2))
    return EXIT_OK
