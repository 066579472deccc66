"""sweep subcommand."""
from src.cli.commands.common import add_common_arguments, build_config, output_dir
from src.services.experiments import ExperimentService, RunResult


def handle_sweep(args) -> RunResult:
    """Evaluate z(gamma) and the utility on a grid for every sweep value and write the curves."""
    return ExperimentService(build_config(args), output_dir(args)).run_sweep()


def create_sweep_command(subparsers) -> None:
    """Register the sweep subcommand."""
    parser = subparsers.add_parser("sweep", help="target-function and utility curves per sweep value")
    add_common_arguments(parser)
    parser.set_defaults(handler=handle_sweep)
