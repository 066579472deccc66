"""solve subcommand."""
from src.cli.commands.common import add_common_arguments, build_config, output_dir
from src.services.experiments import ExperimentService, RunResult


def handle_solve(args) -> RunResult:
    """Solve for gamma* and write the solution and allocation tables."""
    return ExperimentService(build_config(args), output_dir(args)).run_solve()


def create_solve_command(subparsers) -> None:
    """Register the solve subcommand."""
    parser = subparsers.add_parser("solve", help="optimal SINR and per-user power allocation")
    add_common_arguments(parser)
    parser.set_defaults(handler=handle_solve)
