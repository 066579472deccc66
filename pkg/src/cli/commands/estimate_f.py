"""estimate-f subcommand."""
from src.cli.commands.common import add_common_arguments, build_config, output_dir
from src.services.experiments import ExperimentService, RunResult


def handle_estimate_f(args) -> RunResult:
    """Estimate f(gamma) by Monte Carlo simulation and write the profile table."""
    return ExperimentService(build_config(args), output_dir(args)).run_estimate_f()


def create_estimate_f_command(subparsers) -> None:
    """Register the estimate-f subcommand."""
    parser = subparsers.add_parser("estimate-f", help="estimate the cancellation profile f(gamma)")
    add_common_arguments(parser)
    parser.set_defaults(handler=handle_estimate_f)
