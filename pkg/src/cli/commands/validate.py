"""validate subcommand."""
from src.cli.commands.common import add_common_arguments, build_config, output_dir
from src.services.experiments import ExperimentService, RunResult


def handle_validate(args) -> RunResult:
    """Compare SINR evolution with the chip-level simulation."""
    service = ExperimentService(build_config(args), output_dir(args))
    return service.run_validate(write_trace=args.trace)


def create_validate_command(subparsers) -> None:
    """Register the validate subcommand."""
    parser = subparsers.add_parser("validate", help="predicted versus simulated SINR and utility")
    add_common_arguments(parser)
    parser.add_argument(
        "--trace",
        action="store_true",
        help="also write the per-iteration trace of the point closest to gamma*"
    )
    parser.set_defaults(handler=handle_validate)
