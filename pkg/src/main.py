"""Main application entry point."""
import argparse
import logging
import sys
from typing import List, Optional

from src.cli.commands import (
    create_estimate_f_command,
    create_solve_command,
    create_sweep_command,
    create_validate_command
)
from src.config import settings
from src.services.errors import IdmaError

logger = logging.getLogger(__name__)

EXIT_OK = 0


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser and register all subcommands."""
    parser = argparse.ArgumentParser(
        prog="idma-power",
        description="Decentralized power allocation game for IDMA uplinks"
    )
    parser.add_argument("--version", action="version", version=settings.artifact_version)
    subparsers = parser.add_subparsers(dest="command", required=True)

    create_estimate_f_command(subparsers)
    create_solve_command(subparsers)
    create_sweep_command(subparsers)
    create_validate_command(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format=settings.LOG_FORMAT)

    try:
        result = args.handler(args)
    except IdmaError as exc:
        logger.error(f"{args.command} failed: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code

    print(result.summary)
    return EXIT_OK
