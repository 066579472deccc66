"""CLI subcommands."""
from src.cli.commands.estimate_f import create_estimate_f_command
from src.cli.commands.solve import create_solve_command
from src.cli.commands.sweep import create_sweep_command
from src.cli.commands.validate import create_validate_command

__all__ = [
    "create_estimate_f_command",
    "create_solve_command",
    "create_sweep_command",
    "create_validate_command",
]
