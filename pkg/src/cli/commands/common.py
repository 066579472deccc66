"""Flags shared by every subcommand and the config merge."""
import argparse
from pathlib import Path
from typing import Any, Dict

from pydantic import ValidationError

from src.config import settings
from src.repositories import ConfigRepository
from src.schemas.experiments import ExperimentConfig
from src.services.errors import ConfigError

# Config keys that can also be given as --<key> flags.
SCENARIO_KEYS = (
    "K",
    "N",
    "M-info",
    "s",
    "sigma2",
    "p-max",
    "epsilon",
    "delta",
    "goodput-exponent",
    "gamma0-interferer-power",
    "sweep-axis",
    "sweep-values",
    "trials",
    "iterations",
    "frames",
    "schedule",
    "damping",
    "users-draw",
    "workers",
)


def _dest(key: str) -> str:
    return "cfg_" + key.replace("-", "_")


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Register --config, --profile, --out, --seed, --allow-overloaded and scenario flags."""
    parser.add_argument("--config", type=Path, help="key=value configuration file")
    parser.add_argument("--profile", help="profile CSV path, 'analytic' or 'estimate'")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument(
        "--allow-overloaded",
        action="store_true",
        default=None,
        help="permit K/N > 1 (validation mismatch demonstration only)"
    )
    parser.add_argument(
        "--log-level",
        default=settings.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging verbosity"
    )
    scenario = parser.add_argument_group("scenario overrides")
    for key in SCENARIO_KEYS:
        scenario.add_argument(f"--{key}", dest=_dest(key), metavar="VALUE")


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Merge the config file with command-line overrides; flags win.

    Raises:
        ConfigError: On unreadable files or values failing validation
    """
    values: Dict[str, Any] = {}
    if args.config is not None:
        values.update(ConfigRepository(args.config).load())
    for key in SCENARIO_KEYS:
        flag = getattr(args, _dest(key), None)
        if flag is not None:
            values[key] = flag
    if args.profile is not None:
        values["profile"] = args.profile
    if args.seed is not None:
        values["seed"] = args.seed
    if args.allow_overloaded:
        values["allow-overloaded"] = True

    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as exc:
        source = f" in {args.config}" if args.config is not None else ""
        raise ConfigError(f"invalid configuration{source}: {exc}") from exc


def output_dir(args: argparse.Namespace) -> Path:
    """Directory for result files: --out or the IDMA_OUTPUT_DIR setting."""
    return args.out if args.out is not None else Path(settings.OUTPUT_DIR)
