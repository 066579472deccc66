#!/usr/bin/env python3
"""
Write analytic cancellation profiles for the repetition factors used in the sweeps.

Usage:
    poetry run python scripts/generate_profiles.py [output_dir]
"""

import logging
import sys
import os
from pathlib import Path

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config import settings
from src.repositories import ProfileRepository
from src.schemas.coding import CodeConfig
from src.services.simulation import analytic_profile

REPETITION_FACTORS = (16, 32, 64)
FRAME_BITS = 1000


def main():
    """Generate one profile file per repetition factor."""
    logging.basicConfig(level=settings.LOG_LEVEL, format=settings.LOG_FORMAT)
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else settings.OUTPUT_DIR)

    for N in REPETITION_FACTORS:
        profile = analytic_profile(CodeConfig(N=N, M_info=FRAME_BITS))
        path = ProfileRepository(out_dir / f"profile_analytic_N{N}.csv").save(
            profile, {"artifact_version": settings.artifact_version}
        )
        print(f"✅ N={N}: {len(profile)} points -> {path}")


if __name__ == "__main__":
    main()
