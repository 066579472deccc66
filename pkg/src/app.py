"""Application initialization and startup."""
import sys

from src.main import main


def run():
    """Run the command-line application."""
    sys.exit(main())


if __name__ == "__main__":
    run()
