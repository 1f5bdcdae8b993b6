"""Entry point for Poetry script `ballotope`.

Poetry config uses:
[tool.poetry.scripts]
ballotope = "main:main"
"""

import sys

from ballotope.cli.interface import main as cli_main


def main() -> None:
    """Run CLI application."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
