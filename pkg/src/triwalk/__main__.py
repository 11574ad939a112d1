"""Run the command-line interface with ``python -m triwalk``."""

import sys

from .cli import main

sys.exit(main())
