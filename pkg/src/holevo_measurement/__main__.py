"""Run the command line with ``python -m holevo_measurement``."""

import sys

from .cli import main

sys.exit(main())
