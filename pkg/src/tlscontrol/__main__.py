"""Run the command-line interface via ``python -m tlscontrol``."""

import sys

from .cli import main

sys.exit(main())
