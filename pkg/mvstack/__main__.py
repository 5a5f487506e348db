"""Entry point of ``python -m mvstack``."""
import sys

from mvstack.cli import main

sys.exit(main())
