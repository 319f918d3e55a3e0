"""Student-t copula simulator: command-line entry point.

Commands (see ``python main.py --help``):
  reduction-table   correlation reduction factor by degrees of freedom
  tail-table        tail correlation per threshold and construction
  tail-counts       joint tail exceedance counts
  sample            raw (u, v) draws
  density           binned density, raw or copula scale
  tail-curve        model tail correlation by threshold
  scatter           tail pairs for figures
  summary           correlation and margin checks per construction
"""

import os
import sys

# Ensure the project root is on the path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from tcopula.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
