#!/usr/bin/env python3
"""Run the acceptance suite with its per-criterion report lines visible.

Usage: python scripts/verify_theorems.py [extra pytest args]
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(
        subprocess.call(
            [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-s", "-v",
             *sys.argv[1:]],
            cwd=ROOT,
        )
    )
