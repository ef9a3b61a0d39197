"""Global numeric tolerance.

All norm / normalization checks in the package go through one knob so it can
be tightened or loosened in one place.  The QWALK_TOL environment variable
overrides the default.
"""

import os

DEFAULT_TOLERANCE = 1e-9


def tolerance() -> float:
    """Current numeric tolerance (QWALK_TOL env var, else 1e-9)."""
    return float(os.environ.get("QWALK_TOL", DEFAULT_TOLERANCE))
