"""Small shared helpers."""

import numpy as np


def apply_scalar(x, func):
    """Evaluate an array function, preserving scalar in -> scalar out."""
    arr = np.asarray(x, dtype=float)
    out = func(np.atleast_1d(arr))
    return float(out[0]) if arr.ndim == 0 else out
