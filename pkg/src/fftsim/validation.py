"""Input checks for the estimator wrappers.

scikit-learn's ``check_array`` rejects complex data, so these helpers do the
equivalent shape and dtype validation for complex frames and vectors.
"""

from __future__ import annotations

import numpy as np

from .butterfly import is_power_of_two
from .errors import ConfigurationError, InputError


def check_complex_array(X, ndim_allowed=(1, 2, 3), name="X") -> np.ndarray:
    try:
        X = np.asarray(X)
    except Exception as exc:  # ragged input and the like
        raise InputError(f"{name} cannot be converted to an array: {exc}") from None
    if X.dtype == object or not np.issubdtype(X.dtype, np.number):
        raise InputError(f"{name} must be numeric, got dtype {X.dtype}")
    X = X.astype(complex)
    if X.ndim not in ndim_allowed:
        raise InputError(f"{name} must have ndim in {ndim_allowed}, got {X.ndim}")
    if X.size == 0:
        raise InputError(f"{name} is empty")
    if not np.all(np.isfinite(X)):
        raise InputError(f"{name} contains NaN or infinity")
    return X


def check_power_of_two(n, name="n") -> int:
    if not is_power_of_two(n) or n < 2:
        raise ConfigurationError(f"{name} must be a power of two >= 2, got {n!r}")
    return n


def check_frames(X) -> np.ndarray:
    """Accept one square frame or a batch; always return shape (k, n, n)."""
    X = check_complex_array(X, ndim_allowed=(2, 3))
    if X.ndim == 2:
        X = X[np.newaxis]
    k, rows, cols = X.shape
    if rows != cols:
        raise InputError(f"frames must be square, got {rows}x{cols}")
    check_power_of_two(rows, "frame side")
    return X


def check_vectors(X) -> np.ndarray:
    """Accept one vector or a batch of row vectors; return shape (k, n)."""
    X = check_complex_array(X, ndim_allowed=(1, 2))
    if X.ndim == 1:
        X = X[np.newaxis]
    check_power_of_two(X.shape[1], "vector length")
    return X
