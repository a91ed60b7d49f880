"""Input validation helpers for the estimator layer."""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError

__all__ = ["check_binary_matrix", "check_binary_labels", "check_square_width"]


def check_binary_matrix(X, n_features: int | None = None) -> np.ndarray:
    """Coerce X to a 2D integer array of 0/1 values."""
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise InputError(f"expected a 2D array, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise InputError("features must be binary (0/1)")
    if n_features is not None and arr.shape[1] != n_features:
        raise InputError(
            f"expected {n_features} features, got {arr.shape[1]}"
        )
    return arr.astype(np.int64, copy=False)


def check_binary_labels(y, n_rows: int) -> np.ndarray:
    """Coerce y to a 1D integer array of 0/1 values of the given length."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise InputError(f"expected 1D labels, got shape {arr.shape}")
    if len(arr) != n_rows:
        raise InputError(f"X has {n_rows} rows but y has {len(arr)}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise InputError("labels must be binary (0/1)")
    return arr.astype(np.int64, copy=False)


def check_square_width(n_features: int) -> int:
    """Vertex count of a flattened adjacency matrix with n_features entries."""
    order = math.isqrt(n_features)
    if order * order != n_features:
        raise InputError(
            f"{n_features} features do not form a square adjacency matrix"
        )
    return order
