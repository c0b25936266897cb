"""Small helpers for planar vectors stored as float64 numpy arrays."""
from __future__ import annotations

import numpy as np

# Distances below EPS are clamped before they reach a denominator.
EPS = 1e-9

UNIT_X = np.array([1.0, 0.0])


def as_point(value) -> np.ndarray:
    """Coerce to a finite float64 array of shape (2,)."""
    pt = np.asarray(value, dtype=float)
    if pt.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {pt.shape}")
    if not np.all(np.isfinite(pt)):
        raise ValueError("vector components must be finite")
    return pt


def norm(v: np.ndarray) -> float:
    return float(np.hypot(v[0], v[1]))


def safe_unit(v: np.ndarray) -> np.ndarray:
    """Direction of v. Exactly coincident endpoints fall back to +x."""
    n = np.hypot(v[0], v[1])
    if n == 0.0:
        return UNIT_X.copy()
    return v / max(n, EPS)


def clamped_norm(v: np.ndarray) -> float:
    return max(np.hypot(v[0], v[1]), EPS)
