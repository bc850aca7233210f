"""Input-validation helpers used at the package's public boundaries."""

from __future__ import annotations

import numpy as np


def as_image_array(x, name: str = "x") -> np.ndarray:
    """Coerce to a float32 array and require finite values."""
    arr = np.asarray(x, dtype=np.float32)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_range(x: np.ndarray, lo: float = -1.0, hi: float = 1.0, name: str = "x") -> np.ndarray:
    if x.size and (x.min() < lo or x.max() > hi):
        raise ValueError(f"{name} values must lie in [{lo}, {hi}], got range [{x.min()}, {x.max()}]")
    return x


def check_same_shape(name_a: str, a, name_b: str, b) -> None:
    if tuple(a.shape) != tuple(b.shape):
        raise ValueError(f"shape mismatch: {name_a} has {tuple(a.shape)}, {name_b} has {tuple(b.shape)}")


def check_binary_mask(mask: np.ndarray, name: str = "mask") -> np.ndarray:
    """Require every mask value to be exactly 0 or 1."""
    if not np.all((mask == 0) | (mask == 1)):
        bad = mask[(mask != 0) & (mask != 1)]
        raise ValueError(f"{name} must contain only 0s and 1s, found value {bad.flat[0]!r}")
    return mask


def check_probability(p: float, name: str = "p") -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return float(p)
