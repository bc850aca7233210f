"""Time-axis machinery: the noise-level distribution, the adjacent-time
mapping, and the discretization ramp that tightens the pair gap over training.

Noise levels t are drawn from a log-normal clamped into [t_min, t_max]. The
near point r is a deterministic function of t and the iteration counter k:
r = t * (1 - 1/N(k)) where N(k) doubles every `ramp_period` iterations up to
`n_max`. At k = 0 this gives r = 0 (the teacher target is the data itself);
as N grows, r/t -> 1 and the pair enforces local consistency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ScheduleConfig",
    "TimePair",
    "sample_t",
    "discretization_count",
    "map_r",
    "sample_time_pair",
]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class ScheduleConfig:
    """Every time-axis parameter in one place.

    t_max is the largest noise level (one-step sampling starts there), t_min
    the boundary level where the model is pinned to the identity. p_mean and
    p_std parameterize the log-normal level distribution. ramp_period is the
    number of iterations between discretization doublings; n_max caps the
    discretization count and must be a power of two.
    """

    t_max: float = 80.0
    t_min: float = 0.002
    p_mean: float = -1.1
    p_std: float = 2.0
    ramp_period: int = 100
    n_max: int = 1024

    def __post_init__(self):
        if not 0.0 < self.t_min < self.t_max:
            raise ValueError(f"need 0 < t_min < t_max, got t_min={self.t_min} t_max={self.t_max}")
        if self.p_std <= 0.0:
            raise ValueError(f"p_std must be positive, got {self.p_std}")
        if self.ramp_period < 1:
            raise ValueError(f"ramp_period must be >= 1, got {self.ramp_period}")
        if not _is_power_of_two(self.n_max):
            raise ValueError(f"n_max must be a power of two >= 1, got {self.n_max}")


@dataclass(frozen=True)
class TimePair:
    """A far/near time pair (t, r) with 0 <= r < t; r = 0 maps to data directly."""

    t: float
    r: float

    def __post_init__(self):
        if not 0.0 <= self.r < self.t:
            raise ValueError(f"need 0 <= r < t, got t={self.t} r={self.r}")


def sample_t(rng: np.random.Generator, cfg: ScheduleConfig, size=None):
    """Draw noise levels exp(p_mean + p_std * z), clamped into [t_min, t_max].

    Clamping (rather than rejection) absorbs the tail draws; at default
    parameters the clamped mass is below 1%.
    """
    z = rng.standard_normal(size)
    t = np.exp(cfg.p_mean + cfg.p_std * z)
    t = np.clip(t, cfg.t_min, cfg.t_max)
    return float(t) if size is None else t


def discretization_count(k: int, cfg: ScheduleConfig) -> int:
    """N(k) = min(n_max, 2^floor(k / ramp_period)); nondecreasing in k."""
    if k < 0:
        raise ValueError(f"iteration count must be >= 0, got {k}")
    doublings = int(k) // cfg.ramp_period
    if (1 << min(doublings, 63)) >= cfg.n_max:
        return cfg.n_max
    return 1 << doublings

def map_r(t, k: int, cfg: ScheduleConfig):
    """Deterministic near point r = t * (1 - 1/N(k)).

    Accepts a scalar or an array of t values; r = 0 exactly while N(k) = 1,
    and r/t -> 1 - 1/n_max as the ramp saturates.
    """
    n = discretization_count(k, cfg)
    r = t * (1.0 - 1.0 / n)
    return float(r) if np.isscalar(t) else r


def sample_time_pair(rng: np.random.Generator, k: int, cfg: ScheduleConfig) -> TimePair:
    """Draw t from the level distribution and map it to its near point."""
    t = sample_t(rng, cfg)
    return TimePair(t=t, r=map_r(t, k, cfg))
