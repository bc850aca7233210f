"""Named, independent random streams derived from one master seed.

Every stochastic purpose (data shuffling, noise-level draws, Gaussian noise,
the poison gate, evaluation sampling) owns its own stream, keyed by name.
Streams are independent of each other and of which other streams exist, so a
trainer that never consults the poison gate consumes exactly the same draws
as one that does: runs differing only in gated behaviour stay coupled.
"""

from __future__ import annotations

import hashlib

import numpy as np
import torch


def stream_seed(master_seed: int, name: str) -> int:
    """Stable 63-bit seed for the stream `name` under `master_seed`."""
    digest = hashlib.sha256(f"{master_seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "little") & (2**63 - 1)


def numpy_stream(master_seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng(stream_seed(master_seed, name))


def torch_stream(master_seed: int, name: str) -> torch.Generator:
    gen = torch.Generator()
    gen.manual_seed(stream_seed(master_seed, name))
    return gen
