from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass(frozen=True)
class ApproxOutcome:
    """Value and witness produced by an approximation algorithm.

    ``guarantee`` is the ratio bound the algorithm declares (ALG/OPT for
    minimisation, OPT/ALG for maximisation); ``details`` carries diagnostics
    such as per-trial values.
    """

    value: Any
    witness: Any
    guarantee: Any
    details: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class RoundingParams:
    d: int = 2
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.d < 1 or self.trials < 1:
            raise ValueError("d and trials must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """PCG64 stream for one trial, seeded with ``seed + trial`` (mod 2**64)."""
    return np.random.Generator(np.random.PCG64((seed + trial) % 2**64))
