"""Sampler protocol shared by the backends."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from ..models import SamplerConfig


@dataclass(frozen=True)
class ChainDraw:
    """Kept samples of one chain plus its proposal counts."""

    states: np.ndarray
    accepted: int = 0
    proposed: int = 0


@runtime_checkable
class Sampler(Protocol):
    """Protocol for Gibbs distribution samplers."""

    def draw(
        self,
        xs: np.ndarray,
        p: int,
        count: int,
        rng: np.random.Generator,
        config: SamplerConfig,
    ) -> ChainDraw:
        """Draw one chain.

        Args:
            xs: Fugacities as floats
            p: Effective order of statistics, at most n
            count: Draws or steps for this chain
            rng: Generator owned by this chain
            config: Run configuration (burn-in, thinning)

        Returns:
            Occupation vectors, one int8 row per kept sample
        """
        ...
