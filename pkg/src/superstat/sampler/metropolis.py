"""Metropolis chain on the occupation cube truncated at |theta| <= p."""

from __future__ import annotations

import logging

import numpy as np

from ..errors import PreconditionError
from ..models import SamplerConfig
from .base import ChainDraw

logger = logging.getLogger(__name__)


class MetropolisSampler:
    """Single-bit flips chosen uniformly over the n orbitals.

    Filling orbital j changes the weight by x_j and emptying it by 1 / x_j;
    a flip that would leave more than p particles is rejected outright.
    The chain starts from the vacuum.
    """

    def draw(
        self,
        xs: np.ndarray,
        p: int,
        count: int,
        rng: np.random.Generator,
        config: SamplerConfig,
    ) -> ChainDraw:
        if count <= config.burn_in:
            raise PreconditionError(
                f"count ({count} per chain) must exceed burn_in ({config.burn_in})"
            )
        n = len(xs)
        proposals = rng.integers(0, n, size=count)
        uniforms = rng.random(count)
        fill = xs.tolist()
        with np.errstate(divide="ignore"):
            empty = np.where(xs > 0, 1.0 / xs, np.inf).tolist()

        occupied = [False] * n
        particles = 0
        accepted = 0
        flips = np.zeros((count, n), dtype=np.int8)
        for step, (j, u) in enumerate(zip(proposals.tolist(), uniforms.tolist())):
            if occupied[j]:
                if u < empty[j]:
                    occupied[j] = False
                    particles -= 1
                    flips[step, j] = -1
                    accepted += 1
            elif particles < p and u < fill[j]:
                occupied[j] = True
                particles += 1
                flips[step, j] = 1
                accepted += 1

        states = np.cumsum(flips, axis=0, dtype=np.int8)
        kept = states[config.burn_in :: config.thinning]
        logger.debug(
            "Chain of %d steps kept %d samples, %d flips accepted",
            count,
            len(kept),
            accepted,
        )
        return ChainDraw(states=kept, accepted=accepted, proposed=count)
