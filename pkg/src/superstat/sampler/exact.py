"""I.i.d. draws from the enumerated admissible states."""

from __future__ import annotations

import logging

import numpy as np

from ..config import BRUTEFORCE_CAP
from ..errors import CapacityError
from ..models import SamplerConfig
from ..thermo import admissible_states
from .base import ChainDraw

logger = logging.getLogger(__name__)


class ExactCategoricalSampler:
    """Enumerates every theta with |theta| <= p once and draws from P(p, n; theta)."""

    def __init__(self, cap: int = BRUTEFORCE_CAP):
        self.cap = cap

    def draw(
        self,
        xs: np.ndarray,
        p: int,
        count: int,
        rng: np.random.Generator,
        config: SamplerConfig,
    ) -> ChainDraw:
        n = len(xs)
        if n > self.cap:
            raise CapacityError(
                f"Exact sampling enumerates all states; n={n} exceeds cap {self.cap}"
            )
        states = np.array(list(admissible_states(n, p)), dtype=np.int8)
        # weights in log space; zero fugacities give -inf and probability 0
        with np.errstate(divide="ignore"):
            log_x = np.log(xs)
        log_w = np.where(states == 1, log_x, 0.0).sum(axis=1)
        weights = np.exp(log_w - log_w.max())
        probabilities = weights / weights.sum()
        logger.debug("Sampling %d draws over %d states", count, len(states))
        picks = rng.choice(len(states), size=count, p=probabilities)
        return ChainDraw(states=states[picks])
