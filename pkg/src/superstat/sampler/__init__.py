"""Sampling layer: draws occupation vectors from the Gibbs distribution."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .. import thermo
from ..config import BRUTEFORCE_CAP
from ..errors import PreconditionError
from ..models import SampleEstimate, SamplerConfig, SamplingMethod
from .base import ChainDraw, Sampler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Draws:
    """Pooled occupation vectors of all chains, one row per kept sample."""

    states: np.ndarray
    acceptance_rate: float | None = None


def make_sampler(method: SamplingMethod, *, cap: int = BRUTEFORCE_CAP) -> Sampler:
    """Factory function to create a Sampler for the requested method.

    Args:
        method: Sampling backend
        cap: Largest n the exact backend will enumerate

    Returns:
        Sampler instance
    """
    if method is SamplingMethod.EXACT_CATEGORICAL:
        from .exact import ExactCategoricalSampler

        return ExactCategoricalSampler(cap=cap)
    if method is SamplingMethod.METROPOLIS:
        from .metropolis import MetropolisSampler

        return MetropolisSampler()
    raise PreconditionError(f"Unknown sampling method: {method}")


def chain_rngs(seed: int, chains: int) -> list[np.random.Generator]:
    """One counter-based generator per chain, from spawned sub-seeds."""
    children = np.random.SeedSequence(seed).spawn(chains)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def _shares(count: int, chains: int) -> list[int]:
    base, extra = divmod(count, chains)
    return [base + (1 if c < extra else 0) for c in range(chains)]


def draw_samples(config: SamplerConfig, *, cap: int = BRUTEFORCE_CAP) -> Draws:
    """Run every chain and pool the kept samples in chain order.

    The count is shared out across chains; each chain has its own
    generator, so results depend only on the seed and the chain count.
    """
    if config.chains > config.count:
        raise PreconditionError(
            f"Cannot split {config.count} draws over {config.chains} chains"
        )
    xs = np.array([float(x) for x in thermo.fugacities(config.params)])
    p = min(config.params.p, len(xs))
    sampler = make_sampler(config.method, cap=cap)

    parts: list[ChainDraw] = []
    for rng, share in zip(
        chain_rngs(config.seed, config.chains),
        _shares(config.count, config.chains),
        strict=True,
    ):
        parts.append(sampler.draw(xs, p, share, rng, config))

    states = np.concatenate([part.states for part in parts])
    proposed = sum(part.proposed for part in parts)
    acceptance = None
    if config.method is SamplingMethod.METROPOLIS and proposed:
        acceptance = sum(part.accepted for part in parts) / proposed
        logger.info("Metropolis acceptance rate %.4f", acceptance)
    return Draws(states=states, acceptance_rate=acceptance)


def jackknife(values: np.ndarray, blocks: int) -> tuple[np.ndarray, np.ndarray]:
    """Column means and blocked jackknife standard errors.

    Samples are split into contiguous blocks; each block is left out in
    turn. A single sample gets a zero error.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    total = values.shape[0]
    mean = values.mean(axis=0)
    nblocks = min(blocks, total)
    if nblocks < 2:
        return mean, np.zeros_like(mean)
    chunks = np.array_split(values, nblocks)
    sums = np.array([chunk.sum(axis=0) for chunk in chunks])
    sizes = np.array([len(chunk) for chunk in chunks], dtype=float)
    left_out = (values.sum(axis=0) - sums) / (total - sizes)[:, None]
    spread = left_out - left_out.mean(axis=0)
    se = np.sqrt((nblocks - 1) / nblocks * (spread**2).sum(axis=0))
    return mean, se


def estimate(draws: Draws, config: SamplerConfig) -> SampleEstimate:
    """Sample means and errors for theta_i, N and, given energies, E."""
    states = draws.states.astype(float)
    theta_hat, theta_se = jackknife(states, config.blocks)
    _, n_se = jackknife(states.sum(axis=1), config.blocks)
    e_hat = e_se = None
    if config.params.energies is not None:
        energies = np.array([float(e) for e in config.params.energies])
        e_mean, e_err = jackknife(states @ energies, config.blocks)
        e_hat, e_se = float(e_mean[0]), float(e_err[0])
    return SampleEstimate(
        method=config.method,
        samples=len(states),
        Nbar_hat=math.fsum(theta_hat),
        Nbar_se=float(n_se[0]),
        theta_bar_hat=[float(t) for t in theta_hat],
        theta_bar_se=[float(s) for s in theta_se],
        Ebar_hat=e_hat,
        Ebar_se=e_se,
        acceptance_rate=draws.acceptance_rate,
    )


def sample(config: SamplerConfig, *, cap: int = BRUTEFORCE_CAP) -> SampleEstimate:
    """Draw from P(p, n; theta) and estimate the averages."""
    return estimate(draw_samples(config, cap=cap), config)


__all__ = [
    "ChainDraw",
    "Draws",
    "Sampler",
    "chain_rngs",
    "draw_samples",
    "estimate",
    "jackknife",
    "make_sampler",
    "sample",
]
