"""Occupation-number basis of the Fock module W(p, n)."""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass, field

from ..config import ENUMERATION_CAP
from ..errors import CapacityError, DimensionError
from ..models import FockSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class BasisState:
    """Occupation vector theta in {0, 1}^n labelling the vector |p; theta>."""

    theta: tuple[int, ...]
    weight: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        theta = tuple(int(b) for b in self.theta)
        if any(b not in (0, 1) for b in theta):
            raise ValueError(f"Occupations must be 0 or 1, got {self.theta}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "weight", sum(theta))

    @classmethod
    def vacuum(cls, n: int) -> BasisState:
        return cls((0,) * n)

    @classmethod
    def from_orbitals(cls, n: int, orbitals: tuple[int, ...]) -> BasisState:
        """State with the given 1-based orbitals occupied."""
        theta = [0] * n
        for i in orbitals:
            theta[i - 1] = 1
        return cls(tuple(theta))

    @property
    def n(self) -> int:
        return len(self.theta)

    def occupied(self, i: int) -> bool:
        """Whether 1-based orbital ``i`` is occupied."""
        return self.theta[i - 1] == 1

    def parity_before(self, i: int) -> int:
        """(-1)**(theta_1 + ... + theta_{i-1})."""
        return -1 if sum(self.theta[: i - 1]) % 2 else 1

    def parity_between(self, i: int, j: int) -> int:
        """(-1)**(theta_a + ... + theta_b) with a = min(i, j), b = max(i, j)."""
        a, b = min(i, j), max(i, j)
        return -1 if sum(self.theta[a - 1 : b]) % 2 else 1

    def toggled(self, i: int) -> BasisState:
        theta = list(self.theta)
        theta[i - 1] ^= 1
        return BasisState(tuple(theta))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.theta)


class FockBasis:
    """Ordered basis of W(p, n) with a reverse index."""

    def __init__(self, spec: FockSpec, states: list[BasisState]):
        self.spec = spec
        self.states = states
        self._index = {state: idx for idx, state in enumerate(states)}

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, idx: int) -> BasisState:
        return self.states[idx]

    def __contains__(self, state: object) -> bool:
        return state in self._index

    def index(self, state: BasisState) -> int:
        if state.n != self.spec.n:
            raise DimensionError(
                f"State {state} has {state.n} orbitals, basis has {self.spec.n}"
            )
        try:
            return self._index[state]
        except KeyError as e:
            raise DimensionError(
                f"State {state} has weight {state.weight} > p = {self.spec.p}"
            ) from e


@functools.lru_cache(maxsize=128)
def _basis(p: int, n: int) -> FockBasis:
    states = [
        BasisState.from_orbitals(n, tuple(i + 1 for i in combo))
        for k in range(min(p, n) + 1)
        for combo in itertools.combinations(range(n), k)
    ]
    logger.debug("Enumerated %d basis states of W(%d, %d)", len(states), p, n)
    return FockBasis(FockSpec(p=p, n=n), states)


def fock_basis(spec: FockSpec, *, cap: int = ENUMERATION_CAP) -> FockBasis:
    """Basis of W(p, n), cached per (p, n).

    Raises:
        CapacityError: if ``n`` exceeds the enumeration cap
    """
    if spec.n > cap:
        raise CapacityError(f"n = {spec.n} exceeds the enumeration cap {cap}")
    return _basis(spec.p, spec.n)


def enumerate_basis(spec: FockSpec, *, cap: int = ENUMERATION_CAP) -> list[BasisState]:
    """All theta in {0,1}^n with |theta| <= p, ordered by weight and then
    by orbital combination, so the vacuum comes first.

    For (p=2, n=3) this gives 000, 100, 010, 001, 110, 101, 011.
    """
    return list(fock_basis(spec, cap=cap).states)
