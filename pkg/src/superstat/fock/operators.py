"""Sparse operator matrices on W(p, n) with exact Amplitude entries."""

from __future__ import annotations

import functools
import logging
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Any

import numpy as np
from scipy import sparse

from ..amplitude import Amplitude, Rational
from ..errors import DimensionError, InexactAdditionError, PreconditionError
from ..models import FockSpec
from .basis import BasisState, fock_basis

logger = logging.getLogger(__name__)


class KindName(str, Enum):
    """Generator families."""

    CREATE = "create"
    ANNIHILATE = "annihilate"
    NUMBER = "number"
    NUMBER0 = "number0"
    WEYL = "weyl"
    HAMILTONIAN = "hamiltonian"
    QUASI_CREATE = "quasi_create"
    QUASI_ANNIHILATE = "quasi_annihilate"
    FERMI_CREATE = "fermi_create"
    FERMI_ANNIHILATE = "fermi_annihilate"
    DERIVED = "derived"


@dataclass(frozen=True)
class OperatorKind:
    """Tag identifying which generator a matrix represents.

    Orbital indices are 1-based; Weyl indices run over 0..n with 0 the
    even (bosonic) index.
    """

    name: KindName
    i: int | None = None
    j: int | None = None
    energies: tuple[Fraction, ...] | None = None
    label: str | None = None

    @classmethod
    def create(cls, i: int) -> OperatorKind:
        return cls(KindName.CREATE, i)

    @classmethod
    def annihilate(cls, i: int) -> OperatorKind:
        return cls(KindName.ANNIHILATE, i)

    @classmethod
    def number(cls, i: int) -> OperatorKind:
        return cls(KindName.NUMBER, i)

    @classmethod
    def number0(cls) -> OperatorKind:
        return cls(KindName.NUMBER0)

    @classmethod
    def weyl(cls, i: int, j: int) -> OperatorKind:
        return cls(KindName.WEYL, i, j)

    @classmethod
    def hamiltonian(cls, energies: Iterable[Rational | float]) -> OperatorKind:
        return cls(KindName.HAMILTONIAN, energies=tuple(Fraction(e) for e in energies))

    @classmethod
    def quasi_create(cls, i: int) -> OperatorKind:
        return cls(KindName.QUASI_CREATE, i)

    @classmethod
    def quasi_annihilate(cls, i: int) -> OperatorKind:
        return cls(KindName.QUASI_ANNIHILATE, i)

    @classmethod
    def fermi_create(cls, i: int) -> OperatorKind:
        return cls(KindName.FERMI_CREATE, i)

    @classmethod
    def fermi_annihilate(cls, i: int) -> OperatorKind:
        return cls(KindName.FERMI_ANNIHILATE, i)

    @classmethod
    def derived(cls, label: str) -> OperatorKind:
        return cls(KindName.DERIVED, label=label)

    @property
    def degree(self) -> int:
        """Z2-degree of a Weyl generator: odd iff exactly one index is 0."""
        if self.name is KindName.WEYL:
            return int((self.i == 0) != (self.j == 0))
        if self.name in (
            KindName.CREATE,
            KindName.ANNIHILATE,
            KindName.QUASI_CREATE,
            KindName.QUASI_ANNIHILATE,
            KindName.FERMI_CREATE,
            KindName.FERMI_ANNIHILATE,
        ):
            return 1
        return 0

    def __str__(self) -> str:
        if self.name is KindName.WEYL:
            return f"e{self.i}{self.j}"
        if self.name is KindName.HAMILTONIAN:
            return "H"
        if self.name is KindName.DERIVED:
            return self.label or "derived"
        if self.i is None:
            return self.name.value
        return f"{self.name.value}({self.i})"


Entries = Mapping[tuple[int, int], Amplitude]


class OperatorMatrix:
    """Sparse matrix over Amplitude acting on the enumerated basis of W(p, n).

    Only nonzero entries are stored. Instances are immutable.
    """

    __slots__ = ("spec", "kind", "dim", "_entries")

    def __init__(self, spec: FockSpec, kind: OperatorKind, dim: int, entries: Entries):
        self.spec = spec
        self.kind = kind
        self.dim = dim
        self._entries = MappingProxyType(
            {key: value for key, value in entries.items() if not value.is_zero}
        )

    @property
    def entries(self) -> Mapping[tuple[int, int], Amplitude]:
        return self._entries

    def __getitem__(self, key: tuple[int, int]) -> Amplitude:
        return self._entries.get(key, Amplitude.zero())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.dim == other.dim and dict(self._entries) == dict(other._entries)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"OperatorMatrix(p={self.spec.p}, n={self.spec.n}, kind={self.kind}, "
            f"nnz={len(self._entries)})"
        )

    @property
    def is_zero(self) -> bool:
        return not self._entries

    @classmethod
    def zeros(cls, spec: FockSpec, dim: int, label: str = "0") -> OperatorMatrix:
        return cls(spec, OperatorKind.derived(label), dim, {})

    @classmethod
    def identity(cls, spec: FockSpec, dim: int) -> OperatorMatrix:
        one = Amplitude.one()
        entries = {(k, k): one for k in range(dim)}
        return cls(spec, OperatorKind.derived("1"), dim, entries)

    @classmethod
    def diagonal(
        cls, spec: FockSpec, values: Iterable[Rational], label: str
    ) -> OperatorMatrix:
        entries = {(k, k): Amplitude.from_rational(v) for k, v in enumerate(values)}
        return cls(spec, OperatorKind.derived(label), len(entries), entries)

    def _check_compatible(self, other: OperatorMatrix) -> None:
        if self.dim != other.dim or self.spec != other.spec:
            raise DimensionError(
                f"Cannot combine operators on W({self.spec.p},{self.spec.n}) "
                f"and W({other.spec.p},{other.spec.n})"
            )

    def _derived(self, entries: Entries, label: str) -> OperatorMatrix:
        return OperatorMatrix(self.spec, OperatorKind.derived(label), self.dim, entries)

    def __add__(self, other: object) -> OperatorMatrix:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check_compatible(other)
        entries = dict(self._entries)
        for key, value in other._entries.items():
            entries[key] = entries[key] + value if key in entries else value
        return self._derived(entries, f"({self.kind} + {other.kind})")

    def __neg__(self) -> OperatorMatrix:
        return self._derived(
            {key: -value for key, value in self._entries.items()}, f"-{self.kind}"
        )

    def __sub__(self, other: object) -> OperatorMatrix:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: object) -> OperatorMatrix:
        if isinstance(scalar, bool):
            return NotImplemented
        if not isinstance(scalar, int | Fraction | Amplitude):
            return NotImplemented
        return self._derived(
            {key: value * scalar for key, value in self._entries.items()},
            f"{scalar}*{self.kind}",
        )

    __rmul__ = __mul__

    def __matmul__(self, other: object) -> OperatorMatrix:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check_compatible(other)
        rows_of_other: dict[int, list[tuple[int, Amplitude]]] = defaultdict(list)
        for (k, c), value in other._entries.items():
            rows_of_other[k].append((c, value))
        entries: dict[tuple[int, int], Amplitude] = {}
        for (r, k), left in self._entries.items():
            for c, right in rows_of_other.get(k, ()):
                term = left * right
                key = (r, c)
                entries[key] = entries[key] + term if key in entries else term
        return self._derived(entries, f"{self.kind}{other.kind}")

    def transpose(self) -> OperatorMatrix:
        return self._derived(
            {(c, r): value for (r, c), value in self._entries.items()},
            f"{self.kind}^T",
        )

    def sqrt_diagonal(self) -> OperatorMatrix:
        """Entrywise square root of a diagonal matrix with nonnegative
        rational entries."""
        entries = {}
        for (r, c), value in self._entries.items():
            rational = value.rational_value()
            if r != c or rational is None or rational < 0:
                raise PreconditionError(
                    "sqrt_diagonal needs a diagonal matrix with nonnegative "
                    "rational entries"
                )
            entries[(r, c)] = Amplitude.sqrt(rational)
        return self._derived(entries, f"sqrt({self.kind})")

    def columns(self) -> dict[int, list[tuple[int, Amplitude]]]:
        """Nonzero entries grouped by column: col -> [(row, value)]."""
        cols: dict[int, list[tuple[int, Amplitude]]] = defaultdict(list)
        for (r, c), value in sorted(self._entries.items()):
            cols[c].append((r, value))
        return dict(cols)

    def to_sparse(self) -> sparse.csr_matrix:
        """Float view as a scipy CSR matrix."""
        if not self._entries:
            return sparse.csr_matrix((self.dim, self.dim), dtype=np.float64)
        keys = list(self._entries)
        rows = np.fromiter((r for r, _ in keys), dtype=np.int64, count=len(keys))
        cols = np.fromiter((c for _, c in keys), dtype=np.int64, count=len(keys))
        data = np.fromiter(
            (float(self._entries[k]) for k in keys), dtype=np.float64, count=len(keys)
        )
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.dim, self.dim))

    def to_json_dict(self) -> dict[str, Any]:
        """Triplet form {dim, kind, entries: [[row, col, sign, num, den]]}."""
        return {
            "dim": self.dim,
            "kind": str(self.kind),
            "entries": [
                [r, c, v.sign, v.radicand.numerator, v.radicand.denominator]
                for (r, c), v in sorted(self._entries.items())
            ],
        }


def anticommutator(a: Any, b: Any) -> Any:
    """{a, b} for OperatorMatrix or scipy sparse operands."""
    return a @ b + b @ a


def commutator(a: Any, b: Any) -> Any:
    return a @ b - b @ a


def _check_orbital(spec: FockSpec, i: int | None) -> int:
    if i is None or not 1 <= i <= spec.n:
        raise PreconditionError(f"Orbital index must lie in 1..{spec.n}, got {i}")
    return i


def _ladder(spec: FockSpec, i: int, *, raising: bool, scale: int | None) -> Entries:
    """Entries of f_i^+ / f_i^- (scale None), their quasi-Fermi rescaling
    (scale p) or Fermi operators (scale 0 selects unit radicands)."""
    basis = fock_basis(spec)
    p = spec.p
    entries: dict[tuple[int, int], Amplitude] = {}
    for col, state in enumerate(basis):
        if state.occupied(i) == raising:
            continue
        if raising:
            radicand = Fraction(p - state.weight)
        else:
            radicand = Fraction(p - state.weight + 1)
        if radicand == 0:
            continue
        if scale == 0:
            radicand = Fraction(1)
        elif scale is not None:
            radicand /= scale
        row = basis.index(state.toggled(i))
        entries[(row, col)] = Amplitude.sqrt(radicand, state.parity_before(i))
    return entries


def build_operator(spec: FockSpec, kind: OperatorKind) -> OperatorMatrix:
    """Matrix of the generator ``kind`` in the basis of W(p, n), cached per
    (p, n, kind).

    Raises:
        PreconditionError: on invalid indices or a Fermi kind with p < n
    """
    return _operator(spec.p, spec.n, kind)


@functools.lru_cache(maxsize=4096)
def _operator(p: int, n: int, kind: OperatorKind) -> OperatorMatrix:
    spec = FockSpec(p=p, n=n)
    basis = fock_basis(spec)
    dim = len(basis)
    name = kind.name

    if name in (KindName.FERMI_CREATE, KindName.FERMI_ANNIHILATE) and spec.p < spec.n:
        raise PreconditionError(
            f"Fermi operators live on W(n); need p >= n, got p={spec.p}, n={spec.n}"
        )

    entries: Entries
    if name is KindName.CREATE:
        entries = _ladder(spec, _check_orbital(spec, kind.i), raising=True, scale=None)
    elif name is KindName.ANNIHILATE:
        entries = _ladder(spec, _check_orbital(spec, kind.i), raising=False, scale=None)
    elif name is KindName.QUASI_CREATE:
        entries = _ladder(
            spec, _check_orbital(spec, kind.i), raising=True, scale=spec.p
        )
    elif name is KindName.QUASI_ANNIHILATE:
        entries = _ladder(
            spec, _check_orbital(spec, kind.i), raising=False, scale=spec.p
        )
    elif name is KindName.FERMI_CREATE:
        entries = _ladder(spec, _check_orbital(spec, kind.i), raising=True, scale=0)
    elif name is KindName.FERMI_ANNIHILATE:
        entries = _ladder(spec, _check_orbital(spec, kind.i), raising=False, scale=0)
    elif name is KindName.NUMBER:
        i = _check_orbital(spec, kind.i)
        entries = {
            (k, k): Amplitude.one()
            for k, state in enumerate(basis)
            if state.occupied(i)
        }
    elif name is KindName.NUMBER0:
        entries = {
            (k, k): Amplitude.from_rational(spec.p - state.weight)
            for k, state in enumerate(basis)
        }
    elif name is KindName.HAMILTONIAN:
        energies = kind.energies or ()
        if len(energies) != spec.n:
            raise PreconditionError(
                f"Hamiltonian needs {spec.n} orbital energies, got {len(energies)}"
            )
        entries = {
            (k, k): Amplitude.from_rational(state_energy(energies, state))
            for k, state in enumerate(basis)
        }
    elif name is KindName.WEYL:
        return _weyl(spec, kind)
    else:
        raise PreconditionError(f"Cannot build an operator of kind {kind}")

    return OperatorMatrix(spec, kind, dim, entries)


def state_energy(energies: Sequence[Fraction], state: BasisState) -> Fraction:
    """Eigenvalue sum_i eps_i theta_i of H on |p; theta>."""
    return sum(
        (e for e, b in zip(energies, state.theta, strict=True) if b), Fraction(0)
    )


def _weyl(spec: FockSpec, kind: OperatorKind) -> OperatorMatrix:
    i, j = kind.i, kind.j
    if i is None or j is None or not (0 <= i <= spec.n and 0 <= j <= spec.n):
        raise PreconditionError(f"Weyl indices must lie in 0..{spec.n}, got {i}, {j}")
    if i == 0 and j == 0:
        source = build_operator(spec, OperatorKind.number0())
    elif j == 0:
        source = build_operator(spec, OperatorKind.create(i))
    elif i == 0:
        source = build_operator(spec, OperatorKind.annihilate(j))
    else:
        # e_ij = {f_i^+, f_j^-} - delta_ij N_0
        source = anticommutator(
            build_operator(spec, OperatorKind.create(i)),
            build_operator(spec, OperatorKind.annihilate(j)),
        )
        if i == j:
            source = source - build_operator(spec, OperatorKind.number0())
    return OperatorMatrix(spec, kind, source.dim, source.entries)


def weyl_from_fermions(spec: FockSpec, i: int, j: int) -> OperatorMatrix:
    """e_ij = F_i^+ F_j^- for i, j >= 1, through the Fermi operators of the
    typical module."""
    _check_orbital(spec, i)
    _check_orbital(spec, j)
    product = build_operator(spec, OperatorKind.fermi_create(i)) @ build_operator(
        spec, OperatorKind.fermi_annihilate(j)
    )
    return OperatorMatrix(spec, OperatorKind.weyl(i, j), product.dim, product.entries)


Vector = Mapping[BasisState, Amplitude | float]


def apply(op: OperatorMatrix, vec: Vector) -> dict[BasisState, Amplitude | float]:
    """Matrix-vector product on basis-state coordinates.

    The result stays in Amplitude arithmetic while every accumulated sum
    collapses; otherwise it is returned in floats.

    Raises:
        DimensionError: if a state of ``vec`` is not in the basis of ``op``
    """
    basis = fock_basis(op.spec)
    columns = op.columns()
    coords = [(basis.index(state), value) for state, value in vec.items()]

    if all(isinstance(value, Amplitude) for _, value in coords):
        exact: dict[int, Amplitude] = {}
        try:
            for col, value in coords:
                for row, entry in columns.get(col, ()):
                    term = entry * value  # type: ignore[operator]
                    exact[row] = exact[row] + term if row in exact else term
        except InexactAdditionError:
            logger.debug("apply: inexact accumulation, switching to floats")
        else:
            return {
                basis[row]: value
                for row, value in sorted(exact.items())
                if not value.is_zero
            }

    result: dict[int, float] = defaultdict(float)
    for col, value in coords:
        for row, entry in columns.get(col, ()):
            result[row] += float(entry) * float(value)
    return {basis[row]: value for row, value in sorted(result.items()) if value != 0.0}
