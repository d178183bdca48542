"""Machine verification of the operator identities of W(p, n).

Each identity is written once against a small algebra interface and
evaluated in exact Amplitude arithmetic. When an intermediate sum would
add incommensurable surds the same identity is re-evaluated on scipy
sparse float matrices and the report records ``exact=False``.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from fractions import Fraction
from typing import Any

import numpy as np
from scipy import sparse

from ..amplitude import Amplitude, Rational
from ..config import ENUMERATION_CAP, FLOAT_TOLERANCE
from ..errors import InexactAdditionError, PreconditionError
from ..models import Counterexample, FockSpec, VerificationReport, VerificationSuite
from .basis import BasisState, fock_basis
from .operators import (
    OperatorKind,
    OperatorMatrix,
    anticommutator,
    apply,
    build_operator,
    commutator,
    state_energy,
    weyl_from_fermions,
)

logger = logging.getLogger(__name__)

SUITES = ("all", "triple", "weyl", "quasi", "hp", "iop")


class _ExactAlgebra:
    """Operator matrices over Amplitude."""

    def __init__(self, spec: FockSpec, cap: int):
        self.spec = spec
        self.dim = len(fock_basis(spec, cap=cap))
        self._ops: dict[OperatorKind, OperatorMatrix] = {}
        self._memo: dict[Hashable, Any] = {}

    def op(self, kind: OperatorKind) -> Any:
        if kind not in self._ops:
            self._ops[kind] = build_operator(self.spec, kind)
        return self._ops[kind]

    def memo(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Intermediate results shared between the checks of one report."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def product(self, left: OperatorKind, right: OperatorKind) -> Any:
        return self.memo(("@", left, right), lambda: self.op(left) @ self.op(right))

    def lift(self, matrix: OperatorMatrix) -> Any:
        return matrix

    def identity(self) -> Any:
        return OperatorMatrix.identity(self.spec, self.dim)

    def zero(self) -> Any:
        return OperatorMatrix.zeros(self.spec, self.dim)

    def scale(self, matrix: Any, factor: Rational) -> Any:
        if factor == 0:
            return self.zero()
        if factor == 1:
            return matrix
        return matrix * Fraction(factor)

    def sqrt_diag(self, matrix: Any) -> Any:
        return matrix.sqrt_diagonal()


class _FloatAlgebra(_ExactAlgebra):
    """The same operators as scipy CSR float matrices."""

    def __init__(self, exact: _ExactAlgebra):
        self.spec = exact.spec
        self.dim = exact.dim
        self._exact = exact
        self._sparse: dict[OperatorKind, sparse.csr_matrix] = {}
        self._memo = {}

    def op(self, kind: OperatorKind) -> Any:
        if kind not in self._sparse:
            self._sparse[kind] = self._exact.op(kind).to_sparse()
        return self._sparse[kind]

    def lift(self, matrix: OperatorMatrix) -> Any:
        return matrix.to_sparse()

    def identity(self) -> Any:
        return sparse.identity(self.dim, dtype=np.float64, format="csr")

    def zero(self) -> Any:
        return sparse.csr_matrix((self.dim, self.dim), dtype=np.float64)

    def scale(self, matrix: Any, factor: Rational) -> Any:
        return matrix * float(factor)

    def sqrt_diag(self, matrix: Any) -> Any:
        return sparse.diags(np.sqrt(np.clip(matrix.diagonal(), 0.0, None))).tocsr()


Identity = Callable[[_ExactAlgebra], tuple[Any, Any]]


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


class _Verifier:
    """Accumulates identity checks into one VerificationReport."""

    def __init__(
        self,
        name: str,
        spec: FockSpec,
        *,
        tolerance: float = FLOAT_TOLERANCE,
        cap: int = ENUMERATION_CAP,
    ):
        self.name = name
        self.spec = spec
        self.tolerance = tolerance
        self.algebra = _ExactAlgebra(spec, cap)
        self._float: _FloatAlgebra | None = None
        self.checks = 0
        self.exact = True
        self.max_residual = 0.0
        self.counterexample: Counterexample | None = None

    @property
    def failed(self) -> bool:
        return self.counterexample is not None

    def check(self, label: str, identity: Identity) -> None:
        """Check ``lhs == rhs`` for the matrices returned by ``identity``."""
        if self.failed:
            return
        self.checks += 1
        try:
            lhs, rhs = identity(self.algebra)
        except InexactAdditionError:
            self._check_float(label, identity)
            return
        if lhs != rhs:
            self.counterexample = _first_difference(label, lhs, rhs)

    def _check_float(self, label: str, identity: Identity) -> None:
        if self._float is None:
            self._float = _FloatAlgebra(self.algebra)
        logger.warning(
            "%s: %s adds incommensurable surds, falling back to floats",
            self.name,
            label,
        )
        self.exact = False
        lhs, rhs = identity(self._float)
        diff = sparse.csr_matrix(lhs - rhs).tocoo()
        if diff.nnz == 0:
            return
        where = int(np.argmax(np.abs(diff.data)))
        residual = float(abs(diff.data[where]))
        self.max_residual = max(self.max_residual, residual)
        if residual > self.tolerance:
            row, col = int(diff.row[where]), int(diff.col[where])
            self.counterexample = Counterexample(
                identity=label,
                row=row,
                col=col,
                expected=repr(float(sparse.csr_matrix(rhs)[row, col])),
                got=repr(float(sparse.csr_matrix(lhs)[row, col])),
            )

    def check_integral(
        self,
        label: str,
        build: Callable[[_ExactAlgebra], OperatorMatrix],
        scale: int = 1,
    ) -> None:
        """Check that ``scale`` times every entry of an exact matrix is an
        integer."""
        if self.failed:
            return
        self.checks += 1
        expected = "integer" if scale == 1 else f"integer / {scale}"
        try:
            matrix = build(self.algebra)
        except InexactAdditionError:
            self.counterexample = Counterexample(
                identity=label, row=-1, col=-1, expected=expected, got="surd sum"
            )
            return
        for (row, col), value in sorted(matrix.entries.items()):
            rational = value.rational_value()
            if rational is None or (rational * scale).denominator != 1:
                self.counterexample = Counterexample(
                    identity=label, row=row, col=col, expected=expected, got=str(value)
                )
                return

    def check_vector(
        self,
        label: str,
        got: dict[BasisState, Amplitude | float],
        expected: dict[BasisState, Amplitude],
    ) -> None:
        if self.failed:
            return
        self.checks += 1
        if got == expected:
            return
        basis = fock_basis(self.spec)
        for state in sorted(set(got) | set(expected), key=basis.index):
            left = got.get(state, Amplitude.zero())
            right = expected.get(state, Amplitude.zero())
            if left != right:
                self.counterexample = Counterexample(
                    identity=label,
                    row=basis.index(state),
                    col=0,
                    expected=str(right),
                    got=str(left),
                )
                return

    def report(self) -> VerificationReport:
        return VerificationReport(
            identity=self.name,
            p=self.spec.p,
            n=self.spec.n,
            passed=not self.failed,
            exact=self.exact,
            max_residual=0.0 if self.exact else self.max_residual,
            checks=self.checks,
            counterexample=self.counterexample,
        )


def _first_difference(
    label: str, lhs: OperatorMatrix, rhs: OperatorMatrix
) -> Counterexample:
    for key in sorted(set(lhs.entries) | set(rhs.entries)):
        if lhs[key] != rhs[key]:
            return Counterexample(
                identity=label,
                row=key[0],
                col=key[1],
                expected=str(rhs[key]),
                got=str(lhs[key]),
            )
    return Counterexample(identity=label, row=-1, col=-1, expected="", got="")


def _orbitals(spec: FockSpec) -> range:
    return range(1, spec.n + 1)


def _vacuum_projector(spec: FockSpec) -> OperatorMatrix:
    dim = len(fock_basis(spec))
    return OperatorMatrix.diagonal(spec, [1] + [0] * (dim - 1), "|0><0|")


def _create(i: int) -> OperatorKind:
    return OperatorKind.create(i)


def _annihilate(i: int) -> OperatorKind:
    return OperatorKind.annihilate(i)


def verify_vacuum(spec: FockSpec, **kwargs: Any) -> VerificationReport:
    """f_i^- |0> = 0 and f_i^- f_j^+ |0> = p delta_ij |0>."""
    verifier = _Verifier("vacuum", spec, **kwargs)
    vacuum = _vacuum_projector(spec)

    for i in _orbitals(spec):
        verifier.check(
            f"f{i}- |0> = 0",
            lambda a, i=i: (a.op(_annihilate(i)) @ a.lift(vacuum), a.zero()),
        )
        for j in _orbitals(spec):
            verifier.check(
                f"f{i}- f{j}+ |0> = p d{i}{j} |0>",
                lambda a, i=i, j=j: (
                    a.op(_annihilate(i)) @ a.op(_create(j)) @ a.lift(vacuum),
                    a.scale(a.lift(vacuum), spec.p * _delta(i, j)),
                ),
            )
    return verifier.report()


def verify_triple_relations(spec: FockSpec, **kwargs: Any) -> VerificationReport:
    """The defining relations of the Jacobson generators:

    {f_i^+, f_j^+} = {f_i^-, f_j^-} = 0,
    [{f_i^+, f_j^-}, f_k^+] = d_jk f_i^+ - d_ij f_k^+,
    [{f_i^+, f_j^-}, f_k^-] = -d_ik f_j^- + d_ij f_k^-,

    and the entries of every {f_i^+, f_j^-} are integers.
    """
    verifier = _Verifier("triple_relations", spec, **kwargs)
    orbitals = _orbitals(spec)

    def pair(a: _ExactAlgebra, i: int, j: int) -> Any:
        return a.memo(
            ("pair", i, j),
            lambda: a.product(_create(i), _annihilate(j))
            + a.product(_annihilate(j), _create(i)),
        )

    for i, j in itertools.product(orbitals, repeat=2):
        verifier.check_integral(
            f"{{f{i}+, f{j}-}} integral", lambda a, i=i, j=j: pair(a, i, j)
        )
        verifier.check(
            f"{{f{i}+, f{j}+}} = 0",
            lambda a, i=i, j=j: (
                anticommutator(a.op(_create(i)), a.op(_create(j))),
                a.zero(),
            ),
        )
        verifier.check(
            f"{{f{i}-, f{j}-}} = 0",
            lambda a, i=i, j=j: (
                anticommutator(a.op(_annihilate(i)), a.op(_annihilate(j))),
                a.zero(),
            ),
        )

    for i, j, k in itertools.product(orbitals, repeat=3):

        def raising(a: _ExactAlgebra, i: int = i, j: int = j, k: int = k):
            lhs = commutator(pair(a, i, j), a.op(_create(k)))
            rhs = a.scale(a.op(_create(i)), _delta(j, k)) - a.scale(
                a.op(_create(k)), _delta(i, j)
            )
            return lhs, rhs

        def lowering(a: _ExactAlgebra, i: int = i, j: int = j, k: int = k):
            lhs = commutator(pair(a, i, j), a.op(_annihilate(k)))
            rhs = a.scale(a.op(_annihilate(k)), _delta(i, j)) - a.scale(
                a.op(_annihilate(j)), _delta(i, k)
            )
            return lhs, rhs

        verifier.check(f"[{{f{i}+, f{j}-}}, f{k}+]", raising)
        verifier.check(f"[{{f{i}+, f{j}-}}, f{k}-]", lowering)

    return verifier.report()


def verify_weyl_superbracket(spec: FockSpec, **kwargs: Any) -> VerificationReport:
    """[e_ij, e_kl} = d_jk e_il - (-1)^(deg e_ij * deg e_kl) d_il e_kj."""
    verifier = _Verifier("weyl_superbracket", spec, **kwargs)
    indices = range(spec.n + 1)

    for i, j, k, m in itertools.product(indices, repeat=4):
        left, right = OperatorKind.weyl(i, j), OperatorKind.weyl(k, m)
        sign = -1 if left.degree * right.degree else 1

        def bracket(
            a: _ExactAlgebra,
            i: int = i,
            j: int = j,
            k: int = k,
            m: int = m,
            sign: int = sign,
            left: OperatorKind = left,
            right: OperatorKind = right,
        ) -> tuple[Any, Any]:
            forward, backward = a.product(left, right), a.product(right, left)
            lhs = forward - backward if sign > 0 else forward + backward
            rhs = a.scale(a.op(OperatorKind.weyl(i, m)), _delta(j, k)) - a.scale(
                a.op(OperatorKind.weyl(k, j)), sign * _delta(i, m)
            )
            return lhs, rhs

        verifier.check(f"[e{i}{j}, e{k}{m}}}", bracket)

    return verifier.report()


def _default_energies(spec: FockSpec) -> tuple[Fraction, ...]:
    return tuple(Fraction(i) for i in _orbitals(spec))


def _energies(
    spec: FockSpec, energies: Sequence[Rational | float] | None
) -> tuple[Fraction, ...]:
    values = _default_energies(spec) if energies is None else tuple(energies)
    if len(values) != spec.n:
        raise PreconditionError(
            f"Expected {spec.n} orbital energies, got {len(values)}"
        )
    return tuple(Fraction(e) for e in values)


def verify_hermiticity_and_ladder(
    spec: FockSpec,
    energies: Sequence[Rational | float] | None = None,
    **kwargs: Any,
) -> VerificationReport:
    """(f_i^+)^T = f_i^- and [H, f_i^+-] = +-eps_i f_i^+-."""
    eps = _energies(spec, energies)
    verifier = _Verifier("hermiticity_ladder", spec, **kwargs)
    hamiltonian = OperatorKind.hamiltonian(eps)

    for i in _orbitals(spec):
        verifier.check(
            f"(f{i}+)^T = f{i}-",
            lambda a, i=i: (a.op(_create(i)).transpose(), a.op(_annihilate(i))),
        )
        verifier.check(
            f"[H, f{i}+] = eps{i} f{i}+",
            lambda a, i=i: (
                commutator(a.op(hamiltonian), a.op(_create(i))),
                a.scale(a.op(_create(i)), eps[i - 1]),
            ),
        )
        verifier.check(
            f"[H, f{i}-] = -eps{i} f{i}-",
            lambda a, i=i: (
                commutator(a.op(hamiltonian), a.op(_annihilate(i))),
                a.scale(a.op(_annihilate(i)), -eps[i - 1]),
            ),
        )
    return verifier.report()


def _require_typical(spec: FockSpec, what: str) -> None:
    if spec.p < spec.n:
        raise PreconditionError(
            f"{what} is stated on W(n) and needs p >= n, got p={spec.p}, n={spec.n}"
        )


def _expected_matrix(
    spec: FockSpec,
    label: str,
    action: Callable[[BasisState], Iterable[tuple[BasisState, Fraction]]],
) -> OperatorMatrix:
    """Matrix whose column theta is the rational combination ``action(theta)``."""
    basis = fock_basis(spec)
    entries: dict[tuple[int, int], Amplitude] = {}
    for col, state in enumerate(basis):
        for target, value in action(state):
            entries[(basis.index(target), col)] = Amplitude.from_rational(value)
    return OperatorMatrix(spec, OperatorKind.derived(label), len(basis), entries)


def verify_quasi_fermi_anticommutators(
    spec: FockSpec, **kwargs: Any
) -> VerificationReport:
    """Anticommutators of the quasi-Fermi operators F(p)_i = f_i / sqrt(p).

    {F_i^+, F_j^+} = {F_i^-, F_j^-} = 0;
    {F_i^-, F_i^+} theta = (1 + (theta_i - |theta|) / p) theta;
    {F_i^-, F_j^+} theta = -(1/p) (-1)^(theta_i + ... + theta_j)
        theta_i (1 - theta_j) (theta - e_i + e_j) for i != j,
    and {F_i^+, F_j^-} for i != j is the same hop with the roles swapped.

    Raises:
        PreconditionError: if p < n
    """
    _require_typical(spec, "The quasi-Fermi block")
    verifier = _Verifier("quasi_fermi_anticommutators", spec, **kwargs)
    p = spec.p

    def qc(i: int) -> OperatorKind:
        return OperatorKind.quasi_create(i)

    def qa(i: int) -> OperatorKind:
        return OperatorKind.quasi_annihilate(i)

    def bracket(a: _ExactAlgebra, i: int, j: int) -> Any:
        return a.memo(
            ("quasi", i, j), lambda: anticommutator(a.op(qa(i)), a.op(qc(j)))
        )

    def diagonal(i: int) -> OperatorMatrix:
        return _expected_matrix(
            spec,
            f"1 + (N{i} - N)/p",
            lambda s: [(s, 1 + Fraction(s.theta[i - 1] - s.weight, p))],
        )

    def hop(annihilated: int, created: int) -> OperatorMatrix:
        def action(s: BasisState) -> list[tuple[BasisState, Fraction]]:
            if not s.occupied(annihilated) or s.occupied(created):
                return []
            target = s.toggled(annihilated).toggled(created)
            return [(target, -Fraction(s.parity_between(annihilated, created), p))]

        return _expected_matrix(spec, f"hop {annihilated}->{created}", action)

    for i, j in itertools.product(_orbitals(spec), repeat=2):
        verifier.check(
            f"{{F{i}+, F{j}+}} = 0",
            lambda a, i=i, j=j: (anticommutator(a.op(qc(i)), a.op(qc(j))), a.zero()),
        )
        verifier.check(
            f"{{F{i}-, F{j}-}} = 0",
            lambda a, i=i, j=j: (anticommutator(a.op(qa(i)), a.op(qa(j))), a.zero()),
        )
        verifier.check_integral(
            f"p {{F{i}-, F{j}+}} integral",
            lambda a, i=i, j=j: bracket(a, i, j),
            scale=p,
        )
        if i == j:
            verifier.check(
                f"{{F{i}-, F{i}+}}",
                lambda a, i=i: (
                    bracket(a, i, i),
                    a.lift(diagonal(i)),
                ),
            )
        else:
            verifier.check(
                f"{{F{i}-, F{j}+}}",
                lambda a, i=i, j=j: (
                    bracket(a, i, j),
                    a.lift(hop(i, j)),
                ),
            )
            verifier.check(
                f"{{F{i}+, F{j}-}}",
                lambda a, i=i, j=j: (
                    anticommutator(a.op(qc(i)), a.op(qa(j))),
                    a.lift(hop(j, i)),
                ),
            )
    return verifier.report()


def quasi_fermi_deviation(
    n: int, p_list: Sequence[int], *, cap: int = ENUMERATION_CAP
) -> list[tuple[int, float]]:
    """Largest entrywise distance between F(p)_i^+- and the Fermi F_i^+-.

    Entries share their sign and the Fermi radicand is 1, so the distance
    of an entry with quasi radicand r is |r - 1| / (sqrt(r) + 1).

    Raises:
        PreconditionError: for an empty ``p_list`` or any p < n
    """
    if not p_list:
        raise PreconditionError("p_list must not be empty")
    result = []
    for p in p_list:
        spec = FockSpec(p=p, n=n)
        _require_typical(spec, "The quasi-Fermi limit")
        fock_basis(spec, cap=cap)
        worst = 0.0
        for i in range(1, n + 1):
            for quasi, fermi in (
                (OperatorKind.quasi_create(i), OperatorKind.fermi_create(i)),
                (OperatorKind.quasi_annihilate(i), OperatorKind.fermi_annihilate(i)),
            ):
                q_op = build_operator(spec, quasi)
                f_op = build_operator(spec, fermi)
                for key in set(q_op.entries) | set(f_op.entries):
                    worst = max(worst, _entry_distance(q_op[key], f_op[key]))
        logger.debug("quasi-Fermi deviation n=%d p=%d: %.3e", n, p, worst)
        result.append((p, worst))
    return result


def _entry_distance(quasi: Amplitude, fermi: Amplitude) -> float:
    if quasi.sign == fermi.sign and fermi.radicand == 1:
        r = quasi.radicand
        return float(abs(r - 1)) / (math.sqrt(r) + 1.0)
    return abs(float(quasi) - float(fermi))


def verify_holstein_primakoff(spec: FockSpec, **kwargs: Any) -> VerificationReport:
    """Fermionic realization of the generators on the typical module:

    f_i^+ = F_i^+ sqrt(p - sum_k F_k^+ F_k^-) = sqrt(p + 1 - sum_k F_k^+ F_k^-) F_i^+,
    f_i^- = sqrt(p - sum_k F_k^+ F_k^-) F_i^-,
    e_00 = p - sum_k F_k^+ F_k^-, e_ij = F_i^+ F_j^-.

    Raises:
        PreconditionError: if p < n
    """
    _require_typical(spec, "The Holstein-Primakoff realization")
    verifier = _Verifier("holstein_primakoff", spec, **kwargs)
    p = spec.p

    def fc(i: int) -> OperatorKind:
        return OperatorKind.fermi_create(i)

    def fa(i: int) -> OperatorKind:
        return OperatorKind.fermi_annihilate(i)

    def fermion_number(a: _ExactAlgebra) -> Any:
        total = a.zero()
        for k in _orbitals(spec):
            total = total + a.op(fc(k)) @ a.op(fa(k))
        return total

    def dressing(a: _ExactAlgebra, shift: int) -> Any:
        return a.sqrt_diag(a.scale(a.identity(), p + shift) - fermion_number(a))

    verifier.check(
        "e00 = p - sum F+F-",
        lambda a: (
            a.op(OperatorKind.weyl(0, 0)),
            a.scale(a.identity(), p) - fermion_number(a),
        ),
    )
    for i in _orbitals(spec):
        verifier.check(
            f"f{i}+ = F{i}+ sqrt(p - sum F+F-)",
            lambda a, i=i: (a.op(_create(i)), a.op(fc(i)) @ dressing(a, 0)),
        )
        verifier.check(
            f"f{i}+ = sqrt(p + 1 - sum F+F-) F{i}+",
            lambda a, i=i: (a.op(_create(i)), dressing(a, 1) @ a.op(fc(i))),
        )
        verifier.check(
            f"f{i}- = sqrt(p - sum F+F-) F{i}-",
            lambda a, i=i: (a.op(_annihilate(i)), dressing(a, 0) @ a.op(fa(i))),
        )
    for i, j in itertools.product(_orbitals(spec), repeat=2):
        verifier.check(
            f"e{i}{j} = F{i}+ F{j}-",
            lambda a, i=i, j=j: (
                a.op(OperatorKind.weyl(i, j)),
                a.lift(weyl_from_fermions(spec, i, j)),
            ),
        )
    return verifier.report()


def verify_iop(n: int, **kwargs: Any) -> VerificationReport:
    """Ideal odd-particle relations of W(1, n):

    f_j^- f_i^- = f_i^+ f_j^+ = 0, f_i^- f_j^+ = d_ij N_0,
    N_0 f_i^+ = f_i^- N_0 = 0, N_0^2 = N_0.
    """
    spec = FockSpec(p=1, n=n)
    verifier = _Verifier("iop", spec, **kwargs)
    number0 = OperatorKind.number0()

    for i, j in itertools.product(_orbitals(spec), repeat=2):
        verifier.check(
            f"f{j}- f{i}- = 0",
            lambda a, i=i, j=j: (a.op(_annihilate(j)) @ a.op(_annihilate(i)), a.zero()),
        )
        verifier.check(
            f"f{i}+ f{j}+ = 0",
            lambda a, i=i, j=j: (a.op(_create(i)) @ a.op(_create(j)), a.zero()),
        )
        verifier.check(
            f"f{i}- f{j}+ = d{i}{j} N0",
            lambda a, i=i, j=j: (
                a.op(_annihilate(i)) @ a.op(_create(j)),
                a.scale(a.op(number0), _delta(i, j)),
            ),
        )
    for i in _orbitals(spec):
        verifier.check(
            f"N0 f{i}+ = 0",
            lambda a, i=i: (a.op(number0) @ a.op(_create(i)), a.zero()),
        )
        verifier.check(
            f"f{i}- N0 = 0",
            lambda a, i=i: (a.op(_annihilate(i)) @ a.op(number0), a.zero()),
        )
    verifier.check(
        "N0^2 = N0", lambda a: (a.op(number0) @ a.op(number0), a.op(number0))
    )
    return verifier.report()


def _creation_string(spec: FockSpec, orbitals: Sequence[int]) -> dict:
    """f_{i_1}^+ ... f_{i_k}^+ |0> for ascending i_1 < ... < i_k."""
    vector: dict[BasisState, Amplitude | float] = {
        BasisState.vacuum(spec.n): Amplitude.one()
    }
    for i in sorted(orbitals, reverse=True):
        vector = apply(build_operator(spec, OperatorKind.create(i)), vector)
    return vector


def verify_pauli_principle(spec: FockSpec, **kwargs: Any) -> VerificationReport:
    """At most p particles: (f_i^+)^2 = 0, any p + 1 distinct creators
    annihilate the vacuum when p < n, and every basis vector is the
    normalized creation string sqrt((p - |theta|)! / p!) f^+ ... f^+ |0>.
    """
    verifier = _Verifier("pauli_principle", spec, **kwargs)
    for i in _orbitals(spec):
        verifier.check(
            f"(f{i}+)^2 = 0",
            lambda a, i=i: (a.op(_create(i)) @ a.op(_create(i)), a.zero()),
        )
    if spec.p < spec.n:
        for combo in itertools.combinations(_orbitals(spec), spec.p + 1):
            verifier.check_vector(
                f"f+{combo} |0> = 0", _creation_string(spec, combo), {}
            )
    for state in fock_basis(spec):
        orbitals = tuple(i for i in _orbitals(spec) if state.occupied(i))
        norm = Fraction(math.factorial(spec.p), math.factorial(spec.p - state.weight))
        verifier.check_vector(
            f"f+{orbitals} |0> = |{state}>",
            _creation_string(spec, orbitals),
            {state: Amplitude.sqrt(norm)},
        )
    return verifier.report()


def verify_number_operators(
    spec: FockSpec,
    energies: Sequence[Rational | float] | None = None,
    **kwargs: Any,
) -> VerificationReport:
    """N_i theta = theta_i theta, N_0 + sum N_i = p, e_ii = N_i,
    H |0> = 0 and H theta = (sum eps_i theta_i) theta."""
    eps = _energies(spec, energies)
    verifier = _Verifier("number_operators", spec, **kwargs)
    basis = fock_basis(spec)
    vacuum = _vacuum_projector(spec)
    hamiltonian = OperatorKind.hamiltonian(eps)

    def total_number(a: _ExactAlgebra) -> Any:
        total = a.op(OperatorKind.number0())
        for i in _orbitals(spec):
            total = total + a.op(OperatorKind.number(i))
        return total

    for i in _orbitals(spec):
        occupations = OperatorMatrix.diagonal(
            spec, [s.theta[i - 1] for s in basis], f"theta{i}"
        )
        verifier.check(
            f"N{i} = theta{i}",
            lambda a, i=i, occ=occupations: (a.op(OperatorKind.number(i)), a.lift(occ)),
        )
        verifier.check(
            f"e{i}{i} = N{i}",
            lambda a, i=i: (
                a.op(OperatorKind.weyl(i, i)),
                a.op(OperatorKind.number(i)),
            ),
        )
    verifier.check(
        "N0 + sum Ni = p",
        lambda a: (total_number(a), a.scale(a.identity(), spec.p)),
    )
    verifier.check(
        "H |0> = 0", lambda a: (a.op(hamiltonian) @ a.lift(vacuum), a.zero())
    )
    spectrum = OperatorMatrix.diagonal(
        spec, [state_energy(eps, s) for s in basis], "sum eps theta"
    )
    verifier.check(
        "H = sum eps theta", lambda a: (a.op(hamiltonian), a.lift(spectrum))
    )
    return verifier.report()


def verify_hamiltonian_form(
    spec: FockSpec,
    energies: Sequence[Rational | float] | None = None,
    **kwargs: Any,
) -> VerificationReport:
    """H = sum_i eps_i ({f_i^+, f_i^-} + (p - sum_k {f_k^+, f_k^-}) / (n - 1)).

    Raises:
        PreconditionError: if n = 1
    """
    if spec.n < 2:
        raise PreconditionError("The anticommutator form of H needs n >= 2")
    eps = _energies(spec, energies)
    verifier = _Verifier("hamiltonian_form", spec, **kwargs)

    def form(a: _ExactAlgebra) -> tuple[Any, Any]:
        pairs = {
            i: anticommutator(a.op(_create(i)), a.op(_annihilate(i)))
            for i in _orbitals(spec)
        }
        rest = a.scale(a.identity(), spec.p)
        for pair in pairs.values():
            rest = rest - pair
        rest = a.scale(rest, Fraction(1, spec.n - 1))
        total = a.zero()
        for i, pair in pairs.items():
            total = total + a.scale(pair + rest, eps[i - 1])
        return a.op(OperatorKind.hamiltonian(eps)), total

    verifier.check("H = sum eps ({f+, f-} + (p - sum {f+, f-})/(n-1))", form)
    return verifier.report()


def _suite_reports(
    spec: FockSpec,
    suite: str,
    energies: Sequence[Rational | float] | None,
    kwargs: dict[str, Any],
) -> Iterator[VerificationReport]:
    if suite in ("all", "triple"):
        yield verify_vacuum(spec, **kwargs)
        yield verify_triple_relations(spec, **kwargs)
    if suite in ("all", "weyl"):
        yield verify_weyl_superbracket(spec, **kwargs)
    if suite == "all":
        yield verify_hermiticity_and_ladder(spec, energies, **kwargs)
        yield verify_pauli_principle(spec, **kwargs)
        yield verify_number_operators(spec, energies, **kwargs)
        if spec.n >= 2:
            yield verify_hamiltonian_form(spec, energies, **kwargs)
    if suite == "quasi" or (suite == "all" and spec.typical):
        yield verify_quasi_fermi_anticommutators(spec, **kwargs)
    if suite == "hp" or (suite == "all" and spec.typical):
        yield verify_holstein_primakoff(spec, **kwargs)
    if suite in ("all", "iop"):
        yield verify_iop(spec.n, **kwargs)


def verify_suite(
    spec: FockSpec,
    suite: str = "all",
    energies: Sequence[Rational | float] | None = None,
    *,
    tolerance: float = FLOAT_TOLERANCE,
    cap: int = ENUMERATION_CAP,
) -> VerificationSuite:
    """Run a named group of identity checks.

    Raises:
        PreconditionError: for an unknown suite, or quasi/hp with p < n
    """
    if suite not in SUITES:
        raise PreconditionError(f"Unknown suite {suite!r}; choose from {SUITES}")
    kwargs = {"tolerance": tolerance, "cap": cap}
    reports = list(_suite_reports(spec, suite, energies, kwargs))
    for report in reports:
        logger.info(
            "%s W(%d,%d): %s (%d checks)",
            report.identity,
            report.p,
            report.n,
            "pass" if report.passed else "FAIL",
            report.checks,
        )
    return VerificationSuite(p=spec.p, n=spec.n, suite=suite, reports=reports)
