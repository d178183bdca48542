"""Tests for the Fock modules W(p, n) and their operator identities."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from superstat.amplitude import Amplitude
from superstat.errors import CapacityError, DimensionError, PreconditionError
from superstat.fock import (
    BasisState,
    OperatorKind,
    OperatorMatrix,
    anticommutator,
    apply,
    build_operator,
    enumerate_basis,
    fock_basis,
    quasi_fermi_deviation,
    verify_hamiltonian_form,
    verify_hermiticity_and_ladder,
    verify_holstein_primakoff,
    verify_iop,
    verify_number_operators,
    verify_pauli_principle,
    verify_quasi_fermi_anticommutators,
    verify_suite,
    verify_triple_relations,
    verify_vacuum,
    verify_weyl_superbracket,
    weyl_from_fermions,
)
from superstat.fock.operators import _operator
from superstat.fock.verify import _Verifier
from superstat.models import FockSpec

SMALL_SPECS = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 2), (4, 2)]


def assert_exact_pass(report):
    assert report.passed, report.counterexample
    assert report.exact
    assert report.max_residual == 0.0
    assert report.checks > 0


class TestBasis:
    """Test basis enumeration and dimensions."""

    def test_order_p2_n3(self):
        """Weight-major order with the vacuum first."""
        states = enumerate_basis(FockSpec(p=2, n=3))
        assert [str(s) for s in states] == [
            "000",
            "100",
            "010",
            "001",
            "110",
            "101",
            "011",
        ]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_dimension_formula(self, n):
        """dim W(p, n) is the truncated binomial sum, 2^n when typical."""
        for p in range(1, n + 2):
            spec = FockSpec(p=p, n=n)
            expected = sum(math.comb(n, k) for k in range(min(p, n) + 1))
            assert len(fock_basis(spec)) == expected == spec.dimension
            if p >= n:
                assert spec.dimension == 2**n

    def test_iop_dimension(self):
        """W(1, n) has dimension n + 1."""
        assert FockSpec(p=1, n=7).dimension == 8

    def test_capacity(self):
        """Enumeration beyond the cap is refused."""
        with pytest.raises(CapacityError):
            fock_basis(FockSpec(p=2, n=5), cap=4)

    def test_index_errors(self):
        """States of the wrong size or weight are not in the basis."""
        basis = fock_basis(FockSpec(p=1, n=3))
        with pytest.raises(DimensionError):
            basis.index(BasisState((1, 1, 0)))
        with pytest.raises(DimensionError):
            basis.index(BasisState((1, 0)))
        assert BasisState((0, 0, 1)) in basis

    def test_parities(self):
        """Signs count occupied orbitals before / between indices."""
        state = BasisState((1, 1, 0, 1))
        assert state.parity_before(1) == 1
        assert state.parity_before(3) == 1
        assert state.parity_before(4) == 1
        assert state.parity_before(2) == -1
        assert state.parity_between(1, 4) == -1
        assert state.parity_between(4, 2) == 1

    def test_invalid_state(self):
        with pytest.raises(ValueError):
            BasisState((0, 2))


class TestOperators:
    """Test generator matrices and matrix algebra."""

    @pytest.fixture
    def spec(self):
        return FockSpec(p=2, n=3)

    def test_creation_on_vacuum(self, spec):
        """f_1^+ |0> = sqrt(p) |100>."""
        op = build_operator(spec, OperatorKind.create(1))
        assert op[(1, 0)] == Amplitude.sqrt(2)

    def test_creation_sign(self, spec):
        """f_2^+ |100> picks up the parity of orbital 1."""
        basis = fock_basis(spec)
        op = build_operator(spec, OperatorKind.create(2))
        row = basis.index(BasisState((1, 1, 0)))
        col = basis.index(BasisState((1, 0, 0)))
        assert op[(row, col)] == Amplitude.sqrt(1, -1)

    def test_annihilator_is_transpose(self, spec):
        """f_i^- is the transpose of f_i^+ (real Hermitian conjugate)."""
        for i in range(1, 4):
            create = build_operator(spec, OperatorKind.create(i))
            annihilate = build_operator(spec, OperatorKind.annihilate(i))
            assert create.transpose() == annihilate

    def test_truncation(self, spec):
        """No creation out of weight p."""
        basis = fock_basis(spec)
        op = build_operator(spec, OperatorKind.create(3))
        col = basis.index(BasisState((1, 1, 0)))
        assert all(c != col for _, c in op.entries)

    def test_number_operators_sum_to_p(self, spec):
        """N_0 + N_1 + N_2 + N_3 = p * 1."""
        total = build_operator(spec, OperatorKind.number0())
        for i in range(1, 4):
            total = total + build_operator(spec, OperatorKind.number(i))
        assert total == OperatorMatrix.identity(spec, 7) * 2

    def test_invalid_orbital(self, spec):
        with pytest.raises(PreconditionError):
            build_operator(spec, OperatorKind.create(4))
        with pytest.raises(PreconditionError):
            build_operator(spec, OperatorKind.weyl(0, 5))

    def test_fermi_needs_typical(self, spec):
        """Fermi operators exist only on the typical module."""
        with pytest.raises(PreconditionError):
            build_operator(spec, OperatorKind.fermi_create(1))

    def test_hamiltonian_needs_energies(self, spec):
        with pytest.raises(PreconditionError):
            build_operator(spec, OperatorKind.hamiltonian([1, 2]))

    def test_incompatible_product(self, spec):
        other = build_operator(FockSpec(p=1, n=3), OperatorKind.create(1))
        with pytest.raises(DimensionError):
            build_operator(spec, OperatorKind.create(1)) @ other

    def test_sparse_view(self, spec):
        """The float view matches the exact entries."""
        op = build_operator(spec, OperatorKind.create(1))
        dense = op.to_sparse().toarray()
        assert dense[1, 0] == pytest.approx(math.sqrt(2))
        assert np.count_nonzero(dense) == len(op.entries)

    def test_json_triplets(self, spec):
        op = build_operator(spec, OperatorKind.create(1))
        data = op.to_json_dict()
        assert data["dim"] == 7
        assert [1, 0, 1, 2, 1] in data["entries"]

    def test_sqrt_diagonal(self, spec):
        n0 = build_operator(spec, OperatorKind.number0())
        root = n0.sqrt_diagonal()
        assert root @ root == n0
        with pytest.raises(PreconditionError):
            build_operator(spec, OperatorKind.create(1)).sqrt_diagonal()

    def test_scalar_multiplication(self, spec):
        op = build_operator(spec, OperatorKind.number(1))
        assert (op * Fraction(1, 2))[(1, 1)].rational_value() == Fraction(1, 2)
        assert (op * 0).is_zero

    def test_apply_creation_string(self, spec):
        """f_1^+ f_2^+ |0> = sqrt(p (p - 1)) |110>."""
        vacuum = {BasisState.vacuum(3): Amplitude.one()}
        step = apply(build_operator(spec, OperatorKind.create(2)), vacuum)
        result = apply(build_operator(spec, OperatorKind.create(1)), step)
        assert result == {BasisState((1, 1, 0)): Amplitude.sqrt(2)}

    def test_apply_falls_back_to_floats(self, spec):
        """Incommensurable accumulations are returned in floats."""
        vec = {
            BasisState((1, 0, 0)): Amplitude.one(),
            BasisState((0, 1, 0)): Amplitude.sqrt(3),
        }
        result = apply(build_operator(spec, OperatorKind.annihilate(1)), vec)
        assert result[BasisState.vacuum(3)] == Amplitude.sqrt(2)
        mixed = {
            BasisState((1, 0, 0)): Amplitude.one(),
            BasisState((0, 1, 0)): Amplitude.sqrt(2),
        }
        lowering = build_operator(spec, OperatorKind.annihilate(1)) + build_operator(
            spec, OperatorKind.annihilate(2)
        )
        out = apply(lowering, mixed)
        assert isinstance(out[BasisState.vacuum(3)], float)
        assert out[BasisState.vacuum(3)] == pytest.approx(2 + math.sqrt(2))

    def test_weyl_from_fermions(self):
        """e_ij = F_i^+ F_j^- on the typical module."""
        spec = FockSpec(p=3, n=2)
        for i in (1, 2):
            for j in (1, 2):
                assert weyl_from_fermions(spec, i, j) == build_operator(
                    spec, OperatorKind.weyl(i, j)
                )

    def test_quasi_off_diagonal_entry(self):
        """{F_1^-, F_2^+} |10> = +1/4 |01> for p = 4, n = 2."""
        spec = FockSpec(p=4, n=2)
        basis = fock_basis(spec)
        bracket = anticommutator(
            build_operator(spec, OperatorKind.quasi_annihilate(1)),
            build_operator(spec, OperatorKind.quasi_create(2)),
        )
        row = basis.index(BasisState((0, 1)))
        col = basis.index(BasisState((1, 0)))
        assert bracket[(row, col)].rational_value() == Fraction(1, 4)


class TestVerification:
    """Test the identity suites."""

    @pytest.mark.parametrize("p,n", SMALL_SPECS)
    def test_triple_relations(self, p, n):
        assert_exact_pass(verify_triple_relations(FockSpec(p=p, n=n)))

    @pytest.mark.parametrize("p,n", SMALL_SPECS)
    def test_vacuum(self, p, n):
        assert_exact_pass(verify_vacuum(FockSpec(p=p, n=n)))

    @pytest.mark.parametrize("p,n", [(1, 2), (2, 2), (2, 3), (3, 3)])
    def test_weyl_superbracket(self, p, n):
        assert_exact_pass(verify_weyl_superbracket(FockSpec(p=p, n=n)))

    @pytest.mark.parametrize("p,n", SMALL_SPECS)
    def test_hermiticity_and_ladder(self, p, n):
        assert_exact_pass(verify_hermiticity_and_ladder(FockSpec(p=p, n=n)))

    @pytest.mark.parametrize(
        "p,n", [(n + extra, n) for n in range(1, 6) for extra in (0, 1)] + [(5, 3)]
    )
    def test_quasi_fermi(self, p, n):
        assert_exact_pass(verify_quasi_fermi_anticommutators(FockSpec(p=p, n=n)))

    def test_integral_anticommutators(self):
        """{f_i^+, f_j^-} is integral and p {F_i^-, F_j^+} is integral."""
        n = 3
        report = verify_triple_relations(FockSpec(p=2, n=n))
        assert report.checks == 3 * n**2 + 2 * n**3
        quasi = verify_quasi_fermi_anticommutators(FockSpec(p=4, n=n))
        assert_exact_pass(quasi)
        assert quasi.checks == 3 * n**2 + 2 * n * (n - 1) + n

    def test_integrality_failure_is_reported(self):
        spec = FockSpec(p=2, n=2)
        verifier = _Verifier("integral", spec)
        verifier.check_integral(
            "f1+ integral", lambda a: a.op(OperatorKind.create(1))
        )
        report = verifier.report()
        assert not report.passed
        assert report.counterexample.expected == "integer"
        assert report.counterexample.got == "sqrt(2)"

    def test_quasi_fermi_needs_typical(self):
        with pytest.raises(PreconditionError):
            verify_quasi_fermi_anticommutators(FockSpec(p=1, n=2))

    @pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (3, 3), (5, 3)])
    def test_holstein_primakoff(self, p, n):
        assert_exact_pass(verify_holstein_primakoff(FockSpec(p=p, n=n)))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_iop(self, n):
        assert_exact_pass(verify_iop(n))

    @pytest.mark.parametrize("p,n", SMALL_SPECS)
    def test_pauli_principle(self, p, n):
        assert_exact_pass(verify_pauli_principle(FockSpec(p=p, n=n)))

    def test_number_operators(self):
        spec = FockSpec(p=2, n=3)
        energies = [Fraction(1, 2), Fraction(3), Fraction(-2, 3)]
        assert_exact_pass(verify_number_operators(spec, energies))

    def test_hamiltonian_form(self):
        spec = FockSpec(p=2, n=3)
        assert_exact_pass(verify_hamiltonian_form(spec, [1, 2, 5]))
        with pytest.raises(PreconditionError):
            verify_hamiltonian_form(FockSpec(p=1, n=1))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_deviation_shrinks(self, n):
        """d(p) <= n / p and d(2p) < d(p) away from the trivial n = 1."""
        ps = [n, 2 * n, 4 * n, 8 * n]
        deviations = dict(quasi_fermi_deviation(n, ps))
        for p in ps:
            assert deviations[p] <= n / p
        if n >= 2:
            for p in ps[:-1]:
                assert deviations[2 * p] < deviations[p]
        else:
            assert all(d == 0.0 for d in deviations.values())

    def test_deviation_value(self):
        """The worst entry is 1 - sqrt(1 - (n - 1) / p)."""
        ((_, d),) = quasi_fermi_deviation(2, [100])
        assert d == pytest.approx(1 - math.sqrt(1 - 1 / 100), rel=1e-12)

    def test_deviation_preconditions(self):
        with pytest.raises(PreconditionError):
            quasi_fermi_deviation(3, [])
        with pytest.raises(PreconditionError):
            quasi_fermi_deviation(3, [2])

    def test_suite_all(self):
        suite = verify_suite(FockSpec(p=2, n=3))
        assert suite.passed
        names = [r.identity for r in suite.reports]
        assert "triple_relations" in names
        assert "iop" in names
        assert "quasi_fermi_anticommutators" not in names

    def test_suite_all_typical(self):
        suite = verify_suite(FockSpec(p=3, n=2))
        names = {r.identity for r in suite.reports}
        assert {"quasi_fermi_anticommutators", "holstein_primakoff"} <= names
        assert suite.passed

    def test_unknown_suite(self):
        with pytest.raises(PreconditionError):
            verify_suite(FockSpec(p=1, n=1), "bogus")

    @pytest.mark.slow
    def test_acceptance_matrix(self):
        """Vacuum, triple relations, superbrackets and ladder commutators for
        n <= 6, p <= n + 2, exactly and within 30 s from a cold cache."""
        _operator.cache_clear()
        start = time.perf_counter()
        for n in range(1, 7):
            for p in range(1, n + 3):
                spec = FockSpec(p=p, n=n)
                assert_exact_pass(verify_vacuum(spec))
                assert_exact_pass(verify_triple_relations(spec))
                assert_exact_pass(verify_weyl_superbracket(spec))
                assert_exact_pass(verify_hermiticity_and_ladder(spec))
        assert time.perf_counter() - start < 30.0
