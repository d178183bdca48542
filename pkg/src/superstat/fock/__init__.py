"""Fock representations W(p, n) of sl(1|n) as exact operator matrices."""

from __future__ import annotations

from .basis import BasisState, FockBasis, enumerate_basis, fock_basis
from .operators import (
    KindName,
    OperatorKind,
    OperatorMatrix,
    anticommutator,
    apply,
    build_operator,
    commutator,
    weyl_from_fermions,
)
from .verify import (
    SUITES,
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
)

__all__ = [
    "SUITES",
    "BasisState",
    "FockBasis",
    "KindName",
    "OperatorKind",
    "OperatorMatrix",
    "anticommutator",
    "apply",
    "build_operator",
    "commutator",
    "enumerate_basis",
    "fock_basis",
    "quasi_fermi_deviation",
    "verify_hamiltonian_form",
    "verify_hermiticity_and_ladder",
    "verify_holstein_primakoff",
    "verify_iop",
    "verify_number_operators",
    "verify_pauli_principle",
    "verify_quasi_fermi_anticommutators",
    "verify_suite",
    "verify_triple_relations",
    "verify_vacuum",
    "verify_weyl_superbracket",
    "weyl_from_fermions",
]
