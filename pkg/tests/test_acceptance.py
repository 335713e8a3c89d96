"""Acceptance battery: one test per headline guarantee of the package.

Every test pins an explicit parameter grid and a wall-clock ceiling; a
regression in either correctness or asymptotics fails loudly.  The grids are
desk scale on purpose (ambient dimension at most 8, tensor powers at most 4,
symbolic work capped by the size guards), so the whole battery stays in the
minutes range on one core.
"""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from spincheck.clifford import (classical_spectrum_check,
                                commuting_family_check, verify_so_relations)
from spincheck.errors import DomainError
from spincheck.invariant import (build_c_even, build_c_odd,
                                 generator_action_for, markov_property_check,
                                 spectrum_check, third_power_profile,
                                 verify_coideal, verify_commutation,
                                 verify_duality)
from spincheck.qspin import verify_serre
from spincheck.scalar import EvalPoint, qint
from spincheck.weights import (RootData, bratteli, classical_dimension,
                               one_column_qdim_forms, qdimension, spin_label,
                               spin_qdim_product_form, spinor_tensor)


class Budget:
    """Context manager asserting a wall-clock ceiling on exit."""

    def __init__(self, seconds: float, label: str):
        self.seconds = seconds
        self.label = label

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            return False
        elapsed = time.monotonic() - self.start
        print(f"{self.label}: pass ({elapsed:.1f}s / {self.seconds:.0f}s)")
        assert elapsed < self.seconds, (
            f"{self.label} took {elapsed:.1f}s, budget {self.seconds:.0f}s")
        return False


def assert_passed(rep):
    assert rep.passed, rep.summary()


def test_criterion_01_orthogonal_relations():
    """Dressed Clifford pairs satisfy the orthogonal Lie relations, primed
    and unprimed, for ambient dimensions 1..4 and l in {3, 4}."""
    with Budget(30, "criterion 1"):
        for N in (1, 2, 3, 4):
            for l in (3, 4):
                for primed in ((False, True) if N >= 2 else (False,)):
                    assert_passed(verify_so_relations(N, l, primed))
        with pytest.raises(DomainError):
            verify_so_relations(1, 3, True)


def test_criterion_02_polynomial_spectrum():
    """The commuting family is polynomial in its first member, is killed by
    the degree-(N+1) polynomial with the integer root ladder, and satisfies
    the three-term product recursion."""
    with Budget(60, "criterion 2"):
        for N in range(1, 7):
            assert_passed(commuting_family_check(N))
            assert_passed(classical_spectrum_check(N))


def test_criterion_03_quantum_commutation():
    """[C, Delta(X)] = 0 symbolically for every generator (and the flip)."""
    with Budget(120, "criterion 3"):
        for k in (1, 2, 3):
            c = build_c_even(k)
            assert_passed(verify_commutation(c, generator_action_for(c)))
        for k in (1, 2):
            c = build_c_odd(k)
            assert_passed(verify_commutation(c, generator_action_for(c)))


def test_criterion_04_spectra_and_minimality():
    """The integer (resp. half-integer) eigenvalue product annihilates C,
    every factor is needed, and the explicit extreme eigenvector carries
    eigenvalue [k]."""
    with Budget(60, "criterion 4"):
        for k in (1, 2, 3):
            rep = spectrum_check(build_c_even(k))
            assert_passed(rep)
            names = {ch.name for ch in rep.checks}
            assert {"annihilating_product", "minimality",
                    "extreme_eigenvector"} <= names
            assert rep.params["top_eigenvector"] in ("plain", "twisted")
        for k in (1, 2):
            rep = spectrum_check(build_c_odd(k))
            assert_passed(rep)
            assert {"annihilating_product", "minimality"} <= {
                ch.name for ch in rep.checks}


def test_criterion_05_coideal_relations():
    """Adjacent cubic relation plus the quotient polynomial relation for the
    embedded family: symbolically at small rank, at q0 = 3/2 for rank 3."""
    with Budget(300, "criterion 5"):
        for k, parity in ((2, "even"), (1, "odd")):
            rep = verify_coideal(k, parity, 3)
            assert_passed(rep)
            names = {ch.name for ch in rep.checks}
            assert {"adjacent_cubic", "eigenvalue_product"} <= names
        rep = verify_coideal(3, "even", 3,
                             point=EvalPoint.from_q(Fraction(3, 2)))
        assert_passed(rep)


def test_criterion_06_duality_dimension_counts():
    """Generated algebra = commutant = branching count, at two rational
    points and classically, with the anchor values pinned."""
    with Budget(600, "criterion 6"):
        anchors = {("odd", 1, 2): 2, ("odd", 1, 3): 5, ("even", 2, 2): 5}
        grids = [("even", 1, (2, 3, 4)), ("even", 2, (2, 3)),
                 ("odd", 1, (2, 3, 4)), ("odd", 2, (2, 3))]
        for parity, k, powers in grids:
            for n in powers:
                rep = verify_duality(k, parity, n)
                assert_passed(rep)
                want = anchors.get((parity, k, n))
                if want is not None:
                    assert rep.params["branching_dimension"] == want


def test_criterion_07_qdimension_identities():
    """Two-sided one-column identity up to ambient dimension 8; tensor-square
    additivity of quantum dimensions; closed product form of dim_q S."""
    with Budget(30, "criterion 7"):
        for N in range(2, 9):
            for r in range(N + 1):
                lhs, rhs = one_column_qdim_forms(N, r)
                assert lhs == rhs, (N, r)
        for fam in ("B", "D"):
            for k in (1, 2, 3):
                rd = RootData(fam, k)
                spin = spin_label(rd)
                total = sum(
                    (qdimension(lbl, rd) * Fraction(m) for lbl, m in
                     spinor_tensor(spin, rd).items()),
                    start=qint(0))
                assert total == qdimension(spin, rd) ** 2
                assert spin_qdim_product_form(rd) == qdimension(spin, rd)


def test_criterion_08_third_power_profile():
    """Tridiagonal profile on the third-power highest-weight space: entry
    squares, reconstruction, and the characteristic polynomial."""
    with Budget(120, "criterion 8"):
        for k in (1, 2, 3):
            rep = third_power_profile(k)
            assert_passed(rep)
            names = {ch.name for ch in rep.checks}
            assert {"tridiagonal", "offdiagonal_products",
                    "entry_reconstruction",
                    "characteristic_polynomial"} <= names


def test_criterion_09_quantum_trace():
    """Markov property on sampled polynomial pairs, and projection traces
    equal to quantum dimensions."""
    with Budget(60, "criterion 9"):
        for k in (1, 2):
            assert_passed(markov_property_check(k, pairs=20))
        rep = spectrum_check(build_c_even(2))
        assert_passed(rep)
        assert any(ch.name == "projection_traces" and ch.passed
                   for ch in rep.checks)


def test_criterion_10_structural():
    """Serre presentation holds for every module configuration in use, and
    the branching diagrams conserve dimension."""
    with Budget(120, "criterion 10"):
        for k in (1, 2, 3):
            assert_passed(verify_serre(RootData("D", k)))
        for k in (1, 2):
            assert_passed(verify_serre(RootData("B", k)))
            assert_passed(verify_serre(RootData("B", k), odd_doubled=True))
        for fam in ("B", "D"):
            for k in (1, 2, 3, 4):
                rd = RootData(fam, k)
                diag = bratteli(rd, 4)
                for n in range(1, 5):
                    total = sum(m * classical_dimension(lbl, rd)
                                for lbl, m in diag.levels[n - 1].items())
                    assert total == (1 << k) ** n
