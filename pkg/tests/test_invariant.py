"""Tests for the invariant two-slot operator C and its verification suites.

The small cases are frozen as explicit matrix goldens (computed once by hand
from the defining sum: for each position j where the two sign vectors differ,
flip both and weight by (-q)^{partial weight difference}).  Everything else
goes through the verify_* report machinery, asserting both the overall verdict
and the presence of the individual named checks.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from spincheck.errors import DomainError, SizeGuardError
from spincheck.invariant import (MAX_SYMBOLIC_DIM, build_c_even, build_c_odd,
                                 commutant_dim_oracle, csq_block_matrix,
                                 embed_ci, generated_algebra_dim,
                                 generator_action_for, markov_property_check,
                                 spectrum_check, third_power_profile,
                                 verify_coideal, verify_commutation,
                                 verify_duality)
from spincheck.linalg import SparseMat
from spincheck.qspin import spin_rep
from spincheck.scalar import ONE, EvalPoint, curly, qint, render_q
from spincheck.weights import RootData, one_column_label

HALF = Fraction(1, 2)


def entries(mat: SparseMat) -> dict[tuple[int, int], object]:
    return {(r, c): v for r, rw in mat.rows.items() for c, v in rw.items()}


# ---------------------------------------------------------------------------
# the matrices themselves


def test_even_rank_one_matrix_golden():
    # d = 2; only the mixed pairs (0,1) and (1,0) see a flip, with trivial
    # prefix weight, so C is the permutation swapping them.
    c = build_c_even(1)
    assert c.dim == 2
    ent = entries(c.mat)
    assert set(ent) == {(1, 2), (2, 1)}
    assert all(v == ONE for v in ent.values())


def test_odd_rank_one_matrix_golden():
    # d = 4 (one visible and one invisible coordinate per slot).  The
    # invisible flip acts on every column, the visible one only on mixed
    # pairs, giving 16 + 8 = 24 nonzero entries.
    c = build_c_odd(1)
    assert c.dim == 4
    ent = entries(c.mat)
    assert len(ent) == 24
    assert render_q(ent[(0, 5)]) == "(q^(1/2))/(q+1)"
    assert render_q(ent[(2, 7)]) == "(-q^(-1/2))/(q+1)"
    assert ent[(2, 8)] == ONE
    assert ent[(0, 5)] == ONE / curly(HALF)


@pytest.mark.parametrize("builder,k", [
    (build_c_even, 1), (build_c_even, 2),
    (build_c_odd, 1), (build_c_odd, 2),
])
def test_matrix_is_symmetric(builder, k):
    c = builder(k)
    assert c.mat == c.mat.transpose()


@pytest.mark.parametrize("builder", [build_c_even, build_c_odd])
def test_rank_zero_rejected(builder):
    with pytest.raises(DomainError):
        builder(0)


@pytest.mark.parametrize("builder,k", [
    (build_c_even, 2), (build_c_odd, 1),
])
def test_operator_preserves_total_weight(builder, k):
    # every nonzero entry connects pairs with the same coordinate-sum weight
    c = builder(k)
    wts = generator_action_for(c).weights
    d = c.dim
    for (r, col), _ in entries(c.mat).items():
        ra, rb = divmod(r, d)
        ca, cb = divmod(col, d)
        got = tuple(x + y for x, y in zip(wts[ra], wts[rb]))
        want = tuple(x + y for x, y in zip(wts[ca], wts[cb]))
        assert got == want


# ---------------------------------------------------------------------------
# eigenvalue bookkeeping


def test_eigenvalues_ladder():
    assert build_c_even(2).eigenvalues() == [qint(j) for j in (2, 1, 0, -1, -2)]
    assert build_c_odd(1).eigenvalues() == [
        qint(Fraction(3, 2)), qint(HALF), qint(-HALF), qint(Fraction(-3, 2))]


def test_eigen_label_heights_alternate():
    assert build_c_even(1).eigen_label_heights() == [0, 1, 2]
    assert build_c_even(2).eigen_label_heights() == [0, 3, 2, 1, 4]
    assert build_c_even(3).eigen_label_heights() == [0, 5, 2, 3, 4, 1, 6]


def test_eigen_labels_match_heights():
    c = build_c_even(2)
    rd = RootData("D", 2)
    assert c.eigen_labels() == [one_column_label(rd, r)
                                for r in (0, 3, 2, 1, 4)]


def test_label_heights_undefined_for_odd():
    with pytest.raises(DomainError):
        build_c_odd(1).eigen_label_heights()


# ---------------------------------------------------------------------------
# commutation with the quantum-group action


@pytest.mark.parametrize("builder,k", [
    (build_c_even, 1), (build_c_even, 2), (build_c_odd, 1),
])
def test_commutation_symbolic(builder, k):
    c = builder(k)
    g = generator_action_for(c)
    rep = verify_commutation(c, g)
    assert rep.passed, rep.summary()
    names = {ch.name for ch in rep.checks}
    for i in range(1, g.nsimple + 1):
        assert {f"commutes_E{i}", f"commutes_F{i}",
                f"commutes_K{i}", f"commutes_Khalf{i}"} <= names
    assert "commutes_t" in names
    assert len(names) == 4 * g.nsimple + 1


def test_commutation_rejects_mismatched_action():
    with pytest.raises(DomainError):
        verify_commutation(build_c_even(1),
                           spin_rep(RootData("B", 1), odd_doubled=True))


def test_commutation_at_a_point():
    c = build_c_odd(1)
    rep = verify_commutation(c, generator_action_for(c),
                             point=EvalPoint.from_q(Fraction(3, 2)))
    assert rep.passed
    assert rep.params["point"] == "3/2"


# ---------------------------------------------------------------------------
# spectra


def test_spectrum_even_rank_one():
    rep = spectrum_check(build_c_even(1))
    assert rep.passed, rep.summary()
    names = [ch.name for ch in rep.checks]
    assert names == ["annihilating_product", "minimality",
                     "idempotent_partition", "extreme_eigenvector",
                     "projection_traces", "projection_label_fingerprint",
                     "projection_ranks"]
    assert rep.params["top_eigenvector"] == "plain"


def test_spectrum_even_rank_two():
    rep = spectrum_check(build_c_even(2))
    assert rep.passed, rep.summary()
    names = {ch.name for ch in rep.checks}
    assert "freezing_restriction" in names
    assert rep.params["top_eigenvector"] == "twisted"


def test_spectrum_odd_rank_one():
    rep = spectrum_check(build_c_odd(1))
    assert rep.passed, rep.summary()
    names = [ch.name for ch in rep.checks]
    assert "block_swap" in names
    assert "projection_traces" not in names
    assert "projection_label_fingerprint" not in names


def test_squared_block_spectrum_rank_one():
    # restricted to a parity block, C^2 has exactly the eigenvalues [1/2]^2
    # and [3/2]^2, each genuinely present
    m = csq_block_matrix(build_c_odd(1))
    lam = [qint(HALF) ** 2, qint(Fraction(3, 2)) ** 2]
    ident = SparseMat.identity(m.nrows, ONE)
    factors = [m - ident.scale(x) for x in lam]
    assert (factors[0] * factors[1]).is_zero()
    assert not factors[0].is_zero()
    assert not factors[1].is_zero()


def test_squared_block_rejects_even():
    with pytest.raises(DomainError):
        csq_block_matrix(build_c_even(1))


# ---------------------------------------------------------------------------
# embeddings into tensor powers


def test_embed_slot_one_of_two_is_identity_embedding():
    c = build_c_even(1)
    assert embed_ci(c, 1, 2) == c.mat


def test_embed_matches_explicit_kronecker():
    # slot 1 of 3: C ox 1; slot 2 of 3: 1 ox C
    c = build_c_even(1)
    d = c.dim
    left = SparseMat(d ** 3, d ** 3)
    right = SparseMat(d ** 3, d ** 3)
    for (r, col), v in entries(c.mat).items():
        for x in range(d):
            left.set_entry(r * d + x, col * d + x, v)
            right.set_entry(x * d * d + r, x * d * d + col, v)
    assert embed_ci(c, 1, 3) == left
    assert embed_ci(c, 2, 3) == right


@pytest.mark.parametrize("slot", [0, 2, 5])
def test_embed_rejects_bad_slot(slot):
    with pytest.raises(DomainError):
        embed_ci(build_c_even(1), slot, 2)


# ---------------------------------------------------------------------------
# relations of the generating family


@pytest.mark.parametrize("k,parity,n", [
    (1, "even", 3), (1, "even", 4), (2, "even", 3), (1, "odd", 3),
])
def test_coideal_relations_symbolic(k, parity, n):
    rep = verify_coideal(k, parity, n)
    assert rep.passed, rep.summary()
    names = {ch.name for ch in rep.checks}
    assert "adjacent_cubic" in names
    assert "minus_variant_distinct" in names
    assert "eigenvalue_product" in names


def test_coideal_odd_checks_squared_relations():
    names = {ch.name for ch in verify_coideal(1, "odd", 3).checks}
    assert "squared_eigenvalue_product" in names
    assert "short_square_product_nonzero" in names


def test_coideal_at_a_point():
    rep = verify_coideal(1, "odd", 3, point=EvalPoint.from_q(Fraction(5, 2)))
    assert rep.passed, rep.summary()


def test_coideal_symbolic_size_guard():
    # the doubled rank-2 module has dimension 8, and 8^3 = 512 columns is
    # past the symbolic comfort zone
    assert (1 << 3) ** 3 > MAX_SYMBOLIC_DIM
    with pytest.raises(SizeGuardError):
        verify_coideal(2, "odd", 3)


def test_coideal_point_size_guard():
    with pytest.raises(SizeGuardError):
        verify_coideal(4, "even", 4, point=EvalPoint.from_q(Fraction(3, 2)))


# ---------------------------------------------------------------------------
# duality of dimension counts


@pytest.mark.parametrize("k,parity,n,want", [
    (1, "odd", 2, 2), (1, "odd", 3, 5), (2, "even", 2, 5),
])
def test_duality_anchor_dimensions(k, parity, n, want):
    rep = verify_duality(k, parity, n)
    assert rep.params["branching_dimension"] == want
    assert rep.passed, rep.summary()


def test_generated_algebra_dimension_anchor():
    point = EvalPoint.from_q(Fraction(3, 2))
    assert generated_algebra_dim(1, "even", 3, point) == 10
    assert commutant_dim_oracle(RootData("D", 1), 3, point) == 10
    assert commutant_dim_oracle(RootData("B", 1), 2, point) == 2


def test_oracle_agrees_classically():
    assert commutant_dim_oracle(RootData("B", 1), 3, "classical") == 5


# ---------------------------------------------------------------------------
# third power fine structure


@pytest.mark.parametrize("k", [1, 2])
def test_third_power_profile(k):
    rep = third_power_profile(k)
    assert rep.passed, rep.summary()
    names = {ch.name for ch in rep.checks}
    assert {"highest_weight_dimension", "first_generator_alternating_spectrum",
            "tridiagonal", "zero_diagonal", "offdiagonal_products",
            "characteristic_polynomial"} <= names


def test_third_power_rejects_odd():
    with pytest.raises(DomainError):
        third_power_profile(1, parity="odd")


# ---------------------------------------------------------------------------
# trace multiplicativity


def test_markov_property_small():
    rep = markov_property_check(1, pairs=6, seed=7)
    assert rep.passed, rep.summary()
    assert rep.params == {"k": 1, "pairs": 6}
