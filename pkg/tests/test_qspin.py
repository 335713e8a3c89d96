"""Quantum-group generator actions on spin modules and tensor powers."""

from fractions import Fraction

import pytest

from spincheck.errors import DomainError
from spincheck.linalg import SparseMat
from spincheck.qspin import (block_lift, parse_generator_id, spin_rep,
                             tensor_action, verify_serre)
from spincheck.scalar import ONE, qpow
from spincheck.weights import RootData, inner


@pytest.mark.parametrize("fam,k,doubled", [
    ("D", 1, False), ("D", 2, False), ("D", 3, False),
    ("B", 1, False), ("B", 1, True), ("B", 2, False), ("B", 2, True),
])
def test_serre_relations(fam, k, doubled):
    rep = verify_serre(RootData(fam, k), odd_doubled=doubled)
    assert rep.passed, rep.summary()


def test_doubled_module_is_type_b_only():
    with pytest.raises(DomainError):
        spin_rep(RootData("D", 2), odd_doubled=True)


def test_weights_and_k_action_agree():
    # K_i acts diagonally by q^{<mu, alpha_i>} on the weight-mu line
    g = spin_rep(RootData("D", 2))
    for i in range(1, g.nsimple + 1):
        K = tensor_action(g, ("K", i), 1)
        alpha = g.rd.simple_roots()[i - 1]
        for b, mu in enumerate(g.weights):
            assert K.entry(b, b) == qpow(inner(mu, alpha))


def test_raising_operators_shift_weights():
    g = spin_rep(RootData("B", 2), odd_doubled=True)
    for i in range(1, g.nsimple + 1):
        E = tensor_action(g, ("E", i), 1)
        alpha = g.rd.simple_roots()[i - 1]
        for r, row in E.rows.items():
            for c in row:
                shift = tuple(x - y for x, y in
                              zip(g.weights[r], g.weights[c]))
                assert shift == alpha


def test_flip_is_an_involution():
    g = spin_rep(RootData("D", 2))
    assert g.t_perm is not None
    t = tensor_action(g, ("t", 0), 1)
    assert t * t == SparseMat.identity(g.dim, ONE)


def test_tensor_action_slotwise_product_rule():
    # Delta(K) = K ox K: check one diagonal entry by hand
    g = spin_rep(RootData("B", 1), odd_doubled=True)
    K1 = tensor_action(g, ("K", 1), 1)
    K2 = tensor_action(g, ("K", 1), 2)
    d = g.dim
    for a in range(d):
        for b in range(d):
            assert K2.entry(a * d + b, a * d + b) == \
                K1.entry(a, a) * K1.entry(b, b)


@pytest.mark.parametrize("fam,k,doubled", [("D", 2, False), ("B", 1, True)])
def test_coproduct_commutator_relation(fam, k, doubled):
    """[Delta(E_i), Delta(F_j)] = delta_ij (Delta(K_i) - Delta(K_i)^-1)/(q_i - q_i^-1)
    on the two-fold tensor power: the coproduct is an algebra map."""
    rd = RootData(fam, k)
    g = spin_rep(rd, odd_doubled=doubled)
    n = 2
    for i in range(1, g.nsimple + 1):
        for j in range(1, g.nsimple + 1):
            E = tensor_action(g, ("E", i), n)
            F = tensor_action(g, ("F", j), n)
            comm = E.commutator(F)
            if i != j:
                assert comm.is_zero()
                continue
            K = tensor_action(g, ("K", i), n)
            Kinv = K.map_values(lambda v: ONE / v)
            alpha = rd.simple_roots()[i - 1]
            qi = qpow(Fraction(inner(alpha, alpha), 2))
            want = (K - Kinv).scale(ONE / (qi - ONE / qi))
            assert comm == want


def test_tensor_flip_acts_slotwise():
    g = spin_rep(RootData("D", 2))
    t1 = tensor_action(g, ("t", 0), 1)
    t2 = tensor_action(g, ("t", 0), 2)
    d = g.dim
    # t2 = t1 ox t1 on pure tensors
    for a in range(d):
        for b in range(d):
            va = {r: row[a] for r, row in t1.rows.items() if a in row}
            vb = {r: row[b] for r, row in t1.rows.items() if b in row}
            img = t2.apply_to({a * d + b: ONE})
            want = {ra * d + rb: x * y
                    for ra, x in va.items() for rb, y in vb.items()}
            assert img == want


def test_block_lift_round_trip():
    k = 3
    seen = set()
    for x in range(1 << k):
        y = block_lift(x, k)
        # the visible bits of y reproduce x, the invisible bit makes the
        # total sign-flip count even
        assert (y >> 1) == x
        assert bin(y).count("1") % 2 == 0
        seen.add(y)
    assert len(seen) == 1 << k


def test_parse_generator_id():
    assert parse_generator_id(("E", 2)) == ("E", 2)
    assert parse_generator_id("E2") == ("E", 2)
    assert parse_generator_id("t") == ("t", 0)
    with pytest.raises(DomainError):
        parse_generator_id("X9")
