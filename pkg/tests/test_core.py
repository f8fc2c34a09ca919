"""Core algebra: tables, axioms, residuals, morphisms, enumeration."""

import numpy as np
import pytest

from resglue.core import (
    NotResiduated,
    are_isomorphic,
    chain_leq,
    congruence_classes,
    enumerate_irls,
    enumerate_lattices,
    find_embeddings,
    find_homomorphisms,
    from_leq_mul,
    godel_chain,
    hasse_text,
    hom_violation,
    homomorphic_image,
    is_subuniverse,
    oracle_check,
    residuals_from_mul,
    subalgebra_generated,
    table_equal,
    verify_axioms,
)

from helpers import diamond_m3, gl2_4chain, luk, two_potent_4chain


def brute_residuals(leq, mul):
    """Independent residual computation: x\\z = max{y : xy <= z}."""
    n = leq.shape[0]
    ldiv = np.zeros((n, n), dtype=np.int64)
    rdiv = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for z in range(n):
            wit = [y for y in range(n) if leq[mul[x, y], z]]
            tops = [w for w in wit if all(leq[v, w] for v in wit)]
            assert tops, "not residuated"
            ldiv[x, z] = tops[0]
            wit = [y for y in range(n) if leq[mul[y, x], z]]
            tops = [w for w in wit if all(leq[v, w] for v in wit)]
            rdiv[z, x] = tops[0]
    return ldiv, rdiv


def test_godel_chain_tables():
    g = godel_chain(3)
    assert g.n == 3 and g.unit == 2 and g.zero == 0
    assert g.mul.tolist() == [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    assert g.ldiv.tolist() == [[2, 2, 2], [0, 2, 2], [0, 1, 2]]
    assert g.join.tolist() == [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    assert verify_axioms(g).ok
    assert oracle_check(g).ok


def test_lukasiewicz_chain_is_residuated():
    l4 = luk(4)
    assert verify_axioms(l4).ok and oracle_check(l4).ok
    # negation is an involution on the Lukasiewicz chain
    for x in range(4):
        neg = int(l4.ldiv[x, 0])
        assert int(l4.ldiv[neg, 0]) == x


def test_residuals_match_brute_force():
    for a in (godel_chain(4), luk(5), two_potent_4chain(), gl2_4chain()):
        ldiv, rdiv = residuals_from_mul(a.leq, a.mul)
        bl, br = brute_residuals(a.leq, a.mul)
        assert np.array_equal(ldiv, bl)
        assert np.array_equal(rdiv, br)


def test_meet_product_on_m3_is_not_residuated():
    # join fails to distribute over the product, so no residual exists
    leq, join, meet = diamond_m3()
    with pytest.raises(NotResiduated):
        residuals_from_mul(leq, meet)


def test_verify_axioms_catches_tampered_product():
    g = godel_chain(3)
    mul = g.mul.copy()
    mul[0, 1] = 1  # 0*a = a contradicts the stored residuals
    v = verify_axioms(
        type(g)(g.leq, g.join, g.meet, mul, g.ldiv, g.rdiv, g.unit, g.zero))
    assert not v.ok
    laws = {viol.law for viol in v.violations}
    assert laws & {"monotone", "associativity", "residuation", "unit"}


def test_unit_and_zero_recognition():
    g = godel_chain(4)
    assert g.has_zero and g.zero == 0
    gz = godel_chain(4, with_zero=False)
    assert not gz.has_zero
    v = verify_axioms(gz, expect_bounded=True)
    assert not v.ok


def test_subalgebra_generated():
    l5 = luk(5)
    # the coatom generates everything: 3*3=2, 3*2=1, 3*1=0
    assert subalgebra_generated(l5, (3,)) == (0, 1, 2, 3, 4)
    g4 = godel_chain(4)
    assert subalgebra_generated(g4, (2,)) == (0, 2, 3)
    assert is_subuniverse(g4, {0, 2, 3})
    assert not is_subuniverse(g4, {2, 3})
    # without the zero constant the upper pair is a subuniverse
    assert is_subuniverse(g4, {2, 3}, with_zero=False)


def test_homs_and_embeddings_frozen_counts():
    g3, g4 = godel_chain(3), godel_chain(4)
    embs = find_embeddings(g3, g4)
    assert len(embs) == 2
    for m in embs:
        assert len(set(m)) == g3.n
        assert hom_violation(g3, g4, m) is None
    assert len(find_homomorphisms(g3, g3)) == 2
    assert len(find_embeddings(g4, g3)) == 0


def test_hom_violation_reports_the_first_broken_op():
    g3 = godel_chain(3)
    w = hom_violation(g3, g3, (0, 0, 2))
    assert w is not None


def test_isomorphism_is_label_independent():
    g = godel_chain(4)
    perm = [0, 2, 1, 3]  # swap the two middle elements
    leq = g.leq[np.ix_(perm, perm)]
    inv = np.argsort(perm)
    mul = inv[g.mul[np.ix_(perm, perm)]]
    h = from_leq_mul(leq, mul, int(inv[g.unit]), zero=int(inv[g.zero]))
    assert are_isomorphic(g, h)
    assert not table_equal(g, h)
    assert not are_isomorphic(g, luk(4))


def test_congruence_classes_and_image():
    g4 = godel_chain(4)
    cls = congruence_classes(g4, frozenset({2, 3}))
    assert sorted(sorted(c) for c in cls) == [[0], [1], [2, 3]]
    img, qmap = homomorphic_image(g4, frozenset({2, 3}))
    assert are_isomorphic(img, godel_chain(3))
    assert qmap == (0, 1, 2, 2)


def test_enumeration_counts():
    assert [len(enumerate_lattices(k)) for k in range(1, 6)] == [1, 1, 1, 2, 5]
    assert [len(list(enumerate_irls(k))) - len(list(enumerate_irls(k - 1)))
            for k in (2, 3, 4)] == [1, 2, 9]
    irls5 = list(enumerate_irls(5))
    assert len(irls5) == 1 + 1 + 2 + 9 + 49
    seen = set()
    for a in irls5:
        assert verify_axioms(a).ok
        key = a.table_key()
        assert key not in seen
        seen.add(key)


def test_enumerated_algebras_are_pairwise_nonisomorphic():
    irls4 = [a for a in enumerate_irls(4) if a.n == 4]
    for i, a in enumerate(irls4):
        for b in irls4[i + 1:]:
            assert not are_isomorphic(a, b)


def test_division_order_equivalence_exhaustive():
    # x <= y iff x\y = 1, on every catalogued algebra up to size 4
    for a in enumerate_irls(4):
        for x in range(a.n):
            for y in range(a.n):
                assert bool(a.leq[x, y]) == (int(a.ldiv[x, y]) == a.unit)
                assert bool(a.leq[x, y]) == (int(a.rdiv[y, x]) == a.unit)


def test_hasse_text_layout():
    out = hasse_text(godel_chain(4))
    assert out.splitlines()[0] == "height 0: 0(0)"
    assert out.splitlines()[-1] == "covers: 0<1 1<2 2<3"
