"""The gluing constructions: 1-sum, filter/filter-ideal gluing, bottomize,
partial gluings, and the iterated stack of simple 2-potent chains."""

import itertools

import numpy as np
import pytest

from resglue.core import (
    FiniteRL,
    NotResiduated,
    UNDEF,
    chain_leq,
    from_leq_mul,
    godel_chain,
    hom_violation,
    oracle_check,
    residuals_from_mul,
    table_equal,
    verify_axioms,
)
from resglue.filters import check_lower_pair, check_quadruple
from resglue.gluing import (
    Gluing,
    bottomize,
    f_gluing,
    fi_gluing,
    iterated_partial_gluing,
    one_sum,
    partial_gluing_tau,
    partial_upper_gluing,
    relax_divisions,
    splitting_coatom,
)
from resglue.partial import (
    LowerTriple,
    PartialRL,
    extract_lower_triple,
    extract_upper_triple,
    fit_two_element,
    upper_triple_from_total,
)

from helpers import luk, two_coatom_partial, two_potent_4chain, zchain


def identity_triple(a):
    ar = np.arange(a.n, dtype=np.int64)
    return LowerTriple(PartialRL.from_total(a), ar, ar.copy())


def fold_triple(a):
    """View a stack of simple 2-potent blocks as a lower triple."""
    sigma = np.array([int(a.mul[x, x]) for x in range(a.n)], dtype=np.int64)
    gamma = np.empty(a.n, dtype=np.int64)
    for x in range(a.n):
        if x == a.unit:
            gamma[x] = a.unit
        else:
            blk = [z for z in range(a.n) if z != a.unit
                   and int(a.mul[z, z]) == int(a.mul[x, x])]
            gamma[x] = max(blk)
    return relax_divisions(a, sigma, gamma)


def godel_diamond():
    leq = np.zeros((4, 4), dtype=bool)
    for i in range(4):
        leq[i, i] = leq[i, 3] = True
    leq[0, 1] = leq[0, 2] = True
    meet = np.array([[0, 0, 0, 0], [0, 1, 0, 1],
                     [0, 0, 2, 2], [0, 1, 2, 3]], dtype=np.int64)
    return from_leq_mul(leq, meet, 3, zero=0)


# -- 1-sum ---------------------------------------------------------------


def test_one_sum_of_two_element_chains():
    g = one_sum(godel_chain(2), godel_chain(2))
    assert g.mode == "one_sum"
    assert table_equal(g.result, godel_chain(3))


def test_one_sum_lukasiewicz_parts():
    r = one_sum(luk(3), luk(3)).result
    assert r.n == 5
    assert verify_axioms(r).ok and oracle_check(r).ok
    # the glued product is 2-potent but not 3-potent-free: x^2 = x^3
    for x in range(r.n):
        x2 = int(r.mul[x, x])
        assert int(r.mul[x, x2]) == int(r.mul[x2, x2]) == x2 or x == r.unit
    # cross products collapse to the lower copy
    assert int(r.mul[1, 3]) == int(r.mul[3, 1]) == 1


def test_one_sum_is_associative_on_the_nose():
    parts = [godel_chain(3), luk(3), zchain(3)]
    for a, b, c in itertools.permutations(parts):
        lhs = one_sum(one_sum(a, b).result, c).result
        rhs = one_sum(a, one_sum(b, c).result).result
        assert table_equal(lhs, rhs)


def test_one_sum_trivial_unit():
    l3 = luk(3)
    assert table_equal(one_sum(godel_chain(1), l3).result, l3)
    assert table_equal(one_sum(l3, godel_chain(1)).result, l3)


def test_one_sum_rejects_non_integral_parts():
    sugihara = from_leq_mul(
        chain_leq(3), np.array([[0, 0, 0], [0, 1, 2], [0, 2, 2]]), 1)
    v = verify_axioms(sugihara)
    assert not v.ok and v.violations[0].law == "integrality"
    with pytest.raises(ValueError, match="not 1-summable"):
        one_sum(sugihara, godel_chain(2))
    with pytest.raises(ValueError, match="not 1-summable"):
        one_sum(godel_chain(2), sugihara)


# -- gluing over a filter --------------------------------------------------


def test_f_gluing_with_trivial_filter_is_one_sum():
    for b, c in ((godel_chain(3), luk(3)), (luk(3), godel_chain(4))):
        g = f_gluing(b, {b.unit}, c, f_in_c=(c.unit,))
        assert table_equal(g.result, one_sum(b, c).result)


def test_f_gluing_godel_chains():
    g = f_gluing(godel_chain(4), {2, 3}, godel_chain(3), f_in_c=(1, 2))
    assert table_equal(g.result, godel_chain(5))
    assert g.filt == frozenset({3, 4})
    assert g.ideal == frozenset()


def test_f_gluing_two_potent_parts():
    b4 = two_potent_4chain()
    g = f_gluing(b4, {2, 3}, b4, f_in_c=(2, 3))
    r = g.result
    assert r.n == 6
    assert verify_axioms(r).ok and oracle_check(r).ok
    # sigma collapse: lower-part elements multiply across to their class floor
    assert int(r.mul[1, 2]) == 0  # a * a' = sigma(a) = 0
    assert int(r.ldiv[2, 1]) == 1  # a' \ a = gamma(a) = a


# -- filter-ideal gluing -----------------------------------------------------


def quad_fi():
    g4 = godel_chain(4)
    return check_quadruple(g4, {2, 3}, g4, ideal={0},
                           f_in_c=(2, 3), i_in_c=(0,))


def test_fi_gluing_godel_over_shared_ends():
    q = quad_fi()
    assert q.ok
    g = fi_gluing(q)
    assert table_equal(g.result, godel_chain(5))
    assert g.b_map == (0, 1, 3, 4)
    assert g.c_map == (0, 2, 3, 4)
    prov = g.provenance()
    assert prov["mode"] == "fi_gluing" and prov["strict"]


def test_fi_gluing_empty_ideal_is_f_gluing():
    g4, g3 = godel_chain(4), godel_chain(3)
    q = check_quadruple(g4, {2, 3}, g3, ideal=(), f_in_c=(1, 2), i_in_c=())
    assert q.ok
    assert table_equal(fi_gluing(q).result,
                       f_gluing(g4, {2, 3}, g3, f_in_c=(1, 2)).result)


def test_fi_gluing_degenerate_lower_part():
    # B = F u I leaves nothing proper below: the result is the upper algebra
    q = check_quadruple(godel_chain(2), {1}, luk(3), ideal={0},
                        f_in_c=(2,), i_in_c=(0,))
    assert q.ok
    assert table_equal(fi_gluing(q).result, luk(3))


def test_fi_gluing_rejects_incompatible_quadruple():
    q = check_quadruple(godel_chain(3), {2}, luk(3), ideal={0},
                        f_in_c=(2,), i_in_c=(0,))
    assert not q.ok
    with pytest.raises(ValueError, match="incompatible inputs"):
        fi_gluing(q)


def test_gluing_result_is_the_unique_extension():
    # changing any single product cell either breaks the axioms or changes
    # the glued parts, so the construction admits no rival completion
    g = fi_gluing(quad_fi())
    d = g.result
    b = c = godel_chain(4)
    for i in range(d.n):
        for j in range(d.n):
            for v in range(d.n):
                if v == int(d.mul[i, j]):
                    continue
                mul = d.mul.copy()
                mul[i, j] = v
                try:
                    ld, rd = residuals_from_mul(d.leq, mul)
                except NotResiduated:
                    continue
                alg = FiniteRL(d.leq, d.join, d.meet, mul, ld, rd,
                               d.unit, d.zero)
                if not verify_axioms(alg).ok:
                    continue
                changed = any(
                    int(mul[m[x], m[y]]) != m[int(part.mul[x, y])]
                    for part, m in ((b, g.b_map), (c, g.c_map))
                    for x in range(part.n) for y in range(part.n))
                assert changed, (i, j, v)


def test_chain_parts_embed_in_the_gluing():
    b4, g3 = godel_chain(4), godel_chain(3)
    g = f_gluing(b4, {2, 3}, g3, f_in_c=(1, 2))
    assert hom_violation(b4, g.result, g.b_map) is None
    # the upper part keeps all operations but its old zero lands mid-chain
    g3_free = from_leq_mul(g3.leq, g3.mul, g3.unit)
    assert hom_violation(g3_free, g.result, g.c_map) is None


def test_lower_join_redirect_breaks_the_lattice_embedding():
    dia = godel_diamond()
    g = one_sum(dia, godel_chain(2))
    r = g.result
    # a v b used to be 1; now it is the bottom of the upper part
    a, b = g.b_map[1], g.b_map[2]
    assert int(r.join[a, b]) == g.c_map[0]
    assert hom_violation(dia, r, g.b_map) is not None
    # the order embedding survives even though the join map does not
    for x in range(dia.n):
        for y in range(dia.n):
            assert bool(dia.leq[x, y]) == \
                bool(r.leq[g.b_map[x], g.b_map[y]])
    assert verify_axioms(r).ok and oracle_check(r).ok


# -- bottomize ---------------------------------------------------------------


def test_bottomize_trivial_filter_is_one_sum_with_two_chain():
    g3 = godel_chain(3)
    bb = bottomize(g3, {g3.unit})
    assert table_equal(bb.result, one_sum(g3, godel_chain(2)).result)


def test_bottomize_two_potent_chain():
    b4 = two_potent_4chain()
    bb = bottomize(b4, {2, 3})
    r = bb.result
    assert r.n == 5 and bb.b_map == (0, 1, 3, 4)
    bot = 2
    assert verify_axioms(r).ok and oracle_check(r).ok
    rep = check_lower_pair(b4, {2, 3})
    sig, gam = rep.pair.sigma, rep.pair.gamma
    for x in (0, 1):
        # the new point multiplies as sigma and divides as gamma
        assert int(r.mul[bot, bb.b_map[x]]) == bb.b_map[int(sig[x])]
        assert int(r.ldiv[bot, bb.b_map[x]]) == bb.b_map[int(gam[x])]
    assert int(r.mul[bot, 3]) == bot and int(r.ldiv[3, bot]) == bot
    assert int(r.ldiv[bot, 3]) == r.unit
    # the enlarged filter forms a lower pair again
    assert bb.filt == frozenset({2, 3, 4})
    assert check_lower_pair(r, bb.filt).verdict == "lower"


def test_bottomize_keeps_old_tables():
    b4 = two_potent_4chain()
    bb = bottomize(b4, {2, 3})
    r = bb.result
    m = bb.b_map
    for x in range(4):
        for y in range(4):
            assert int(r.mul[m[x], m[y]]) == m[int(b4.mul[x, y])]
            assert int(r.ldiv[m[x], m[y]]) == m[int(b4.ldiv[x, y])]


def test_bottomize_needs_a_full_lower_pair():
    with pytest.raises(ValueError, match="lower-compatible"):
        bottomize(two_potent_4chain(), {1, 2, 3})


# -- partial gluings ---------------------------------------------------------


def test_splitting_coatom():
    assert splitting_coatom(godel_chain(4)) == 2
    assert splitting_coatom(two_coatom_partial()) is None
    assert splitting_coatom(godel_chain(1)) is None


def test_relax_divisions_mask():
    k = zchain(3)
    t = relax_divisions(k, np.array([0, 0, 2]), np.array([1, 1, 2]))
    assert int(t.k.ldiv[1, 0]) == UNDEF
    assert int(t.k.rdiv[0, 1]) == UNDEF
    assert int((t.k.ldiv == UNDEF).sum()) == 1


def test_upper_gluing_with_identity_triple_is_one_sum():
    g3, c2 = godel_chain(3), godel_chain(2)
    pu = partial_upper_gluing(identity_triple(g3), PartialRL.from_total(c2))
    assert pu.result.is_total
    assert table_equal(pu.result.to_total(), one_sum(g3, c2).result)


def test_upper_gluing_fills_holes_like_fit_two_element():
    t = extract_lower_triple(two_potent_4chain(), {2, 3})
    pu = partial_upper_gluing(t, PartialRL.from_total(godel_chain(2)))
    fitted, _ = fit_two_element(t)
    assert table_equal(pu.result.to_total(), fitted)


def test_upper_gluing_keeps_unfillable_holes():
    l5 = two_coatom_partial()
    pu = partial_upper_gluing(identity_triple(godel_chain(3)), l5)
    r = pu.result
    assert not r.is_total
    assert int((r.ldiv == UNDEF).sum()) == 1
    # a holed triple against a two-coatom top: both hole kinds survive
    t = extract_lower_triple(two_potent_4chain(), {2, 3})
    r = partial_upper_gluing(t, l5).result
    holes = sorted((int(x), int(y)) for x, y in np.argwhere(r.ldiv == UNDEF))
    assert holes == [(1, 0), (3, 2)]
    from resglue.partial import validate_partial
    assert validate_partial(r).ok


def test_upper_gluing_rejects_pattern_violations():
    l5 = two_coatom_partial()
    ldiv = l5.ldiv.copy()
    ldiv[1, 0] = 0  # the hole is mandatory: no witness dominates both coatoms
    bad = PartialRL(l5.leq, l5.join, l5.meet, l5.mul, ldiv, l5.rdiv,
                    l5.unit, l5.zero)
    with pytest.raises(ValueError, match="invalid upper part"):
        partial_upper_gluing(identity_triple(godel_chain(3)), bad)


def test_tau_gluing_folds_the_iterated_stack():
    s3 = zchain(3)
    g = partial_gluing_tau(fold_triple(s3), {0}, upper_triple_from_total(s3))
    assert g.mode == "partial_tau"
    assert g.result.is_total
    d2 = iterated_partial_gluing([s3, s3])
    assert table_equal(g.result.to_total(), d2)
    assert d2.mul.tolist() == [[0, 0, 0, 0, 0],
                               [0, 0, 0, 0, 1],
                               [0, 0, 2, 2, 2],
                               [0, 0, 2, 2, 3],
                               [0, 1, 2, 3, 4]]
    assert d2.ldiv.tolist() == [[4, 4, 4, 4, 4],
                                [3, 4, 4, 4, 4],
                                [1, 1, 4, 4, 4],
                                [1, 1, 3, 4, 4],
                                [0, 1, 2, 3, 4]]


def test_tau_gluing_with_ideal_divisors():
    # the upper part of the Lukasiewicz 3-chain divides into the deleted
    # zero; the filled division must point at the divisor image, not gamma
    l3 = luk(3)
    u = extract_upper_triple(l3, {0})
    g = partial_gluing_tau(fold_triple(l3), {0}, u)
    assert table_equal(g.result.to_total(), zchain(4))


def test_tau_gluing_condition_names_in_rejections():
    l3 = luk(3)
    u = extract_upper_triple(l3, {0})
    with pytest.raises(ValueError, match="A2"):
        partial_gluing_tau(identity_triple(l3), {0}, u)
    dia = godel_diamond()
    with pytest.raises(ValueError) as exc:
        partial_gluing_tau(identity_triple(dia), (),
                           extract_upper_triple(dia, {0}))
    msg = str(exc.value)
    assert "A1" in msg and "A3" in msg and "A4" in msg


def test_iterated_gluing_direct_values():
    s3 = zchain(3)
    d3 = iterated_partial_gluing([s3, s3, s3])
    assert d3.n == 7
    assert verify_axioms(d3).ok and oracle_check(d3).ok
    # same block: global coatom; lower block: that block's coatom
    assert int(d3.ldiv[3, 2]) == 5
    assert int(d3.ldiv[5, 2]) == 3
    assert int(d3.ldiv[5, 0]) == 1
    assert int(d3.mul[5, 5]) == 4
    assert int(d3.mul[5, 1]) == 0


def test_iterated_gluing_of_two_chains_is_godel():
    assert table_equal(iterated_partial_gluing([godel_chain(2)] * 3),
                       godel_chain(4))
    assert table_equal(iterated_partial_gluing([zchain(3)]), zchain(3))


def test_iterated_fold_equals_direct_everywhere():
    pool = [godel_chain(2), zchain(3), zchain(4)]
    for k in (2, 3):
        for blocks in itertools.product(pool, repeat=k):
            direct = iterated_partial_gluing(list(blocks))
            acc = blocks[0]
            for nxt in blocks[1:]:
                g = partial_gluing_tau(fold_triple(acc), {0},
                                       upper_triple_from_total(nxt))
                acc = g.result.to_total()
            assert table_equal(acc, direct)


def test_iterated_gluing_rejects_bad_blocks():
    with pytest.raises(ValueError, match="unusable"):
        iterated_partial_gluing([zchain(3), luk(4)])
    with pytest.raises(ValueError, match="unusable"):
        iterated_partial_gluing([godel_diamond()])
    with pytest.raises(ValueError, match="at least one"):
        iterated_partial_gluing([])
