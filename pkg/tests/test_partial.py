"""Partial algebras, lower/upper triples, and the fit/extract round trips."""

import numpy as np
import pytest

from resglue.core import SUNDEF, UNDEF, godel_chain, table_equal
from resglue.partial import (
    LowerTriple,
    PartialRL,
    UpperTriple,
    extract_lower_triple,
    extract_upper_triple,
    fit_two_element,
    fit_zero,
    lower_triple_from_total,
    partial_residuation_holds,
    upper_triple_from_total,
    validate_lower_triple,
    validate_partial,
    validate_upper_triple,
)

from helpers import luk, two_coatom_partial, two_potent_4chain, zchain


def test_partial_wrapper_roundtrip():
    g = godel_chain(4)
    p = PartialRL.from_total(g)
    assert p.is_total
    assert table_equal(p.to_total(), g)
    assert p.defined("mul").all()


def test_two_coatom_example_is_lawful():
    l5 = two_coatom_partial()
    assert not l5.is_total
    assert [(int(x), int(y)) for x, y in np.argwhere(l5.ldiv == UNDEF)] \
        == [(1, 0)]
    assert [(int(x), int(y)) for x, y in np.argwhere(l5.rdiv == UNDEF)] \
        == [(0, 1)]
    assert validate_partial(l5).ok
    with pytest.raises(ValueError):
        l5.to_total()
    # the maximally-divided property fails exactly because of the hole
    assert not partial_residuation_holds(l5).ok


def test_validate_partial_catches_wrong_value():
    l5 = two_coatom_partial()
    ldiv = l5.ldiv.copy()
    ldiv[2, 0] = 2  # c1 is not even a witness: c1*c1 = c1, not below 0
    bad = PartialRL(l5.leq, l5.join, l5.meet, l5.mul, ldiv, l5.rdiv,
                    l5.unit, l5.zero)
    assert not validate_partial(bad).ok


def test_extract_lower_triple_frozen():
    b4 = two_potent_4chain()
    t = extract_lower_triple(b4, {2, 3})
    assert t.k.n == 3 and t.k.unit == 2
    assert t.k.mul.tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    assert t.k.ldiv.tolist() == [[2, 2, 2], [UNDEF, 2, 2], [0, 1, 2]]
    assert t.k.rdiv.tolist() == [[2, UNDEF, 0], [2, 2, 1], [2, 2, 2]]
    assert t.sigma.tolist() == [0, 0, 2]
    assert t.gamma.tolist() == [1, 1, 2]
    assert validate_lower_triple(t).ok


def test_extract_rejects_non_pair():
    with pytest.raises(ValueError):
        extract_lower_triple(two_potent_4chain(), {1, 2, 3})


def test_fit_two_element_inverts_extract():
    b4 = two_potent_4chain()
    t = extract_lower_triple(b4, {2, 3})
    alg, filt = fit_two_element(t)
    assert filt == frozenset({2, 3})
    assert table_equal(alg, b4)
    # and extracting again returns the very same triple
    t2 = extract_lower_triple(alg, filt)
    assert t2 == t


def test_lower_triple_from_total_is_identity_shaped():
    g3 = godel_chain(3)
    t = lower_triple_from_total(g3)
    assert t.sigma.tolist() == [0, 1, 2]
    assert t.gamma.tolist() == [0, 1, 2]
    assert t.k.table_key() == PartialRL.from_total(g3).table_key()
    assert validate_lower_triple(t).ok


def test_lower_triple_definedness_law():
    # a division may be missing exactly when sigma(x) <= y and x not<= y;
    # removing the cross-level cells as well must be rejected
    k2 = zchain(3)
    sigma = np.array([0, 0, 2], dtype=np.int64)
    gamma = np.array([1, 1, 2], dtype=np.int64)
    ldiv = k2.ldiv.copy()
    rdiv = k2.rdiv.copy()
    ldiv[1, 0] = UNDEF
    rdiv[0, 1] = UNDEF
    good = LowerTriple(PartialRL(k2.leq, k2.join, k2.meet, k2.mul,
                                 ldiv, rdiv, k2.unit, k2.zero), sigma, gamma)
    assert validate_lower_triple(good).ok
    ldiv2 = k2.ldiv.copy()
    rdiv2 = k2.rdiv.copy()  # nothing removed: the (1,0) hole is mandatory
    lazy = LowerTriple(PartialRL(k2.leq, k2.join, k2.meet, k2.mul,
                                 ldiv2, rdiv2, k2.unit, k2.zero), sigma, gamma)
    rep = validate_lower_triple(lazy)
    assert not rep.ok
    assert any("division_definedness" in ln for ln in rep.lines())


def test_lower_triple_rejects_strong_undefined():
    t = extract_lower_triple(two_potent_4chain(), {2, 3})
    ldiv = t.k.ldiv.copy()
    ldiv[1, 0] = SUNDEF
    bad = LowerTriple(PartialRL(t.k.leq, t.k.join, t.k.meet, t.k.mul,
                                ldiv, t.k.rdiv, t.k.unit, t.k.zero),
                      t.sigma, t.gamma)
    rep = validate_lower_triple(bad)
    assert not rep.ok
    assert any("strong_undefined" in ln for ln in rep.lines())


def test_extract_upper_triple_frozen():
    l3 = luk(3)
    u = extract_upper_triple(l3, {0})
    assert u.l.n == 2 and u.l.unit == 1
    assert u.l.mul.tolist() == [[UNDEF, 0], [0, 1]]
    assert u.l.ldiv.tolist() == [[1, 1], [0, 1]]
    assert u.ell.tolist() == [0, UNDEF]
    assert u.r.tolist() == [0, UNDEF]
    assert validate_upper_triple(u).ok


def test_fit_zero_inverts_extract():
    l3 = luk(3)
    u = extract_upper_triple(l3, {0})
    alg, ideal = fit_zero(u)
    assert ideal == frozenset({0})
    assert table_equal(alg, l3)
    assert extract_upper_triple(alg, ideal) == u


def test_trivial_upper_triple():
    g3 = godel_chain(3)
    u = upper_triple_from_total(g3)
    assert u.ell.tolist() == [UNDEF] * 3
    assert validate_upper_triple(u).ok
    alg, ideal = fit_zero(u)
    assert alg.n == 4
    # nothing divides into the new zero except zero itself
    assert alg.ldiv[1:, 0].tolist() == [0, 0, 0]


def test_upper_triple_round_trip_idempotent_chain():
    g4 = godel_chain(4)
    u = extract_upper_triple(g4, {0, 1})
    alg, ideal = fit_zero(u)
    # collapsing a two-element ideal to a point is lossy by design
    assert alg.n == 3
    assert not table_equal(alg, g4)
