"""Partial integral residuated lattices and the two abstract triple views.

A partial IRL keeps the carrier and order total but lets individual table
cells be undefined.  Cells hold UNDEF (-1), or SUNDEF (-2) for the stronger
flavour of undefined division that the tau-gluing distinguishes; defined-ness
masks are exposed as boolean arrays derived from the tables.

Two restricted shapes matter for the gluing constructions:

* a lower triple (K, sigma, gamma): everything total except divisions, which
  are undefined exactly when sigma(x) <= y and x is not below y.  This is what
  remains of a lower-compatible pair (B, F) after deleting F.
* an upper triple (L, ell, r): products and meets may be undefined (they fell
  into the deleted ideal), divisions stay total at finite size.

Both come with a fitting construction going back up: a two-element filter on
top of a lower triple, a single zero below an upper triple.  The round trips
extract(fit(t)) == t are exercised in the tests.
"""

from dataclasses import dataclass

import numpy as np

from .core import SUNDEF, UNDEF, FiniteRL, Verdict, residuals_from_mul
from .filters import FilterIdealPair, check_lower_pair, check_upper_pair

__all__ = [
    "LowerTriple",
    "PartialRL",
    "UpperTriple",
    "extract_lower_triple",
    "extract_upper_triple",
    "fit_two_element",
    "fit_zero",
    "lower_triple_from_total",
    "upper_triple_from_total",
    "validate_lower_triple",
    "validate_partial",
    "validate_upper_triple",
]


def _table(t, n):
    arr = np.array(t, dtype=np.int64)
    if arr.shape != (n, n):
        raise ValueError("table shape %r, expected (%d, %d)" % (arr.shape, n, n))
    if arr.max() >= n or arr.min() < SUNDEF:
        raise ValueError("table entries out of range")
    arr.setflags(write=False)
    return arr


class PartialRL:
    """An IRL whose tables may contain UNDEF/SUNDEF cells."""

    def __init__(self, leq, join, meet, mul, ldiv, rdiv, unit,
                 zero=None, labels=None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        self.n = n
        leq = leq.copy()
        leq.setflags(write=False)
        self.leq = leq
        self.join = _table(join, n)
        self.meet = _table(meet, n)
        self.mul = _table(mul, n)
        self.ldiv = _table(ldiv, n)
        self.rdiv = _table(rdiv, n)
        self.unit = int(unit)
        self.zero = None if zero is None else int(zero)
        self.labels = None if labels is None else tuple(str(s) for s in labels)

    @classmethod
    def from_total(cls, a):
        return cls(a.leq, a.join, a.meet, a.mul, a.ldiv, a.rdiv,
                   a.unit, a.zero, a.labels)

    @property
    def elements(self):
        return range(self.n)

    def label(self, x):
        if self.labels is None:
            return str(x)
        return self.labels[x]

    def le(self, x, y):
        return bool(self.leq[x, y])

    def defined(self, table_name):
        """Boolean mask of defined cells for join/meet/mul/ldiv/rdiv."""
        return getattr(self, table_name) >= 0

    def strong_undef(self, table_name):
        return getattr(self, table_name) == SUNDEF

    @property
    def is_total(self):
        return all(bool(self.defined(t).all())
                   for t in ("join", "meet", "mul", "ldiv", "rdiv"))

    def to_total(self):
        if not self.is_total:
            raise ValueError("partial algebra has undefined cells")
        return FiniteRL(self.leq, self.join, self.meet, self.mul,
                        self.ldiv, self.rdiv, self.unit, self.zero, self.labels)

    def table_key(self):
        return (self.n, self.unit, self.zero, self.leq.tobytes(),
                self.join.tobytes(), self.meet.tobytes(), self.mul.tobytes(),
                self.ldiv.tobytes(), self.rdiv.tobytes())

    def __eq__(self, other):
        if not isinstance(other, PartialRL):
            return NotImplemented
        return self.table_key() == other.table_key()

    def __hash__(self):
        return hash(self.table_key())

    def __repr__(self):
        holes = sum(int((getattr(self, t) < 0).sum())
                    for t in ("join", "meet", "mul", "ldiv", "rdiv"))
        return "<PartialRL n=%d undefined_cells=%d>" % (self.n, holes)


def validate_partial(p, require_unit_products=True):
    """Check the partial IRL laws on every defined instance.

    Laws: the order is a partial order with top 1; defined joins/meets are
    actual least upper/greatest lower bounds; products are associative and
    order preserving where all participating applications are defined;
    x*1 = 1*x = x; divisions are monotone in the numerator, antitone in the
    denominator, and residuation holds pairwise where both sides are defined.
    """
    v = Verdict.passed()
    n = p.n
    leq = p.leq
    for x in range(n):
        if not leq[x, x]:
            v.add("order_reflexive", (x,))
        if not leq[x, p.unit]:
            v.add("integrality", (x,), "element not below the unit")
    for x in range(n):
        for y in range(n):
            if leq[x, y] and leq[y, x] and x != y:
                v.add("order_antisymmetric", (x, y))
            if not leq[x, y]:
                continue
            bad = np.flatnonzero(leq[y] & ~leq[x])
            if bad.size:
                v.add("order_transitive", (x, y, int(bad[0])))
    if not v.ok:
        return v

    for x in range(n):
        for y in range(n):
            j = int(p.join[x, y])
            if j >= 0:
                if not (leq[x, j] and leq[y, j]):
                    v.add("join_not_upper_bound", (x, y, j))
                above = leq[x] & leq[y]
                if not bool(leq[j][above].all()):
                    v.add("join_not_least", (x, y, j))
            m = int(p.meet[x, y])
            if m >= 0:
                if not (leq[m, x] and leq[m, y]):
                    v.add("meet_not_lower_bound", (x, y, m))
                below = leq[:, x] & leq[:, y]
                if not bool(leq[:, m][below].all()):
                    v.add("meet_not_greatest", (x, y, m))

    for x in range(n):
        for side in ((x, p.unit), (p.unit, x)):
            val = int(p.mul[side])
            if val < 0:
                if require_unit_products:
                    v.add("unit_product_undefined", side)
            elif val != x:
                v.add("unit_product", side, "product with 1 differs from x")

    mul = p.mul
    for x in range(n):
        for y in range(n):
            xy = int(mul[x, y])
            if xy < 0:
                continue
            for z in range(n):
                yz = int(mul[y, z])
                if yz < 0:
                    continue
                left = int(mul[xy, z])
                right = int(mul[x, yz])
                if left >= 0 and right >= 0 and left != right:
                    v.add("associativity", (x, y, z))

    for x in range(n):
        for y in range(n):
            if not leq[x, y]:
                continue
            for z in range(n):
                for a, b in ((mul[x, z], mul[y, z]), (mul[z, x], mul[z, y])):
                    if a >= 0 and b >= 0 and not leq[a, b]:
                        v.add("mul_monotone", (x, y, z))
            # numerator up, denominator down
            for z in range(n):
                a, b = int(p.ldiv[z, x]), int(p.ldiv[z, y])
                if a >= 0 and b >= 0 and not leq[a, b]:
                    v.add("ldiv_numerator_monotone", (z, x, y))
                a, b = int(p.ldiv[y, z]), int(p.ldiv[x, z])
                if a >= 0 and b >= 0 and not leq[a, b]:
                    v.add("ldiv_denominator_antitone", (x, y, z))
                a, b = int(p.rdiv[x, z]), int(p.rdiv[y, z])
                if a >= 0 and b >= 0 and not leq[a, b]:
                    v.add("rdiv_numerator_monotone", (z, x, y))
                a, b = int(p.rdiv[z, y]), int(p.rdiv[z, x])
                if a >= 0 and b >= 0 and not leq[a, b]:
                    v.add("rdiv_denominator_antitone", (x, y, z))

    for x in range(n):
        for y in range(n):
            xy = int(mul[x, y])
            if xy < 0:
                continue
            for z in range(n):
                ld = int(p.ldiv[x, z])
                if ld >= 0 and bool(leq[xy, z]) != bool(leq[y, ld]):
                    v.add("residuation", (x, y, z), "xy <= z vs y <= x\\z")
                rd = int(p.rdiv[z, y])
                if rd >= 0 and bool(leq[xy, z]) != bool(leq[x, rd]):
                    v.add("residuation", (x, y, z), "xy <= z vs x <= z/y")

    if p.zero is not None:
        if not bool(leq[p.zero].all()):
            v.add("zero_bottom", (p.zero,))
    return v


@dataclass(frozen=True)
class LowerTriple:
    """(K, sigma, gamma): the remainder of a lower-compatible pair below F."""

    k: PartialRL
    sigma: np.ndarray
    gamma: np.ndarray

    def table_key(self):
        return (self.k.table_key(), self.sigma.tobytes(), self.gamma.tobytes())

    def __eq__(self, other):
        if not isinstance(other, LowerTriple):
            return NotImplemented
        return self.table_key() == other.table_key()


def validate_lower_triple(t):
    """All the lower-triple laws at once, with witnesses."""
    k, sigma, gamma = t.k, t.sigma, t.gamma
    v = validate_partial(k)
    n = k.n
    one = k.unit
    leq = k.leq
    for name in ("join", "meet", "mul"):
        holes = np.argwhere(getattr(k, name) < 0)
        if holes.size:
            v.add("total_" + name, tuple(int(i) for i in holes[0]),
                  "%s must be total in a lower triple" % name)
    for tab, flip in ((k.ldiv, False), (k.rdiv, True)):
        for x in range(n):
            for y in range(n):
                val = int(tab[y, x] if flip else tab[x, y])
                should_hole = bool(leq[sigma[x], y]) and not bool(leq[x, y])
                if val == SUNDEF:
                    v.add("strong_undefined", (x, y),
                          "lower triples have only plainly undefined divisions")
                elif (val == UNDEF) != should_hole:
                    v.add("division_definedness", (x, y),
                          "undefined iff sigma(x) <= y and x not<= y")
    if int(sigma[one]) != one or int(gamma[one]) != one:
        v.add("unit_fixed", (one,), "sigma(1) and gamma(1) must be 1")
    for x in range(n):
        sx, gx = int(sigma[x]), int(gamma[x])
        if not leq[sx, x]:
            v.add("sigma_decreasing", (x,))
        if int(sigma[sx]) != sx:
            v.add("sigma_idempotent", (x,))
        if not leq[x, gx]:
            v.add("gamma_increasing", (x,))
        if int(gamma[gx]) != gx:
            v.add("gamma_idempotent", (x,))
        for y in range(n):
            if leq[x, y]:
                if not leq[sigma[x], sigma[y]]:
                    v.add("sigma_monotone", (x, y))
                if not leq[gamma[x], gamma[y]]:
                    v.add("gamma_monotone", (x, y))
            if bool(leq[sigma[x], y]) != bool(leq[x, gamma[y]]):
                v.add("residuated_pair", (x, y),
                      "sigma(x) <= y iff x <= gamma(y)")
    for x in range(n):
        for y in range(n):
            if x == one or y == one:
                continue
            xy = int(k.mul[x, y])
            if not (int(k.mul[x, sigma[y]]) == int(sigma[xy]) ==
                    int(k.mul[sigma[x], y])):
                v.add("strong_conucleus", (x, y),
                      "x sigma(y) = sigma(xy) = sigma(x) y fails")
            if not leq[xy, sigma[x]]:
                v.add("products_below_sigma", (x, y), "xy not<= sigma(x)")
            if not leq[k.mul[y, x], sigma[x]]:
                v.add("products_below_sigma", (y, x), "yx not<= sigma(x)")
    image = {int(sigma[x]) for x in range(n) if x != one}
    for x in range(n):
        if x == one:
            continue
        for s in image:
            if int(k.mul[x, s]) not in image or int(k.mul[s, x]) not in image:
                v.add("sigma_image_absorbing", (x, s))
    return v


@dataclass(frozen=True)
class UpperTriple:
    """(L, ell, r): the remainder of an upper-compatible pair above I."""

    l: PartialRL
    ell: np.ndarray
    r: np.ndarray

    def table_key(self):
        return (self.l.table_key(), self.ell.tobytes(), self.r.tobytes())

    def __eq__(self, other):
        if not isinstance(other, UpperTriple):
            return NotImplemented
        return self.table_key() == other.table_key()

    @property
    def d_ell(self):
        return frozenset(int(x) for x in np.flatnonzero(self.ell != UNDEF))

    @property
    def d_r(self):
        return frozenset(int(x) for x in np.flatnonzero(self.r != UNDEF))


def validate_upper_triple(t):
    """The nine upper-triple properties, each reported under its own name."""
    l, ell, r = t.l, t.ell, t.r
    v = validate_partial(l)
    n = l.n
    leq = l.leq
    for arr, name in ((ell, "ell"), (r, "r")):
        bad = np.flatnonzero((arr < UNDEF) | (arr >= n))
        if bad.size:
            v.add("map_range", (int(bad[0]),), name + " value out of range")
            return v
    d_ell = ell != UNDEF
    d_r = r != UNDEF

    # (1) ell and r form a Galois connection on their domains.
    for x in range(n):
        for y in range(n):
            a = d_ell[y] and leq[x, ell[y]]
            b = d_r[x] and leq[y, r[x]]
            if a != b:
                v.add("galois", (x, y), "x <= ell(y) iff y <= r(x)")

    # (2) domains are downward closed and the maps are order reversing.
    for y in range(n):
        for yp in range(n):
            if not leq[y, yp]:
                continue
            if d_r[yp]:
                if not d_r[y] or not leq[r[yp], r[y]]:
                    v.add("domain_down", (y, yp), "r not defined/antitone below")
            if d_ell[yp]:
                if not d_ell[y] or not leq[ell[yp], ell[y]]:
                    v.add("domain_down", (y, yp), "ell not defined/antitone below")

    # (3) products are undefined exactly on the rectangles carved by ell/r.
    for x in range(n):
        for y in range(n):
            hole = int(l.mul[x, y]) < 0
            via_r = d_r[y] and leq[x, r[y]]
            via_l = d_ell[x] and leq[y, ell[x]]
            if hole != via_r or hole != via_l:
                v.add("mul_definedness", (x, y),
                      "xy undefined iff x <= r(y) iff y <= ell(x)")

    # (4) a division is undefined exactly when no product witnesses it,
    # counting undefined products as witnesses (they land below everything).
    coatoms = [z for z in range(n) if z != l.unit and
               all(not (leq[z, w] and z != w) or w == l.unit
                   for w in range(n))]
    for x in range(n):
        for y in range(n):
            for left in (True, False):
                if left:
                    val = int(l.ldiv[x, y])
                    prods = [int(l.mul[x, z]) for z in range(n)]
                else:
                    val = int(l.rdiv[y, x])
                    prods = [int(l.mul[z, x]) for z in range(n)]
                wit = (d_ell[x] if left else d_r[x]) or any(
                    p >= 0 and leq[p, y] for p in prods)
                if (val < 0) == wit:
                    v.add("division_definedness", (x, y),
                          "undefined iff nothing multiplies below")
                if val == SUNDEF:
                    in_iv = [z for z in range(n) if leq[y, z] and z != l.unit]
                    ok = all(prods[z] < 0 or leq[prods[z], y] for z in in_iv)
                    if not ok or coatoms:
                        v.add("strongly_undefined", (x, y),
                              "strong marking needs a coatom-free algebra")

    # (5)/(6) the mixed identities tying divisions to ell and r.
    for x in range(n):
        for z in range(n):
            if d_ell[x] and d_r[z]:
                a = int(l.ldiv[x, r[z]])
                b = int(l.rdiv[ell[x], z])
                if (a < 0) != (b < 0) or (a >= 0 and a != b):
                    v.add("mixed_divisions", (x, z),
                          "x\\r(z) and ell(x)/z disagree")
            if not d_ell[x] and d_r[z]:
                a = int(l.ldiv[x, r[z]])
                if a < 0 or a != int(r[z]):
                    v.add("mixed_divisions", (x, z), "x\\r(z) must be r(z)")
            if not d_r[z] and d_ell[x]:
                a = int(l.rdiv[ell[x], z])
                if a < 0 or a != int(ell[x]):
                    v.add("mixed_divisions", (x, z), "ell(x)/z must be ell(x)")

    # (7) the strong form: a defined ell(x) bounds every x\z from below.
    for x in range(n):
        if d_ell[x]:
            for z in range(n):
                val = int(l.ldiv[x, z])
                if val < 0 or not leq[ell[x], val]:
                    v.add("strong_lower_bound", (x, z),
                          "ell(x) defined but not below x\\z")
        if d_r[x]:
            for w in range(n):
                val = int(l.rdiv[w, x])
                if val < 0 or not leq[r[x], val]:
                    v.add("strong_lower_bound", (x, w),
                          "r(x) defined but not below w/x")

    # (8) meets are undefined exactly on pairs with no common lower bound.
    for x in range(n):
        for y in range(n):
            hole = int(l.meet[x, y]) < 0
            common = bool((leq[:, x] & leq[:, y]).any())
            if hole == common:
                v.add("meet_definedness", (x, y),
                      "undefined iff no common lower bound")

    # (9) everything else is total.
    holes = np.argwhere(l.join < 0)
    if holes.size:
        v.add("total_join", tuple(int(i) for i in holes[0]))
    return v


def partial_residuation_holds(l):
    """xy <= z iff y <= x\\z iff x <= z/y, on defined products.

    The divisions are required to be defined and to witness the product
    ordering both ways; returns a Verdict.
    """
    v = Verdict.passed()
    n = l.n
    for x in range(n):
        for y in range(n):
            xy = int(l.mul[x, y])
            if xy < 0:
                continue
            for z in range(n):
                ld = int(l.ldiv[x, z])
                rd = int(l.rdiv[z, y])
                lhs = bool(l.leq[xy, z])
                if (ld >= 0 and bool(l.leq[y, ld])) != lhs:
                    v.add("partial_residuation", (x, y, z), "via x\\z")
                if (rd >= 0 and bool(l.leq[x, rd])) != lhs:
                    v.add("partial_residuation", (x, y, z), "via z/y")
    return v


def _submatrix(tab, keep, to_new, hole_pred=None):
    m = len(keep)
    out = np.full((m, m), UNDEF, dtype=np.int64)
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            val = int(tab[x, y])
            if hole_pred is not None and hole_pred(val):
                continue
            out[i, j] = to_new[val]
    return out


def extract_lower_triple(b, filt):
    """Delete a compatible filter, keeping (B-F) u {1} as a lower triple.

    Joins that used to land in F collapse to 1; divisions that used to land
    in F-{1} become undefined; sigma and gamma restrict to the remainder.
    """
    filt = frozenset(int(x) for x in filt)
    rep = check_lower_pair(b, filt)
    if rep.verdict != "lower":
        raise ValueError("not a lower-compatible pair: " +
                         "; ".join(rep.lines()))
    keep = [x for x in range(b.n) if x not in filt] + [b.unit]
    to_new = {x: i for i, x in enumerate(keep)}
    m = len(keep)
    one = m - 1
    leq = np.zeros((m, m), dtype=bool)
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            leq[i, j] = b.leq[x, y]

    join = np.empty((m, m), dtype=np.int64)
    meet = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    ldiv = np.empty((m, m), dtype=np.int64)
    rdiv = np.empty((m, m), dtype=np.int64)
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            jv = int(b.join[x, y])
            join[i, j] = one if jv in filt else to_new[jv]
            meet[i, j] = to_new[int(b.meet[x, y])]
            mul[i, j] = to_new[int(b.mul[x, y])]
            lv = int(b.ldiv[x, y])
            ldiv[i, j] = UNDEF if lv in filt and lv != b.unit else to_new[lv]
            rv = int(b.rdiv[x, y])
            rdiv[i, j] = UNDEF if rv in filt and rv != b.unit else to_new[rv]

    labels = None
    if b.labels is not None:
        labels = [b.labels[x] for x in keep]
    k = PartialRL(leq, join, meet, mul, ldiv, rdiv, unit=one,
                  zero=to_new.get(b.zero), labels=labels)
    sigma = np.array([to_new[int(rep.pair.sigma[x])] for x in keep],
                     dtype=np.int64)
    gamma = np.array([to_new[int(rep.pair.gamma[x])] for x in keep],
                     dtype=np.int64)
    sigma[one] = one
    gamma[one] = one
    return LowerTriple(k, sigma, gamma)


def lower_triple_from_total(a):
    """View a total IRL as the lower triple of (fit_two_element result, {f,1})."""
    return extract_lower_triple(*fit_two_element_raw(a))


def fit_two_element_raw(a):
    """Helper for lower_triple_from_total; see fit_two_element."""
    t = LowerTriple(PartialRL.from_total(a),
                    np.arange(a.n, dtype=np.int64),
                    np.arange(a.n, dtype=np.int64))
    return fit_two_element(t)


def fit_two_element(t):
    """Adjoin an idempotent coatom f to a lower triple.

    Returns (algebra, filter): the filter is {f, 1} and extracting it again
    gives back the triple.  f multiplies as sigma, divides as gamma, and the
    divisions that were undefined in K take the value f.
    """
    k, sigma, gamma = t.k, t.sigma, t.gamma
    kn = k.n
    inner = [x for x in range(kn) if x != k.unit]
    m = len(inner) + 2
    f = m - 2
    one = m - 1
    to_new = {x: i for i, x in enumerate(inner)}
    to_new[k.unit] = one

    leq = np.zeros((m, m), dtype=bool)
    for x in inner:
        for y in inner:
            leq[to_new[x], to_new[y]] = k.leq[x, y]
    leq[:, one] = True
    leq[one, one] = True
    leq[f, f] = True
    leq[f, one] = True
    for x in inner:
        leq[to_new[x], f] = True

    def lift(val):
        return one if val == k.unit else to_new[val]

    join = np.full((m, m), UNDEF, dtype=np.int64)
    meet = np.full((m, m), UNDEF, dtype=np.int64)
    mul = np.full((m, m), UNDEF, dtype=np.int64)
    ldiv = np.full((m, m), UNDEF, dtype=np.int64)
    rdiv = np.full((m, m), UNDEF, dtype=np.int64)
    for x in inner:
        i = to_new[x]
        for y in inner:
            j = to_new[y]
            jv = int(k.join[x, y])
            join[i, j] = f if jv == k.unit else to_new[jv]
            meet[i, j] = to_new[int(k.meet[x, y])]
            mul[i, j] = to_new[int(k.mul[x, y])]
            lv = int(k.ldiv[x, y])
            ldiv[i, j] = f if lv == UNDEF else lift(lv)
            rv = int(k.rdiv[x, y])
            rdiv[i, j] = f if rv == UNDEF else lift(rv)
        # the new coatom against the interior
        mul[f, i] = mul[i, f] = to_new[int(sigma[x])]
        ldiv[f, i] = rdiv[i, f] = to_new[int(gamma[x])] if gamma[x] != k.unit \
            else one
        ldiv[i, f] = rdiv[f, i] = one
        join[f, i] = join[i, f] = f
        meet[f, i] = meet[i, f] = i
    mul[f, f] = f
    ldiv[f, f] = rdiv[f, f] = one
    join[f, f] = meet[f, f] = f
    for z in range(m):
        mul[one, z] = mul[z, one] = z
        join[one, z] = join[z, one] = one
        meet[one, z] = meet[z, one] = z
        ldiv[one, z] = z          # 1\z = z
        ldiv[z, one] = one        # z\1 = 1
        rdiv[z, one] = z          # z/1 = z
        rdiv[one, z] = one        # 1/z = 1

    labels = None
    if k.labels is not None:
        labels = [k.labels[x] for x in inner] + ["f", k.labels[k.unit]]
    alg = FiniteRL(leq, join, meet, mul, ldiv, rdiv, unit=one,
                   zero=None if k.zero is None else to_new[k.zero],
                   labels=labels)
    return alg, frozenset({f, one})


def extract_upper_triple(c, ideal):
    """Delete a compatible ideal, keeping C-I as an upper triple.

    Products and meets that used to land in I become undefined; divisions
    stay total (their values sit above the numerator, hence outside I);
    ell/r remember how elements divided into the deleted part.
    """
    ideal = frozenset(int(x) for x in ideal)
    rep = check_upper_pair(c, ideal)
    if not rep.ok:
        raise ValueError("not an upper-compatible pair: " +
                         "; ".join(rep.lines()))
    keep = [x for x in range(c.n) if x not in ideal]
    to_new = {x: i for i, x in enumerate(keep)}
    m = len(keep)
    leq = np.zeros((m, m), dtype=bool)
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            leq[i, j] = c.leq[x, y]
    in_ideal = lambda val: val in ideal
    join = _submatrix(c.join, keep, to_new)
    meet = _submatrix(c.meet, keep, to_new, hole_pred=in_ideal)
    mul = _submatrix(c.mul, keep, to_new, hole_pred=in_ideal)
    ldiv = _submatrix(c.ldiv, keep, to_new)
    rdiv = _submatrix(c.rdiv, keep, to_new)
    labels = None
    if c.labels is not None:
        labels = [c.labels[x] for x in keep]
    l = PartialRL(leq, join, meet, mul, ldiv, rdiv, unit=to_new[c.unit],
                  labels=labels)
    ell = np.array([to_new.get(int(rep.pair.ell[x]), UNDEF)
                    if rep.pair.ell[x] != UNDEF else UNDEF for x in keep],
                   dtype=np.int64)
    r = np.array([to_new.get(int(rep.pair.r[x]), UNDEF)
                  if rep.pair.r[x] != UNDEF else UNDEF for x in keep],
                 dtype=np.int64)
    return UpperTriple(l, ell, r)


def upper_triple_from_total(a):
    """A total IRL as a trivial upper triple (nothing divides into the ideal)."""
    holes = np.full(a.n, UNDEF, dtype=np.int64)
    return UpperTriple(PartialRL.from_total(a), holes, holes.copy())


def fit_zero(t):
    """Adjoin a single zero below an upper triple.

    Returns (algebra, ideal {0}).  Undefined products and meets take the
    value 0; x\\0 is ell(x) when defined and 0 otherwise, mirrored for /.
    """
    l, ell, r = t.l, t.ell, t.r
    if int((l.ldiv < 0).sum()) or int((l.rdiv < 0).sum()):
        raise ValueError("upper triple has undefined divisions; "
                         "a single zero cannot represent them")
    ln = l.n
    m = ln + 1
    z = 0

    def up(x):
        return int(x) + 1

    leq = np.zeros((m, m), dtype=bool)
    leq[z, :] = True
    for x in range(ln):
        for y in range(ln):
            leq[up(x), up(y)] = l.leq[x, y]

    join = np.empty((m, m), dtype=np.int64)
    meet = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    ldiv = np.empty((m, m), dtype=np.int64)
    rdiv = np.empty((m, m), dtype=np.int64)
    one = up(l.unit)
    for x in range(ln):
        for y in range(ln):
            jv = int(l.join[x, y])
            join[up(x), up(y)] = up(jv)
            mv = int(l.meet[x, y])
            meet[up(x), up(y)] = z if mv < 0 else up(mv)
            pv = int(l.mul[x, y])
            mul[up(x), up(y)] = z if pv < 0 else up(pv)
            ldiv[up(x), up(y)] = up(int(l.ldiv[x, y]))
            rdiv[up(x), up(y)] = up(int(l.rdiv[x, y]))
    for x in range(ln):
        i = up(x)
        join[z, i] = join[i, z] = i
        meet[z, i] = meet[i, z] = z
        mul[z, i] = mul[i, z] = z
        ldiv[z, i] = one                       # 0\y = 1
        ldiv[i, z] = z if ell[x] == UNDEF else up(ell[x])   # x\0
        rdiv[i, z] = one                       # y/0 = 1
        rdiv[z, i] = z if r[x] == UNDEF else up(r[x])       # 0/x
    join[z, z] = meet[z, z] = mul[z, z] = z
    ldiv[z, z] = rdiv[z, z] = one

    labels = None
    if l.labels is not None:
        labels = ["0"] + list(l.labels)
    alg = FiniteRL(leq, join, meet, mul, ldiv, rdiv, unit=one, zero=z,
                   labels=labels)
    return alg, frozenset({z})
