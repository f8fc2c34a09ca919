"""Finite residuated lattices as index tables.

Elements are 0..n-1.  The order is a full boolean matrix ``leq``; join, meet,
mul are n x n index tables; ``ldiv[x][z]`` holds x\\z and ``rdiv[z][y]`` holds
z/y.  The constructions in this package produce integral algebras (unit on
top), and canonicalized carriers keep the unit at index n-1.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _backend

UNDEF = -1
SUNDEF = -2  # strongly undefined division cells in partial algebras

_LAW_NAMES = {
    0: "join_not_upper_bound",
    1: "join_not_least",
    2: "meet_not_lower_bound",
    3: "meet_not_greatest",
}


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def format(self, labels=None):
        if labels is None:
            w = ",".join(str(v) for v in self.witness)
        else:
            w = ",".join(labels[v] if 0 <= v < len(labels) else str(v) for v in self.witness)
        msg = "%s at (%s)" % (self.law, w)
        if self.detail:
            msg += ": " + self.detail
        return msg


@dataclass
class Verdict:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls):
        return cls(True, [])

    @classmethod
    def failed(cls, law, witness, detail=""):
        return cls(False, [Violation(law, tuple(witness), detail)])

    def add(self, law, witness, detail=""):
        self.ok = False
        self.violations.append(Violation(law, tuple(witness), detail))

    def merge(self, other):
        if not other.ok:
            self.ok = False
            self.violations.extend(other.violations)
        return self

    def lines(self, labels=None):
        if self.ok:
            return ["ok"]
        return [v.format(labels) for v in self.violations]


class NotResiduated(ValueError):
    """mul has no residual at the recorded (x, z, side) witness."""

    def __init__(self, witness, message):
        super().__init__(message)
        self.witness = witness


def _as_table(t, n):
    arr = np.asarray(t, dtype=np.int64)
    if arr.shape != (n, n):
        raise ValueError("table shape %r, expected (%d, %d)" % (arr.shape, n, n))
    return arr


def _freeze(arr):
    arr.setflags(write=False)
    return arr


class FiniteRL:
    """A finite (integral) residuated lattice given by its tables."""

    def __init__(self, leq, join, meet, mul, ldiv=None, rdiv=None,
                 unit=None, zero=None, labels=None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise ValueError("leq must be square")
        if unit is None:
            raise ValueError("unit index required")
        self.n = n
        self.leq = _freeze(leq)
        self.join = _freeze(_as_table(join, n))
        self.meet = _freeze(_as_table(meet, n))
        self.mul = _freeze(_as_table(mul, n))
        if ldiv is None or rdiv is None:
            ld, rd = residuals_from_mul(self.leq, self.mul)
            ldiv = ld if ldiv is None else ldiv
            rdiv = rd if rdiv is None else rdiv
        self.ldiv = _freeze(_as_table(ldiv, n))
        self.rdiv = _freeze(_as_table(rdiv, n))
        self.unit = int(unit)
        self.zero = None if zero is None else int(zero)
        self.labels = None if labels is None else tuple(str(s) for s in labels)
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("need %d labels" % n)

    # -- basic views ---------------------------------------------------

    @property
    def elements(self):
        return range(self.n)

    @property
    def has_zero(self):
        return self.zero is not None

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def le(self, x, y):
        return bool(self.leq[x, y])

    def lt(self, x, y):
        return x != y and bool(self.leq[x, y])

    def __repr__(self):
        z = "" if self.zero is None else ", zero=%d" % self.zero
        return "FiniteRL(n=%d, unit=%d%s)" % (self.n, self.unit, z)

    def table_key(self):
        """Bytes key identifying the labelled algebra (used for dedup)."""
        z = -1 if self.zero is None else self.zero
        return (self.n, self.unit, z, self.leq.tobytes(), self.join.tobytes(),
                self.meet.tobytes(), self.mul.tobytes())

    def __eq__(self, other):
        return isinstance(other, FiniteRL) and self.table_key() == other.table_key()

    def __hash__(self):
        return hash(self.table_key())

    # -- derived structure ---------------------------------------------

    @cached_property
    def bottom(self):
        col = self.leq.all(axis=1)      # elements below everything
        idx = np.flatnonzero(col)
        if idx.size != 1:
            raise ValueError("no unique bottom")
        return int(idx[0])

    @cached_property
    def top(self):
        row = self.leq.all(axis=0)
        idx = np.flatnonzero(row)
        if idx.size != 1:
            raise ValueError("no unique top")
        return int(idx[0])

    @cached_property
    def height(self):
        """height[x] = length of a longest chain from the bottom to x."""
        order = sorted(self.elements, key=lambda x: int(self.leq[:, x].sum()))
        h = [0] * self.n
        for x in order:
            below = [y for y in self.elements if self.lt(y, x)]
            h[x] = 1 + max((h[y] for y in below), default=-1)
        return tuple(h)

    @cached_property
    def covers(self):
        """Sorted list of cover pairs (x, y) with x covered by y."""
        out = []
        for x in self.elements:
            for y in self.elements:
                if not self.lt(x, y):
                    continue
                if any(self.lt(x, z) and self.lt(z, y) for z in self.elements):
                    continue
                out.append((x, y))
        return out

    @cached_property
    def is_chain(self):
        return bool((self.leq | self.leq.T).all())

    @cached_property
    def is_commutative(self):
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def is_integral(self):
        return bool(self.leq[:, self.unit].all())

    def is_idempotent(self, x):
        return int(self.mul[x, x]) == x

    @cached_property
    def idempotents(self):
        return tuple(x for x in self.elements if self.is_idempotent(x))

    def coatoms(self):
        return [x for (x, y) in self.covers if y == self.top]

    def atoms(self):
        return [y for (x, y) in self.covers if x == self.bottom]

    def power(self, x, k):
        r = self.unit
        for _ in range(k):
            r = int(self.mul[r, x])
        return r

    def upset(self, xs):
        mask = np.zeros(self.n, dtype=bool)
        for x in xs:
            mask |= self.leq[x]
        return frozenset(int(i) for i in np.flatnonzero(mask))

    def downset(self, xs):
        mask = np.zeros(self.n, dtype=bool)
        for x in xs:
            mask |= self.leq[:, x]
        return frozenset(int(i) for i in np.flatnonzero(mask))

    # -- rebuilding ------------------------------------------------------

    def relabel(self, perm):
        """New algebra with element x renamed to perm[x]."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty(self.n, dtype=np.int64)
        inv[perm] = np.arange(self.n)

        def tab(t):
            return perm[t[np.ix_(inv, inv)]]

        labels = None
        if self.labels:
            labels = [self.labels[inv[i]] for i in range(self.n)]
        return FiniteRL(
            self.leq[np.ix_(inv, inv)], tab(self.join), tab(self.meet),
            tab(self.mul), tab(self.ldiv), tab(self.rdiv),
            unit=int(perm[self.unit]),
            zero=None if self.zero is None else int(perm[self.zero]),
            labels=labels)

    def canonicalize(self):
        """Relabel by (height, old index) so the unit lands at n-1."""
        order = sorted(self.elements, key=lambda x: (self.height[x], x))
        perm = np.empty(self.n, dtype=np.int64)
        for new, old in enumerate(order):
            perm[old] = new
        return self.relabel(perm)

    def restrict(self, subset):
        """Subalgebra on ``subset``; returns (algebra, old->new index map)."""
        sub = sorted(set(int(x) for x in subset))
        if not is_subuniverse(self, sub):
            raise ValueError("not closed under the operations")
        pos = {x: i for i, x in enumerate(sub)}
        ix = np.array(sub, dtype=np.int64)

        def tab(t):
            return np.array([[pos[int(t[x, y])] for y in sub] for x in sub], dtype=np.int64)

        labels = [self.label(x) for x in sub] if self.labels else None
        alg = FiniteRL(
            self.leq[np.ix_(ix, ix)], tab(self.join), tab(self.meet),
            tab(self.mul), tab(self.ldiv), tab(self.rdiv),
            unit=pos[self.unit],
            zero=pos[self.zero] if self.has_zero and self.zero in pos else None,
            labels=labels)
        return alg, pos

    def with_labels(self, labels):
        return FiniteRL(self.leq, self.join, self.meet, self.mul, self.ldiv,
                        self.rdiv, unit=self.unit, zero=self.zero, labels=labels)

    def op_tables(self):
        return np.stack([self.join, self.meet, self.mul, self.ldiv, self.rdiv])


@dataclass(frozen=True)
class Morphism:
    source: FiniteRL
    target: FiniteRL
    mapping: tuple

    def __call__(self, x):
        return self.mapping[x]

    @property
    def is_injective(self):
        return len(set(self.mapping)) == len(self.mapping)

    def check(self):
        w = hom_violation(self.source, self.target, self.mapping)
        if w is None:
            return Verdict.passed()
        return Verdict.failed(*w)

    def image(self):
        return frozenset(self.mapping)

    def compose(self, other):
        """self after other (other: A->B, self: B->C)."""
        return Morphism(other.source, self.target,
                        tuple(self.mapping[v] for v in other.mapping))


# -- residuals ----------------------------------------------------------


def residuals_from_mul(leq, mul):
    """Recompute both division tables from mul and the order.

    x\\z = max{y : xy <= z} and z/y = max{x : xy <= z}.  Raises NotResiduated
    with a witness when some set lacks a maximum.
    """
    leq = np.asarray(leq, dtype=bool)
    mul = np.asarray(mul, dtype=np.int64)
    n = leq.shape[0]
    prod_le = leq[mul, :]                      # [x,y,z] = xy <= z

    def solve(cand, side):
        # cand[a,b,y]: y belongs to the candidate set of cell (a,b)
        flat = cand.reshape(n * n, n)
        counts = flat.sum(axis=1)
        # y is the maximum iff it is a candidate dominating every candidate
        dominated = flat.astype(np.int64) @ leq.astype(np.int64)   # [cell, y]
        is_max = flat & (dominated == counts[:, None])
        ok = is_max.any(axis=1)
        if not ok.all():
            cell = int(np.flatnonzero(~ok)[0])
            a, b = divmod(cell, n)
            raise NotResiduated(
                (a, b, side),
                "no maximum among candidates for %s cell (%d,%d)" % (side, a, b))
        return is_max.argmax(axis=1).reshape(n, n).astype(np.int64)

    ldiv = solve(prod_le.transpose(0, 2, 1), "ldiv")
    rdiv = solve(prod_le.transpose(2, 1, 0), "rdiv")
    return ldiv, rdiv


def joins_from_leq(leq):
    """Derive join and meet tables from a lattice order; raises if not a lattice."""
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            ub = np.flatnonzero(leq[x] & leq[y])
            least = [int(z) for z in ub if leq[z, ub].all()]
            if len(least) != 1:
                raise ValueError("no join for (%d,%d)" % (x, y))
            join[x, y] = least[0]
            lb = np.flatnonzero(leq[:, x] & leq[:, y])
            greatest = [int(z) for z in lb if leq[lb, z].all()]
            if len(greatest) != 1:
                raise ValueError("no meet for (%d,%d)" % (x, y))
            meet[x, y] = greatest[0]
    return join, meet


def from_leq_mul(leq, mul, unit, zero=None, labels=None):
    """Build a FiniteRL from order and multiplication only."""
    join, meet = joins_from_leq(leq)
    return FiniteRL(leq, join, meet, mul, unit=unit, zero=zero, labels=labels)


def chain_leq(n):
    return np.tril(np.ones((n, n), dtype=bool)).T


def godel_chain(n, with_zero=True):
    """Idempotent chain 0 < 1 < ... < n-1 with xy = min(x, y)."""
    leq = chain_leq(n)
    idx = np.arange(n)
    mn = np.minimum.outer(idx, idx)
    mx = np.maximum.outer(idx, idx)
    # x\z is the top when x <= z, else z; z/y mirrors it
    ldiv = np.where(leq, n - 1, np.tile(idx, (n, 1)))
    return FiniteRL(leq, mx, mn, mn, ldiv, ldiv.T.copy(),
                    unit=n - 1, zero=0 if with_zero else None)


# -- axioms --------------------------------------------------------------


def verify_axioms(a, expect_bounded=None):
    """Full axiom check: order, lattice bounds, monoid, residuation,
    integrality, and (when the zero constant is present or demanded) that
    zero is the bottom.  Violations carry the first witness in index order.
    """
    v = Verdict.passed()
    n = a.n
    leq = a.leq
    if not leq.diagonal().all():
        v.add("order_reflexive", (int(np.flatnonzero(~leq.diagonal())[0]),))
    anti = leq & leq.T & ~np.eye(n, dtype=bool)
    bad = np.argwhere(anti)
    if bad.size:
        v.add("order_antisymmetric", tuple(int(t) for t in bad[0]))
    # transitivity: leq @ leq reaching outside leq
    reach = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    bad = np.argwhere(reach & ~leq)
    if bad.size:
        v.add("order_transitive", tuple(int(t) for t in bad[0]))
    if not v.ok:
        return v

    w = _backend.bounds_witness(leq, a.join, a.meet)
    if w is not None:
        kind, x, y, z = w
        v.add(_LAW_NAMES[kind], (x, y) if z < 0 else (x, y, z))

    e = a.unit
    bad = np.flatnonzero(a.mul[e, :] != np.arange(n))
    if bad.size:
        v.add("unit_left", (int(bad[0]),))
    bad = np.flatnonzero(a.mul[:, e] != np.arange(n))
    if bad.size:
        v.add("unit_right", (int(bad[0]),))

    w = _backend.assoc_witness(a.mul)
    if w is not None:
        v.add("associativity", w)

    w = _backend.residuation_witness(leq, a.mul, a.ldiv, a.rdiv)
    if w is not None:
        x, y, z = w
        v.add("residuation", (x, y, z),
              "xy<=z / y<=x\\z / x<=z/y disagree")

    bad = np.flatnonzero(~leq[:, e])
    if bad.size:
        v.add("integrality", (int(bad[0]),), "element above the unit")

    bounded = a.has_zero if expect_bounded is None else expect_bounded
    if bounded:
        if a.zero is None:
            v.add("zero_missing", ())
        else:
            bad = np.flatnonzero(~leq[a.zero, :])
            if bad.size:
                v.add("zero_not_bottom", (int(bad[0]),))
    return v


def oracle_check(a):
    """Cross-check stored tables against independent recomputation.

    join/meet are rebuilt from leq and ldiv/rdiv from mul; any disagreement
    is reported.  This is the --oracle path of the CLI verify command.
    """
    v = Verdict.passed()
    try:
        join, meet = joins_from_leq(a.leq)
    except ValueError as exc:
        v.add("lattice_incomplete", (), str(exc))
        return v
    bad = np.argwhere(join != a.join)
    if bad.size:
        v.add("join_table_mismatch", tuple(int(t) for t in bad[0]))
    bad = np.argwhere(meet != a.meet)
    if bad.size:
        v.add("meet_table_mismatch", tuple(int(t) for t in bad[0]))
    try:
        ldiv, rdiv = residuals_from_mul(a.leq, a.mul)
    except NotResiduated as exc:
        v.add("not_residuated", exc.witness[:2], str(exc))
        return v
    bad = np.argwhere(ldiv != a.ldiv)
    if bad.size:
        v.add("ldiv_table_mismatch", tuple(int(t) for t in bad[0]))
    bad = np.argwhere(rdiv != a.rdiv)
    if bad.size:
        v.add("rdiv_table_mismatch", tuple(int(t) for t in bad[0]))
    return v


# -- subuniverses --------------------------------------------------------


def subalgebra_generated(a, seed, extra_tables=None):
    """Smallest subuniverse containing ``seed`` and the constants."""
    mask = 0
    for x in seed:
        mask |= 1 << int(x)
    mask |= 1 << a.unit
    if a.has_zero:
        mask |= 1 << a.zero
    tabs = a.op_tables() if extra_tables is None else extra_tables
    out = _backend.close_mask(tabs, mask, a.n)
    return tuple(i for i in range(a.n) if (out >> i) & 1)


def is_subuniverse(a, subset, with_zero=True):
    s = set(subset)
    if a.unit not in s:
        return False
    if with_zero and a.has_zero and a.zero not in s:
        return False
    for t in (a.join, a.meet, a.mul, a.ldiv, a.rdiv):
        for x in s:
            for y in s:
                if int(t[x, y]) not in s:
                    return False
    return True


# -- morphisms -----------------------------------------------------------


def hom_violation(a, b, mapping):
    """First operation cell broken by ``mapping``, or None."""
    m = np.asarray(mapping, dtype=np.int64)
    if m[a.unit] != b.unit:
        return ("unit_constant", (a.unit,), "unit not preserved")
    if a.has_zero:
        if not b.has_zero:
            return ("zero_constant", (a.zero,), "target lacks zero")
        if m[a.zero] != b.zero:
            return ("zero_constant", (a.zero,), "zero not preserved")
    names = ("join", "meet", "mul", "ldiv", "rdiv")
    for name, ta, tb in zip(names, (a.join, a.meet, a.mul, a.ldiv, a.rdiv),
                            (b.join, b.meet, b.mul, b.ldiv, b.rdiv)):
        lhs = m[ta]
        rhs = tb[np.ix_(m, m)]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = (int(t) for t in bad[0])
            return (name + "_not_preserved", (x, y), "")
    return None


def _invariants(alg):
    inv = []
    for x in alg.elements:
        down = int(alg.leq[:, x].sum())
        up = int(alg.leq[x, :].sum())
        inv.append((alg.height[x], down, up, alg.is_idempotent(x)))
    return inv


def find_homomorphisms(a, b, injective=False, fixed=None, limit=None,
                       exact_invariants=False):
    """Backtracking search for homomorphisms a -> b.

    Newly forced values (images of operation results) are propagated, which
    keeps the search shallow on generated algebras.  ``fixed`` pins chosen
    images; ``injective`` additionally enforces order reflection.  Results
    come out in lexicographic order of the mapping tuple.
    """
    if a.has_zero and not b.has_zero:
        return []
    na, nb = a.n, b.n
    if injective and na > nb:
        return []
    inv_a = _invariants(a)
    inv_b = _invariants(b)
    leq_a = a.leq.tolist()
    leq_b = b.leq.tolist()
    tabs_a = [t.tolist() for t in (a.join, a.meet, a.mul, a.ldiv, a.rdiv)]
    tabs_b = [t.tolist() for t in (b.join, b.meet, b.mul, b.ldiv, b.rdiv)]

    def compatible(x, u):
        ha, da, ua, ia = inv_a[x]
        hb, db, ub, ib = inv_b[u]
        if exact_invariants:
            return (ha, da, ua, ia) == (hb, db, ub, ib)
        if ia and not ib:
            return False
        if injective:
            if (not ia) and ib:
                return False
            if hb < ha or db < da or ub < ua:
                return False
        return True

    assign = [-1] * na
    used = [0] * nb
    results = []

    def set_val(x, u, trail):
        cur = assign[x]
        if cur == u:
            return True
        if cur != -1:
            return False
        if injective and used[u]:
            return False
        if not compatible(x, u):
            return False
        la, lb = leq_a[x], leq_b[u]
        lat, lbt = [row[x] for row in leq_a], [row[u] for row in leq_b]
        for y in range(na):
            w = assign[y]
            if w == -1:
                continue
            if la[y] and not lb[w]:
                return False
            if lat[y] and not lbt[w]:
                return False
            if injective:
                if lb[w] and not la[y]:
                    return False
                if lbt[w] and not lat[y]:
                    return False
        assign[x] = u
        used[u] += 1
        trail.append(x)
        return True

    def undo(trail, upto):
        while len(trail) > upto:
            x = trail.pop()
            used[assign[x]] -= 1
            assign[x] = -1

    def propagate(trail, start):
        qi = start
        while qi < len(trail):
            x = trail[qi]
            qi += 1
            u = assign[x]
            for y in range(na):
                w = assign[y]
                if w == -1:
                    continue
                for ta, tb in zip(tabs_a, tabs_b):
                    if not set_val(ta[x][y], tb[u][w], trail):
                        return False
                    if not set_val(ta[y][x], tb[w][u], trail):
                        return False
        return True

    trail0 = []
    ok = set_val(a.unit, b.unit, trail0)
    if ok and a.has_zero:
        ok = set_val(a.zero, b.zero, trail0)
    if ok and fixed:
        for x, u in fixed.items():
            if not set_val(int(x), int(u), trail0):
                ok = False
                break
    if not ok or not propagate(trail0, 0):
        return []

    def dfs():
        x = next((i for i in range(na) if assign[i] == -1), -1)
        if x == -1:
            results.append(tuple(assign))
            return limit is not None and len(results) >= limit
        for u in range(nb):
            trail = []
            if set_val(x, u, trail) and propagate(trail, 0):
                if dfs():
                    return True
            undo(trail, 0)
        return False

    dfs()
    return results


def find_embeddings(a, b, fixed=None, limit=None):
    return find_homomorphisms(a, b, injective=True, fixed=fixed, limit=limit)


def are_isomorphic(a, b):
    """An isomorphism mapping, or None."""
    if a.n != b.n or a.has_zero != b.has_zero:
        return None
    if sorted(_invariants(a)) != sorted(_invariants(b)):
        return None
    if a.is_commutative != b.is_commutative or a.is_chain != b.is_chain:
        return None
    found = find_homomorphisms(a, b, injective=True, limit=1,
                               exact_invariants=True)
    return found[0] if found else None


def table_equal(a, b):
    """Strict table identity (same indices, not just isomorphism)."""
    return a.table_key() == b.table_key()


# -- quotients -----------------------------------------------------------


def congruence_classes(a, filt):
    """Partition of the carrier by the congruence of a filter."""
    f = set(filt)
    classes = []
    seen = [False] * a.n
    for x in a.elements:
        if seen[x]:
            continue
        cls = [y for y in a.elements
               if int(a.ldiv[x, y]) in f and int(a.ldiv[y, x]) in f
               and int(a.rdiv[x, y]) in f and int(a.rdiv[y, x]) in f]
        for y in cls:
            seen[y] = True
        classes.append(sorted(cls))
    return classes


def homomorphic_image(a, filt):
    """Quotient of ``a`` by a congruence filter; returns (algebra, projection).

    The carrier of the quotient is ordered by (height of class, class rep)
    so the unit class sits at the top index.
    """
    classes = congruence_classes(a, filt)
    rep_of = {}
    for cls in classes:
        for y in cls:
            rep_of[y] = cls[0]
    reps = sorted((cls[0] for cls in classes),
                  key=lambda r: (a.height[r], r))
    pos = {r: i for i, r in enumerate(reps)}
    proj = tuple(pos[rep_of[x]] for x in a.elements)
    m = len(reps)
    leq = np.zeros((m, m), dtype=bool)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            leq[i, j] = proj[int(a.join[r, s])] == j

    def tab(t):
        return np.array([[proj[int(t[r, s])] for s in reps] for r in reps],
                        dtype=np.int64)

    out = FiniteRL(leq, tab(a.join), tab(a.meet), tab(a.mul), tab(a.ldiv),
                   tab(a.rdiv), unit=proj[a.unit],
                   zero=proj[a.zero] if a.has_zero else None)
    # congruence well-definedness: all members of a class must project alike
    for t, name in ((a.mul, "mul"), (a.ldiv, "ldiv"), (a.rdiv, "rdiv"),
                    (a.join, "join"), (a.meet, "meet")):
        for x in a.elements:
            for y in a.elements:
                if proj[int(t[x, y])] != proj[int(t[rep_of[x], rep_of[y]])]:
                    raise ValueError("not a congruence filter: %s cell (%d,%d)"
                                     % (name, x, y))
    return out, proj


# -- text output ----------------------------------------------------------


def hasse_text(a):
    """Levelled element listing plus cover pairs, sorted by (height, index)."""
    byh = {}
    for x in sorted(a.elements, key=lambda x: (a.height[x], x)):
        byh.setdefault(a.height[x], []).append(x)
    lines = []
    for h in sorted(byh):
        names = []
        for x in byh[h]:
            tag = a.label(x)
            if x == a.unit:
                tag += "(1)"
            if a.has_zero and x == a.zero:
                tag += "(0)"
            names.append(tag)
        lines.append("height %d: %s" % (h, " ".join(names)))
    lines.append("covers: " + " ".join(
        "%s<%s" % (a.label(x), a.label(y)) for x, y in a.covers))
    return "\n".join(lines)


# -- enumeration -----------------------------------------------------------


def _poset_automorphisms(leq):
    n = leq.shape[0]
    rows = leq.tolist()
    down = [sum(r[x] for r in rows) for x in range(n)]
    up = [sum(rows[x]) for x in range(n)]
    perms = []

    def ok(p, x, u):
        for y, w in enumerate(p):
            if w == -1:
                continue
            if rows[x][y] != rows[u][w] or rows[y][x] != rows[w][u]:
                return False
        return True

    p = [-1] * n
    used = [False] * n

    def rec(x):
        if x == n:
            perms.append(tuple(p))
            return
        for u in range(n):
            if used[u] or down[x] != down[u] or up[x] != up[u]:
                continue
            if ok(p, x, u):
                p[x] = u
                used[u] = True
                rec(x + 1)
                used[u] = False
                p[x] = -1

    rec(0)
    return perms


def enumerate_lattices(n):
    """All n-element lattices up to isomorphism.

    Output orders use a linear extension labelling: x <= y implies x <= y as
    integers, so 0 is the bottom and n-1 the top.
    """
    if n == 1:
        return [np.ones((1, 1), dtype=bool)]
    ups = [None] * n          # strict upsets as lists
    ups[n - 1] = []
    found = []

    def lattice_ok(leq):
        try:
            joins_from_leq(leq)
        except ValueError:
            return False
        return True

    def emit():
        leq = np.eye(n, dtype=bool)
        for i in range(n):
            for j in ups[i]:
                leq[i, j] = True
        if lattice_ok(leq):
            found.append(leq)

    def rec(i):
        if i < 0:
            emit()
            return
        if i == 0:
            ups[0] = list(range(1, n))
            rec(-1)
            return
        # choose the strict upset of i among {i+1..n-1}; must contain n-1
        # and be closed upward in the already-built poset
        pool = list(range(i + 1, n))
        for bits in range(1 << (len(pool) - 1)):
            s = {n - 1}
            for k, j in enumerate(pool[:-1]):
                if (bits >> k) & 1:
                    s.add(j)
            if all(set(ups[j]) <= s for j in s):
                ups[i] = sorted(s)
                rec(i - 1)
        ups[i] = None

    rec(n - 2)
    # dedup up to poset isomorphism
    reps = []
    for leq in found:
        profile = sorted((int(leq[:, x].sum()), int(leq[x].sum()))
                         for x in range(n))
        new = True
        for rleq, rprof in reps:
            if rprof != profile:
                continue
            if _poset_iso(leq, rleq):
                new = False
                break
        if new:
            reps.append((leq, profile))
    return [leq for leq, _ in reps]


def _poset_iso(la, lb):
    n = la.shape[0]
    ra, rb = la.tolist(), lb.tolist()
    inv_a = [(sum(r[x] for r in ra), sum(ra[x])) for x in range(n)]
    inv_b = [(sum(r[x] for r in rb), sum(rb[x])) for x in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return False
    p = [-1] * n
    used = [False] * n

    def rec(x):
        if x == n:
            return True
        for u in range(n):
            if used[u] or inv_a[x] != inv_b[u]:
                continue
            good = True
            for y in range(x):
                if ra[x][y] != rb[u][p[y]] or ra[y][x] != rb[p[y]][u]:
                    good = False
                    break
            if good:
                p[x] = u
                used[u] = True
                if rec(x + 1):
                    return True
                used[u] = False
                p[x] = -1
        return False

    return rec(0)


def monoid_tables_on_lattice(leq, join, meet):
    """All integral residuated monoid structures on a given lattice.

    Yields mul tables (int64).  The unit is the top element.  Candidate cells
    are filled in descending index order with integrality, monotonicity and
    partial associativity pruning; residual existence is checked at the leaf.
    """
    n = leq.shape[0]
    top = n - 1
    rows = leq.tolist()
    meet_l = meet.tolist()
    mul = [[-1] * n for _ in range(n)]
    for x in range(n):
        mul[x][top] = x
        mul[top][x] = x
    cells = [(x, y) for x in range(n - 2, -1, -1) for y in range(n - 2, -1, -1)]
    down = [[z for z in range(n) if rows[z][x]] for x in range(n)]

    def monotone_ok(x, y, v):
        for x2 in range(n):
            for y2 in range(n):
                w = mul[x2][y2]
                if w == -1:
                    continue
                if rows[x2][x] and rows[y2][y] and not rows[w][v]:
                    return False
                if rows[x][x2] and rows[y][y2] and not rows[v][w]:
                    return False
        return True

    def assoc_ok(x, y):
        # check all triples whose evaluation is now fully determined and
        # involves the fresh cell (x, y)
        for z in range(n):
            # (x y) z vs x (y z)
            xy = mul[x][y]
            if mul[xy][z] != -1 and mul[y][z] != -1:
                yz = mul[y][z]
                if mul[x][yz] != -1 and mul[xy][z] != mul[x][yz]:
                    return False
            # (z x) y vs z (x y)
            zx = mul[z][x]
            if zx != -1 and mul[zx][y] != -1:
                if mul[z][xy] != -1 and mul[zx][y] != mul[z][xy]:
                    return False
            # (y z) x vs y (z x)  -- fresh cell may appear anywhere
            yz = mul[y][z]
            if yz != -1 and mul[yz][x] != -1 and zx != -1 \
                    and mul[y][zx] != -1 and mul[yz][x] != mul[y][zx]:
                return False
        return True

    def residuals_exist():
        for x in range(n):
            for z in range(n):
                ys = [y for y in range(n) if rows[mul[x][y]][z]]
                if not ys or not any(all(rows[y2][y1] for y2 in ys) for y1 in ys):
                    return False
                xs = [w for w in range(n) if rows[mul[w][x]][z]]
                if not xs or not any(all(rows[w2][w1] for w2 in xs) for w1 in xs):
                    return False
        return True

    def rec(k):
        if k == len(cells):
            # the incremental assoc check is a pruning heuristic only; the
            # completed table needs the full pass
            full = np.array(mul, dtype=np.int64)
            if _backend.assoc_witness(full) is None and residuals_exist():
                yield full
            return
        x, y = cells[k]
        for v in down[meet_l[x][y]]:
            if not monotone_ok(x, y, v):
                continue
            mul[x][y] = v
            if assoc_ok(x, y):
                yield from rec(k + 1)
            mul[x][y] = -1

    yield from rec(0)


def enumerate_irls(max_size, with_zero=False):
    """All integral residuated lattices with at most max_size elements,
    up to isomorphism.  ``with_zero`` marks the bottom as the 0 constant."""
    for n in range(1, max_size + 1):
        for leq in enumerate_lattices(n):
            join, meet = joins_from_leq(leq)
            autos = [p for p in _poset_automorphisms(leq) if p[n - 1] == n - 1]
            seen = set()
            for mul in monoid_tables_on_lattice(leq, join, meet):
                key = min(
                    tuple(int(p[mul[x, y]])
                          for x in np.argsort(p) for y in np.argsort(p))
                    for p in autos) if len(autos) > 1 else None
                if key is not None:
                    if key in seen:
                        continue
                    seen.add(key)
                yield FiniteRL(leq, join, meet, mul, unit=n - 1,
                               zero=0 if with_zero else None)
