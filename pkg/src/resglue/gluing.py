"""Gluing constructions: stack one residuated lattice on top of another.

All constructions here take independent input algebras (carriers are
remapped internally, so callers never pre-arrange shared indices) and
return a :class:`Gluing` record carrying the result together with the
embeddings of both parts and the images of the shared filter/ideal.

The family:

* ``one_sum``        -- glue at the unit only (B below, C on top).
* ``f_gluing``       -- glue over a shared congruence filter F.
* ``fi_gluing``      -- glue over a filter F and an ideal I (takes a
  checked quadruple report, strict or non-strict).
* ``partial_upper_gluing`` -- filterless variant: a lower triple plus a
  partial algebra on top.
* ``partial_gluing_tau``   -- filterless and idealless variant driven by
  the operator quadruple (sigma, gamma, ell, r).
* ``iterated_partial_gluing`` -- ordinal stack of simple 2-potent chains.
* ``bottomize``      -- adjoin a new bottom to the filter.
"""

from dataclasses import dataclass

import numpy as np

from .core import UNDEF, FiniteRL, Verdict
from .filters import check_lower_pair, check_quadruple, ideal_violation
from .partial import (LowerTriple, PartialRL, validate_lower_triple,
                      validate_partial, validate_upper_triple)

__all__ = [
    "Gluing",
    "bottomize",
    "f_gluing",
    "fi_gluing",
    "fold_triple",
    "iterated_partial_gluing",
    "one_sum",
    "partial_gluing_tau",
    "partial_upper_gluing",
    "relax_divisions",
    "splitting_coatom",
]


@dataclass(frozen=True)
class Gluing:
    """A construction output plus provenance.

    b_map/c_map send indices of the lower/upper input into the result
    (c_map is None for single-input constructions).  filt and ideal are
    the images of the shared filter and ideal in the result.
    """

    result: object
    mode: str
    b_map: tuple
    c_map: object
    filt: frozenset
    ideal: frozenset
    strict: bool = True

    def provenance(self):
        return {
            "mode": self.mode,
            "strict": self.strict,
            "b_map": list(self.b_map),
            "c_map": None if self.c_map is None else list(self.c_map),
            "filter": sorted(self.filt),
            "ideal": sorted(self.ideal),
        }


def splitting_coatom(a):
    """The greatest element below the unit, or None.

    Present exactly when the carrier is the unit plus the downset of a
    single coatom; in that case every other element sits below it.
    """
    for z in range(a.n):
        if z == a.unit:
            continue
        if all(bool(a.leq[x, z]) for x in range(a.n) if x != a.unit):
            return z
    return None


def _least(a, members):
    for x in members:
        if all(bool(a.leq[x, y]) for y in members):
            return x
    return None


def _greatest(a, members):
    for x in members:
        if all(bool(a.leq[y, x]) for y in members):
            return x
    return None


# ---------------------------------------------------------------------------
# Gluing over a filter and an ideal (covers the pure-filter and 1-sum cases).

def fi_gluing(q):
    """Glue the two algebras of a compatible quadruple report.

    Layout of the result: ideal, then the proper lower part, then the
    proper upper part, then the filter, with the unit last.  Raises
    ValueError when the report is not ok.
    """
    return _glue_quadruple(q, "fi_gluing")


def f_gluing(b, filt, c, f_in_c=None, non_strict=False):
    """Glue b (below) and c (above) over the shared filter only."""
    q = check_quadruple(b, filt, c, ideal=(), f_in_c=f_in_c, i_in_c=(),
                        non_strict=non_strict)
    return _glue_quadruple(q, "f_gluing")


def one_sum(b, c):
    """Stack c on top of b, identifying only the units."""
    for name, a in (("lower", b), ("upper", c)):
        if not bool(a.leq[:, a.unit].all()):
            raise ValueError("not 1-summable: %s part is not integral" % name)
    q = check_quadruple(b, (b.unit,), c, ideal=(), f_in_c=(c.unit,),
                        i_in_c=())
    return _glue_quadruple(q, "one_sum")


def _glue_quadruple(q, mode):
    if not q.ok:
        raise ValueError("incompatible inputs:\n" + "\n".join(q.lines()))
    b, c = q.b, q.c
    fb, fc = set(q.f_b), set(q.f_c)
    ib, ic = set(q.i_b), set(q.i_c)

    i_part = sorted(q.i_c)
    b_part = [x for x in range(b.n) if x not in fb and x not in ib]
    c_part = [x for x in range(c.n) if x not in fc and x not in ic]
    f_part = sorted(x for x in fc if x != c.unit)

    new_c = {}
    idx = 0
    for xc in i_part:
        new_c[xc] = idx
        idx += 1
    pos_b = {}
    for xb in b_part:
        pos_b[xb] = idx
        idx += 1
    for xc in c_part + f_part:
        new_c[xc] = idx
        idx += 1
    new_c[c.unit] = idx
    unit = idx
    nn = idx + 1

    partner = dict(zip(q.f_b, q.f_c))
    partner.update(zip(q.i_b, q.i_c))
    map_b = [pos_b[x] if x in pos_b else new_c[partner[x]]
             for x in range(b.n)]
    map_c = [new_c[x] for x in range(c.n)]
    in_b = np.full(nn, UNDEF, dtype=np.int64)
    in_c = np.full(nn, UNDEF, dtype=np.int64)
    for xb, v in enumerate(map_b):
        in_b[v] = xb
    for xc, v in enumerate(map_c):
        in_c[v] = xc

    sigma = q.lower.pair.sigma
    gamma = q.lower.pair.gamma
    ell, rmap = q.upper.pair.ell, q.upper.pair.r
    bot_c = _least(c, [x for x in range(c.n) if x not in ic])
    top_b = _greatest(b, [x for x in range(b.n) if x not in fb])

    leq = np.zeros((nn, nn), dtype=bool)
    join = np.zeros((nn, nn), dtype=np.int64)
    meet = np.zeros((nn, nn), dtype=np.int64)
    mul = np.zeros((nn, nn), dtype=np.int64)
    ldiv = np.zeros((nn, nn), dtype=np.int64)
    rdiv = np.zeros((nn, nn), dtype=np.int64)

    for x in range(nn):
        xb, xc = int(in_b[x]), int(in_c[x])
        for y in range(nn):
            yb, yc = int(in_b[y]), int(in_c[y])
            both_b = xb >= 0 and yb >= 0
            both_c = xc >= 0 and yc >= 0

            if both_b:
                leq[x, y] = bool(b.leq[xb, yb])
            elif both_c:
                leq[x, y] = bool(c.leq[xc, yc])
            else:
                leq[x, y] = xb >= 0

            if both_b:
                jv = int(b.join[xb, yb])
                if jv in fb and xb not in fb and yb not in fb:
                    join[x, y] = map_c[bot_c]
                else:
                    join[x, y] = map_b[jv]
            elif both_c:
                join[x, y] = map_c[int(c.join[xc, yc])]
            else:
                join[x, y] = y if xb >= 0 else x

            if both_c:
                mv = int(c.meet[xc, yc])
                if mv in ic and xc not in ic and yc not in ic:
                    meet[x, y] = map_b[top_b]
                else:
                    meet[x, y] = map_c[mv]
            elif both_b:
                meet[x, y] = map_b[int(b.meet[xb, yb])]
            else:
                meet[x, y] = x if xb >= 0 else y

            if both_b:
                mul[x, y] = map_b[int(b.mul[xb, yb])]
            elif both_c:
                mul[x, y] = map_c[int(c.mul[xc, yc])]
            elif xb >= 0:
                mul[x, y] = map_b[int(sigma[xb])]
            else:
                mul[x, y] = map_b[int(sigma[yb])]

            if both_b:
                ldiv[x, y] = map_b[int(b.ldiv[xb, yb])]
            elif both_c:
                ldiv[x, y] = map_c[int(c.ldiv[xc, yc])]
            elif xb >= 0:
                ldiv[x, y] = unit
            elif ell[xc] != UNDEF:
                ldiv[x, y] = map_c[int(ell[xc])]
            else:
                ldiv[x, y] = map_b[int(gamma[yb])]

            if both_b:
                rdiv[x, y] = map_b[int(b.rdiv[xb, yb])]
            elif both_c:
                rdiv[x, y] = map_c[int(c.rdiv[xc, yc])]
            elif xc >= 0:
                rdiv[x, y] = unit
            elif rmap[yc] != UNDEF:
                rdiv[x, y] = map_c[int(rmap[yc])]
            else:
                rdiv[x, y] = map_b[int(gamma[xb])]

    zero = None
    if b.zero is not None and bool(leq[map_b[b.zero]].all()):
        zero = map_b[b.zero]
    elif c.zero is not None and bool(leq[map_c[c.zero]].all()):
        zero = map_c[c.zero]
    labels = None
    if b.labels is not None and c.labels is not None:
        labels = [""] * nn
        for xc in range(c.n):
            labels[map_c[xc]] = c.labels[xc]
        for xb in b_part:
            labels[map_b[xb]] = b.labels[xb]
        labels = tuple(labels)

    out = FiniteRL(leq, join, meet, mul, ldiv, rdiv, unit=unit, zero=zero,
                   labels=labels)
    return Gluing(out, mode, tuple(map_b), tuple(map_c),
                  frozenset(map_c[x] for x in q.f_c),
                  frozenset(map_c[x] for x in q.i_c),
                  strict=not q.non_strict)


# ---------------------------------------------------------------------------
# Bottom extension of the filter.

def bottomize(b, filt):
    """Adjoin a new bottom to the filter of a lower-compatible pair.

    The new element multiplies and divides against the rest of the
    carrier exactly like the collapse operators prescribe, and joins of
    non-filter elements that used to land in the filter are redirected
    onto it.
    """
    rep = check_lower_pair(b, filt)
    if rep.verdict != "lower":
        raise ValueError("not a lower-compatible pair:\n" +
                         "\n".join(rep.lines()))
    filt = rep.pair.filt
    sigma, gamma = rep.pair.sigma, rep.pair.gamma

    low = [x for x in range(b.n) if x not in filt]
    f_part = sorted(x for x in filt if x != b.unit)
    map_b = {}
    idx = 0
    for x in low:
        map_b[x] = idx
        idx += 1
    bot = idx
    idx += 1
    for x in f_part:
        map_b[x] = idx
        idx += 1
    map_b[b.unit] = idx
    unit = idx
    nn = idx + 1
    low_set = set(low)

    leq = np.zeros((nn, nn), dtype=bool)
    join = np.zeros((nn, nn), dtype=np.int64)
    meet = np.zeros((nn, nn), dtype=np.int64)
    mul = np.zeros((nn, nn), dtype=np.int64)
    ldiv = np.zeros((nn, nn), dtype=np.int64)
    rdiv = np.zeros((nn, nn), dtype=np.int64)

    for xo in range(b.n):
        x = map_b[xo]
        for yo in range(b.n):
            y = map_b[yo]
            leq[x, y] = bool(b.leq[xo, yo])
            jv = int(b.join[xo, yo])
            if jv in filt and xo in low_set and yo in low_set:
                join[x, y] = bot
            else:
                join[x, y] = map_b[jv]
            meet[x, y] = map_b[int(b.meet[xo, yo])]
            mul[x, y] = map_b[int(b.mul[xo, yo])]
            ldiv[x, y] = map_b[int(b.ldiv[xo, yo])]
            rdiv[x, y] = map_b[int(b.rdiv[xo, yo])]

    for xo in range(b.n):
        x = map_b[xo]
        in_f = xo in filt
        leq[x, bot] = not in_f
        leq[bot, x] = in_f
        join[x, bot] = join[bot, x] = bot if not in_f else x
        meet[x, bot] = meet[bot, x] = x if not in_f else bot
        mul[x, bot] = mul[bot, x] = bot if in_f else map_b[int(sigma[xo])]
        ldiv[bot, x] = unit if in_f else map_b[int(gamma[xo])]
        ldiv[x, bot] = bot if in_f else unit
        rdiv[x, bot] = unit if in_f else map_b[int(gamma[xo])]
        rdiv[bot, x] = bot if in_f else unit
    leq[bot, bot] = True
    join[bot, bot] = meet[bot, bot] = mul[bot, bot] = bot
    ldiv[bot, bot] = rdiv[bot, bot] = unit

    zero = None
    if b.zero is not None and bool(leq[map_b[b.zero]].all()):
        zero = map_b[b.zero]
    elif not low:
        zero = bot if b.zero is not None else None
    labels = None
    if b.labels is not None:
        labels = [""] * nn
        for xo in range(b.n):
            labels[map_b[xo]] = b.labels[xo]
        labels[bot] = "bot"
        labels = tuple(labels)

    out = FiniteRL(leq, join, meet, mul, ldiv, rdiv, unit=unit, zero=zero,
                   labels=labels)
    new_filt = frozenset([bot] + [map_b[x] for x in filt])
    return Gluing(out, "bottomize",
                  tuple(map_b[x] for x in range(b.n)), None,
                  new_filt, frozenset())


# ---------------------------------------------------------------------------
# Partial gluings.

def relax_divisions(a, sigma, gamma):
    """View a total algebra as a lower triple for the given operator pair.

    Divisions x\\y and y/x are forgotten exactly where the collapse makes
    them unrecoverable: sigma(x) <= y while x is not below y.  The caller
    is responsible for picking operators that actually satisfy the triple
    laws (use validate_lower_triple to confirm).
    """
    sigma = np.asarray(sigma, dtype=np.int64)
    gamma = np.asarray(gamma, dtype=np.int64)
    ldiv = a.ldiv.copy()
    rdiv = a.rdiv.copy()
    for x in range(a.n):
        for y in range(a.n):
            if bool(a.leq[sigma[x], y]) and not bool(a.leq[x, y]):
                ldiv[x, y] = UNDEF
                rdiv[y, x] = UNDEF
    k = PartialRL(a.leq, a.join, a.meet, a.mul, ldiv, rdiv, unit=a.unit,
                  zero=a.zero, labels=a.labels)
    return LowerTriple(k, sigma, gamma)


def fold_triple(a):
    """The lower triple that collapses a stack of simple 2-potent blocks.

    sigma is squaring and gamma sends each element to the top of its
    block, which is exactly the operator pair under which a finished
    stack accepts the next storey; feed the result to
    partial_gluing_tau to grow the stack by one.
    """
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


def _upper_part_violation(l):
    """Preconditions on the top algebra of a partial upper gluing.

    Everything must be total except divisions, and a division may be
    missing exactly when every element of [y, 1) multiplies below y and
    that interval has no greatest element.
    """
    checks = validate_partial(l)
    if not checks.ok:
        return checks
    for name in ("join", "meet", "mul"):
        holes = np.argwhere(~l.defined(name))
        if holes.size:
            x, y = (int(v) for v in holes[0])
            checks.add("total_" + name, (x, y),
                       "%s must be total in the upper part" % name)
    for name in ("ldiv", "rdiv"):
        cells = np.argwhere(l.strong_undef(name))
        if cells.size:
            x, y = (int(v) for v in cells[0])
            checks.add("strong_undef", (x, y),
                       "strong undefinedness has no place here")
    if not checks.ok:
        return checks
    for y in range(l.n):
        interval = [z for z in range(l.n)
                    if z != l.unit and bool(l.leq[y, z])]
        capped = _greatest(l, interval) is not None
        for x in range(l.n):
            if l.leq[x, y]:
                # x <= y forces x\y = y/x = 1 outright
                stuck = stuck_r = False
            else:
                stuck = not capped and \
                    all(bool(l.leq[int(l.mul[x, z]), y]) for z in interval)
                stuck_r = not capped and \
                    all(bool(l.leq[int(l.mul[z, x]), y]) for z in interval)
            if (int(l.ldiv[x, y]) == UNDEF) != stuck:
                checks.add("division_pattern", (x, y),
                           "x\\y definedness disagrees with the interval rule")
            if (int(l.rdiv[y, x]) == UNDEF) != stuck_r:
                checks.add("division_pattern", (y, x),
                           "y/x definedness disagrees with the interval rule")
    return checks


def partial_upper_gluing(t, l):
    """Glue a partial algebra on top of a lower triple, meeting only at 1.

    The result is partial in general; it is total exactly when the upper
    part consists of the unit over a single coatom's downset (then that
    coatom fills every forgotten division of the lower part).
    """
    v = validate_lower_triple(t)
    if not v.ok:
        raise ValueError("invalid lower triple:\n" + "\n".join(v.lines()))
    v = _upper_part_violation(l)
    if not v.ok:
        raise ValueError("invalid upper part:\n" + "\n".join(v.lines(l.labels)))
    k = t.k
    unit_joins = any(int(k.join[x, y]) == k.unit
                     for x in range(k.n) if x != k.unit
                     for y in range(k.n) if y != k.unit)
    bot_l = _least(l, range(l.n))
    if unit_joins and bot_l is None:
        raise ValueError("joins reach 1 in the lower part "
                         "but the upper part has no bottom")
    return _glue_partial(t, l, None, None, "partial_upper")


def partial_gluing_tau(t, ideal, u):
    """Glue an upper triple on top of a lower triple over an ideal of K.

    ideal is a set of K-indices; its top element absorbs the undefined
    products of the upper part.  The assumptions are checked individually
    and reported as A1..A4.
    """
    v = validate_lower_triple(t)
    if not v.ok:
        raise ValueError("invalid lower triple:\n" + "\n".join(v.lines()))
    v = validate_upper_triple(u)
    if not v.ok:
        raise ValueError("invalid upper triple:\n" + "\n".join(v.lines()))
    k, l = t.k, u.l
    ideal = frozenset(int(x) for x in ideal)

    checks = Verdict.passed()
    undef_mul = bool((~l.defined("mul")).any())
    top_i = None
    if ideal:
        iv = ideal_violation(k, ideal)
        if not iv.ok:
            checks.add("A1", tuple(sorted(ideal)), "not an ideal of K")
        top_i = _greatest(k, sorted(ideal))
        if top_i is None:
            checks.add("A1", tuple(sorted(ideal)), "ideal has no top")
        else:
            if int(k.mul[top_i, top_i]) != top_i:
                checks.add("A1", (top_i,), "ideal top not idempotent")
            if int(t.sigma[top_i]) != top_i:
                checks.add("A1", (top_i,), "sigma moves the ideal top")
    elif undef_mul:
        checks.add("A1", (), "undefined products upstairs need an ideal "
                   "with a top")
    if undef_mul and top_i is not None:
        for x in range(k.n):
            if x == k.unit or x in ideal:
                continue
            if int(t.sigma[x]) != top_i:
                checks.add("A2", (x,), "sigma must collapse K-I to the "
                           "ideal top")
        for y in sorted(ideal):
            if int(t.sigma[int(k.mul[top_i, y])]) != int(t.sigma[y]) or \
                    int(t.sigma[int(k.mul[y, top_i])]) != int(t.sigma[y]):
                checks.add("A2", (y,), "sigma not stable under the ideal top")
    unit_joins = any(int(k.join[x, y]) == k.unit
                     for x in range(k.n) if x != k.unit
                     for y in range(k.n) if y != k.unit)
    if unit_joins and _least(l, range(l.n)) is None:
        checks.add("A3", (), "joins reach 1 in K but L has no bottom")
    if bool((~l.defined("meet")).any()) and splitting_coatom(k) is None:
        checks.add("A4", (), "undefined meets upstairs need a splitting "
                   "coatom in K")
    if not checks.ok:
        raise ValueError("incompatible inputs:\n" + "\n".join(checks.lines()))
    return _glue_partial(t, l, u, top_i, "partial_tau", ideal)


def _glue_partial(t, l, u, top_i, mode, ideal=frozenset()):
    k = t.k
    sigma, gamma = t.sigma, t.gamma
    ell = u.ell if u is not None else None
    rmap = u.r if u is not None else None

    map_k = {}
    idx = 0
    for x in range(k.n):
        if x != k.unit:
            map_k[x] = idx
            idx += 1
    map_l = {}
    for x in range(l.n):
        if x != l.unit:
            map_l[x] = idx
            idx += 1
    unit = idx
    map_k[k.unit] = unit
    map_l[l.unit] = unit
    nn = idx + 1

    in_k = np.full(nn, UNDEF, dtype=np.int64)
    in_l = np.full(nn, UNDEF, dtype=np.int64)
    for xo, v in map_k.items():
        in_k[v] = xo
    for xo, v in map_l.items():
        in_l[v] = xo

    c_l = splitting_coatom(l)
    c_k = splitting_coatom(k)
    bot_l = _least(l, range(l.n))

    leq = np.zeros((nn, nn), dtype=bool)
    join = np.zeros((nn, nn), dtype=np.int64)
    meet = np.zeros((nn, nn), dtype=np.int64)
    mul = np.zeros((nn, nn), dtype=np.int64)
    ldiv = np.zeros((nn, nn), dtype=np.int64)
    rdiv = np.zeros((nn, nn), dtype=np.int64)

    for x in range(nn):
        xk, xl = int(in_k[x]), int(in_l[x])
        for y in range(nn):
            yk, yl = int(in_k[y]), int(in_l[y])
            both_k = xk >= 0 and yk >= 0
            both_l = xl >= 0 and yl >= 0

            if both_k:
                leq[x, y] = bool(k.leq[xk, yk])
            elif both_l:
                leq[x, y] = bool(l.leq[xl, yl])
            else:
                leq[x, y] = xk >= 0

            if both_k:
                jv = int(k.join[xk, yk])
                if jv == k.unit and x != unit and y != unit:
                    join[x, y] = map_l[bot_l]
                else:
                    join[x, y] = map_k[jv]
            elif both_l:
                join[x, y] = map_l[int(l.join[xl, yl])]
            else:
                join[x, y] = y if xk >= 0 else x

            if both_k:
                meet[x, y] = map_k[int(k.meet[xk, yk])]
            elif both_l:
                mv = int(l.meet[xl, yl])
                meet[x, y] = map_l[mv] if mv != UNDEF else map_k[c_k]
            else:
                meet[x, y] = x if xk >= 0 else y

            if both_k:
                mul[x, y] = map_k[int(k.mul[xk, yk])]
            elif both_l:
                mv = int(l.mul[xl, yl])
                mul[x, y] = map_l[mv] if mv != UNDEF else map_k[top_i]
            elif xk >= 0:
                mul[x, y] = map_k[int(sigma[xk])]
            else:
                mul[x, y] = map_k[int(sigma[yk])]

            if both_k:
                dv = int(k.ldiv[xk, yk])
                if dv != UNDEF:
                    ldiv[x, y] = map_k[dv]
                else:
                    ldiv[x, y] = map_l[c_l] if c_l is not None else UNDEF
            elif both_l:
                dv = int(l.ldiv[xl, yl])
                if dv >= 0:
                    ldiv[x, y] = map_l[dv]
                elif dv == UNDEF and ell is not None and ell[xl] != UNDEF:
                    ldiv[x, y] = map_l[int(ell[xl])]
                else:
                    ldiv[x, y] = UNDEF
            elif xk >= 0:
                ldiv[x, y] = unit
            elif ell is not None and ell[xl] != UNDEF and top_i is not None \
                    and bool(k.leq[top_i, yk]):
                ldiv[x, y] = map_l[int(ell[xl])]
            else:
                ldiv[x, y] = map_k[int(gamma[yk])]

            if both_k:
                dv = int(k.rdiv[xk, yk])
                if dv != UNDEF:
                    rdiv[x, y] = map_k[dv]
                else:
                    rdiv[x, y] = map_l[c_l] if c_l is not None else UNDEF
            elif both_l:
                dv = int(l.rdiv[xl, yl])
                if dv >= 0:
                    rdiv[x, y] = map_l[dv]
                elif dv == UNDEF and rmap is not None and rmap[yl] != UNDEF:
                    rdiv[x, y] = map_l[int(rmap[yl])]
                else:
                    rdiv[x, y] = UNDEF
            elif xl >= 0:
                rdiv[x, y] = unit
            elif rmap is not None and rmap[yl] != UNDEF and top_i is not None \
                    and bool(k.leq[top_i, xk]):
                rdiv[x, y] = map_l[int(rmap[yl])]
            else:
                rdiv[x, y] = map_k[int(gamma[xk])]

    zero = None
    if k.zero is not None and bool(leq[map_k[k.zero]].all()):
        zero = map_k[k.zero]
    elif l.zero is not None and bool(leq[map_l[l.zero]].all()):
        zero = map_l[l.zero]
    labels = None
    if k.labels is not None and l.labels is not None:
        labels = [""] * nn
        for xo in range(l.n):
            labels[map_l[xo]] = l.labels[xo]
        for xo in range(k.n):
            if xo != k.unit:
                labels[map_k[xo]] = k.labels[xo]
        labels = tuple(labels)

    out = PartialRL(leq, join, meet, mul, ldiv, rdiv, unit=unit, zero=zero,
                    labels=labels)
    return Gluing(out, mode,
                  tuple(map_k[x] for x in range(k.n)),
                  tuple(map_l[x] for x in range(l.n)),
                  frozenset([unit]),
                  frozenset(map_k[x] for x in ideal))


# ---------------------------------------------------------------------------
# Iterated gluing of simple 2-potent chains.

def _block_violation(a):
    if not a.is_chain:
        return "not a chain"
    if a.n < 2:
        return "needs at least two elements"
    bottom = a.bottom
    for x in range(a.n):
        for y in range(a.n):
            if x != a.unit and y != a.unit and int(a.mul[x, y]) != bottom:
                return "products of non-units must hit the bottom"
    return None


def iterated_partial_gluing(chains):
    """Stack simple 2-potent chains into one chain, sharing only the unit.

    Blocks are listed bottom-up.  Within a block the operations survive;
    across blocks products collapse to the lower block's bottom, upward
    divisions give 1, downward divisions give the lower block's coatom,
    and failed comparisons inside any block resolve to the global coatom.
    """
    chains = list(chains)
    if not chains:
        raise ValueError("need at least one block")
    for pos, a in enumerate(chains):
        why = _block_violation(a)
        if why is not None:
            raise ValueError("block %d unusable: %s" % (pos, why))

    order = []
    block_of = []
    maps = []
    for bi, a in enumerate(chains):
        ranked = sorted((x for x in range(a.n) if x != a.unit),
                        key=lambda x: int(a.leq[:, x].sum()))
        m = {}
        for x in ranked:
            m[x] = len(order)
            order.append((bi, x))
            block_of.append(bi)
        maps.append(m)
    unit = len(order)
    nn = unit + 1
    for bi, a in enumerate(chains):
        maps[bi][a.unit] = unit

    bounds = []
    start = 0
    for a in chains:
        bounds.append((start, start + a.n - 1))
        start += a.n - 1
    c_top = unit - 1

    leq = np.zeros((nn, nn), dtype=bool)
    join = np.zeros((nn, nn), dtype=np.int64)
    meet = np.zeros((nn, nn), dtype=np.int64)
    mul = np.zeros((nn, nn), dtype=np.int64)
    ldiv = np.zeros((nn, nn), dtype=np.int64)
    rdiv = np.zeros((nn, nn), dtype=np.int64)

    for x in range(nn):
        for y in range(nn):
            leq[x, y] = x <= y
            join[x, y] = max(x, y)
            meet[x, y] = min(x, y)
            if x == unit:
                mul[x, y] = y
            elif y == unit:
                mul[x, y] = x
            else:
                mul[x, y] = bounds[block_of[min(x, y)]][0]
            if x <= y:
                ldiv[x, y] = unit
            elif x == unit:
                ldiv[x, y] = y
            elif block_of[x] == block_of[y]:
                ldiv[x, y] = c_top
            else:
                ldiv[x, y] = bounds[block_of[y]][1] - 1
            rdiv[y, x] = ldiv[x, y]

    zero = 0 if chains[0].zero is not None else None
    labels = None
    if all(a.labels is not None for a in chains):
        labels = [""] * nn
        for bi, a in enumerate(chains):
            for xo in range(a.n):
                labels[maps[bi][xo]] = a.labels[xo]
        labels = tuple(labels)
    return FiniteRL(leq, join, meet, mul, ldiv, rdiv, unit=unit, zero=zero,
                    labels=labels)
