"""Congruence filters, lattice ideals, and the compatibility checks.

A congruence filter is an upset containing the unit that is closed under
products and under the conjugates y\\(xy) and (yx)/y.  For a filter F the
relation x theta y  iff  x\\y, y\\x in F partitions the algebra; sigma and
gamma pick the minimum and maximum of each class.  On the ideal side,
ell(c) = max{c\\i : i in I} and r(d) = max{i/d : i in I} measure how far
I-divisors push into the ideal.  Everything a gluing needs to know about a
candidate pair (B, F) or (C, I), or a full quadruple (B, F, C, I), is
reported here as a structured verdict with witnesses.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import (
    UNDEF,
    FiniteRL,
    Verdict,
    congruence_classes,
    is_subuniverse,
)

__all__ = [
    "FilterIdealPair",
    "FilterLattice",
    "LowerPairReport",
    "QuadrupleReport",
    "UpperPairReport",
    "all_congruence_filters",
    "check_lower_pair",
    "check_quadruple",
    "check_upper_pair",
    "congruence_filter_violation",
    "filter_generated",
    "ideal_violation",
    "lattice_ideals",
    "principal_filter",
    "sigma_gamma",
    "theta_classes",
]


def congruence_filter_violation(a, subset):
    """Return a Verdict violation list; ok means subset is a congruence filter."""
    f = frozenset(int(x) for x in subset)
    v = Verdict.passed()
    if a.unit not in f:
        v.add("filter_unit", (a.unit,), "unit not in subset")
        return v
    for x in f:
        for y in range(a.n):
            if a.leq[x, y] and y not in f:
                v.add("filter_upset", (x, y), "x in F, x <= y, y not in F")
                return v
    for x in f:
        for y in f:
            if int(a.mul[x, y]) not in f:
                v.add("filter_product", (x, y), "xy escapes F")
                return v
    for x in f:
        for y in range(a.n):
            lam = int(a.ldiv[y, a.mul[x, y]])
            if lam not in f:
                v.add("filter_conjugate", (x, y), "y\\(xy) escapes F")
                return v
            rho = int(a.rdiv[a.mul[y, x], y])
            if rho not in f:
                v.add("filter_conjugate", (x, y), "(yx)/y escapes F")
                return v
    return v


def filter_generated(a, seed):
    """Smallest congruence filter of ``a`` containing ``seed``."""
    cur = set(int(x) for x in seed)
    cur.add(a.unit)
    while True:
        new = set()
        for x in cur:
            new.update(int(y) for y in np.flatnonzero(a.leq[x]))
        for x in cur:
            for y in cur:
                new.add(int(a.mul[x, y]))
        for x in cur:
            for y in range(a.n):
                new.add(int(a.ldiv[y, a.mul[x, y]]))
                new.add(int(a.rdiv[a.mul[y, x], y]))
        if new <= cur:
            return frozenset(cur)
        cur |= new


def principal_filter(a, x):
    return filter_generated(a, (x,))


@dataclass(frozen=True)
class FilterLattice:
    """All congruence filters of an algebra, ordered by inclusion."""

    filters: tuple
    leq: np.ndarray

    @property
    def n(self):
        return len(self.filters)

    def index(self, f):
        return self.filters.index(frozenset(f))

    def atoms(self):
        """Filters covering the trivial filter {1}."""
        bot = min(range(self.n), key=lambda i: len(self.filters[i]))
        out = []
        for i in range(self.n):
            if i == bot or not self.leq[bot, i]:
                continue
            if all(not (self.leq[j, i] and self.leq[bot, j]) or j in (bot, i)
                   for j in range(self.n)):
                out.append(i)
        return out


def all_congruence_filters(a):
    """Every congruence filter, as a FilterLattice.

    Each filter is the join of the principal filters of its members, so the
    principal ones generate the whole lattice under pairwise joins.
    """
    found = {frozenset({a.unit})}
    found.update(principal_filter(a, x) for x in range(a.n))
    while True:
        fresh = set()
        for f, g in combinations(found, 2):
            if not (f <= g or g <= f):
                h = filter_generated(a, f | g)
                if h not in found:
                    fresh.add(h)
        if not fresh:
            break
        found |= fresh
    filters = tuple(sorted(found, key=lambda f: (len(f), sorted(f))))
    m = len(filters)
    leq = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            leq[i, j] = filters[i] <= filters[j]
    return FilterLattice(filters, leq)


def ideal_violation(a, subset):
    """Verdict on subset being a lattice ideal (downset closed under join)."""
    i = frozenset(int(x) for x in subset)
    v = Verdict.passed()
    for x in i:
        for y in range(a.n):
            if a.leq[y, x] and y not in i:
                v.add("ideal_downset", (x, y), "y <= x in I, y not in I")
                return v
    for x in i:
        for y in i:
            if int(a.join[x, y]) not in i:
                v.add("ideal_join", (x, y), "x join y escapes I")
                return v
    return v


def lattice_ideals(a):
    """All lattice ideals (downsets closed under join), including the empty one."""
    out = [frozenset()]
    for size in range(1, a.n + 1):
        for base in combinations(range(a.n), size):
            s = frozenset(base)
            if ideal_violation(a, s).ok:
                out.append(s)
    return out


def theta_classes(a, filt):
    return congruence_classes(a, filt)


def sigma_gamma(a, filt):
    """Class minima and maxima for theta_F, as full index maps.

    Entries for filter elements are pinned to the unit (the triple view
    collapses F to 1).  Returns (sigma, gamma); either can be None when some
    class below F lacks the needed extremum, which is a compatibility verdict
    for the caller, not an error here.
    """
    f = frozenset(int(x) for x in filt)
    sigma = np.full(a.n, UNDEF, dtype=np.int64)
    gamma = np.full(a.n, UNDEF, dtype=np.int64)
    for x in f:
        sigma[x] = a.unit
        gamma[x] = a.unit
    have_sigma = True
    have_gamma = True
    for cls in congruence_classes(a, f):
        if cls[0] in f:
            continue
        mn = _class_min(a, cls)
        mx = _class_max(a, cls)
        if mn is None:
            have_sigma = False
        if mx is None:
            have_gamma = False
        for x in cls:
            sigma[x] = UNDEF if mn is None else mn
            gamma[x] = UNDEF if mx is None else mx
    return (sigma if have_sigma else None), (gamma if have_gamma else None)


def _class_min(a, cls):
    for x in cls:
        if all(a.leq[x, y] for y in cls):
            return x
    return None


def _class_max(a, cls):
    for x in cls:
        if all(a.leq[y, x] for y in cls):
            return x
    return None


@dataclass(frozen=True)
class FilterIdealPair:
    """An algebra with a filter and an ideal, plus everything derived from them.

    sigma/gamma live on the filter side (None when some class lacks the
    extremum); ell/r live on the ideal side with UNDEF outside their domains.
    """

    algebra: FiniteRL
    filt: frozenset
    ideal: frozenset
    theta: tuple
    sigma: object
    gamma: object
    ell: np.ndarray
    r: np.ndarray

    @property
    def d_ell(self):
        return frozenset(int(x) for x in np.flatnonzero(self.ell != UNDEF))

    @property
    def d_r(self):
        return frozenset(int(x) for x in np.flatnonzero(self.r != UNDEF))

    @classmethod
    def derive(cls, a, filt, ideal=()):
        filt = frozenset(int(x) for x in filt)
        ideal = frozenset(int(x) for x in ideal)
        sigma, gamma = sigma_gamma(a, filt)
        ell, r = _divisor_maps(a, ideal)
        return cls(a, filt, ideal, tuple(congruence_classes(a, filt)),
                   sigma, gamma, ell, r)


def _divisor_maps(a, ideal):
    """ell/r maps on I-divisors; UNDEF marks both non-divisors and missing maxima."""
    n = a.n
    ell = np.full(n, UNDEF, dtype=np.int64)
    r = np.full(n, UNDEF, dtype=np.int64)
    if not ideal:
        return ell, r
    rest = [x for x in range(n) if x not in ideal]
    for c in rest:
        if any(int(a.mul[c, d]) in ideal for d in rest):
            vals = [int(a.ldiv[c, i]) for i in ideal]
            mx = _set_max(a, vals)
            if mx is not None:
                ell[c] = mx
        if any(int(a.mul[d, c]) in ideal for d in rest):
            vals = [int(a.rdiv[i, c]) for i in ideal]
            mx = _set_max(a, vals)
            if mx is not None:
                r[c] = mx
    return ell, r


def _set_max(a, vals):
    for x in vals:
        if all(a.leq[y, x] for y in vals):
            return x
    return None


@dataclass
class LowerPairReport:
    """check_lower_pair result: verdict in {lower, weak-lower, incompatible}."""

    verdict: str
    checks: Verdict
    pair: FilterIdealPair

    @property
    def ok(self):
        return self.verdict != "incompatible"

    def lines(self):
        out = ["verdict: " + self.verdict]
        labels = self.pair.algebra.labels
        out.extend(self.checks.lines(labels))
        return out


def check_lower_pair(a, filt, non_strict=False):
    """Decide whether (a, filt) is a (weak/non-strict) lower-compatible pair.

    Conditions reported separately: filter, strict-position, minima, maxima,
    absorbing.  Missing maxima alone downgrade the verdict to weak-lower.
    With non_strict, filter elements may sit beside B-F provided every join
    of B-F elements that lands in F multiplies and divides like sigma/gamma.
    """
    filt = frozenset(int(x) for x in filt)
    checks = congruence_filter_violation(a, filt)
    pair = FilterIdealPair.derive(a, filt)
    if not checks.ok:
        return LowerPairReport("incompatible", checks, pair)
    below = [x for x in range(a.n) if x not in filt]

    if not non_strict:
        for b in below:
            for f in filt:
                if not (a.leq[b, f] and b != f):
                    checks.add("strict_position", (b, f),
                               "filter element not strictly above")
                    break
            else:
                continue
            break

    if pair.sigma is None:
        cls = next(c for c in pair.theta
                   if c[0] not in filt and _class_min(a, c) is None)
        checks.add("class_minimum", tuple(cls), "theta class has no minimum")
    weak = False
    if pair.gamma is None:
        weak = True

    if pair.sigma is not None:
        imgs = {int(pair.sigma[x]) for x in below}
        for b in below:
            for s in imgs:
                if int(a.mul[b, s]) not in imgs:
                    checks.add("absorbing", (b, s), "b*sigma(x) left sigma image")
                if int(a.mul[s, b]) not in imgs:
                    checks.add("absorbing", (s, b), "sigma(x)*b left sigma image")
        if non_strict:
            joins_in_f = sorted({int(a.join[x, y]) for x in below for y in below
                                 if int(a.join[x, y]) in filt})
            for z in joins_in_f:
                for b in below:
                    if int(a.mul[z, b]) != int(pair.sigma[b]) or \
                       int(a.mul[b, z]) != int(pair.sigma[b]):
                        checks.add("nonstrict_join_product", (z, b),
                                   "zb or bz differs from sigma(b)")
                    if pair.gamma is None or \
                       int(a.ldiv[z, b]) != int(pair.gamma[b]) or \
                       int(a.rdiv[b, z]) != int(pair.gamma[b]):
                        checks.add("nonstrict_join_division", (z, b),
                                   "z\\b or b/z differs from gamma(b)")

    if not checks.ok:
        return LowerPairReport("incompatible", checks, pair)
    return LowerPairReport("weak-lower" if weak else "lower", checks, pair)


@dataclass
class UpperPairReport:
    """check_upper_pair result: compatible or incompatible, with ell/r maps."""

    verdict: str
    checks: Verdict
    pair: FilterIdealPair

    @property
    def ok(self):
        return self.verdict == "compatible"

    def lines(self):
        out = ["verdict: " + self.verdict]
        out.extend(self.checks.lines(self.pair.algebra.labels))
        return out


def check_upper_pair(c, ideal, non_strict=False):
    """Decide whether (c, ideal) is an upper-compatible pair.

    Needs: ideal is a lattice ideal strictly below the rest (strict mode),
    and max{c\\i} / max{i/d} exist for every left / right I-divisor.  In
    non-strict mode meets of C-I elements landing in I must hit a top of I.
    """
    ideal = frozenset(int(x) for x in ideal)
    checks = ideal_violation(c, ideal)
    pair = FilterIdealPair.derive(c, frozenset({c.unit}), ideal)
    if not checks.ok:
        return UpperPairReport("incompatible", checks, pair)
    rest = [x for x in range(c.n) if x not in ideal]

    if not non_strict:
        for i in ideal:
            for x in rest:
                if not (c.leq[i, x] and i != x):
                    checks.add("strict_position", (i, x),
                               "ideal element not strictly below")
    else:
        top_i = _set_max(c, sorted(ideal)) if ideal else None
        for x in rest:
            for y in rest:
                m = int(c.meet[x, y])
                if m in ideal and m != top_i:
                    checks.add("nonstrict_meet", (x, y),
                               "meet lands in I but is not its top")

    for x in rest:
        left = any(int(c.mul[x, d]) in ideal for d in rest)
        if left and pair.ell[x] == UNDEF:
            checks.add("ell_max", (x,), "left I-divisor with no max{c\\i}")
        right = any(int(c.mul[d, x]) in ideal for d in rest)
        if right and pair.r[x] == UNDEF:
            checks.add("r_max", (x,), "right I-divisor with no max{i/d}")

    if not checks.ok:
        return UpperPairReport("incompatible", checks, pair)
    return UpperPairReport("compatible", checks, pair)


@dataclass
class QuadrupleReport:
    """check_quadruple result; carries both pair reports and the alignment.

    f_b/f_c and i_b/i_c are positionally aligned index tuples of the shared
    filter and ideal inside the lower and upper algebra.
    """

    ok: bool
    checks: Verdict
    lower: LowerPairReport
    upper: UpperPairReport
    b: FiniteRL
    c: FiniteRL
    f_b: tuple
    f_c: tuple
    i_b: tuple
    i_c: tuple
    non_strict: bool = False
    needs_gamma: bool = field(default=False)

    def lines(self):
        out = ["verdict: " + ("compatible" if self.ok else "incompatible")]
        out.extend(self.checks.lines())
        return out


def _align_by_labels(b, c, idx_b):
    if b.labels is None or c.labels is None:
        raise ValueError("no alignment given and labels are missing")
    out = []
    for x in idx_b:
        lab = b.labels[x]
        matches = [y for y in range(c.n) if c.labels[y] == lab]
        if len(matches) != 1:
            raise ValueError("label %r does not identify a unique element" % lab)
        out.append(matches[0])
    return tuple(out)


def check_quadruple(b, filt, c, ideal=(), f_in_c=None, i_in_c=None,
                    non_strict=False):
    """Decide whether (b, filt, c, ideal) is a compatible quadruple.

    filt/ideal are index sets of ``b``; f_in_c/i_in_c align them with
    indices of ``c`` (matched by label when omitted).  Checks, in order: the
    shared part is a subalgebra of both sides with agreeing tables (up to
    the lower-side division exemption below), both pair compatibilities,
    the positional requirements, and the four numbered interaction
    conditions.

    Exemption: cells f\\i and i/f (f in F, i in I) may escape the shared
    part on the lower side.  Rotation-style gluings need this: there the
    lower value is a primed element strictly between I and F, and it is
    exactly the residual of the glued algebra, so requiring agreement
    with the upper part would wrongly reject them.
    """
    f_b = tuple(sorted(int(x) for x in filt))
    i_b = tuple(sorted(int(x) for x in ideal))
    f_c = _align_by_labels(b, c, f_b) if f_in_c is None else tuple(int(x) for x in f_in_c)
    i_c = _align_by_labels(b, c, i_b) if i_in_c is None else tuple(int(x) for x in i_in_c)
    if len(f_c) != len(f_b) or len(i_c) != len(i_b):
        raise ValueError("alignment length mismatch")

    checks = Verdict.passed()
    lower = check_lower_pair(b, f_b, non_strict=non_strict)
    upper = check_upper_pair(c, i_c, non_strict=non_strict)
    report = QuadrupleReport(False, checks, lower, upper, b, c,
                             f_b, f_c, i_b, i_c, non_strict)

    # Shared part: subuniverse of both, tables agreeing under the alignment.
    shared_b = f_b + i_b
    shared_c = f_c + i_c
    to_c = dict(zip(shared_b, shared_c))
    if len(set(shared_c)) != len(shared_c) or \
            len(set(shared_b)) != len(shared_b):
        checks.add("shared_alignment", shared_c, "aligned indices collide")
        return report
    if b.unit not in to_c or to_c[b.unit] != c.unit:
        checks.add("shared_unit", (b.unit,), "unit not aligned")
        return report
    # Divisions of an ideal element by a filter element are exempt on the
    # lower side: they may fall into B-(F u I), and the gluing keeps the
    # lower value there (the upper value is then strictly smaller, inside
    # I).  Every other cell must stay inside the shared part and agree.
    fset, iset = set(f_b), set(i_b)

    def exempt(name, x, y):
        return (name == "ldiv" and x in fset and y in iset) or \
            (name == "rdiv" and x in iset and y in fset)

    for name in ("join", "meet", "mul", "ldiv", "rdiv"):
        tb = getattr(b, name)
        for x in shared_b:
            for y in shared_b:
                if int(tb[x, y]) not in to_c and not exempt(name, x, y):
                    checks.add("shared_subalgebra", (x, y),
                               "F u I not a subuniverse of lower")
    if not is_subuniverse(c, shared_c, with_zero=False):
        checks.add("shared_subalgebra", shared_c, "F u I not a subuniverse of upper")
    if not checks.ok:
        return report
    for x in shared_b:
        for y in shared_b:
            if bool(b.leq[x, y]) != bool(c.leq[to_c[x], to_c[y]]):
                checks.add("shared_order", (x, y), "order disagrees on shared part")
            for name in ("join", "meet", "mul", "ldiv", "rdiv"):
                vb = int(getattr(b, name)[x, y])
                vc = int(getattr(c, name)[to_c[x], to_c[y]])
                if vb not in to_c:
                    if exempt(name, x, y):
                        continue
                    checks.add("shared_" + name, (x, y),
                               "not a shared subalgebra: %s disagrees" % name)
                elif to_c[vb] != vc:
                    checks.add("shared_" + name, (x, y),
                               "not a shared subalgebra: %s disagrees" % name)
    if not checks.ok:
        return report

    cf_in_c = congruence_filter_violation(c, f_c)
    if not cf_in_c.ok:
        checks.merge(cf_in_c)

    if not lower.ok:
        checks.add("lower_pair", tuple(f_b), "lower pair incompatible")
    if not upper.ok:
        checks.add("upper_pair", tuple(i_c), "upper pair incompatible")
    if not checks.ok:
        return report

    ideal_c = frozenset(i_c)
    filt_c = frozenset(f_c)
    b_minus = [x for x in range(b.n) if x not in f_b and x not in i_b]
    c_minus = [x for x in range(c.n) if x not in filt_c and x not in ideal_c]
    rest_c = [x for x in range(c.n) if x not in ideal_c]

    if not non_strict:
        for f in f_c:
            for x in range(c.n):
                if x != f and x not in filt_c and not c.leq[x, f]:
                    checks.add("position_filter_upper", (x, f),
                               "filter not strictly above upper remainder")
        for i in i_b:
            for x in range(b.n):
                if x != i and x not in i_b and not b.leq[i, x]:
                    checks.add("position_ideal_lower", (i, x),
                               "ideal not strictly below lower remainder")

    # (1) a one-sided non-divisor in the upper interior forces a full lower pair.
    pair_c = upper.pair
    needs_gamma = any(pair_c.ell[x] == UNDEF for x in c_minus) or \
        any(pair_c.r[x] == UNDEF for x in c_minus)
    report.needs_gamma = needs_gamma
    if needs_gamma and lower.verdict != "lower":
        checks.add("condition_1", (), "non-divisor present but gamma missing")

    # (2) products of upper elements that land in the ideal act like sigma.
    sigma = lower.pair.sigma
    to_b = {v: k for k, v in to_c.items()}
    for x in rest_c:
        for y in rest_c:
            prod = int(c.mul[x, y])
            if prod in ideal_c:
                p_b = to_b[prod]
                for z in b_minus:
                    if int(b.mul[p_b, z]) != int(sigma[z]) or \
                       int(b.mul[z, p_b]) != int(sigma[z]):
                        checks.add("condition_2", (x, y, z),
                                   "(cd)x or x(cd) differs from sigma(x)")

    # (3) joins of B-F elements inside F need a bottom in C-I.
    below_f = [x for x in range(b.n) if x not in f_b]
    if any(int(b.join[x, y]) in f_b for x in below_f for y in below_f):
        if _set_min(c, rest_c) is None:
            checks.add("condition_3", (), "join lands in F but C-I has no bottom")

    # (4) meets of C-I elements inside I need a top in B-F.
    if any(int(c.meet[x, y]) in ideal_c for x in rest_c for y in rest_c):
        if _set_max(b, below_f) is None:
            checks.add("condition_4", (), "meet lands in I but B-F has no top")

    report.ok = checks.ok
    return report


def _set_min(a, vals):
    for x in vals:
        if all(a.leq[x, y] for y in vals):
            return x
    return None
