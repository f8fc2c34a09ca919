"""Structure theory of filter-ideal gluings.

Which equational properties a gluing inherits from its parts, what its
congruence filter lattice looks like, when it is subdirectly irreducible,
how its homomorphic images decompose, and which of four shapes every
subalgebra must take.  All reports carry witnesses; nothing here returns a
bare boolean.
"""

from dataclasses import dataclass

import numpy as np

from ..core import (FiniteRL, Verdict, are_isomorphic, homomorphic_image,
                    is_subuniverse)
from ..filters import (FilterIdealPair, FilterLattice,
                       all_congruence_filters, check_quadruple,
                       congruence_filter_violation, sigma_gamma)
from ..gluing import Gluing, fi_gluing
from .terms import (check_equation, commutativity, divisibility, n_potency,
                    parse_equation, semilinearity)

_QUADRUPLE_MODES = ("one_sum", "f_gluing", "fi_gluing")


def _bool_word(v):
    if v is None:
        return "-"
    return "yes" if v else "no"


@dataclass(frozen=True)
class GluingView:
    """A gluing unpacked back into part-level index sets.

    All b_* / c_* attributes live in the coordinates of the respective
    input algebra; ``shared`` pairs them up positionally.
    """

    gluing: Gluing
    b: FiniteRL
    c: FiniteRL
    f_b: tuple
    f_c: tuple
    i_b: tuple
    i_c: tuple
    b_minus: tuple
    c_minus: tuple

    @property
    def result(self):
        return self.gluing.result


def view_of(g, b, c):
    """Check provenance and split b and c into shared and proper parts."""
    if isinstance(g, FiniteRL):
        raise ValueError("no provenance: pass the gluing, not its result")
    if not isinstance(g, Gluing) or g.c_map is None:
        raise ValueError("needs a two-part gluing with provenance")
    if g.mode not in _QUADRUPLE_MODES:
        raise ValueError("mode %r is not a filter-ideal gluing" % g.mode)
    if len(g.b_map) != b.n or len(g.c_map) != c.n:
        raise ValueError("provenance does not match the given parts")
    filt, ideal = set(g.filt), set(g.ideal)
    f_b = tuple(x for x in range(b.n) if g.b_map[x] in filt)
    i_b = tuple(x for x in range(b.n) if g.b_map[x] in ideal)
    f_c = tuple(x for x in range(c.n) if g.c_map[x] in filt)
    i_c = tuple(x for x in range(c.n) if g.c_map[x] in ideal)
    shared_b = set(f_b) | set(i_b)
    shared_c = set(f_c) | set(i_c)
    b_minus = tuple(x for x in range(b.n) if x not in shared_b)
    c_minus = tuple(x for x in range(c.n) if x not in shared_c)
    return GluingView(g, b, c, f_b, f_c, i_b, i_c, b_minus, c_minus)


def inner_algebra(a, subset):
    """The algebra living on a closed subset, zero constant not required.

    Unlike FiniteRL.restrict this keeps subsets that drop the bottom
    constant (the filter of a bounded algebra, an upper part minus its
    ideal); the result is bounded again as a finite lattice but only
    carries a named zero when the subset kept it.
    """
    sub = sorted(set(int(x) for x in subset))
    if not is_subuniverse(a, sub, with_zero=False):
        raise ValueError("not closed under the operations")
    pos = {x: i for i, x in enumerate(sub)}
    ix = np.array(sub, dtype=np.int64)

    def tab(t):
        return np.array([[pos[int(t[x, y])] for y in sub] for x in sub],
                        dtype=np.int64)

    labels = tuple(a.label(x) for x in sub) if a.labels else None
    zero = pos[a.zero] if a.has_zero and a.zero in pos else None
    alg = FiniteRL(a.leq[np.ix_(ix, ix)], tab(a.join), tab(a.meet),
                   tab(a.mul), tab(a.ldiv), tab(a.rdiv),
                   unit=pos[a.unit], zero=zero, labels=labels)
    return alg, pos


# ---------------------------------------------------------------------------
# preservation


@dataclass(frozen=True)
class PreservationCheck:
    """One property compared across the parts and the glued algebra.

    ``expected`` is what the part-level data predicts for the gluing
    (None when no prediction applies); ``consistent`` is the verdict.
    """

    name: str
    lower: object
    upper: object
    glued: bool
    expected: object
    detail: str = ""
    witness: object = None

    @property
    def consistent(self):
        return self.expected is None or bool(self.glued) == bool(self.expected)

    def line(self):
        tail = "ok" if self.consistent else "MISMATCH"
        out = "%s: lower=%s upper=%s glued=%s expected=%s %s" % (
            self.name, _bool_word(self.lower), _bool_word(self.upper),
            _bool_word(self.glued), _bool_word(self.expected), tail)
        if self.detail:
            out += " (%s)" % self.detail
        return out


@dataclass(frozen=True)
class PreservationReport:
    mode: str
    checks: tuple

    @property
    def ok(self):
        return all(ch.consistent for ch in self.checks)

    def failures(self):
        return [ch for ch in self.checks if not ch.consistent]

    def lines(self):
        head = "preservation[%s]: %s" % (
            self.mode, "consistent" if self.ok else "MISMATCH")
        return [head] + ["  " + ch.line() for ch in self.checks]


def _holds(a, eq):
    return check_equation(a, eq)


def _monoid_only(t):
    if t.op == "var":
        return True
    if t.op == "const":
        return t.payload == 1
    if t.op == "mul":
        return all(_monoid_only(s) for s in t.args)
    if t.op == "pow":
        return _monoid_only(t.args[0])
    return False


def preservation_suite(g, b, c, monoid_equations=(), potencies=None):
    """Compare the glued algebra against what its parts predict.

    Covers commutativity (iff both parts), divisibility (iff both parts,
    no ideal divisors in the upper part, and the filter acting trivially
    on the rest of the lower part), semilinearity (case split on whether
    the shared filter is trivial), every potency level up to the larger
    part, and any supplied monoid equations (valid in both parts must
    stay valid).  Raises ValueError when g carries no usable provenance
    or a supplied equation is not a pure monoid equation.
    """
    v = view_of(g, b, c)
    d = v.result
    checks = []

    eq = commutativity()
    rb, rc, rd = _holds(b, eq), _holds(c, eq), _holds(d, eq)
    checks.append(PreservationCheck(
        "commutativity", rb.holds, rc.holds, rd.holds,
        rb.holds and rc.holds,
        witness=None if rd.holds else rd))

    div_l, div_r = divisibility()

    def divisible(a):
        left = _holds(a, div_l)
        if not left.holds:
            return False, left
        right = _holds(a, div_r)
        return right.holds, right

    db, wb = divisible(b)
    dc, wc = divisible(c)
    dd, wd = divisible(d)
    iset = set(v.i_c)
    rest = [x for x in range(c.n) if x not in iset]
    has_divisor = any(int(c.mul[x, y]) in iset for x in rest for y in rest)
    f_acts_trivially = all(
        int(b.mul[f, x]) == x and int(b.mul[x, f]) == x
        for f in v.f_b for x in v.i_b + v.b_minus)
    checks.append(PreservationCheck(
        "divisibility", db, dc, dd,
        db and dc and not has_divisor and f_acts_trivially,
        detail="ideal divisors in upper: %s; filter acts trivially: %s" % (
            _bool_word(has_divisor), _bool_word(f_acts_trivially)),
        witness=None if dd else wd))

    sl = semilinearity()
    sb, sc, sd = _holds(b, sl), _holds(c, sl), _holds(d, sl)
    if len(v.f_b) > 1:
        expected = sb.holds and sc.holds
        case = "filter beyond the unit"
    elif v.c_minus:
        expected = b.is_chain and sc.holds
        case = "unit filter, upper part proper"
    else:
        expected = sb.holds
        case = "unit filter, upper part trivial"
    checks.append(PreservationCheck(
        "semilinearity", sb.holds, sc.holds, sd.holds, expected,
        detail=case, witness=None if sd.holds else sd))

    if potencies is None:
        potencies = range(1, max(b.n, c.n) + 1)
    for n in potencies:
        eq = n_potency(n)
        pb, pc, pd = _holds(b, eq), _holds(c, eq), _holds(d, eq)
        checks.append(PreservationCheck(
            "potency_%d" % n, pb.holds, pc.holds, pd.holds,
            pb.holds and pc.holds,
            witness=None if pd.holds else pd))

    for raw in monoid_equations:
        eq = parse_equation(raw) if isinstance(raw, str) else raw
        if not (_monoid_only(eq.lhs) and _monoid_only(eq.rhs)):
            raise ValueError("not a monoid equation: %s" % eq)
        mb, mc, md = _holds(b, eq), _holds(c, eq), _holds(d, eq)
        expected = True if (mb.holds and mc.holds) else None
        checks.append(PreservationCheck(
            "monoid[%s]" % eq, mb.holds, mc.holds, md.holds, expected,
            witness=None if md.holds else md))

    return PreservationReport(g.mode, tuple(checks))


# ---------------------------------------------------------------------------
# congruence filter lattice


def _poset_isomorphic(p, q):
    """Order isomorphism test for two boolean leq matrices."""
    n = p.shape[0]
    if q.shape[0] != n:
        return False
    downp, upp = p.sum(axis=0), p.sum(axis=1)
    downq, upq = q.sum(axis=0), q.sum(axis=1)
    if sorted(zip(downp.tolist(), upp.tolist())) != \
            sorted(zip(downq.tolist(), upq.tolist())):
        return False
    cand = [[j for j in range(n)
             if downq[j] == downp[i] and upq[j] == upp[i]]
            for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cand[i]))
    img = {}
    used = set()

    def assign(k):
        if k == n:
            return True
        i = order[k]
        for j in cand[i]:
            if j in used:
                continue
            if any(bool(p[i, i2]) != bool(q[j, j2])
                   or bool(p[i2, i]) != bool(q[j2, j])
                   for i2, j2 in img.items()):
                continue
            img[i] = j
            used.add(j)
            if assign(k + 1):
                return True
            del img[i]
            used.discard(j)
        return False

    return assign(0)


@dataclass(frozen=True)
class FilterLatticeReport:
    """Predicted versus computed congruence filter lattice of a gluing.

    case "stacked": the upper part minus the ideal is a congruence filter
    of the upper algebra, and the filters of the gluing are exactly the
    filters of that algebra plus, for every filter G of the lower part
    containing the shared filter, G with the whole proper upper region on
    top.  The two families meet at G = F.  case "upper_only": the proper
    upper region generates a filter that reaches the ideal, every filter
    containing a lower element is forced to the whole algebra, and the
    lattice is isomorphic to that of the upper part.
    """

    case: str
    ok: bool
    actual: FilterLattice
    predicted: tuple
    lower_count: int
    upper_count: int
    detail: str = ""

    def lines(self):
        out = ["filter lattice: case=%s %s" % (
            self.case, "verified" if self.ok else "MISMATCH")]
        out.append("  computed %d filters; lower contributes %d, upper %d"
                   % (self.actual.n, self.lower_count, self.upper_count))
        if self.detail:
            out.append("  " + self.detail)
        return out


def filter_lattice_of_gluing(g, b, c):
    """Predict Fil of a gluing from its parts and verify the prediction."""
    v = view_of(g, b, c)
    d = v.result
    actual = all_congruence_filters(d)
    iset = set(v.i_c)
    cminus = [x for x in range(c.n) if x not in iset]

    if congruence_filter_violation(c, cminus).ok:
        cm_alg, cm_pos = inner_algebra(c, cminus)
        back = {cm_pos[x]: x for x in cminus}
        upper = all_congruence_filters(cm_alg)
        predicted = set()
        for h in upper.filters:
            predicted.add(frozenset(g.c_map[back[x]] for x in h))
        lower = all_congruence_filters(b)
        fset = set(v.f_b)
        top_image = frozenset(g.c_map[x] for x in cminus)
        kept = 0
        for glow in lower.filters:
            if not fset <= glow:
                continue
            kept += 1
            predicted.add(frozenset(g.b_map[x] for x in glow) | top_image)
        ok = predicted == set(actual.filters)
        detail = ""
        if not ok:
            missing = sorted(predicted - set(actual.filters), key=sorted)
            extra = sorted(set(actual.filters) - predicted, key=sorted)
            detail = "unpredicted: %r; unrealized: %r" % (
                [sorted(f) for f in extra[:3]],
                [sorted(f) for f in missing[:3]])
        return FilterLatticeReport("stacked", ok, actual,
                                   tuple(sorted(predicted, key=sorted)),
                                   kept, upper.n, detail)

    upper = all_congruence_filters(c)
    ok = _poset_isomorphic(actual.leq, upper.leq)
    detail = "" if ok else "no order isomorphism with Fil(upper)"
    return FilterLatticeReport("upper_only", ok, actual, (), 0, upper.n,
                               detail)


# ---------------------------------------------------------------------------
# subdirect irreducibility


@dataclass(frozen=True)
class SDIReport:
    sdi: bool
    monolith: object
    lattice: FilterLattice

    def lines(self):
        if self.sdi:
            return ["subdirectly irreducible: monolith generated by %s"
                    % sorted(self.monolith)]
        return ["not subdirectly irreducible: %d atoms in a %d-filter lattice"
                % (len(self.lattice.atoms()), self.lattice.n)]


def is_subdirectly_irreducible(a):
    """SDI test: the congruence filter lattice has a single atom."""
    lat = all_congruence_filters(a)
    atoms = lat.atoms()
    if len(atoms) == 1:
        return SDIReport(True, lat.filters[atoms[0]], lat)
    return SDIReport(False, None, lat)


@dataclass(frozen=True)
class GluingSDIReport:
    case: str
    glued: SDIReport
    parts: dict
    expected: bool
    consistent: bool

    def lines(self):
        parts = " ".join("%s=%s" % (k, _bool_word(x))
                         for k, x in sorted(self.parts.items()))
        return ["sdi[%s]: glued=%s expected=%s %s (%s)" % (
            self.case, _bool_word(self.glued.sdi), _bool_word(self.expected),
            "ok" if self.consistent else "MISMATCH", parts)]


def gluing_sdi_check(g, b, c):
    """Cross-check SDI of a gluing against its parts.

    With a filter beyond the unit the gluing, the lower part, the upper
    part and the filter itself are SDI or not together.  With the unit
    filter the gluing follows the upper part alone, except when one part
    is trivial and the gluing collapses to the other.
    """
    v = view_of(g, b, c)
    glued = is_subdirectly_irreducible(v.result)
    if b.n == 1 or c.n == 1:
        other = c if b.n == 1 else b
        rep = is_subdirectly_irreducible(other)
        parts = {"surviving part": rep.sdi}
        return GluingSDIReport("degenerate", glued, parts, rep.sdi,
                               glued.sdi == rep.sdi)
    if len(v.f_b) > 1:
        f_alg, _ = inner_algebra(b, v.f_b)
        vals = {
            "filter": is_subdirectly_irreducible(f_alg).sdi,
            "lower": is_subdirectly_irreducible(b).sdi,
            "upper": is_subdirectly_irreducible(c).sdi,
        }
        expected = vals["filter"]
        consistent = (glued.sdi == expected
                      and len(set(vals.values())) == 1)
        return GluingSDIReport("shared filter", glued, vals, expected,
                               consistent)
    upper_sdi = is_subdirectly_irreducible(c).sdi
    return GluingSDIReport("unit filter", glued, {"upper": upper_sdi},
                           upper_sdi, glued.sdi == upper_sdi)


# ---------------------------------------------------------------------------
# homomorphic images


@dataclass(frozen=True)
class ImageReport:
    case: str
    ok: bool
    image: FiniteRL
    detail: str = ""

    def lines(self):
        return ["image: case=%s %s%s" % (
            self.case, "verified" if self.ok else "MISMATCH",
            " (%s)" % self.detail if self.detail else "")]


def image_of_gluing(g, b, c, filt):
    """Decompose a quotient of a gluing along the parts.

    A congruence filter that meets the shared ideal collapses everything
    below the proper upper region, leaving a quotient of the upper part;
    one that meets the proper lower region collapses the upper region
    into the filter, leaving a quotient of the lower part; one confined
    to the shared filter and the upper region quotients both parts and
    glues the quotients.  Each claim is verified by isomorphism.
    """
    v = view_of(g, b, c)
    d = v.result
    filt = frozenset(int(x) for x in filt)
    why = congruence_filter_violation(d, filt)
    if not why.ok:
        raise ValueError("not a congruence filter of the gluing: "
                         + "; ".join(why.lines()))
    quot, _ = homomorphic_image(d, filt)
    ideal_img = {g.c_map[x] for x in v.i_c}
    bminus_img = {g.b_map[x] for x in v.b_minus}

    if filt & ideal_img:
        h_c = [x for x in range(c.n) if g.c_map[x] in filt]
        pred, _ = homomorphic_image(c, h_c)
        ok = are_isomorphic(quot, pred) is not None
        return ImageReport("upper quotient", ok, quot)
    if filt & bminus_img:
        h_b = [x for x in range(b.n) if g.b_map[x] in filt]
        pred, _ = homomorphic_image(b, h_b)
        ok = are_isomorphic(quot, pred) is not None
        return ImageReport("lower quotient", ok, quot)

    h_b = [x for x in range(b.n) if g.b_map[x] in filt]
    h_c = [x for x in range(c.n) if g.c_map[x] in filt]
    bq, pb = homomorphic_image(b, h_b)
    cq, pc = homomorphic_image(c, h_c)
    fq = sorted({pb[x] for x in v.f_b})
    iq = sorted({pb[x] for x in v.i_b})
    send = {}
    for x, y in zip(v.f_b, v.f_c):
        send[pb[x]] = pc[y]
    for x, y in zip(v.i_b, v.i_c):
        send[pb[x]] = pc[y]
    try:
        q = check_quadruple(bq, fq, cq, ideal=iq,
                            f_in_c=tuple(send[x] for x in fq),
                            i_in_c=tuple(send[x] for x in iq))
        if not q.ok:
            return ImageReport("glued quotient", False, quot,
                               "; ".join(q.lines()))
        pred = fi_gluing(q).result
    except ValueError as exc:
        return ImageReport("glued quotient", False, quot, str(exc))
    ok = are_isomorphic(quot, pred) is not None
    return ImageReport("glued quotient", ok, quot)


# ---------------------------------------------------------------------------
# subalgebra classification


@dataclass(frozen=True)
class SubalgebraCase:
    """Which of the four shapes a subuniverse of a gluing takes.

    case 1: inside the upper part.  case 2: inside the lower part.
    case 3: crosses both proper parts and keeps an upper element that is
    no ideal divisor, so both the class minimum and the class maximum of
    every lower element are trapped.  case 4: crosses both parts with
    divisors only; only the minima are trapped.  s_lower and s_upper are
    the traces in part coordinates; checks lists every side condition.
    """

    case: int
    checks: Verdict
    s_lower: tuple
    s_upper: tuple

    @property
    def ok(self):
        return self.checks.ok

    def lines(self):
        return ["subalgebra case %d" % self.case] + self.checks.lines()


def _agreement(checks, side, part, part_idx, glued, image, s):
    tables = (("join", part.join, glued.join), ("meet", part.meet, glued.meet),
              ("mul", part.mul, glued.mul), ("ldiv", part.ldiv, glued.ldiv),
              ("rdiv", part.rdiv, glued.rdiv))
    for x in part_idx:
        for y in part_idx:
            for name, pt, gt in tables:
                want = image[int(pt[x, y])]
                got = int(gt[image[x], image[y]])
                if want != got:
                    checks.add("%s_%s" % (side, name), (x, y),
                               "operation leaves the %s part" % side)
                    return


def classify_subalgebra(g, b, c, s):
    """Place a subuniverse of a gluing into one of the four cases.

    s is a set of result indices closed under the operations and
    containing the unit (the bottom constant is not required).  The
    verdict verifies every side condition of the case: operation
    agreement for the one-part cases, and for the crossing cases
    closure of the shared trace, the divisor maps, the class extrema,
    and a full rebuild of the sub-gluing compared by isomorphism.
    """
    v = view_of(g, b, c)
    d = v.result
    s = frozenset(int(x) for x in s)
    if not is_subuniverse(d, s, with_zero=False):
        raise ValueError("not a subuniverse of the gluing")
    inv_b = {g.b_map[x]: x for x in range(b.n)}
    inv_c = {g.c_map[x]: x for x in range(c.n)}
    s_b = tuple(inv_b[x] for x in sorted(s) if x in inv_b)
    s_c = tuple(inv_c[x] for x in sorted(s) if x in inv_c)
    bminus_img = {g.b_map[x] for x in v.b_minus}
    cminus_img = {g.c_map[x] for x in v.c_minus}
    checks = Verdict.passed()

    if not (s & bminus_img):
        if not is_subuniverse(c, s_c, with_zero=False):
            checks.add("upper_closed", s_c, "trace not closed in the upper part")
        _agreement(checks, "upper", c, s_c, d, g.c_map, s)
        return SubalgebraCase(1, checks, (), s_c)
    if not (s & cminus_img):
        if not is_subuniverse(b, s_b, with_zero=False):
            checks.add("lower_closed", s_b, "trace not closed in the lower part")
        _agreement(checks, "lower", b, s_b, d, g.b_map, s)
        return SubalgebraCase(2, checks, s_b, ())

    pair = FilterIdealPair.derive(c, v.f_c, v.i_c)
    iset = set(v.i_c)
    rest = [x for x in range(c.n) if x not in iset]

    def is_divisor(x):
        return any(int(c.mul[x, y]) in iset or int(c.mul[y, x]) in iset
                   for y in rest)

    s_c_set = set(s_c)
    s_b_set = set(s_b)
    shared_c = [x for x in s_c if x in set(v.f_c) | iset]
    if not is_subuniverse(c, set(shared_c) | {c.unit}, with_zero=False):
        checks.add("shared_trace", tuple(shared_c),
                   "shared trace not closed in the upper part")
    for x in s_c_set & pair.d_ell:
        if int(pair.ell[x]) not in s_c_set:
            checks.add("divisor_special", (x,),
                       "left divisor kept without its division value")
    for x in s_c_set & pair.d_r:
        if int(pair.r[x]) not in s_c_set:
            checks.add("divisor_special", (x,),
                       "right divisor kept without its division value")

    case = 4
    for x in s_c_set & set(v.c_minus):
        if not is_divisor(x):
            case = 3
            break

    sigma, gamma = sigma_gamma(b, v.f_b)
    fset_b = set(v.f_b)
    for x in s_b_set - fset_b:
        if sigma is not None and int(sigma[x]) not in s_b_set:
            checks.add("sigma_special", (x,),
                       "class minimum missing from the lower trace")
        if case == 3 and gamma is not None and int(gamma[x]) not in s_b_set:
            checks.add("gamma_special", (x,),
                       "class maximum missing from the lower trace")

    try:
        b1, pos_b = inner_algebra(b, s_b)
        c1, pos_c = inner_algebra(c, s_c)
        f1 = sorted(pos_b[x] for x in s_b_set & fset_b)
        i1 = sorted(pos_b[x] for x in s_b_set & set(v.i_b))
        send = {}
        for x, y in zip(v.f_b, v.f_c):
            if x in pos_b:
                send[pos_b[x]] = pos_c[y]
        for x, y in zip(v.i_b, v.i_c):
            if x in pos_b:
                send[pos_b[x]] = pos_c[y]
        q = check_quadruple(b1, f1, c1, ideal=i1,
                            f_in_c=tuple(send[x] for x in f1),
                            i_in_c=tuple(send[x] for x in i1))
        if not q.ok:
            checks.add("rebuild", tuple(sorted(s)),
                       "traces are not a compatible quadruple: "
                       + "; ".join(q.lines()))
        else:
            rebuilt = fi_gluing(q).result
            sub, _ = inner_algebra(d, s)
            if are_isomorphic(rebuilt, sub) is None:
                checks.add("rebuild", tuple(sorted(s)),
                           "re-glued traces differ from the subalgebra")
    except ValueError as exc:
        checks.add("rebuild", tuple(sorted(s)), str(exc))

    return SubalgebraCase(case, checks, s_b, s_c)
