"""Two-potent bounded chains: recognition, generation, amalgamation.

The chains handled here are commutative integral residuated chains with a
bottom constant in which x^2 = x^3 and, pointwise, xy = y^2 whenever
y <= x < 1.  Squaring sends such a chain onto its idempotents, and the
fibres A(s) = {x : x^2 = s} are intervals ("blocks"); the whole chain is
the iterated partial gluing of its blocks read bottom-up.  On top of the
recognizer this module enumerates all chains of a given size, computes
generated subalgebras against a closed form, and decides whether a
V-formation of such chains has an amalgam, constructing one when it does.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import _backend
from ..core import (FiniteRL, are_isomorphic, find_embeddings,
                    find_homomorphisms, from_leq_mul, hom_violation)
from ..gluing import iterated_partial_gluing

__all__ = [
    "AmalgamDecision", "GL2Chain", "GenerationReport", "VFormation",
    "brute_force_amalgam", "brute_force_one_amalgams", "gl2_amalgam_decide",
    "gl2_chain_from_blocks", "gl2_chains", "gl2_generate", "gl2_violation",
    "recognize_gl2", "vformation",
]


# -- recognition -------------------------------------------------------------


def gl2_violation(a):
    """First membership condition broken by ``a``, or None.

    Conditions, in the order checked: bottom constant present, total order,
    commutative, 2-potent (x^2 = x^3), and xy = y^2 for all y <= x < 1.
    The last two together are strictly stronger than the single equation
    x | ((x * (x & y)) \\ (x & y)^2) = 1, which some MV-chains satisfy
    without being 2-potent.
    """
    if not a.has_zero:
        return ("bounded", (), "no bottom constant")
    if not a.is_chain:
        flat = np.argwhere(~(a.leq | a.leq.T))
        x, y = (int(t) for t in flat[0])
        return ("chain", (x, y), "%s and %s are incomparable"
                % (a.label(x), a.label(y)))
    if not a.is_commutative:
        bad = np.argwhere(a.mul != a.mul.T)
        x, y = (int(t) for t in bad[0])
        return ("commutative", (x, y), "")
    for x in a.elements:
        x2 = int(a.mul[x, x])
        if int(a.mul[x2, x]) != x2:
            return ("two_potent", (x,),
                    "%s^2 differs from %s^3" % (a.label(x), a.label(x)))
    for x in a.elements:
        if x == a.unit:
            continue
        for y in a.elements:
            if y == a.unit or not a.le(y, x):
                continue
            if int(a.mul[x, y]) != int(a.mul[y, y]):
                return ("block_product", (x, y),
                        "%s*%s differs from %s^2 although %s <= %s < 1"
                        % (a.label(x), a.label(y), a.label(y),
                           a.label(y), a.label(x)))
    return None


@dataclass(frozen=True)
class GL2Chain:
    """A recognised 2-potent chain together with its block decomposition.

    ``order`` lists the carrier bottom-up.  ``blocks`` are the squaring
    fibres as intervals of that order, bottom-up, without the unit block
    {1}.  ``block_of[x]`` indexes into ``blocks`` (``len(blocks)`` for the
    unit).  ``coatom`` is the element directly below the unit, None only
    on the one-element chain.
    """

    algebra: FiniteRL
    order: tuple
    blocks: tuple
    block_of: tuple
    coatom: object

    @property
    def is_godel(self):
        return all(len(blk) == 1 for blk in self.blocks)

    def block(self, x):
        return self.blocks[self.block_of[x]]

    def block_min(self, x):
        return self.block(x)[0]

    def block_max(self, x):
        return self.block(x)[-1]

    def is_top_block(self, x):
        return self.block_of[x] == len(self.blocks) - 1

    def block_algebras(self):
        """The blocks as bounded chains with a fresh unit on top.

        Every nontrivial product inside a block lands on the block minimum,
        so each piece is a chain of the kind iterated partial gluing
        accepts; gluing them bottom-up rebuilds the original chain.
        """
        a = self.algebra
        out = []
        for blk in self.blocks:
            m = len(blk) + 1
            leq = np.triu(np.ones((m, m), dtype=bool))
            mul = np.zeros((m, m), dtype=np.int64)
            mul[m - 1, :] = np.arange(m)
            mul[:, m - 1] = np.arange(m)
            labels = tuple(a.label(x) for x in blk) + (a.label(a.unit),)
            out.append(from_leq_mul(leq, mul, m - 1, zero=0, labels=labels))
        return out


def _decompose(a):
    order = tuple(sorted(a.elements, key=lambda x: int(a.height[x])))
    blocks = []
    key = None
    for x in order:
        if x == a.unit:
            continue
        s = int(a.mul[x, x])
        if s != key:
            blocks.append([x])
            key = s
        else:
            blocks[-1].append(x)
    blocks = tuple(tuple(blk) for blk in blocks)
    block_of = [len(blocks)] * a.n
    for bi, blk in enumerate(blocks):
        for x in blk:
            block_of[x] = bi
    coatom = order[-2] if a.n >= 2 else None
    return GL2Chain(algebra=a, order=order, blocks=blocks,
                    block_of=tuple(block_of), coatom=coatom)


def recognize_gl2(a, verify_decomposition=True):
    """Block decomposition of a 2-potent bounded chain, or None.

    With ``verify_decomposition`` the chain is additionally rebuilt as the
    iterated partial gluing of its blocks and compared with the input; a
    mismatch would mean a broken internal invariant and raises.
    """
    if gl2_violation(a) is not None:
        return None
    g = _decompose(a)
    if verify_decomposition and g.blocks:
        rebuilt = iterated_partial_gluing(g.block_algebras())
        if are_isomorphic(rebuilt, a) is None:
            raise RuntimeError(
                "internal: block decomposition does not rebuild the chain")
    return g


# -- construction and enumeration --------------------------------------------


def gl2_chain_from_blocks(sizes, labels=None):
    """The 2-potent chain with the given block sizes, bottom block first."""
    sizes = tuple(int(s) for s in sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("need a nonempty tuple of positive block sizes")
    n = sum(sizes) + 1
    blockmin = np.zeros(n, dtype=np.int64)
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(tuple(range(start, start + s)))
        blockmin[start:start + s] = start
        start += s
    lo = np.minimum.outer(np.arange(n), np.arange(n))
    mul = blockmin[lo]
    mul[n - 1, :] = np.arange(n)
    mul[:, n - 1] = np.arange(n)
    leq = np.triu(np.ones((n, n), dtype=bool))
    alg = from_leq_mul(leq, mul, n - 1, zero=0, labels=labels)
    block_of = [len(blocks)] * n
    for bi, blk in enumerate(blocks):
        for x in blk:
            block_of[x] = bi
    return GL2Chain(algebra=alg, order=tuple(range(n)), blocks=tuple(blocks),
                    block_of=tuple(block_of), coatom=n - 2)


def _compositions(m):
    if m == 0:
        yield ()
        return
    for mask in range(1 << (m - 1)):
        parts = []
        size = 1
        for t in range(m - 1):
            if (mask >> t) & 1:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)


@lru_cache(maxsize=32)
def gl2_chains(n):
    """All 2-potent chains with exactly n elements, one per block shape.

    Block shapes are the compositions of n - 1, so there are 2^(n-2)
    chains for n >= 2.  The order is deterministic, and the tuple is
    cached: callers must treat the chains as read-only.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        alg = from_leq_mul(np.ones((1, 1), dtype=bool),
                           np.zeros((1, 1), dtype=np.int64), 0, zero=0)
        return (GL2Chain(algebra=alg, order=(0,), blocks=(),
                         block_of=(0,), coatom=None),)
    return tuple(gl2_chain_from_blocks(comp) for comp in _compositions(n - 1))


# -- generation --------------------------------------------------------------


@dataclass(frozen=True)
class GenerationReport:
    """Generated subalgebra versus its closed form.

    ``generated`` is the fixpoint closure of the seed under the operations
    and the unit (the bottom constant is not added by itself).  ``case`` 1
    means the seed was all idempotents with singleton blocks below its top
    element, so nothing new appears; case 2 adds block bounds, the coatom,
    and the coatom's square.
    """

    case: int
    generated: tuple
    closed_form: tuple
    bound: int

    @property
    def ok(self):
        return (set(self.generated) == set(self.closed_form)
                and len(self.generated) <= self.bound)

    def lines(self):
        return [
            "case %d closure of a %d-element seed"
            % (self.case, (self.bound - 3) // 3),
            "generated   %s" % (self.generated,),
            "closed form %s" % (self.closed_form,),
            "size %d within bound %d: %s"
            % (len(self.generated), self.bound,
               "yes" if len(self.generated) <= self.bound else "no"),
            "agreement: %s" % ("yes" if set(self.generated)
                               == set(self.closed_form) else "no"),
        ]


def gl2_generate(g, seed):
    """Subalgebra of ``g`` generated by ``seed``, without the 0 constant.

    Returns a report comparing the operation closure with a closed form:
    when the seed consists of idempotents whose blocks are singletons
    (except possibly the block of the largest non-unit seed element),
    closing up only adds the unit; otherwise the chain has a coatom c and
    the closure is the seed plus block minima and maxima of seed elements
    plus {1, c, c^2}.  Size is bounded by 3|seed| + 3 either way.
    """
    a = g.algebra
    seed = tuple(sorted(set(int(x) for x in seed)))
    mask = 1 << a.unit
    for x in seed:
        mask |= 1 << x
    out = _backend.close_mask(a.op_tables(), mask, a.n)
    generated = tuple(i for i in range(a.n) if (out >> i) & 1)

    rank = {x: p for p, x in enumerate(g.order)}
    xs = [x for x in seed if x != a.unit]
    mx = max(xs, key=rank.__getitem__) if xs else None
    case1 = (all(a.is_idempotent(x) for x in xs)
             and all(len(g.block(x)) == 1 for x in xs if x != mx))
    if case1:
        form = set(xs) | {a.unit}
        case = 1
    else:
        c = g.coatom
        form = set(seed) | {a.unit, c, int(a.mul[c, c])}
        for x in xs:
            form.add(g.block_min(x))
            form.add(g.block_max(x))
        case = 2
    return GenerationReport(case=case, generated=generated,
                            closed_form=tuple(sorted(form)),
                            bound=3 * len(seed) + 3)


# -- V-formations ------------------------------------------------------------


@dataclass(frozen=True)
class VFormation:
    """Two embeddings of a shared algebra: ``i`` into b, ``j`` into c."""

    a: FiniteRL
    b: FiniteRL
    c: FiniteRL
    i: tuple
    j: tuple

    def violation(self):
        """Why i or j fails to be an embedding, or None."""
        for leg, target, m in (("i", self.b, self.i),
                               ("j", self.c, self.j)):
            if len(m) != self.a.n:
                return (leg, "mapping has wrong length")
            if len(set(m)) != self.a.n:
                return (leg, "mapping is not injective")
            bad = hom_violation(self.a, target, m)
            if bad is not None:
                return (leg, "%s at %s" % (bad[0], bad[1]))
        return None


def vformation(a, b, c, i=None, j=None):
    """A V-formation on explicit or first-found embeddings."""
    if i is None:
        found = find_embeddings(a, b, limit=1)
        if not found:
            raise ValueError("the shared algebra does not embed in b")
        i = found[0]
    if j is None:
        found = find_embeddings(a, c, limit=1)
        if not found:
            raise ValueError("the shared algebra does not embed in c")
        j = found[0]
    v = VFormation(a=a, b=b, c=c, i=tuple(i), j=tuple(j))
    bad = v.violation()
    if bad is not None:
        raise ValueError("leg %s is not an embedding: %s" % bad)
    return v


# -- amalgamation ------------------------------------------------------------


@dataclass(frozen=True)
class AmalgamDecision:
    """Outcome of the amalgamation test for a V-formation.

    On failure ``clause`` names the obstruction, ``element`` the shared
    element it lives over (None for the coatom clause) and ``side`` the leg
    whose structure pins the conflict.  On success ``amalgam`` carries the
    constructed chain with embeddings ``h`` (of b) and ``k`` (of c)
    satisfying h o i = k o j.
    """

    exists: bool
    clause: str = ""
    element: object = None
    side: str = ""
    detail: str = ""
    amalgam: object = None
    h: object = None
    k: object = None
    brute: object = None

    def lines(self):
        if self.exists:
            out = ["amalgam exists: %d elements" % self.amalgam.n]
            out.append("h = %s" % (self.h,))
            out.append("k = %s" % (self.k,))
        else:
            out = ["no amalgam: %s" % self.clause]
            if self.element is not None:
                out.append("witness element %s of the shared algebra"
                           % self.element)
            if self.detail:
                out.append(self.detail)
        if self.brute is not None:
            bound, found = self.brute
            out.append("exhaustive search up to %d elements: %s"
                       % (bound, "found one" if found else "none"))
        return out


def _require_gl2(alg, name):
    g = recognize_gl2(alg, verify_decomposition=False)
    if g is None:
        why = gl2_violation(alg)
        raise ValueError("%s is not a 2-potent bounded chain: %s %s"
                         % (name, why[0], why[2]))
    return g


def gl2_amalgam_decide(v, confirm_bound=None):
    """Decide whether a V-formation of 2-potent chains has an amalgam.

    Failure happens in three shapes: a shared block whose maximum is
    forced from both legs is a singleton on exactly one of them; a leg
    with non-idempotents has its top block anchored at a shared element
    that the other leg continues above; or both legs have non-idempotents
    and their coatom blocks disagree about idempotency or about being
    anchored at a shared element.  Otherwise the two chains merge
    blockwise and the merged chain is verified together with both
    embeddings before being returned.

    ``confirm_bound`` additionally runs the exhaustive search up to that
    size on a negative decision and stores its (expectedly empty) result.
    """
    bad = v.violation()
    if bad is not None:
        raise ValueError("leg %s is not an embedding: %s" % bad)
    ga = _require_gl2(v.a, "the shared algebra")
    gb = _require_gl2(v.b, "b")
    gc = _require_gl2(v.c, "c")

    decision = _failure_clause(v, ga, gb, gc)
    if decision is not None:
        if confirm_bound:
            found = brute_force_amalgam(v, max_size=confirm_bound)
            decision = AmalgamDecision(
                exists=False, clause=decision.clause,
                element=decision.element, side=decision.side,
                detail=decision.detail, brute=(confirm_bound, found))
        return decision

    d, h, k = _build_amalgam(v, ga, gb, gc)
    _verify_amalgam(v, d, h, k)
    return AmalgamDecision(exists=True, amalgam=d, h=h, k=k)


def _failure_clause(v, ga, gb, gc):
    a = v.a
    bpin = not gb.is_godel
    cpin = not gc.is_godel
    last_b, last_c = len(gb.blocks) - 1, len(gc.blocks) - 1
    inv_i = {v.i[x]: x for x in range(a.n)}
    inv_j = {v.j[x]: x for x in range(a.n)}

    # A block whose maximum is forced from both legs (because the leg
    # continues above it, or pins it as the top block of a leg with
    # non-idempotents) cannot be a singleton on just one side: the merged
    # maximum would identify a fresh element with a shared one.
    for a0 in a.elements:
        if a0 == a.unit:
            continue
        bi = gb.block_of[v.i[a0]]
        ci = gc.block_of[v.j[a0]]
        bf = bi < last_b or bpin
        cf = ci < last_c or cpin
        nb = len(gb.blocks[bi])
        nc = len(gc.blocks[ci])
        if bf and cf and (nb == 1) != (nc == 1):
            side = "b" if nb == 1 else "c"
            return AmalgamDecision(
                exists=False, clause="pinned singleton block", element=a0,
                side=side, detail="the block of %s has %d elements on one "
                "leg but is a pinned singleton in %s"
                % (a.label(a0), max(nb, nc), side))

    # A leg with non-idempotents keeps its top block on top of the merge,
    # so nothing on the other leg may continue above the anchor it shares.
    if bpin:
        a_star = inv_i.get(gb.blocks[-1][0])
        if a_star is not None and gc.block_of[v.j[a_star]] != last_c:
            return AmalgamDecision(
                exists=False, clause="blocked pinned top", element=a_star,
                side="c", detail="b pins its top block at %s but c "
                "continues above it" % a.label(a_star))
    if cpin:
        a_star = inv_j.get(gc.blocks[-1][0])
        if a_star is not None and gb.block_of[v.i[a_star]] != last_b:
            return AmalgamDecision(
                exists=False, clause="blocked pinned top", element=a_star,
                side="b", detail="c pins its top block at %s but b "
                "continues above it" % a.label(a_star))

    # When both legs pin, their coatoms merge, so they must agree about
    # idempotency and about being anchored at a shared element.
    if not (bpin and cpin):
        return None
    cb, cc = gb.coatom, gc.coatom
    idem_b = v.b.is_idempotent(cb)
    idem_c = v.c.is_idempotent(cc)
    if idem_b != idem_c:
        return AmalgamDecision(
            exists=False, clause="coatom shape mismatch",
            side="b" if idem_b else "c",
            detail="the coatom of %s is idempotent, the other is not"
            % ("b" if idem_b else "c"))
    if idem_b:
        sb, sc = cb in inv_i, cc in inv_j
        what = "coatoms"
    else:
        sb, sc = (int(v.b.mul[cb, cb]) in inv_i,
                  int(v.c.mul[cc, cc]) in inv_j)
        what = "coatom squares"
    if sb != sc:
        if sb:
            elem = inv_i[cb if idem_b else int(v.b.mul[cb, cb])]
        else:
            elem = inv_j[cc if idem_c else int(v.c.mul[cc, cc])]
        return AmalgamDecision(
            exists=False, clause="coatom anchoring mismatch", element=elem,
            side="b" if sb else "c",
            detail="the %s are shared on one leg only" % what)
    return None


def _build_amalgam(v, ga, gb, gc):
    """Blockwise merge of the two legs over the shared chain.

    Shared blocks interleave leg-b elements before leg-c elements between
    consecutive shared anchors; block maxima merge when both legs continue
    above the block.  Unshared blocks pass through, except that a leg with
    non-idempotent elements keeps its top block on top of everything (the
    coatom of such a leg must stay a coatom), merging the two top blocks
    when both legs insist.
    """
    a, b, c = v.a, v.b, v.c
    inv_i = {v.i[x]: x for x in range(a.n)}
    inv_j = {v.j[x]: x for x in range(a.n)}
    bkeys = [inv_i.get(blk[0]) for blk in gb.blocks]
    ckeys = [inv_j.get(blk[0]) for blk in gc.blocks]
    anchors = [key for key in bkeys if key is not None]
    assert anchors == [key for key in ckeys if key is not None], \
        "shared blocks out of order"
    bpin = not gb.is_godel
    cpin = not gc.is_godel
    last_b, last_c = len(gb.blocks) - 1, len(gc.blocks) - 1

    def merged_block(bi, ci):
        bl, cl = list(gb.blocks[bi]), list(gc.blocks[ci])
        bset = set(bl)
        shared = [x for x in ga.order if x != a.unit and v.i[x] in bset]
        out = []
        bpos = cpos = 0
        for s in shared:
            while bl[bpos] != v.i[s]:
                out.append(("b", bl[bpos]))
                bpos += 1
            while cl[cpos] != v.j[s]:
                out.append(("c", cl[cpos]))
                cpos += 1
            out.append(("s", s))
            bpos += 1
            cpos += 1
        btail, ctail = bl[bpos:], cl[cpos:]
        bf = bi < last_b or bpin
        cf = ci < last_c or cpin
        if btail and ctail and bf and cf:
            out += [("b", x) for x in btail[:-1]]
            out += [("c", x) for x in ctail[:-1]]
            out.append(("m", btail[-1], ctail[-1]))
        elif btail and ctail and bf:
            out += [("b", x) for x in btail[:-1]]
            out += [("c", x) for x in ctail]
            out.append(("b", btail[-1]))
        else:
            out += [("b", x) for x in btail]
            out += [("c", x) for x in ctail]
        return out

    dblocks = []
    bi = ci = 0
    for a0 in anchors:
        while bkeys[bi] is None:
            dblocks.append([("b", x) for x in gb.blocks[bi]])
            bi += 1
        while ckeys[ci] is None:
            dblocks.append([("c", x) for x in gc.blocks[ci]])
            ci += 1
        dblocks.append(merged_block(bi, ci))
        bi += 1
        ci += 1
    rest_b = list(range(bi, len(gb.blocks)))
    rest_c = list(range(ci, len(gc.blocks)))
    btop = rest_b.pop() if (bpin and rest_b) else None
    ctop = rest_c.pop() if (cpin and rest_c) else None
    for t in rest_b:
        dblocks.append([("b", x) for x in gb.blocks[t]])
    for t in rest_c:
        dblocks.append([("c", x) for x in gc.blocks[t]])
    if btop is not None and ctop is not None:
        bl, cl = list(gb.blocks[btop]), list(gc.blocks[ctop])
        if len(bl) == 1:
            dblocks.append([("m", bl[0], cl[0])])
        else:
            blk = [("m", bl[0], cl[0])]
            blk += [("b", x) for x in bl[1:-1]]
            blk += [("c", x) for x in cl[1:-1]]
            blk.append(("m", bl[-1], cl[-1]))
            dblocks.append(blk)
    elif btop is not None:
        dblocks.append([("b", x) for x in gb.blocks[btop]])
    elif ctop is not None:
        dblocks.append([("c", x) for x in gc.blocks[ctop]])

    def atom_label(atom):
        if atom[0] == "s":
            return a.label(atom[1])
        if atom[0] == "b":
            return "b." + b.label(atom[1])
        if atom[0] == "c":
            return "c." + c.label(atom[1])
        return "b.%s~c.%s" % (b.label(atom[1]), c.label(atom[2]))

    flat = [atom for blk in dblocks for atom in blk]
    flat.append(("s", a.unit))
    n = len(flat)
    blockmin = np.arange(n, dtype=np.int64)
    pos = 0
    for blk in dblocks:
        blockmin[pos:pos + len(blk)] = pos
        pos += len(blk)
    lo = np.minimum.outer(np.arange(n), np.arange(n))
    mul = blockmin[lo]
    mul[n - 1, :] = np.arange(n)
    mul[:, n - 1] = np.arange(n)
    leq = np.triu(np.ones((n, n), dtype=bool))
    d = from_leq_mul(leq, mul, n - 1, zero=0,
                     labels=tuple(atom_label(at) for at in flat))

    h = [None] * b.n
    k = [None] * c.n
    for idx, atom in enumerate(flat):
        if atom[0] == "s":
            h[v.i[atom[1]]] = idx
            k[v.j[atom[1]]] = idx
        elif atom[0] == "b":
            h[atom[1]] = idx
        elif atom[0] == "c":
            k[atom[1]] = idx
        else:
            h[atom[1]] = idx
            k[atom[2]] = idx
    assert None not in h and None not in k, "legs not covered by the merge"
    return d, tuple(h), tuple(k)


def _verify_amalgam(v, d, h, k):
    problems = []
    if gl2_violation(d) is not None:
        problems.append("result is not a 2-potent bounded chain")
    for leg, src, m in (("h", v.b, h), ("k", v.c, k)):
        if len(set(m)) != src.n:
            problems.append("%s not injective" % leg)
        bad = hom_violation(src, d, m)
        if bad is not None:
            problems.append("%s breaks %s" % (leg, bad[0]))
    if any(h[v.i[x]] != k[v.j[x]] for x in range(v.a.n)):
        problems.append("square does not commute")
    if problems:
        raise RuntimeError("internal: constructed amalgam failed "
                           "verification: " + "; ".join(problems))


# -- exhaustive search -------------------------------------------------------


def _may_embed(gx, gd):
    """Cheap necessary conditions for an embedding of gx into gd."""
    if gx.algebra.n > gd.algebra.n:
        return False
    if len(gx.algebra.idempotents) > len(gd.algebra.idempotents):
        return False
    xs = [len(blk) for blk in gx.blocks]
    ds = [len(blk) for blk in gd.blocks]
    if not gx.is_godel:
        # the top block must land on the top block, idempotent coatoms on
        # idempotent coatoms
        if not ds or (xs[-1] == 1) != (ds[-1] == 1) or xs[-1] > ds[-1]:
            return False
        xs, ds = xs[:-1], ds[:-1]
    # blocks map to blocks injectively preserving order, so the size
    # sequence must dominate a subsequence; greedy matching decides that
    t = 0
    for s in xs:
        while t < len(ds) and ds[t] < s:
            t += 1
        if t == len(ds):
            return False
        t += 1
    return True


def brute_force_amalgam(v, max_size=None):
    """First amalgam found by exhaustive search, or None.

    Candidates are every 2-potent chain of each size from the larger leg
    up to ``max_size`` (default |b| + |c| - |a| + 2), in the deterministic
    enumeration order.  For each candidate the shared algebra is embedded
    first; an amalgam on that placement needs one injective extension per
    leg, and those two searches are independent.  Returns (chain, h, k)
    or None.
    """
    if max_size is None:
        max_size = v.b.n + v.c.n - v.a.n + 2
    gb = _require_gl2(v.b, "b")
    gc = _require_gl2(v.c, "c")
    for n in range(max(v.b.n, v.c.n), max_size + 1):
        for g in gl2_chains(n):
            if not (_may_embed(gb, g) and _may_embed(gc, g)):
                continue
            d = g.algebra
            for emb in find_embeddings(v.a, d):
                fixed_b = {v.i[x]: emb[x] for x in range(v.a.n)}
                hs = find_homomorphisms(v.b, d, injective=True,
                                        fixed=fixed_b, limit=1)
                if not hs:
                    continue
                fixed_c = {v.j[x]: emb[x] for x in range(v.a.n)}
                ks = find_homomorphisms(v.c, d, injective=True,
                                        fixed=fixed_c, limit=1)
                if ks:
                    return (d, hs[0], ks[0])
    return None


def brute_force_one_amalgams(v, max_size=None):
    """All one-sided amalgams up to ``max_size``: h any homomorphism of b,
    k an embedding of c, agreeing on the shared part.

    Returns a list of (chain, h, k) triples in deterministic order.  Used
    to study V-formations without an amalgam: when every triple found has
    injective h, even the one-sided problem admits no collapse on b.
    Since k o j embeds the shared algebra, h must be injective on its
    image, so the search also runs per placement of the shared algebra.
    """
    if max_size is None:
        max_size = v.b.n + v.c.n - v.a.n + 2
    gc = _require_gl2(v.c, "c")
    out = []
    for n in range(v.c.n, max_size + 1):
        for g in gl2_chains(n):
            if not _may_embed(gc, g):
                continue
            d = g.algebra
            for emb in find_embeddings(v.a, d):
                fixed_b = {v.i[x]: emb[x] for x in range(v.a.n)}
                hs = find_homomorphisms(v.b, d, fixed=fixed_b)
                if not hs:
                    continue
                fixed_c = {v.j[x]: emb[x] for x in range(v.a.n)}
                for k in find_homomorphisms(v.c, d, injective=True,
                                            fixed=fixed_c):
                    out.extend((d, h, k) for h in hs)
    return out
