"""A deterministic corpus of small construction outputs.

Every entry records the result of one construction (1-sum, filter or
filter-ideal gluing, partial gluing, bottomize, rotation, lifting,
iterated stack, amalgam) over parts with at most twelve elements, so the
whole corpus stays cheap to rebuild and to verify.  Construction here is
pure assembly: nothing is verified beyond the preconditions the
constructions themselves enforce, so a verification sweep over the
corpus exercises the constructions rather than a cached answer.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import FiniteRL, from_leq_mul, godel_chain
from .filters import check_lower_pair, check_quadruple
from .gluing import (
    Gluing,
    bottomize,
    f_gluing,
    fi_gluing,
    fold_triple,
    iterated_partial_gluing,
    one_sum,
    partial_gluing_tau,
    partial_upper_gluing,
)
from .partial import (
    PartialRL,
    extract_lower_triple,
    extract_upper_triple,
    upper_triple_from_total,
)
from .rotations import (
    all_nuclei,
    disconnected_rotation,
    generalized_rotation,
    identity_nucleus,
    lukasiewicz_chain,
    n_lifting,
    n_rotation,
)
from .varieties.gl2 import gl2_amalgam_decide, gl2_chain_from_blocks, vformation

__all__ = ["CorpusEntry", "MAX_CARRIER", "corpus", "stock", "zero_free_stock"]

MAX_CARRIER = 12


@dataclass(frozen=True)
class CorpusEntry:
    """One named construction output.

    ``parts`` lists the input algebras in construction order (lower part
    first for two-part gluings), ``gluing`` carries provenance when the
    construction returns one, and ``kind`` is the construction tag used
    to slice the corpus in reports.
    """

    name: str
    kind: str
    result: FiniteRL
    parts: tuple
    gluing: Gluing | None = None


def _godel_diamond():
    leq = np.zeros((4, 4), dtype=bool)
    for i in range(4):
        leq[i, i] = leq[i, 3] = True
    leq[0, 1] = leq[0, 2] = True
    meet = np.array([[0, 0, 0, 0], [0, 1, 0, 1],
                     [0, 0, 2, 2], [0, 1, 2, 3]], dtype=np.int64)
    return from_leq_mul(leq, meet, 3, zero=0)


def _zero_free_diamond():
    d = _godel_diamond()
    return from_leq_mul(d.leq, d.mul, d.unit)


def _zchain(n):
    """Simple 2-potent chain: every product below the unit is zero."""
    return gl2_chain_from_blocks((n - 1,)).algebra


@lru_cache(maxsize=1)
def stock():
    """Named bounded parts the glued families draw from."""
    return {
        "g2": godel_chain(2),
        "g3": godel_chain(3),
        "g4": godel_chain(4),
        "g5": godel_chain(5),
        "l3": lukasiewicz_chain(3),
        "l4": lukasiewicz_chain(4),
        "z3": _zchain(3),
        "z4": _zchain(4),
        "b4": gl2_chain_from_blocks((2, 1)).algebra,
        "dia": _godel_diamond(),
    }


@lru_cache(maxsize=1)
def zero_free_stock():
    """Integral zero-free parts: rotation and lifting inputs."""
    return {
        "gz2": godel_chain(2, with_zero=False),
        "gz3": godel_chain(3, with_zero=False),
        "gz4": godel_chain(4, with_zero=False),
        "dzf": _zero_free_diamond(),
    }


# -- gluing families ---------------------------------------------------------


def _one_sum_entries():
    entries = []
    parts = stock()
    names = ("g2", "g3", "g4", "l3", "l4", "z3", "b4", "dia")
    for bn, cn in itertools.product(names, repeat=2):
        b, c = parts[bn], parts[cn]
        if b.n + c.n - 1 > MAX_CARRIER:
            continue
        g = one_sum(b, c)
        entries.append(CorpusEntry("one_sum:%s+%s" % (bn, cn), g.mode,
                                   g.result, (b, c), g))
    # a few nested sums, bracketed both ways
    for low, mid, top in (("g2", "l3", "g3"), ("z3", "g2", "z3"),
                          ("dia", "g3", "g2"), ("l3", "b4", "g2")):
        b, c, d = parts[low], parts[mid], parts[top]
        inner = one_sum(b, c)
        g = one_sum(inner.result, d)
        entries.append(CorpusEntry(
            "one_sum:(%s+%s)+%s" % (low, mid, top), g.mode, g.result,
            (inner.result, d), g))
    return entries


def _f_entries():
    entries = []
    parts = stock()
    for m in (3, 4, 5, 6):
        for k in range(1, min(3, m - 1) + 1):
            for p in range(k + 1, 6):
                if m + p - k > MAX_CARRIER:
                    continue
                b, c = godel_chain(m), godel_chain(p)
                filt = tuple(range(m - k, m))
                g = f_gluing(b, filt, c, f_in_c=tuple(range(p - k, p)))
                entries.append(CorpusEntry(
                    "f:g%d^%d+g%d" % (m, k, p), g.mode, g.result, (b, c), g))
    # 2-potent tops: glue along a shared block-and-unit filter when the
    # quadruple is compatible (mismatched block shapes are skipped)
    pairs = ((("b4", (2, 3)), ("b4", (2, 3))),
             (("b4", (2, 3)), ("z3", (1, 2))),
             (("b4", (3,)), ("z4", (3,))),
             (("z4", (3,)), ("b4", (3,))),
             (("z3", (2,)), ("dia", (3,))))
    for (bn, filt), (cn, f_in_c) in pairs:
        b, c = parts[bn], parts[cn]
        q = check_quadruple(b, filt, c, ideal=(), f_in_c=f_in_c, i_in_c=())
        if not q.ok:
            continue
        g = f_gluing(b, filt, c, f_in_c=f_in_c)
        entries.append(CorpusEntry(
            "f:%s^%d+%s" % (bn, len(filt), cn), g.mode, g.result, (b, c), g))
    return entries


def _fi_entries():
    entries = []
    for m in (3, 4, 5):
        for k in (1, 2):
            for p in (3, 4, 5):
                if k >= p or m + p - k - 1 > MAX_CARRIER:
                    continue
                b, c = godel_chain(m), godel_chain(p)
                q = check_quadruple(b, tuple(range(m - k, m)), c, ideal={0},
                                    f_in_c=tuple(range(p - k, p)),
                                    i_in_c=(0,))
                g = fi_gluing(q)
                entries.append(CorpusEntry(
                    "fi:g%d^%d+g%d@0" % (m, k, p), g.mode, g.result,
                    (b, c), g))
    for p in (3, 4, 5):
        # degenerate lower part: B is exactly the shared filter and ideal
        b, c = godel_chain(2), lukasiewicz_chain(p)
        q = check_quadruple(b, {1}, c, ideal={0}, f_in_c=(p - 1,),
                            i_in_c=(0,))
        g = fi_gluing(q)
        entries.append(CorpusEntry("fi:g2^1+l%d@0" % p, g.mode, g.result,
                                   (b, c), g))
    # rotations rebuilt as gluings: the disconnected n-rotation of A is
    # the 2-rotation glued under the n-lifting along a copy of A and a
    # shared bottom
    zf = zero_free_stock()
    for an in ("gz2", "gz3", "gz4"):
        a = zf[an]
        for n in (3, 4, 5):
            r2 = generalized_rotation(a, identity_nucleus(a))
            lif = n_lifting(n, a)
            if r2.result.n + lif.result.n - a.n - 1 > MAX_CARRIER:
                continue
            q = check_quadruple(r2.result, frozenset(r2.a_map), lif.result,
                                ideal={r2.result.zero}, f_in_c=lif.c_map,
                                i_in_c=(lif.result.zero,))
            g = fi_gluing(q)
            entries.append(CorpusEntry(
                "fi:rot(%s)+lift%d" % (an, n), g.mode, g.result,
                (r2.result, lif.result), g))
    return entries


def _partial_entries():
    entries = []
    pool = (("g2", godel_chain(2)), ("z3", _zchain(3)), ("z4", _zchain(4)))
    for count in (2, 3):
        for picks in itertools.product(pool, repeat=count):
            size = sum(a.n for _, a in picks) - (count - 1)
            if size > MAX_CARRIER:
                continue
            blocks = [a for _, a in picks]
            d = iterated_partial_gluing(blocks)
            name = "stack:" + ".".join(n for n, _ in picks)
            entries.append(CorpusEntry(name, "iterated", d, tuple(blocks)))
    # explicit tau steps: fold the lower stack, glue an upper triple on top
    l3 = lukasiewicz_chain(3)
    taus = (("z3", _zchain(3), upper_triple_from_total(_zchain(3))),
            ("z4", _zchain(4), upper_triple_from_total(_zchain(4))),
            ("l3", l3, extract_upper_triple(l3, {0})))
    for name, a, upper in taus:
        g = partial_gluing_tau(fold_triple(a), {0}, upper)
        entries.append(CorpusEntry("tau:%s/%s" % (name, name), g.mode,
                                   g.result.to_total(), (a,), None))
    # upper gluings that happen to close every division hole
    b4 = stock()["b4"]
    t = extract_lower_triple(b4, {2, 3})
    pu = partial_upper_gluing(t, PartialRL.from_total(godel_chain(2)))
    entries.append(CorpusEntry("upper:b4^2+g2", pu.mode,
                               pu.result.to_total(), (b4, godel_chain(2)),
                               None))
    g3 = godel_chain(3)
    t3 = extract_lower_triple(g3, {2})
    pu = partial_upper_gluing(t3, PartialRL.from_total(_zchain(3)))
    entries.append(CorpusEntry("upper:g3^1+z3", pu.mode,
                               pu.result.to_total(), (g3, _zchain(3)), None))
    return entries


def _bottomize_entries():
    entries = []
    cases = [("g%d^%d" % (m, k), godel_chain(m), frozenset(range(m - k, m)))
             for m in (3, 4, 5) for k in (1, 2)]
    cases.append(("b4^2", stock()["b4"], frozenset({2, 3})))
    cases.append(("z3^1", _zchain(3), frozenset({2})))
    cases.append(("dia^1", _godel_diamond(), frozenset({3})))
    for name, b, filt in cases:
        if check_lower_pair(b, filt).verdict != "lower":
            continue
        g = bottomize(b, filt)
        entries.append(CorpusEntry("bottom:%s" % name, g.mode, g.result,
                                   (b,), g))
    return entries


# -- rotations, liftings, amalgams -------------------------------------------


def _rotation_entries():
    entries = []
    for an, a in zero_free_stock().items():
        d = disconnected_rotation(a)
        if d.result.n <= MAX_CARRIER:
            entries.append(CorpusEntry("disc:%s" % an, "rotation",
                                       d.result, (a,)))
        for ni, nu in enumerate(all_nuclei(a)[:3]):
            r = generalized_rotation(a, nu)
            if r.result.n <= MAX_CARRIER:
                entries.append(CorpusEntry("rot:%s,nu%d" % (an, ni),
                                           "rotation", r.result, (a,)))
            for n in (3, 4):
                r = n_rotation(a, nu, n)
                if r.result.n <= MAX_CARRIER:
                    entries.append(CorpusEntry(
                        "rot:%s,nu%d,n%d" % (an, ni, n), "rotation",
                        r.result, (a,)))
    return entries


def _lifting_entries():
    entries = []
    for an, a in zero_free_stock().items():
        for n in (3, 4, 5, 6):
            if n - 1 + a.n > MAX_CARRIER:
                continue
            g = n_lifting(n, a)
            entries.append(CorpusEntry("lift:n%d(%s)" % (n, an), g.mode,
                                       g.result, (lukasiewicz_chain(n), a),
                                       g))
    return entries


def _amalgam_entries():
    # block shapes chosen so the decision succeeds; a failure here means
    # the decision procedure or the shapes regressed, so it is loud
    shapes = (((1,), (2,), (3,)),
              ((1,), (1, 1), (1, 2)),
              ((1,), (1, 1), (1, 1, 1)),
              ((2,), (3,), (4,)),
              ((1, 1), (1, 1, 1), (1, 1, 1, 1)),
              ((1, 2), (1, 3), (1, 4)),
              ((2, 1), (2, 1, 1), (2, 1)),
              ((1,), (2, 1), (3, 1)))
    entries = []
    for sa, sb, sc in shapes:
        a = gl2_chain_from_blocks(sa).algebra
        b = gl2_chain_from_blocks(sb).algebra
        c = gl2_chain_from_blocks(sc).algebra
        decision = gl2_amalgam_decide(vformation(a, b, c))
        if not decision.exists:
            raise RuntimeError("internal: corpus amalgam %r/%r/%r failed: %s"
                               % (sa, sb, sc, decision.clause))
        name = "amalg:%s|%s|%s" % (".".join(map(str, sa)),
                                   ".".join(map(str, sb)),
                                   ".".join(map(str, sc)))
        entries.append(CorpusEntry(name, "amalgam", decision.amalgam,
                                   (a, b, c)))
    return entries


def _block_chain_entries():
    entries = []
    for total in (5, 6):
        for mask in range(1 << (total - 2)):
            sizes, run = [], 1
            for t in range(total - 2):
                if mask >> t & 1:
                    sizes.append(run)
                    run = 1
                else:
                    run += 1
            sizes.append(run)
            chain = gl2_chain_from_blocks(tuple(sizes))
            name = "blocks:" + ".".join(str(s) for s in sizes)
            entries.append(CorpusEntry(name, "block_chain", chain.algebra,
                                       tuple(chain.block_algebras())))
    return entries


@lru_cache(maxsize=1)
def corpus():
    """All corpus entries, rebuilt deterministically on first use."""
    entries = (_one_sum_entries() + _f_entries() + _fi_entries()
               + _partial_entries() + _bottomize_entries()
               + _rotation_entries() + _lifting_entries()
               + _amalgam_entries() + _block_chain_entries())
    assert all(e.result.n <= MAX_CARRIER for e in entries)
    assert len(set(e.name for e in entries)) == len(entries)
    return tuple(entries)
