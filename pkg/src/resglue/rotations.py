"""Rotation constructions over integral residuated lattices.

A rotation hangs an order-dual primed copy of a nucleus image underneath
the input algebra, giving a bounded algebra whose new bottom is 1'.  The
n-variants insert a Lukasiewicz layer between the primed copy and the
input.  Everything here is built from the order and the product alone;
divisions are recovered by residuation, so a construction bug surfaces
as a NotResiduated error rather than a silently wrong table.

Inputs must be integral and zero-free (the construction supplies the
bottom itself).
"""

from dataclasses import dataclass
from math import lcm

import numpy as np

from .core import FiniteRL, from_leq_mul, hom_violation, subalgebra_generated
from .gluing import one_sum
from .varieties.terms import Term, parse_term, term_values

__all__ = [
    "Nucleus", "Rotation", "TransferReport", "all_nuclei",
    "disconnected_rotation", "generalized_rotation", "identity_nucleus",
    "lukasiewicz_chain", "lukasiewicz_embeds", "n_lifting", "n_rotation",
    "nucleus_from_term", "nucleus_image", "nucleus_violation",
    "rotation_amalgam_transfer_check", "top_nucleus",
]


# -- nuclei ----------------------------------------------------------------


@dataclass(frozen=True)
class Nucleus:
    """A validated closure operator with delta(x)delta(y) <= delta(xy)."""

    algebra: FiniteRL
    delta: tuple

    @property
    def closed(self):
        return tuple(sorted(set(self.delta)))

    def __call__(self, x):
        return self.delta[x]

    def is_lattice_preserving(self):
        a = self.algebra
        d = self.delta
        for x in a.elements:
            for y in a.elements:
                if d[int(a.join[x, y])] != int(a.join[d[x], d[y]]):
                    return False
                if d[int(a.meet[x, y])] != int(a.meet[d[x], d[y]]):
                    return False
        return True


def nucleus_violation(a, delta):
    """First broken nucleus law as (law, witness), or None."""
    d = [int(v) for v in delta]
    if len(d) != a.n:
        return ("shape", (len(d),))
    for x in a.elements:
        if not bool(a.leq[x, d[x]]):
            return ("increasing", (x,))
        if d[d[x]] != d[x]:
            return ("idempotent", (x,))
    for x in a.elements:
        for y in a.elements:
            if bool(a.leq[x, y]) and not bool(a.leq[d[x], d[y]]):
                return ("monotone", (x, y))
            if not bool(a.leq[int(a.mul[d[x], d[y]]), d[int(a.mul[x, y])]]):
                return ("nuclear", (x, y))
    return None


def _validated(a, delta):
    bad = nucleus_violation(a, delta)
    if bad is not None:
        raise ValueError("not a nucleus: %s at %s" % bad)
    return Nucleus(a, tuple(int(v) for v in delta))


def identity_nucleus(a):
    return Nucleus(a, tuple(range(a.n)))


def top_nucleus(a):
    return Nucleus(a, (a.unit,) * a.n)


def nucleus_from_term(a, term):
    """Pointwise nucleus from a one-variable term (or "identity")."""
    if isinstance(term, str):
        if term.strip() == "identity":
            return identity_nucleus(a)
        term = parse_term(term)
    if not isinstance(term, Term):
        raise TypeError("expected a Term or term text")
    names = term.variables()
    if len(names) > 1:
        raise ValueError("a nucleus term must use exactly one variable")
    vals = term_values(a, term, names)
    delta = vals if len(names) == 1 else [int(vals[0])] * a.n
    return _validated(a, delta)


def all_nuclei(a):
    """Every nucleus, by enumerating closure systems containing the unit.

    A candidate image S induces delta(x) = least element of S above x;
    the closure laws then hold by construction and only the nuclear
    inequality needs checking.
    """
    rest = [x for x in range(a.n) if x != a.unit]
    out = []
    for bits in range(1 << len(rest)):
        members = [a.unit] + [x for i, x in enumerate(rest) if (bits >> i) & 1]
        delta = [None] * a.n
        for x in range(a.n):
            ub = [s for s in members if a.leq[x, s]]
            least = None
            for s in ub:
                if all(bool(a.leq[s, t]) for t in ub):
                    least = s
                    break
            if least is None:
                delta = None
                break
            delta[x] = least
        if delta is None:
            continue
        nuclear = all(
            bool(a.leq[int(a.mul[delta[x], delta[y]]),
                       delta[int(a.mul[x, y])]])
            for x in range(a.n) for y in range(a.n))
        if nuclear:
            out.append(Nucleus(a, tuple(delta)))
    out.sort(key=lambda nu: (len(nu.closed), nu.closed))
    return tuple(out)


def _as_nucleus(a, delta):
    if delta is None:
        return identity_nucleus(a)
    if isinstance(delta, Nucleus):
        if delta.algebra is not a and delta.algebra.table_key() != a.table_key():
            raise ValueError("nucleus belongs to a different algebra")
        return delta
    if isinstance(delta, (str, Term)):
        return nucleus_from_term(a, delta)
    return _validated(a, delta)


def nucleus_image(a, delta):
    """The algebra on the closed elements.

    Meet and both divisions restrict (they stay closed); join and the
    product are closed off by delta.  The unit is delta-closed already.
    """
    nuc = _as_nucleus(a, delta)
    d = nuc.delta
    closed = list(nuc.closed)
    pos = {s: i for i, s in enumerate(closed)}
    m = len(closed)
    leq = a.leq[np.ix_(closed, closed)].copy()
    join = np.empty((m, m), dtype=np.int64)
    meet = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    ldiv = np.empty((m, m), dtype=np.int64)
    rdiv = np.empty((m, m), dtype=np.int64)
    for i, s in enumerate(closed):
        for j, t in enumerate(closed):
            join[i, j] = pos[d[int(a.join[s, t])]]
            mul[i, j] = pos[d[int(a.mul[s, t])]]
            for tab, src in ((meet, a.meet), (ldiv, a.ldiv), (rdiv, a.rdiv)):
                v = int(src[s, t])
                assert v in pos, "image not closed under a residual operation"
                tab[i, j] = pos[v]
    zero = pos[d[a.zero]] if a.has_zero else None
    labels = tuple(a.label(s) for s in closed)
    return FiniteRL(leq, join, meet, mul, ldiv, rdiv, unit=pos[a.unit],
                    zero=zero, labels=labels)


# -- Lukasiewicz chains and liftings ----------------------------------------


def lukasiewicz_chain(n):
    """The n-element MV-chain: product max(0, i + j - (n - 1))."""
    if n < 2:
        raise ValueError("need n >= 2")
    mul = np.fromfunction(lambda i, j: np.maximum(0, i + j - (n - 1)),
                          (n, n), dtype=np.int64)
    leq = np.triu(np.ones((n, n), dtype=bool))
    labels = tuple("0" if i == 0 else "1" if i == n - 1 else "l%d" % i
                   for i in range(n))
    return from_leq_mul(leq, mul.astype(np.int64), n - 1, zero=0,
                        labels=labels)


def lukasiewicz_embeds(m, n):
    """Whether the m-chain embeds in the n-chain: m-1 divides n-1."""
    return (n - 1) % (m - 1) == 0


def n_lifting(n, a):
    """Stack a on top of the n-element Lukasiewicz chain."""
    return one_sum(lukasiewicz_chain(n), a)


# -- rotations ---------------------------------------------------------------


@dataclass(frozen=True)
class Rotation:
    """A rotation output plus the layout of its three layers.

    a_map places the input algebra, prime_map sends x to the index of
    delta(x)', and ells lists the Lukasiewicz layer bottom to top; its
    ends are the new zero and the unit, so len(ells) == n.
    """

    result: FiniteRL
    mode: str
    n: int
    a_map: tuple
    prime_map: tuple
    ells: tuple
    nucleus: Nucleus

    def provenance(self):
        return {
            "mode": self.mode,
            "n": self.n,
            "a_map": list(self.a_map),
            "prime_map": list(self.prime_map),
            "ells": list(self.ells),
            "delta": list(self.nucleus.delta),
        }


def _rotate(a, nuc, n, mode):
    if a.has_zero:
        raise ValueError("not rotatable: input already has a zero constant")
    if not bool(a.leq[:, a.unit].all()):
        raise ValueError("not rotatable: input is not integral")
    if n < 2:
        raise ValueError("need n >= 2")
    closed = list(nuc.closed)
    m = len(closed)
    k = n - 2
    rank = {s: i for i, s in enumerate(closed)}
    size = m + k + a.n

    def ppos(s):
        return m - 1 - rank[s]

    def apos(x):
        return m + k + x

    def ell(i):
        if i == 0:
            return ppos(a.unit)
        if i == n - 1:
            return apos(a.unit)
        return m + i - 1

    leq = np.zeros((size, size), dtype=bool)
    leq[:m, m:] = True                      # primes below everything else
    for s in closed:
        for t in closed:
            leq[ppos(s), ppos(t)] = a.leq[t, s]
    for i in range(k):
        leq[m + i, m + i:m + k] = True      # the layer is a chain
        leq[m + i, m + k:] = True           # sitting below the input copy
    leq[m + k:, m + k:] = a.leq

    zero = ppos(a.unit)
    mul = np.zeros((size, size), dtype=np.int64)
    mul[:m, :m] = zero
    mul[m + k:, m + k:] = a.mul + (m + k)
    for x in a.elements:
        for t in closed:
            over = int(a.rdiv[t, x])
            under = int(a.ldiv[x, t])
            assert over in rank and under in rank, \
                "division into a closed element left the nucleus image"
            mul[apos(x), ppos(t)] = ppos(over)
            mul[ppos(t), apos(x)] = ppos(under)
    for i in range(1, n - 1):
        for j in range(1, n - 1):
            mul[ell(i), ell(j)] = ell(max(0, i + j - (n - 1)))
        mul[ell(i), m + k:] = ell(i)
        mul[m + k:, ell(i)] = ell(i)
        mul[ell(i), :m] = zero
        mul[:m, ell(i)] = zero

    labels = [""] * size
    for s in closed:
        labels[ppos(s)] = a.label(s) + "'"
    for i in range(1, n - 1):
        labels[ell(i)] = "l%d" % i
    for x in a.elements:
        labels[apos(x)] = a.label(x)
    out = from_leq_mul(leq, mul, apos(a.unit), zero=zero,
                       labels=tuple(labels))
    return Rotation(out, mode, n,
                    a_map=tuple(apos(x) for x in a.elements),
                    prime_map=tuple(ppos(nuc.delta[x]) for x in a.elements),
                    ells=tuple(ell(i) for i in range(n)),
                    nucleus=nuc)


def disconnected_rotation(a):
    """Glue an order-dual copy of a underneath it; the new bottom is 1'."""
    return _rotate(a, identity_nucleus(a), 2, "rotation")


def generalized_rotation(a, delta):
    """Rotation with the primed copy shrunk to the nucleus image."""
    return _rotate(a, _as_nucleus(a, delta), 2, "rotation")


def n_rotation(a, delta, n):
    """Generalized rotation with a Lukasiewicz layer of height n between."""
    return _rotate(a, _as_nucleus(a, delta), n, "n_rotation")


# -- amalgam transfer --------------------------------------------------------


@dataclass(frozen=True)
class TransferReport:
    ok: bool
    checks: tuple
    rotated: tuple   # (ra, rb, rc, rd)
    maps: tuple      # (ibar, jbar, hbar, kbar)

    def failures(self):
        return tuple(c for c in self.checks if not c[1])


def _lift_map(rsrc, rdst, base_map):
    """Extend a base homomorphism to the rotated copies.

    Primes go to primes of the image (term nuclei commute with
    homomorphisms) and the layer scales by the height ratio.
    """
    p, q = rsrc.n, rdst.n
    if (q - 1) % (p - 1):
        raise ValueError("layer of height %d does not embed in height %d"
                         % (p, q))
    step = (q - 1) // (p - 1)
    out = np.full(rsrc.result.n, -1, dtype=np.int64)
    for x, y in enumerate(base_map):
        out[rsrc.a_map[x]] = rdst.a_map[y]
        out[rsrc.prime_map[x]] = rdst.prime_map[y]
    for i, e in enumerate(rsrc.ells):
        out[e] = rdst.ells[i * step]
    assert (out >= 0).all(), "lift left an element unmapped"
    return tuple(int(v) for v in out)


def rotation_amalgam_transfer_check(v, delta_term, n, amalgam):
    """Verify that a base amalgam lifts to the rotated V-formation.

    v supplies (a, b, c, i, j); amalgam is (d, h, k) with h: b -> d and
    k: c -> d closing the square.  n is a single height or a triple
    (na, nb, nc); mixed heights are amalgamated at lcm(nb-1, nc-1) + 1.
    delta_term defines the nucleus uniformly on all four algebras, so it
    commutes with every map involved.
    """
    try:
        a, b, c, emb_i, emb_j = v.a, v.b, v.c, v.i, v.j
    except AttributeError:
        a, b, c, emb_i, emb_j = v
    d, h, k = amalgam
    if isinstance(n, int):
        na = nb = nc = nd = n
    else:
        na, nb, nc = n
        nd = lcm(nb - 1, nc - 1) + 1
    rot = {}
    for key, alg, height in (("a", a, na), ("b", b, nb), ("c", c, nc),
                             ("d", d, nd)):
        rot[key] = n_rotation(alg, nucleus_from_term(alg, delta_term), height)

    checks = []

    def record(name, passed, detail=""):
        checks.append((name, bool(passed), detail))

    for name, src, dst, mapping in (("i", a, b, emb_i), ("j", a, c, emb_j),
                                    ("h", b, d, h), ("k", c, d, k)):
        bad = hom_violation(src, dst, mapping)
        record("base_%s_is_embedding" % name,
               bad is None and len(set(mapping)) == src.n,
               "" if bad is None else str(bad))
    square = all(h[emb_i[x]] == k[emb_j[x]] for x in a.elements)
    record("base_square_commutes", square)

    ibar = _lift_map(rot["a"], rot["b"], emb_i)
    jbar = _lift_map(rot["a"], rot["c"], emb_j)
    hbar = _lift_map(rot["b"], rot["d"], h)
    kbar = _lift_map(rot["c"], rot["d"], k)
    for name, src, dst, mapping in (
            ("i", rot["a"], rot["b"], ibar), ("j", rot["a"], rot["c"], jbar),
            ("h", rot["b"], rot["d"], hbar), ("k", rot["c"], rot["d"], kbar)):
        bad = hom_violation(src.result, dst.result, mapping)
        record("lifted_%s_is_embedding" % name,
               bad is None and len(set(mapping)) == src.result.n,
               "" if bad is None else str(bad))
    lifted_square = all(hbar[ibar[x]] == kbar[jbar[x]]
                        for x in range(rot["a"].result.n))
    record("lifted_square_commutes", lifted_square)

    restrict_ok = all(
        hbar[rot["b"].a_map[x]] == rot["d"].a_map[h[x]] for x in b.elements)
    record("restriction_recovers_base", restrict_ok)

    gens = set(rot["a"].a_map) | set(rot["a"].ells)
    generated = subalgebra_generated(rot["a"].result, gens)
    record("generated_by_input_and_layer",
           len(generated) == rot["a"].result.n)

    ra = rot["a"]
    kernel_ok = True
    for x in a.elements:
        xr = ra.a_map[x]
        p = ra.result.power(xr, na)
        neg = int(ra.result.ldiv[p, ra.result.zero])
        if int(ra.result.mul[neg, neg]) != ra.result.zero:
            kernel_ok = False
            break
    record("negated_powers_square_to_zero", kernel_ok)

    ok = all(passed for _, passed, _ in checks)
    return TransferReport(ok, tuple(checks),
                          (rot["a"], rot["b"], rot["c"], rot["d"]),
                          (ibar, jbar, hbar, kbar))
