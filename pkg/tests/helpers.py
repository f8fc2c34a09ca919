"""Small algebra builders shared across the test modules."""

import numpy as np

from resglue.core import chain_leq, from_leq_mul
from resglue.partial import PartialRL
from resglue.core import UNDEF


def luk(n):
    """Lukasiewicz n-chain: x*y = max(0, x+y-(n-1))."""
    mul = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            mul[x, y] = max(0, x + y - (n - 1))
    return from_leq_mul(chain_leq(n), mul, n - 1, zero=0)


def zchain(n):
    """n-chain where every product without a unit factor collapses to 0."""
    mul = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        mul[x, n - 1] = mul[n - 1, x] = x
    return from_leq_mul(chain_leq(n), mul, n - 1, zero=0)


def two_potent_4chain():
    """0 < a < f < 1 with f idempotent and a*f = a*a = 0."""
    mul = np.array([[0, 0, 0, 0],
                    [0, 0, 0, 1],
                    [0, 0, 2, 2],
                    [0, 1, 2, 3]], dtype=np.int64)
    return from_leq_mul(chain_leq(4), mul, 3, zero=0)


def gl2_4chain():
    """0 < a < b < 1 with a idempotent and b*b = a."""
    mul = np.array([[0, 0, 0, 0],
                    [0, 1, 1, 1],
                    [0, 1, 1, 2],
                    [0, 1, 2, 3]], dtype=np.int64)
    return from_leq_mul(chain_leq(4), mul, 3, zero=0)


def _lattice_tables(leq):
    n = leq.shape[0]
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ub = [z for z in range(n) if leq[a, z] and leq[b, z]]
            join[a, b] = [z for z in ub if all(leq[z, w] for w in ub)][0]
            lb = [z for z in range(n) if leq[z, a] and leq[z, b]]
            meet[a, b] = [z for z in lb if all(leq[w, z] for w in lb)][0]
    return join, meet


def two_coatom_partial():
    """0 < x < c1,c2 < 1 with idempotent coatoms; only x\\0 and 0/x undefined.

    The one partial algebra small enough to hand-check that still has a
    division whose witness set tops out at two incomparable elements.
    """
    n = 5
    leq = np.zeros((n, n), dtype=bool)
    for a, ups in {0: {0, 1, 2, 3, 4}, 1: {1, 2, 3, 4},
                   2: {2, 4}, 3: {3, 4}, 4: {4}}.items():
        for b in ups:
            leq[a, b] = True
    mul = np.zeros((n, n), dtype=np.int64)
    for z in range(n):
        mul[z, 4] = mul[4, z] = z
    mul[2, 2] = 2
    mul[3, 3] = 3
    ldiv = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            wit = [z for z in range(n) if leq[mul[a, z], b]]
            tops = [w for w in wit if all(leq[v, w] for v in wit)]
            ldiv[a, b] = tops[0] if tops else UNDEF
    join, meet = _lattice_tables(leq)
    return PartialRL(leq, join, meet, mul, ldiv, ldiv.T.copy(),
                     unit=4, zero=0)


def diamond_m3():
    """M3: three incomparable atoms under a common top, meet as product."""
    n = 5
    leq = np.eye(n, dtype=bool)
    for a in (1, 2, 3):
        leq[0, a] = True
    leq[:, 4] = True
    join, meet = _lattice_tables(leq)
    return leq, join, meet
