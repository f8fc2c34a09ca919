"""Numpy / pure-python implementations of the hot kernels.

Same call signatures as the compiled module ``resglue._kernels``.  The
compiled module wins when importable; see ``resglue._backend``.

Table conventions: operation tables are int64 arrays of shape (n, n) holding
element indices, -1 for undefined cells and -2 for strongly undefined ones.
``leq`` is a bool array of shape (n, n).
"""

import numpy as np

# term opcodes, shared by both backends and the parser
OP_VAR = 0
OP_CONST = 1
OP_TABLE = 2  # arg selects the table: 0 join, 1 meet, 2 mul, 3 ldiv, 4 rdiv
OP_POW = 3


def assoc_witness(mul):
    """First (x, y, z) with (xy)z != x(yz), or None."""
    lhs = mul[mul, :]                    # lhs[x,y,z] = mul[mul[x,y], z]
    rhs = np.take(mul, mul, axis=1)      # rhs[x,y,z] = mul[x, mul[y,z]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return tuple(int(v) for v in bad[0])
    return None


def residuation_witness(leq, mul, ldiv, rdiv):
    """First (x, y, z) where xy<=z, y<=x\\z, x<=z/y disagree, or None."""
    prod_le = leq[mul, :]                                    # mul[x,y] <= z
    y_le = np.take(leq, ldiv, axis=1).transpose(1, 0, 2)     # y <= ldiv[x,z]
    x_le = np.take(leq, rdiv, axis=1).transpose(0, 2, 1)     # x <= rdiv[z,y]
    bad = np.argwhere((prod_le != y_le) | (prod_le != x_le))
    if bad.size:
        return tuple(int(v) for v in bad[0])
    return None


def bounds_witness(leq, join, meet):
    """Check join/meet tables give least upper / greatest lower bounds.

    Returns (kind, x, y, z) for the first failure, kind in
    0: join[x,y] not an upper bound (z unused, -1)
    1: join[x,y] not least (z a smaller upper bound)
    2: meet[x,y] not a lower bound
    3: meet[x,y] not greatest
    or None when both tables are correct.
    """
    n = leq.shape[0]
    ub = leq[:, None, :] & leq[None, :, :]          # ub[x,y,z]: z above x and y
    jz = np.take_along_axis(ub, join[:, :, None], axis=2)[:, :, 0]
    bad = np.argwhere(~jz)
    if bad.size:
        return (0, int(bad[0][0]), int(bad[0][1]), -1)
    least = ~ub | leq[join, :]                      # z an ub -> join <= z
    bad = np.argwhere(~least)
    if bad.size:
        return (1, *(int(v) for v in bad[0]))
    lt = leq.T
    lb = lt[:, None, :] & lt[None, :, :]            # lb[x,y,z]: z below x and y
    mz = np.take_along_axis(lb, meet[:, :, None], axis=2)[:, :, 0]
    bad = np.argwhere(~mz)
    if bad.size:
        return (2, int(bad[0][0]), int(bad[0][1]), -1)
    greatest = ~lb | lt[meet, :]
    bad = np.argwhere(~greatest)
    if bad.size:
        return (3, *(int(v) for v in bad[0]))
    return None


def eval_term_all(codes, args, tabs, nvars, n, unit):
    """Evaluate a compiled term over all n**nvars assignments.

    codes/args: parallel int arrays (postfix program), tabs: (5, n, n) int64.
    Assignment order is lexicographic with variable 0 most significant.
    Returns an int64 array of length n**nvars.
    """
    size = n ** nvars
    idx = np.arange(size)
    stack = []
    for code, arg in zip(codes, args):
        if code == OP_VAR:
            stack.append((idx // n ** (nvars - 1 - arg)) % n)
        elif code == OP_CONST:
            stack.append(np.full(size, arg, dtype=np.int64))
        elif code == OP_TABLE:
            b = stack.pop()
            a = stack.pop()
            stack.append(tabs[arg][a, b])
        elif code == OP_POW:
            a = stack.pop()
            r = np.full(size, unit, dtype=np.int64)
            m = tabs[2]
            for _ in range(arg):
                r = m[r, a]
            stack.append(r)
        else:
            raise ValueError("bad opcode %r" % code)
    return stack[-1]


def close_mask(tabs, seed, n):
    """Close a bitmask of elements under the given (possibly partial) tables."""
    rows = [t.tolist() for t in tabs]
    cur = int(seed)
    while True:
        elems = [i for i in range(n) if (cur >> i) & 1]
        new = cur
        for t in rows:
            for i in elems:
                ti = t[i]
                for j in elems:
                    v = ti[j]
                    if v >= 0:
                        new |= 1 << v
        if new == cur:
            return cur
        cur = new


def closure_all_seeds(tabs, n):
    """close_mask for every seed 0..2^n-1 at once; returns uint64 array."""
    size = 1 << n
    contrib = np.zeros((n, n), dtype=np.uint64)
    one = np.uint64(1)
    for t in tabs:
        for i in range(n):
            for j in range(n):
                v = int(t[i][j])
                if v >= 0:
                    contrib[i, j] |= one << np.uint64(v)
    # rowbits[i, m] = OR of contrib[i, j] over j in mask m  (subset DP)
    rowbits = np.zeros((n, size), dtype=np.uint64)
    idx = np.arange(size)
    for j in range(n):
        bit = 1 << j
        src = idx[(idx & bit) == 0]
        rowbits[:, src + bit] = rowbits[:, src] | contrib[:, j : j + 1]
    step = np.zeros(size, dtype=np.uint64)
    for i in range(n):
        sel = ((idx >> i) & 1) == 1
        step[sel] |= rowbits[i, sel]
    cur = idx.astype(np.uint64)
    while True:
        nxt = cur | step[cur.astype(np.intp)]
        if np.array_equal(nxt, cur):
            return cur
        cur = nxt
