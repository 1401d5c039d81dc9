"""Pure-Python enumeration kernels.

These are the reference implementations of the two inner loops that
dominate run time: the pairing step of the double description method and
the bounded exhaustive solution search.  A compiled twin with the same
signatures lives in _fast.pyx; either may be used interchangeably.
"""

from math import gcd


def dd_pairs(rays, zero_masks, dots, pos_ids, neg_ids, group_masks,
             min_common_zeros):
    """Combinations of adjacent (positive, negative) ray pairs against the
    current hyperplane.

    rays            current extreme rays, tuples of ints
    zero_masks      bitmask of zero coordinates per ray
    dots            dot product of each ray with the hyperplane row
    pos_ids/neg_ids indices with positive/negative dot
    group_masks     support constraints: a ray may have at most one
                    nonzero coordinate inside each mask
    min_common_zeros  sound quick-reject threshold: adjacent pairs share
                    at least this many zero coordinates

    Adjacency is the combinatorial support test: a pair is adjacent iff no
    third ray's zero set contains the pair's common zero set.  The quick
    reject is a necessary rank condition, never a substitute.  Each new
    ray is scaled primitive and dropped if it violates a group mask.
    """
    nrays = len(rays)
    out = []
    for i in pos_ids:
        ri, zi, di = rays[i], zero_masks[i], dots[i]
        for j in neg_ids:
            zj, dj = zero_masks[j], dots[j]
            common = zi & zj
            if min_common_zeros > 0 and common.bit_count() < min_common_zeros:
                continue
            adjacent = True
            for k in range(nrays):
                if k != i and k != j and (common & ~zero_masks[k]) == 0:
                    adjacent = False
                    break
            if not adjacent:
                continue
            rj = rays[j]
            new = [di * b - dj * a for a, b in zip(ri, rj)]
            g = 0
            for x in new:
                g = gcd(g, x)
            if g > 1:
                new = [x // g for x in new]
            support = 0
            for c, x in enumerate(new):
                if x:
                    support |= 1 << c
            if any((support & gm).bit_count() > 1 for gm in group_masks):
                continue
            out.append(tuple(new))
    return out


def enumerate_solutions(rows, n, bound, exclusive_groups, capped_groups):
    """Exhaustive search for nonnegative integer vectors x with every
    coordinate at most `bound`, rows . x = 0 for every row, at most one
    nonzero coordinate inside each exclusive group, and coordinate sum at
    most `cap` over each (columns, cap) capped group.

    Depth-first over coordinates in index order with interval pruning:
    a partial assignment survives only while, for every row, the assigned
    part plus the attainable range of the unassigned tail still contains
    zero.  The zero vector is not reported.  Output is lexicographically
    sorted by construction.
    """
    rows = [tuple(r) for r in rows]
    nrows = len(rows)
    # tail_min/max[r][d]: attainable dot range of coordinates d..n-1
    tail_min = [[0] * (n + 1) for _ in range(nrows)]
    tail_max = [[0] * (n + 1) for _ in range(nrows)]
    for r in range(nrows):
        for d in range(n - 1, -1, -1):
            c = rows[r][d]
            tail_min[r][d] = tail_min[r][d + 1] + (c * bound if c < 0 else 0)
            tail_max[r][d] = tail_max[r][d + 1] + (c * bound if c > 0 else 0)

    group_of = [-1] * n
    for gi, cols in enumerate(exclusive_groups):
        for c in cols:
            group_of[c] = gi
    cap_of = [-1] * n
    caps = []
    for ci, (cols, cap) in enumerate(capped_groups):
        caps.append(cap)
        for c in cols:
            cap_of[c] = ci
    group_used = [-1] * len(exclusive_groups)
    cap_left = list(caps)

    cur = [0] * nrows
    x = [0] * n
    out = []

    def feasible(d):
        for r in range(nrows):
            s = cur[r]
            if s + tail_max[r][d] < 0 or s + tail_min[r][d] > 0:
                return False
        return True

    def assign(d):
        if not feasible(d):
            return
        if d == n:
            if any(x):
                out.append(tuple(x))
            return
        gi = group_of[d]
        ci = cap_of[d]
        limit = bound
        if gi >= 0 and group_used[gi] != -1:
            limit = 0
        if ci >= 0:
            limit = min(limit, cap_left[ci])
        x[d] = 0
        assign(d + 1)
        for val in range(1, limit + 1):
            x[d] = val
            for r in range(nrows):
                cur[r] += rows[r][d]
            if gi >= 0 and val == 1:
                group_used[gi] = d
            if ci >= 0:
                cap_left[ci] -= 1
            assign(d + 1)
        if x[d]:
            val = x[d]
            for r in range(nrows):
                cur[r] -= rows[r][d] * val
            if gi >= 0:
                group_used[gi] = -1
            if ci >= 0:
                cap_left[ci] += val
        x[d] = 0

    assign(0)
    return out
