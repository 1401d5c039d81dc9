# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled twins of the pure-Python enumeration kernels.

Same signatures, same results.  Values are held in 64-bit integers with
an input magnitude guard; when a value might not fit, the functions
raise OverflowError and the dispatcher retries the pure implementation,
which is exact at any size.
"""

from libc.stdlib cimport calloc, free

# inputs below this bound cannot overflow the 64-bit intermediates
cdef long long GUARD = (<long long>1) << 30

cdef unsigned long long WORD_MASK = <unsigned long long>0xFFFFFFFFFFFFFFFF


cdef inline int popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline long long c_gcd(long long a, long long b):
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long long checked(object value) except? -2:
    cdef long long v = value
    if v >= GUARD or v <= -GUARD:
        raise OverflowError("kernel input out of guarded range")
    return v


def dd_pairs(rays, zero_masks, dots, pos_ids, neg_ids, group_masks,
             min_common_zeros):
    """See _pure.dd_pairs.  Raises OverflowError on oversize input."""
    cdef Py_ssize_t nrays = len(rays)
    cdef Py_ssize_t n = len(rays[0]) if nrays else 0
    cdef Py_ssize_t nw = (n + 63) // 64 if n else 1
    cdef Py_ssize_t ngroups = len(group_masks)
    cdef Py_ssize_t np = len(pos_ids), nn = len(neg_ids)
    cdef Py_ssize_t i, j, k, c, w, gi, pi, nj
    cdef long long di, dj, g, x
    cdef int count, adjacent
    cdef long long min_common = min_common_zeros
    cdef object m

    cdef long long *R = <long long *>calloc(nrays * n, sizeof(long long))
    cdef long long *D = <long long *>calloc(nrays, sizeof(long long))
    cdef unsigned long long *Z = <unsigned long long *>calloc(
        nrays * nw, sizeof(unsigned long long))
    cdef unsigned long long *G = <unsigned long long *>calloc(
        (ngroups if ngroups else 1) * nw, sizeof(unsigned long long))
    cdef unsigned long long *C = <unsigned long long *>calloc(
        nw, sizeof(unsigned long long))
    cdef unsigned long long *S = <unsigned long long *>calloc(
        nw, sizeof(unsigned long long))
    cdef long long *newv = <long long *>calloc(n if n else 1,
                                               sizeof(long long))
    if not (R and D and Z and G and C and S and newv):
        free(R); free(D); free(Z); free(G); free(C); free(S); free(newv)
        raise MemoryError()

    out = []
    try:
        for i in range(nrays):
            ray = rays[i]
            for c in range(n):
                R[i * n + c] = checked(ray[c])
            D[i] = checked(dots[i])
            m = zero_masks[i]
            for w in range(nw):
                Z[i * nw + w] = <unsigned long long>(m & WORD_MASK)
                m >>= 64
        for gi in range(ngroups):
            m = group_masks[gi]
            for w in range(nw):
                G[gi * nw + w] = <unsigned long long>(m & WORD_MASK)
                m >>= 64

        for pi in range(np):
            i = pos_ids[pi]
            di = D[i]
            for nj in range(nn):
                j = neg_ids[nj]
                dj = D[j]
                count = 0
                for w in range(nw):
                    C[w] = Z[i * nw + w] & Z[j * nw + w]
                    count += popcount(C[w])
                if min_common > 0 and count < min_common:
                    continue
                adjacent = 1
                for k in range(nrays):
                    if k == i or k == j:
                        continue
                    for w in range(nw):
                        if C[w] & ~Z[k * nw + w]:
                            break
                    else:
                        adjacent = 0
                        break
                if not adjacent:
                    continue
                g = 0
                for c in range(n):
                    x = di * R[j * n + c] - dj * R[i * n + c]
                    newv[c] = x
                    g = c_gcd(g, x)
                if g > 1:
                    for c in range(n):
                        newv[c] = newv[c] // g
                for w in range(nw):
                    S[w] = 0
                for c in range(n):
                    if newv[c]:
                        S[c >> 6] |= (<unsigned long long>1) << (c & 63)
                for gi in range(ngroups):
                    count = 0
                    for w in range(nw):
                        count += popcount(S[w] & G[gi * nw + w])
                    if count > 1:
                        break
                else:
                    out.append(tuple([newv[c] for c in range(n)]))
    finally:
        free(R); free(D); free(Z); free(G); free(C); free(S); free(newv)
    return out


cdef struct ESState:
    Py_ssize_t n
    Py_ssize_t nrows
    long long bound
    long long *rows
    long long *tmin
    long long *tmax
    int *group_of
    int *cap_of
    Py_ssize_t *group_used
    long long *cap_left
    long long *cur
    long long *x


cdef int es_assign(ESState *st, Py_ssize_t d, list out) except -1:
    cdef Py_ssize_t r, c, n1 = st.n + 1
    cdef long long s, val, limit
    cdef int gi, ci, nz
    for r in range(st.nrows):
        s = st.cur[r]
        if s + st.tmax[r * n1 + d] < 0 or s + st.tmin[r * n1 + d] > 0:
            return 0
    if d == st.n:
        nz = 0
        for c in range(st.n):
            if st.x[c]:
                nz = 1
                break
        if nz:
            out.append(tuple([st.x[c] for c in range(st.n)]))
        return 0
    gi = st.group_of[d]
    ci = st.cap_of[d]
    limit = st.bound
    if gi >= 0 and st.group_used[gi] != -1:
        limit = 0
    if ci >= 0 and st.cap_left[ci] < limit:
        limit = st.cap_left[ci]
    st.x[d] = 0
    es_assign(st, d + 1, out)
    for val in range(1, limit + 1):
        st.x[d] = val
        for r in range(st.nrows):
            st.cur[r] += st.rows[r * st.n + d]
        if gi >= 0 and val == 1:
            st.group_used[gi] = d
        if ci >= 0:
            st.cap_left[ci] -= 1
        es_assign(st, d + 1, out)
    if st.x[d]:
        val = st.x[d]
        for r in range(st.nrows):
            st.cur[r] -= st.rows[r * st.n + d] * val
        if gi >= 0:
            st.group_used[gi] = -1
        if ci >= 0:
            st.cap_left[ci] += val
    st.x[d] = 0
    return 0


def enumerate_solutions(rows, n, bound, exclusive_groups, capped_groups):
    """See _pure.enumerate_solutions.  Raises OverflowError on oversize
    input."""
    cdef ESState st
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t r, d, c, gi, ci
    cdef Py_ssize_t ngroups = len(exclusive_groups)
    cdef Py_ssize_t ncaps = len(capped_groups)
    cdef long long coef

    st.n = nn
    st.nrows = nrows
    st.bound = checked(bound)
    st.rows = <long long *>calloc((nrows * nn) if nrows * nn else 1,
                                  sizeof(long long))
    st.tmin = <long long *>calloc((nrows if nrows else 1) * (nn + 1),
                                  sizeof(long long))
    st.tmax = <long long *>calloc((nrows if nrows else 1) * (nn + 1),
                                  sizeof(long long))
    st.group_of = <int *>calloc(nn if nn else 1, sizeof(int))
    st.cap_of = <int *>calloc(nn if nn else 1, sizeof(int))
    st.group_used = <Py_ssize_t *>calloc(ngroups if ngroups else 1,
                                         sizeof(Py_ssize_t))
    st.cap_left = <long long *>calloc(ncaps if ncaps else 1,
                                      sizeof(long long))
    st.cur = <long long *>calloc(nrows if nrows else 1, sizeof(long long))
    st.x = <long long *>calloc(nn if nn else 1, sizeof(long long))
    if not (st.rows and st.tmin and st.tmax and st.group_of and st.cap_of
            and st.group_used and st.cap_left and st.cur and st.x):
        free(st.rows); free(st.tmin); free(st.tmax); free(st.group_of)
        free(st.cap_of); free(st.group_used); free(st.cap_left)
        free(st.cur); free(st.x)
        raise MemoryError()

    out = []
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(nn):
                st.rows[r * nn + c] = checked(row[c])
        for r in range(nrows):
            st.tmin[r * (nn + 1) + nn] = 0
            st.tmax[r * (nn + 1) + nn] = 0
            for d in range(nn - 1, -1, -1):
                coef = st.rows[r * nn + d]
                st.tmin[r * (nn + 1) + d] = st.tmin[r * (nn + 1) + d + 1] \
                    + (coef * st.bound if coef < 0 else 0)
                st.tmax[r * (nn + 1) + d] = st.tmax[r * (nn + 1) + d + 1] \
                    + (coef * st.bound if coef > 0 else 0)
        for c in range(nn):
            st.group_of[c] = -1
            st.cap_of[c] = -1
        for gi in range(ngroups):
            st.group_used[gi] = -1
            for c in exclusive_groups[gi]:
                st.group_of[c] = <int>gi
        for ci in range(ncaps):
            cols, cap = capped_groups[ci]
            st.cap_left[ci] = checked(cap)
            for c in cols:
                st.cap_of[c] = <int>ci
        es_assign(&st, 0, out)
    finally:
        free(st.rows); free(st.tmin); free(st.tmax); free(st.group_of)
        free(st.cap_of); free(st.group_used); free(st.cap_left)
        free(st.cur); free(st.x)
    return out
