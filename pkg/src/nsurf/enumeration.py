"""Vertex solutions and bounded candidate surfaces.

vertex_solutions computes the primitive admissible extreme rays of the
matching-equation cone {x >= 0 : Mx = 0} by the double description
method, processing hyperplanes in construction order.  Rays violating a
support-closed admissibility constraint (a second quad/octagon kind in
one tetrahedron, or a second octagon column anywhere) are discarded as
soon as they appear; the value constraint "octagon total at most 1" is
not support-closed and is only applied as the final filter.

brute_force_solutions is the independent oracle: a bounded exhaustive
search, feasible only for small instances and guarded accordingly.

bounded_candidates combines vertex solutions into candidate surface
vectors subject to an Euler characteristic floor and a boundary weight
budget, the combination set behind boundary-slope surveys.
"""

from concurrent.futures import ThreadPoolExecutor

from . import _kernels
from .errors import GuardExceededError, NsurfError
from .coordinates import (ALMOST_NORMAL, block_size, boundary_weight,
                          check_vector, coordinate_count,
                          euler_characteristic, is_admissible,
                          matching_matrix, octagon_total, oct_index,
                          quad_oct_kinds)
from .triangulation import triangulation_digest

BRUTE_FORCE_MAX_COORDINATES = 30
BRUTE_FORCE_MAX_BOUND = 10


class VertexSolutionSet:
    """Canonically ordered vertex solutions with provenance.

    Attributes: system, solutions (tuple of int tuples, lexicographically
    sorted), triangulation_digest (hex digest of the canonical gluing
    file the solutions were computed from).
    """

    def __init__(self, tri, system, solutions):
        self.system = system
        self.solutions = tuple(solutions)
        self.triangulation_digest = triangulation_digest(tri)

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def _support_group_masks(tri, system):
    """Bitmasks of columns among which at most one may be nonzero."""
    b = block_size(system)
    masks = []
    for t in range(tri.tet_count):
        m = 0
        for j in range(4, b):
            m |= 1 << (t * b + j)
        masks.append(m)
    if system == ALMOST_NORMAL:
        m = 0
        for t in range(tri.tet_count):
            for k in range(3):
                m |= 1 << oct_index(t, k)
        masks.append(m)
    return tuple(masks)


def _zero_mask(ray, full_mask):
    support = 0
    for c, x in enumerate(ray):
        if x:
            support |= 1 << c
    return full_mask & ~support


def _chunks(seq, parts):
    if parts <= 1 or len(seq) <= 1:
        return [seq]
    size = max(1, (len(seq) + parts - 1) // parts)
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def vertex_solutions(tri, system, threads=1):
    """Primitive admissible extreme rays of the matching cone.

    Double description over the nonnegative orthant, one matching row at
    a time; ray adjacency uses the combinatorial zero-set test with a
    rank-based quick reject.  With threads > 1 the pairing loop is split
    over positive rays and merged sorted, so the result is identical for
    any thread count.
    """
    n = coordinate_count(tri, system)
    rows = matching_matrix(tri, system)
    masks = _support_group_masks(tri, system)
    full_mask = (1 << n) - 1

    rays = [tuple(1 if c == i else 0 for c in range(n)) for i in range(n)]
    processed = 0
    for row in rows:
        dots = [sum(c * x for c, x in zip(row, ray)) for ray in rays]
        pos = [i for i, d in enumerate(dots) if d > 0]
        neg = [i for i, d in enumerate(dots) if d < 0]
        if not pos and not neg:
            continue
        keep = [rays[i] for i, d in enumerate(dots) if d == 0]
        zero_masks = [_zero_mask(r, full_mask) for r in rays]
        min_common = n - 2 - processed
        combined = []
        if pos and neg:
            chunks = _chunks(pos, threads)
            if len(chunks) == 1:
                combined = _kernels.dd_pairs(rays, zero_masks, dots, pos,
                                             neg, masks, min_common)
            else:
                with ThreadPoolExecutor(max_workers=len(chunks)) as ex:
                    futs = [ex.submit(_kernels.dd_pairs, rays, zero_masks,
                                      dots, chunk, neg, masks, min_common)
                            for chunk in chunks]
                    for fut in futs:
                        combined.extend(fut.result())
        rays = sorted(set(keep) | set(combined))
        processed += 1

    mat = rows
    out = [r for r in rays
           if any(r) and is_admissible(tri, system, r, matrix=mat)]
    out.sort()
    return VertexSolutionSet(tri, system, out)


def brute_force_solutions(tri, system, bound):
    """Exhaustive list of admissible vectors (zero vector included) with
    every coordinate at most `bound`, lexicographically sorted.

    This is the independent check against vertex_solutions and is
    deliberately a different algorithm: depth-first search over the
    coordinate grid with interval pruning on the matching rows.  Guarded
    to at most 30 coordinates and bound at most 10.
    """
    n = coordinate_count(tri, system)
    if n > BRUTE_FORCE_MAX_COORDINATES:
        raise GuardExceededError(
            "brute force limited to %d coordinates, got %d"
            % (BRUTE_FORCE_MAX_COORDINATES, n))
    if not 0 <= bound <= BRUTE_FORCE_MAX_BOUND:
        raise GuardExceededError(
            "brute force bound limited to %d, got %d"
            % (BRUTE_FORCE_MAX_BOUND, bound))
    rows = matching_matrix(tri, system)
    b = block_size(system)
    groups = [tuple(t * b + j for j in range(4, b))
              for t in range(tri.tet_count)]
    capped = []
    if system == ALMOST_NORMAL:
        octs = tuple(oct_index(t, k) for t in range(tri.tet_count)
                     for k in range(3))
        capped.append((octs, 1))
    found = [tuple(v) for v in _kernels.enumerate_solutions(
        rows, n, bound, tuple(groups), tuple(capped))]
    # the zero vector (empty surface) is a solution and sorts first
    return [(0,) * n] + found


def bounded_candidates(tri, system, chi_min, max_boundary_points,
                       zero_chi_cap=2):
    """Nonzero compatible nonnegative integer combinations of vertex
    solutions with Euler characteristic at least chi_min and total
    boundary-edge weight at most max_boundary_points.

    Summand rules, which make the set finite: closed summands of positive
    Euler characteristic (normal spheres) are excluded; summands of zero
    Euler characteristic have multiplicity at most zero_chi_cap; summands
    with boundary are limited by the boundary weight budget; octagon
    compatibility restricts octagon-bearing summands to a single copy.
    """
    vs = vertex_solutions(tri, system).solutions
    infos = []
    for s in vs:
        chi = euler_characteristic(tri, system, s)
        bw = boundary_weight(tri, system, s)
        oct_tot = octagon_total(tri, system, s)
        kinds = tuple(quad_oct_kinds(tri, system, s, t)
                      for t in range(tri.tet_count))
        if bw == 0 and chi > 0:
            continue
        infos.append((s, chi, bw, oct_tot, kinds))

    # best additional chi attainable from summands i.. given budget
    def max_gain(i, budget):
        g = 0
        for s, chi, bw, oct_tot, kinds in infos[i:]:
            if chi > 0 and bw > 0 and budget >= bw:
                g += chi * (budget // bw)
        return g

    n = coordinate_count(tri, system)
    out = set()
    state_kinds = [None] * tri.tet_count

    def dfs(i, vec, chi, budget, oct_left):
        if chi + max_gain(i, budget) < chi_min:
            return
        if i == len(infos):
            if chi >= chi_min and any(vec):
                out.add(tuple(vec))
            return
        s, s_chi, s_bw, s_oct, s_kinds = infos[i]
        dfs(i + 1, vec, chi, budget, oct_left)
        # maximum multiplicity of this summand
        m_max = None
        if s_bw > 0:
            m_max = budget // s_bw
        if s_chi == 0:
            m_max = zero_chi_cap if m_max is None else min(m_max, zero_chi_cap)
        if s_oct > 0:
            cap = oct_left // s_oct
            m_max = cap if m_max is None else min(m_max, cap)
        compatible = True
        for t in range(tri.tet_count):
            if s_kinds[t] and state_kinds[t] is not None \
                    and state_kinds[t] != s_kinds[t][0]:
                compatible = False
                break
        if not compatible or m_max == 0:
            return
        touched = []
        for t in range(tri.tet_count):
            if s_kinds[t] and state_kinds[t] is None:
                state_kinds[t] = s_kinds[t][0]
                touched.append(t)
        m = 0
        cur = list(vec)
        while m_max is None or m < m_max:
            m += 1
            cur = [a + b for a, b in zip(cur, s)]
            new_chi = chi + m * s_chi
            if new_chi + max_gain(i + 1, budget - m * s_bw) < chi_min:
                break
            dfs(i + 1, cur, new_chi, budget - m * s_bw,
                oct_left - m * s_oct)
        for t in touched:
            state_kinds[t] = None

    dfs(0, [0] * n, 0, max_boundary_points, 1)
    result = sorted(out)
    for v in result:
        assert is_admissible(tri, system, v)
    return result
