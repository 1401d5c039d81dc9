"""Normal and almost-normal surface coordinates.

A surface transverse to a triangulation meets each tetrahedron in disks:
triangles (cutting off one vertex), quadrilaterals (separating a pair of
opposite edges) and, in the almost-normal system, octagons.  A vector
counts disks per tetrahedron in the fixed order

    [T0, T1, T2, T3, Q01|23, Q02|13, Q03|12]            (normal)
    [ ... as above ..., O01|23, O02|13, O03|12]         (almost-normal)

where the pairing ab|cd means the disk separates edge ab from edge cd.
Incidences, with EDGES the fixed edge list of the triangulation module:

* Triangle Tv meets the three edges at v once each and puts one arc
  cutting off v on each of the three faces containing v.
* Quad ab|cd misses edges ab and cd, meets the other four once each,
  and puts one arc on every face; on face abc the arc cuts off c (the
  vertex of the face lying in the opposite pair).
* Octagon ab|cd meets ab and cd twice, the other four edges once each
  (boundary length 8), and puts two arcs on every face; on face abc they
  cut off a and b (the endpoints of the doubled edge lying in the face).

The matching equations require, for each interior face class and each of
its three arc types, that the two sides contribute equally.  A vector is
admissible when it is nonnegative, satisfies the matching equations,
carries at most one quad-or-octagon kind per tetrahedron, and (almost
normal only) has octagon total at most 1.
"""

from fractions import Fraction
from math import gcd

from .errors import (CoordinateError, IncompatibleVectorsError,
                     InconsistentWeightsError)
from .triangulation import EDGES, FACE_EDGES, FACE_VERTICES

NORMAL = "normal"
ALMOST_NORMAL = "almost-normal"

# Pairing k separates EDGES[k] from EDGES[5-k]; the fixed edge order
# makes those exactly 01|23, 02|13, 03|12.
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _pair_partner():
    out = []
    for (a, b), (c, d) in PAIRINGS:
        m = {a: b, b: a, c: d, d: c}
        out.append(tuple(m[v] for v in range(4)))
    return tuple(out)


# PARTNER[k][v] is the vertex paired with v under pairing k.
PARTNER = _pair_partner()

# Edge weight of each disk kind: TRI_EDGE[v][e], QUAD_EDGE[k][e], OCT_EDGE[k][e].
TRI_EDGE = tuple(tuple(1 if v in EDGES[e] else 0 for e in range(6))
                 for v in range(4))
QUAD_EDGE = tuple(tuple(0 if e in (k, 5 - k) else 1 for e in range(6))
                  for k in range(3))
OCT_EDGE = tuple(tuple(2 if e in (k, 5 - k) else 1 for e in range(6))
                 for k in range(3))


def _quad_cut(k, f):
    """Vertex cut off on face f by the arc of quad kind k."""
    return PARTNER[k][f]


def _oct_cuts(k, f):
    """The two vertices cut off on face f by octagon kind k (the pair of
    the pairing not containing f)."""
    (a, b), (c, d) = PAIRINGS[k]
    return (c, d) if f in (a, b) else (a, b)


def block_size(system):
    if system == NORMAL:
        return 7
    if system == ALMOST_NORMAL:
        return 10
    raise CoordinateError("unknown coordinate system %r" % (system,))


def coordinate_count(tri, system):
    return tri.tet_count * block_size(system)


def tri_index(t, v, system):
    return t * block_size(system) + v


def quad_index(t, k, system):
    return t * block_size(system) + 4 + k


def oct_index(t, k):
    return t * 10 + 7 + k


def check_vector(tri, system, v):
    """Raise CoordinateError unless v has the right length and integer,
    nonnegative entries.  Returns the vector as a tuple."""
    v = tuple(v)
    want = coordinate_count(tri, system)
    if len(v) != want:
        raise CoordinateError(
            "vector has %d coordinates, expected %d for %s on %d tets"
            % (len(v), want, system, tri.tet_count))
    for x in v:
        if not isinstance(x, int) or isinstance(x, bool):
            raise CoordinateError("non-integer coordinate %r" % (x,))
        if x < 0:
            raise CoordinateError("negative coordinate %r" % (x,))
    return v


def zero_vector(tri, system):
    return (0,) * coordinate_count(tri, system)


def arc_coefficients(t, f, v, system):
    """Columns contributing an arc that cuts off vertex v on face f of
    tetrahedron t, as a {column: count} dict."""
    if v == f or not 0 <= v <= 3:
        raise CoordinateError("vertex %d does not lie on face %d" % (v, f))
    cols = {tri_index(t, v, system): 1}
    for k in range(3):
        if _quad_cut(k, f) == v:
            cols[quad_index(t, k, system)] = 1
    if system == ALMOST_NORMAL:
        for k in range(3):
            if v in _oct_cuts(k, f):
                cols[oct_index(t, k)] = 1
    return cols


def matching_matrix(tri, system):
    """Rows of the matching equations, one per (interior face class, arc
    type), 3 rows per class in face-class order; each row sums the arc
    contributions of one side minus the other.  Returned as a tuple of
    integer tuples over the full coordinate space."""
    n = coordinate_count(tri, system)
    sk = tri.skeleton()
    rows = []
    for _idx, (t, f), (t2, f2), p in sk.interior_face_classes():
        for v in FACE_VERTICES[f]:
            row = [0] * n
            for col, c in arc_coefficients(t, f, v, system).items():
                row[col] += c
            for col, c in arc_coefficients(t2, f2, p[v], system).items():
                row[col] -= c
            rows.append(tuple(row))
    return tuple(rows)


def satisfies_matching(tri, system, v, matrix=None):
    v = check_vector(tri, system, v)
    if matrix is None:
        matrix = matching_matrix(tri, system)
    return all(sum(c * x for c, x in zip(row, v)) == 0 for row in matrix)


def octagon_total(tri, system, v):
    if system != ALMOST_NORMAL:
        return 0
    return sum(v[oct_index(t, k)] for t in range(tri.tet_count)
               for k in range(3))


def quad_oct_kinds(tri, system, v, t):
    """Indices (4..block-1 within the block) of nonzero quad/octagon
    kinds of tetrahedron t."""
    b = block_size(system)
    base = t * b
    return tuple(j for j in range(4, b) if v[base + j] != 0)


def is_admissible(tri, system, v, matrix=None):
    """True iff v is nonnegative, satisfies the matching equations, has
    at most one quad-or-octagon kind per tetrahedron, and octagon total
    at most 1 (almost-normal system).  Raises CoordinateError only for
    dimension or type problems."""
    v = check_vector(tri, system, v)
    for t in range(tri.tet_count):
        if len(quad_oct_kinds(tri, system, v, t)) > 1:
            return False
    if system == ALMOST_NORMAL and octagon_total(tri, system, v) > 1:
        return False
    return satisfies_matching(tri, system, v, matrix)


def _tet_edge_weight(tri, system, v, t, e):
    b = block_size(system)
    base = t * b
    w = 0
    for vert in range(4):
        w += v[base + vert] * TRI_EDGE[vert][e]
    for k in range(3):
        w += v[base + 4 + k] * QUAD_EDGE[k][e]
    if system == ALMOST_NORMAL:
        for k in range(3):
            w += v[base + 7 + k] * OCT_EDGE[k][e]
    return w


def edge_weights(tri, system, v):
    """Crossing count of the carried surface with each edge class, as a
    tuple indexed by edge class.  All representatives of a class must
    agree; a disagreement means v violates the matching equations and
    raises InconsistentWeightsError."""
    v = check_vector(tri, system, v)
    sk = tri.skeleton()
    out = []
    for idx, members in enumerate(sk.edge_classes):
        vals = {_tet_edge_weight(tri, system, v, t, e) for (t, e) in members}
        if len(vals) != 1:
            raise InconsistentWeightsError(
                "edge class %d has representative weights %s; vector does "
                "not satisfy the matching equations" % (idx, sorted(vals)))
        out.append(vals.pop())
    return tuple(out)


def boundary_edge_classes(tri):
    """Edge class indices lying on the boundary, ascending."""
    sk = tri.skeleton()
    out = set()
    for (t, f) in sk.boundary_faces:
        for e in FACE_EDGES[f]:
            out.add(sk.edge_class_of[(t, e)])
    return tuple(sorted(out))


def boundary_weight(tri, system, v):
    """Total crossing count with boundary edge classes."""
    w = edge_weights(tri, system, v)
    return sum(w[c] for c in boundary_edge_classes(tri))


def arc_total_on_face(tri, system, v, t, f):
    """Number of arcs the carried surface draws on face f of tet t,
    counted from the (t, f) side."""
    total = 0
    for vert in FACE_VERTICES[f]:
        for col, c in arc_coefficients(t, f, vert, system).items():
            total += c * v[col]
    return total


def _refuse_degenerate_skeleton(tri):
    sk = tri.skeleton()
    if sk.reversed_edges:
        raise CoordinateError(
            "edge class %d is identified with itself reversing orientation;"
            " surface reconstruction is undefined"
            % min(sk.reversed_edges))
    for _idx, side_a, side_b, _p in sk.interior_face_classes():
        if side_a == side_b:
            raise CoordinateError(
                "face %r is glued to itself; surface reconstruction is "
                "undefined" % (side_a,))


def euler_characteristic(tri, system, v):
    """Euler characteristic of the carried surface from the closed form
    chi = V - E + F: V is the total edge-class weight, E the total arc
    count over face classes (each counted once), F the total disk count.
    Requires an admissible vector."""
    v = check_vector(tri, system, v)
    _refuse_degenerate_skeleton(tri)
    weights = edge_weights(tri, system, v)       # raises if inconsistent
    sk = tri.skeleton()
    V = sum(weights)
    E = 0
    for cls in sk.face_classes:
        t, f = cls[0]
        E += arc_total_on_face(tri, system, v, t, f)
    F = sum(v)
    return V - E + F


def haken_sum(tri, system, v1, v2):
    """Coordinate sum of two admissible vectors, defined when no
    tetrahedron carries different quad/octagon kinds and the octagon
    totals sum to at most 1."""
    v1 = check_vector(tri, system, v1)
    v2 = check_vector(tri, system, v2)
    for t in range(tri.tet_count):
        kinds = set(quad_oct_kinds(tri, system, v1, t))
        kinds.update(quad_oct_kinds(tri, system, v2, t))
        if len(kinds) > 1:
            raise IncompatibleVectorsError(
                "tetrahedron %d carries different quad/octagon kinds" % t,
                tet=t)
    if system == ALMOST_NORMAL:
        total = octagon_total(tri, system, v1) + octagon_total(tri, system, v2)
        if total > 1:
            raise IncompatibleVectorsError(
                "octagon totals sum to %d > 1" % total)
    return tuple(a + b for a, b in zip(v1, v2))


def primitive(v):
    """v divided by the gcd of its entries (the zero vector is returned
    unchanged)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def vertex_link_vector(tri, system, vertex_class):
    """One triangle for every corner in the given vertex class."""
    sk = tri.skeleton()
    v = [0] * coordinate_count(tri, system)
    for (t, vert) in sk.vertex_classes[vertex_class]:
        v[tri_index(t, vert, system)] += 1
    return tuple(v)


def all_triangles_vector(tri, system):
    """Weight-1 triangles everywhere: the union of all vertex links."""
    v = [0] * coordinate_count(tri, system)
    for t in range(tri.tet_count):
        for vert in range(4):
            v[tri_index(t, vert, system)] = 1
    return tuple(v)


def to_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)
