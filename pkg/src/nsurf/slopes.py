"""Boundary slopes on a one-vertex torus boundary.

The boundary curves of a carried surface are traced explicitly on the
two-triangle torus, their homology classes are read off against a fixed
basis of edge classes, and the slope set is closed under the band-sum
operation that reconnects two boundary arcs inside one boundary face.

Conventions:

* The basis (e1, e2) is the two lowest-indexed boundary edge classes
  with their class orientations; slopes are primitive pairs (p, q) up
  to overall sign, namely the reduction of (curve . e2, -(curve . e1)).
* Crossing signs come from a compatible orientation of the two boundary
  faces: a curve crossing an edge class into the face side that induces
  the positive class direction counts +1 there.
* A band sum joins two arcs of one face across an empty region between
  them; the reconnection is the unique embedded one.  Banding the two
  new arcs of the same region again restores the original system.
"""

from itertools import combinations
from math import gcd

from .coordinates import ALMOST_NORMAL, NORMAL, coordinate_count
from .enumeration import bounded_candidates
from .errors import BoundaryStructureError, CoordinateError, SlopeError
from .surfaces import build_cell_complex
from .triangulation import (EDGE_INDEX, FACE_EDGES, FACE_VERTICES,
                            _boundary_face_orientations)


class BoundaryTorus:
    """The one-vertex torus boundary of a bounded triangulation.

    Carries the two boundary faces, the three boundary edge classes, the
    basis (e1, e2), and a sign for every (face, edge) slot: +1 when the
    oriented face induces the positive class direction on that edge.
    """

    def __init__(self, tri):
        sk = tri.skeleton()
        faces = sorted(sk.boundary_faces)
        if not faces:
            raise BoundaryStructureError(
                "no torus boundary: the triangulation is closed")
        ecls = set()
        vcls = set()
        for (t, f) in faces:
            for v in FACE_VERTICES[f]:
                vcls.add(sk.vertex_class_of[(t, v)])
            for e in FACE_EDGES[f]:
                ecls.add(sk.edge_class_of[(t, e)])
        if len(faces) != 2 or len(ecls) != 3 or len(vcls) != 1:
            raise BoundaryStructureError(
                "boundary is not a one-vertex torus "
                "(%d vertex classes, %d edge classes, %d faces)"
                % (len(vcls), len(ecls), len(faces)))
        flags = _boundary_face_orientations(tri, sk, faces)
        if flags is None:
            raise BoundaryStructureError("boundary surface is not orientable")
        self.faces = tuple(faces)
        self.edge_classes = tuple(sorted(ecls))
        self.vertex_class = vcls.pop()
        self.basis = self.edge_classes[:2]
        # slot_signs[(face, (x, y))] with x < y the local edge of the face
        self.slot_signs = {}
        self.slot_class = {}
        for (t, f) in faces:
            a, b, c = FACE_VERTICES[f]
            flag = flags[(t, f)]
            for (x, y), along in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
                ei = EDGE_INDEX[(x, y)]
                slot = ((t, f), (x, y))
                self.slot_signs[slot] = flag * along * sk.edge_sign[(t, ei)]
                self.slot_class[slot] = sk.edge_class_of[(t, ei)]


class Slope:
    """Primitive pair (p, q) up to sign, with the number of parallel
    curve components realizing it."""

    def __init__(self, p, q, multiplicity=1):
        self.pair = (p, q)
        self.multiplicity = multiplicity

    def __eq__(self, other):
        return (isinstance(other, Slope) and self.pair == other.pair
                and self.multiplicity == other.multiplicity)

    def __hash__(self):
        return hash((self.pair, self.multiplicity))

    def __lt__(self, other):
        return (self.pair, self.multiplicity) < (other.pair,
                                                 other.multiplicity)

    def __repr__(self):
        return "Slope(%d, %d, multiplicity=%d)" % (
            self.pair[0], self.pair[1], self.multiplicity)


class _End:
    """One endpoint of a chord: ring places it on the face boundary walk,
    point is the crossing it ends at, edge the local (x, y) slot."""

    __slots__ = ("ring", "point", "edge")

    def __init__(self, ring, point, edge):
        self.ring = ring
        self.point = point
        self.edge = edge


class _Chord:
    """One arc of the curve system inside a boundary face.  normal is
    (cut_vertex, depth) for normal arcs and None for band-sum results."""

    __slots__ = ("face", "normal", "ends")

    def __init__(self, face, normal, ends):
        self.face = face
        self.normal = normal
        self.ends = ends


class CurveSystem:
    """Traced boundary curves.  curves lists each closed curve as a
    cyclic tuple of (face, cut_vertex, depth); classes gives the
    sign-normalized (p, q) pair of each curve, (0, 0) when it bounds."""

    def __init__(self, torus, chords, curves, classes):
        self.torus = torus
        self.curves = curves
        self.classes = classes
        self._chords = chords

    def essential_count(self):
        return sum(1 for c in self.classes if c != (0, 0))


def _normalize(p, q):
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


def _system_of(tri, vec):
    n = len(vec)
    if n == coordinate_count(tri, NORMAL):
        return NORMAL
    if n == coordinate_count(tri, ALMOST_NORMAL):
        return ALMOST_NORMAL
    raise CoordinateError(
        "vector length %d matches neither coordinate system" % n)


def _face_walk_place(face, weights_of, edge, pos_from_cut, cut):
    """Position of a crossing along the face boundary walk.

    The walk runs v0 -> v1 -> v2 -> v0 over the sorted face vertices;
    the returned (segment, step) pair orders all crossings strictly.
    """
    v0, v1, v2 = FACE_VERTICES[face[1]]
    x, y = edge
    lo, hi = (x, y) if x < y else (y, x)
    w = weights_of(lo, hi)
    from_lo = pos_from_cut if cut == lo else w + 1 - pos_from_cut
    if (lo, hi) == (v0, v1):
        return (0, from_lo)
    if (lo, hi) == (v1, v2):
        return (1, from_lo)
    # segment 2 runs from v2 back to v0
    return (2, w + 1 - from_lo)


def _chords_of_vector(tri, torus, system, vec):
    cc = build_cell_complex(tri, system, vec)
    sk = tri.skeleton()
    chords = []
    for key in sorted(cc.arcs):
        arc = cc.arcs[key]
        if not arc.boundary:
            continue
        idx, cut, depth = key
        face = sk.face_classes[idx][0]
        lo_other, hi_other = sorted(u for u in FACE_VERTICES[face[1]]
                                    if u != cut)

        def weight_of(a, b, _t=face[0]):
            cls, _ = sk.edge_weight_positions(_t, a, b)
            return cc.edge_weights[cls]

        ends = []
        for other, point in zip((lo_other, hi_other), arc.ends):
            edge = (cut, other) if cut < other else (other, cut)
            ring = _face_walk_place(face, weight_of, edge, depth, cut)
            ends.append(_End(ring, point, edge))
        chords.append(_Chord(face, (cut, depth), ends))
    return chords


def _trace(torus, chords):
    """Close the chords into curves; returns (cycles, classes) where each
    cycle lists (chord_index, entry_end) steps and each class is the
    curve's signed crossing count with every boundary edge class."""
    incident = {}
    for i, ch in enumerate(chords):
        for j, end in enumerate(ch.ends):
            incident.setdefault(end.point, []).append((i, j))
    for point, at in incident.items():
        if len(at) != 2:
            raise AssertionError("crossing %r has %d arc ends, expected 2"
                                 % (point, len(at)))
    cycles = []
    classes = []
    seen = set()
    for start in range(len(chords)):
        if start in seen:
            continue
        steps = []
        crossed = {cls: 0 for cls in torus.edge_classes}
        i, j = start, 0
        while True:
            seen.add(i)
            end = chords[i].ends[j]
            crossed[torus.slot_class[(chords[i].face, end.edge)]] += \
                torus.slot_signs[(chords[i].face, end.edge)]
            steps.append((i, j))
            exit_end = chords[i].ends[1 - j]
            a, b = incident[exit_end.point]
            i, j = b if a == (i, 1 - j) else a
            if i == start and j == 0:
                break
        cycles.append(tuple(steps))
        classes.append(crossed)
    return cycles, classes


def _pair_of(torus, crossed):
    e1, e2 = torus.basis
    return _normalize(crossed[e2], -crossed[e1])


def boundary_curves(tri, vec):
    """Trace the carried surface's boundary on the torus boundary.

    The coordinate system is inferred from the vector length.  Raises
    BoundaryStructureError when the boundary is not a one-vertex torus.
    """
    torus = BoundaryTorus(tri)
    system = _system_of(tri, vec)
    chords = _chords_of_vector(tri, torus, system, vec)
    cycles, classes = _trace(torus, chords)
    curves = []
    pairs = []
    for steps, crossed in zip(cycles, classes):
        walk = tuple((chords[i].face,) + chords[i].normal for i, _ in steps)
        best = min(walk[k:] + walk[:k] for k in range(len(walk)))
        curves.append(best)
        pairs.append(_pair_of(torus, crossed))
    order = sorted(range(len(curves)), key=lambda k: curves[k])
    return CurveSystem(torus, chords,
                       tuple(curves[k] for k in order),
                       tuple(pairs[k] for k in order))


def slope_of(torus, cs):
    """The common primitive slope of a parallel essential curve system."""
    if not cs.curves:
        raise SlopeError("empty curve system has no slope")
    distinct = set(cs.classes)
    if distinct == {(0, 0)}:
        raise SlopeError("null-homotopic curve system has no slope")
    if len(distinct) != 1:
        raise SlopeError("mixed curve system: components carry "
                         "different classes %s" % sorted(distinct))
    p, q = distinct.pop()
    if gcd(abs(p), abs(q)) != 1:
        raise AssertionError("embedded curve class %r is not primitive"
                             % ((p, q),))
    return Slope(p, q, len(cs.curves))


def _band_region(chords, face_members, i, j):
    """The unique embedded band between chords i and j of one face, or
    None when no other-arc-free region joins them.

    Returns the reconnected end pairs ((a, b), (c, d)) as (chord, end)
    references, one new chord per side segment of the region.
    """
    ring = []
    for m in face_members:
        for e in range(2):
            ring.append((chords[m].ends[e].ring, m, e))
    ring.sort()
    where = {(m, e): k for k, (_, m, e) in enumerate(ring)}
    n = len(ring)
    marks = sorted((where[(i, 0)], where[(i, 1)],
                    where[(j, 0)], where[(j, 1)]))
    owner = [ring[k][1] for k in marks]
    # the four endpoints must not interleave around the face boundary
    if owner[0] != owner[1] and owner[1] != owner[2]:
        return None
    # rotate so the four marks read i, i, j, j
    if owner[0] != owner[1]:
        marks = marks[1:] + marks[:1]
        owner = owner[1:] + owner[:1]
    if owner[0] == j:
        marks = marks[2:] + marks[:2]
    # side segments of the region between the chords
    gaps = (((marks[1] + 1) % n, marks[2]), ((marks[3] + 1) % n, marks[0]))

    def inside(k, gap):
        lo, hi = gap
        return lo <= k < hi if lo <= hi else (k >= lo or k < hi)

    for m in face_members:
        if m == i or m == j:
            continue
        k0, k1 = where[(m, 0)], where[(m, 1)]
        if ((inside(k0, gaps[0]) and inside(k1, gaps[1]))
                or (inside(k0, gaps[1]) and inside(k1, gaps[0]))):
            return None
    joins = []
    for lo_mark, hi_mark in ((marks[1], marks[2]), (marks[3], marks[0])):
        _, m1, e1 = ring[lo_mark]
        _, m2, e2 = ring[hi_mark]
        joins.append(((m1, e1), (m2, e2)))
    return joins


def _apply_band(chords, face_members, i, j):
    """Chord list with chords i and j reconnected across their band, or
    None when the pair has no admissible band."""
    joins = _band_region(chords, face_members, i, j)
    if joins is None:
        return None
    face = chords[i].face
    rest = [ch for m, ch in enumerate(chords) if m not in (i, j)]
    for (m1, e1), (m2, e2) in joins:
        rest.append(_Chord(face, None,
                           [chords[m1].ends[e1], chords[m2].ends[e2]]))
    return rest


def band_sum_slopes(torus, cs):
    """Slopes of essential curves obtained from one band sum.

    Every unordered pair of arcs of the system lying in one boundary
    face and co-bounding a region free of other arcs is reconnected the
    unique embedded way; each result is re-traced and the slopes of its
    essential components collected.  Returns a sorted tuple of Slope,
    one per distinct pair, with the multiplicity seen at first witness.
    """
    chords = cs._chords
    by_face = {}
    for m, ch in enumerate(chords):
        by_face.setdefault(ch.face, []).append(m)
    found = {}
    for face in sorted(by_face):
        members = by_face[face]
        for i, j in combinations(members, 2):
            rest = _apply_band(chords, members, i, j)
            if rest is None:
                continue
            _, classes = _trace(torus, rest)
            for crossed in classes:
                pair = _pair_of(torus, crossed)
                if pair == (0, 0):
                    continue
                if pair not in found:
                    count = sum(1 for c in classes
                                if _pair_of(torus, c) == pair)
                    found[pair] = count
    return tuple(Slope(p, q, found[(p, q)]) for p, q in sorted(found))


def slope_survey(tri, chi_min, max_boundary_points, zero_chi_cap=2):
    """Deterministic slope set over all bounded candidate surfaces.

    Each candidate vector's boundary curves contribute their common
    slope when parallel and essential (provenance "normal"; mixed
    systems are skipped), and every single band sum contributes the
    slopes of its essential results (provenance "band-sum").  Entries
    carry one witnessing vector each; normal provenance wins.
    """
    torus = BoundaryTorus(tri)
    cands = bounded_candidates(tri, ALMOST_NORMAL, chi_min,
                               max_boundary_points, zero_chi_cap)
    traced = [(vec, boundary_curves(tri, vec)) for vec in cands]
    out = {}
    for vec, cs in traced:
        essential = {c for c in cs.classes if c != (0, 0)}
        if len(essential) != 1:
            continue
        pair = essential.pop()
        if pair not in out:
            count = sum(1 for c in cs.classes if c == pair)
            out[pair] = {"slope": pair, "provenance": "normal",
                         "multiplicity": count, "witness": tuple(vec)}
    for vec, cs in traced:
        for slope in band_sum_slopes(torus, cs):
            if slope.pair not in out:
                out[slope.pair] = {"slope": slope.pair,
                                   "provenance": "band-sum",
                                   "multiplicity": slope.multiplicity,
                                   "witness": tuple(vec)}
    return [out[pair] for pair in sorted(out)]
