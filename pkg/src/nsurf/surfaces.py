"""Reconstruction of the carried surface as an explicit cell complex.

An admissible vector describes an embedded surface: so many parallel
copies of each disk type per tetrahedron.  This module rebuilds that
surface combinatorially and reads off its topology (components, Euler
characteristic, orientability, boundary curves, genus).

Indexing conventions, fixed once and used everywhere below:

* Parallel copies are numbered 1..n.  Copy index increases away from
  the cut-off vertex (triangles) and away from the lower-indexed edge
  of the pairing (quads, octagons).
* Crossings on a tetrahedron edge {a, b} are numbered 1..w from the a
  end (a < b): first the triangles at a in copy order, then the quad or
  octagon crossings, then the triangles at b in reverse copy order.
  Crossing positions convert to positions along the oriented edge class
  via Skeleton.edge_weight_positions.
* The arcs on a face cutting off a vertex v are nested; depth d counts
  from v, so depths 1..t_v are the triangle copies at v and deeper arcs
  come from the quad or octagon kind active in the tetrahedron.  The
  depth-d arc ends exactly at crossing d-from-v on both edges of the
  face at v; this single rule makes arcs match across face gluings at
  equal depth and cut vertex.

Cells: vertices are edge crossings keyed (edge_class, position), arcs
are keyed (face_class, cut_vertex, depth) with the cut vertex read on
the canonical side of the face class, and disks are keyed
(tet, kind, copy) with kind the in-block coordinate index.  Every
interior arc bounds exactly two disk sides and every boundary arc one;
the complex refuses triangulations with reversed edge classes or
self-glued faces, where parallel copies would be forced to intersect.
"""

from .coordinates import (NORMAL, PAIRINGS, _refuse_degenerate_skeleton,
                          block_size, check_vector, edge_weights,
                          euler_characteristic, is_admissible, tri_index)
from .errors import CoordinateError
from .triangulation import perm_inverse

# Human-readable names for the in-block disk kinds.
DISK_LABELS = ("T0", "T1", "T2", "T3", "Q01|23", "Q02|13", "Q03|12",
               "O01|23", "O02|13", "O03|12")


def _triangle_walk(v):
    # Corner points sit on the edges (v, u); the arc on face u joins the
    # corners on the other two such edges.
    x, y, z = sorted(u for u in range(4) if u != v)
    return ((z, v, x, y), (x, v, y, z), (y, v, z, x))


def _quad_walk(k):
    (p1, p2), (q1, q2) = PAIRINGS[k]
    return ((q2, q1, p1, p2), (p1, p2, q1, q2),
            (q1, q2, p2, p1), (p2, p1, q2, q1))


def _oct_walk(k):
    # Eight arcs, two per face; consecutive arcs share an edge crossing.
    (p1, p2), (q1, q2) = PAIRINGS[k]
    return ((q2, p1, p2, q1), (p2, q1, p1, q2),
            (p1, q1, q2, p2), (q2, p2, q1, p1),
            (q1, p2, p1, q2), (p1, q2, p2, q1),
            (p2, q2, q1, p1), (q1, p1, q2, p2))


def _build_walks():
    walks = [_triangle_walk(v) for v in range(4)]
    walks += [_quad_walk(k) for k in range(3)]
    walks += [_oct_walk(k) for k in range(3)]
    return tuple(walks)


# _WALKS[kind] lists the boundary of one disk of that kind as tuples
# (face, cut_vertex, from_other, to_other) in cyclic order: the arc lies
# on the face, cuts off the vertex, and runs from its crossing on edge
# (cut, from_other) to its crossing on edge (cut, to_other).
_WALKS = _build_walks()


class Arc:
    """One normal arc, shared by the one or two sides of its face class.

    ends holds the two crossing keys in the arc's canonical direction
    (from the lower-labelled other vertex on the canonical side); sides
    holds (disk, direction) for each incident disk, direction +1 when
    the disk's boundary runs the arc canonically.
    """

    def __init__(self, key, ends, boundary):
        self.key = key
        self.ends = ends
        self.boundary = boundary
        self.sides = []


class CellComplex:
    def __init__(self, system, vector, disks, arcs, walks, weights):
        self.system = system
        self.vector = vector
        self.disks = disks
        self.arcs = arcs
        self.disk_walks = walks
        self.edge_weights = weights

    def vertex_keys(self):
        seen = set()
        for arc in self.arcs.values():
            seen.update(arc.ends)
        return sorted(seen)

    def euler(self):
        return len(self.vertex_keys()) - len(self.arcs) + len(self.disks)

    def components(self):
        """Disks grouped by arc-connectivity, each group sorted."""
        parent = {d: d for d in self.disks}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for arc in self.arcs.values():
            first = find(arc.sides[0][0])
            for disk, _ in arc.sides[1:]:
                parent[find(disk)] = first
        groups = {}
        for d in self.disks:
            groups.setdefault(find(d), []).append(d)
        return tuple(tuple(sorted(g)) for g in
                     sorted(groups.values(), key=lambda g: min(g)))


def _arc_depth(vec, system, t, kind, copy, cut, t_cut):
    if kind < 4:
        return copy
    if kind < 7:
        k = kind - 4
        total = vec[t * block_size(system) + kind]
        inner = copy if cut in PAIRINGS[k][0] else total + 1 - copy
        return t_cut + inner
    # octagon coordinates never exceed 1 in an admissible vector
    return t_cut + 1


def build_cell_complex(tri, system, vec):
    """Assemble the surface carried by an admissible vector.

    Raises CoordinateError for inadmissible vectors and for skeleta
    where parallel copies cannot be kept disjoint (reversed edge
    classes, self-glued faces).
    """
    check_vector(tri, system, vec)
    if not is_admissible(tri, system, vec):
        raise CoordinateError("cell complex requires an admissible vector")
    _refuse_degenerate_skeleton(tri)
    sk = tri.skeleton()
    weights = edge_weights(tri, system, vec)
    b = block_size(system)

    disks = []
    for t in range(tri.tet_count):
        for kind in range(b):
            for copy in range(1, vec[t * b + kind] + 1):
                disks.append((t, kind, copy))
    disks = tuple(disks)

    def crossing_key(t, v, u, pos):
        cls, to_class = sk.edge_weight_positions(t, v, u)
        return (cls, to_class(pos, weights[cls]))

    arcs = {}
    walks = {}
    for disk in disks:
        t, kind, copy = disk
        cycle = []
        for f, cut, u_from, u_to in _WALKS[kind]:
            t_cut = vec[tri_index(t, cut, system)]
            depth = _arc_depth(vec, system, t, kind, copy, cut, t_cut)
            start = crossing_key(t, cut, u_from, depth)
            stop = crossing_key(t, cut, u_to, depth)
            # read the cut vertex on the canonical side of the face class
            idx = sk.face_class_of[(t, f)]
            cls = sk.face_classes[idx]
            c_cut, c_from, c_to = cut, u_from, u_to
            if len(cls) == 2 and cls[0] != (t, f):
                _, p = tri.gluings[cls[0][0]][cls[0][1]]
                q = perm_inverse(p)
                c_cut, c_from, c_to = q[cut], q[u_from], q[u_to]
            direction = 1 if c_from < c_to else -1
            key = (idx, c_cut, depth)
            ends = (start, stop) if direction == 1 else (stop, start)
            arc = arcs.get(key)
            if arc is None:
                arc = Arc(key, ends, tri.gluings[t][f] is None)
                arcs[key] = arc
            elif arc.ends != ends:
                raise AssertionError("arc %r seen with ends %r and %r"
                                     % (key, arc.ends, ends))
            arc.sides.append((disk, direction))
            cycle.append((key, direction))
        walks[disk] = tuple(cycle)

    for arc in arcs.values():
        want = 1 if arc.boundary else 2
        if len(arc.sides) != want:
            raise AssertionError("arc %r bounds %d disk sides, expected %d"
                                 % (arc.key, len(arc.sides), want))
    cc = CellComplex(system, tuple(vec), disks, arcs, walks, weights)
    covered = set(cc.vertex_keys())
    expect = {(c, i) for c, w in enumerate(weights) for i in range(1, w + 1)}
    if covered != expect:
        raise AssertionError("edge crossings and arc endpoints disagree")
    return cc


def _component_orientable(cc, comp):
    members = set(comp)
    sign = {}
    adj = {d: [] for d in comp}
    for arc in cc.arcs.values():
        if arc.sides[0][0] not in members:
            continue
        if len(arc.sides) != 2:
            continue
        (d1, s1), (d2, s2) = arc.sides
        if d1 == d2:
            # a disk meeting the same arc from both sides must reverse it
            if s1 == s2:
                return False
            continue
        adj[d1].append((d2, -s1 * s2))
        adj[d2].append((d1, -s1 * s2))
    for seed in comp:
        if seed in sign:
            continue
        sign[seed] = 1
        stack = [seed]
        while stack:
            cur = stack.pop()
            for nxt, rel in adj[cur]:
                want = sign[cur] * rel
                if nxt not in sign:
                    sign[nxt] = want
                    stack.append(nxt)
                elif sign[nxt] != want:
                    return False
    return True


def _boundary_curve_count(cc, comp):
    members = set(comp)
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    cycles = 0
    for arc in cc.arcs.values():
        if not arc.boundary or arc.sides[0][0] not in members:
            continue
        a, b = arc.ends
        for key in (a, b):
            if key not in parent:
                parent[key] = key
        ra, rb = find(a), find(b)
        if ra == rb:
            # closing an open chain into a cycle
            cycles += 1
        else:
            parent[ra] = rb
    return cycles


def _is_vertex_link(tri, comp):
    """Whole link of one vertex class: one triangle per corner, nothing else."""
    if any(kind >= 4 for _, kind, _ in comp):
        return False
    sk = tri.skeleton()
    corners = sorted((t, kind) for t, kind, _ in comp)
    classes = {sk.vertex_class_of[c] for c in corners}
    if len(classes) != 1:
        return False
    return corners == sorted(sk.vertex_classes[classes.pop()])


def _tube_pairs(tri, system, vec):
    b = block_size(system)
    out = []
    for t in range(tri.tet_count):
        for kind in range(min(b, 7)):
            count = vec[t * b + kind]
            for copy in range(1, count):
                out.append((t, kind, copy, copy + 1))
    return out


def tube_candidates(tri, vec):
    """Adjacent parallel copies of one disk type in the normal system:
    the sites where tubing along the dual edge yields an almost-normal
    surface.  Returns (tet, kind, copy, copy + 1) tuples in order.
    """
    check_vector(tri, NORMAL, vec)
    if not is_admissible(tri, NORMAL, vec):
        raise CoordinateError("tube candidates require an admissible vector")
    return _tube_pairs(tri, NORMAL, vec)


def analyze(tri, system, vec):
    """Topology report for the carried surface.

    Per component: disk count, Euler characteristic, orientability,
    closedness, boundary curve count, genus (orientable) or cross-cap
    number, and whether the component is the link of a vertex class.
    The empty surface reports zero components and connected=False.
    """
    cc = build_cell_complex(tri, system, vec)
    comps = cc.components()

    incident = {}
    for key, arc in cc.arcs.items():
        for disk, _ in arc.sides:
            incident.setdefault(disk, set()).add(key)

    reports = []
    total = 0
    for comp in comps:
        arc_keys = set()
        for disk in comp:
            arc_keys |= incident[disk]
        ends = set()
        for key in arc_keys:
            ends.update(cc.arcs[key].ends)
        chi = len(ends) - len(arc_keys) + len(comp)
        total += chi
        orientable = _component_orientable(cc, comp)
        curves = _boundary_curve_count(cc, comp)
        closed = all(not cc.arcs[k].boundary for k in arc_keys)
        entry = {
            "disks": len(comp),
            "chi": chi,
            "orientable": orientable,
            "closed": closed,
            "boundary_curves": curves,
            "vertex_linking": _is_vertex_link(tri, comp),
        }
        if orientable:
            entry["genus"] = (2 - chi - curves) // 2
        else:
            entry["crosscaps"] = 2 - chi - curves
        reports.append(entry)

    if total != euler_characteristic(tri, system, vec):
        raise AssertionError("component chi does not sum to the vector chi")
    return {
        "chi": total,
        "component_count": len(reports),
        "components": reports,
        "connected": len(reports) == 1,
        "tube_candidates": len(_tube_pairs(tri, system, vec)),
    }
