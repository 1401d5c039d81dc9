"""Generalised triangulations of compact 3-manifolds.

A triangulation is a list of abstract tetrahedra with faces glued in
pairs by affine maps.  Tetrahedron vertices are labelled 0..3, face j is
the face opposite vertex j, and a gluing of face j of tetrahedron i is
recorded as a permutation p of {0,1,2,3}: vertex k of tetrahedron i is
identified with vertex p[k] of the target tetrahedron.  Unglued faces
are boundary faces.

The file format is line based::

    # comment
    tets 2
    tet 0: 1(0123) bdry bdry 1(3210)
    tet 1: 0(0123) bdry bdry 0(3210)

The j-th entry after ``tet i:`` describes face j of tetrahedron i and is
either ``bdry`` or ``<t>(<p0p1p2p3>)``.  Gluings must be involutive and
a face may not be glued to itself by the identity.

The skeleton (vertex, edge and face classes of the quotient complex) is
computed by closing the gluing maps.  Each edge class carries a chosen
orientation: the lowest (tetrahedron, edge-index) representative runs
from its lower to its higher vertex label, and every other representative
stores its sign relative to that direction.
"""

import hashlib
import re

from .errors import TriangulationError

# The six edges of a tetrahedron in fixed order.  Edge k of the pairing
# tables elsewhere in the package always refers to this list.
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

EDGE_INDEX = {}
for _i, (_a, _b) in enumerate(EDGES):
    EDGE_INDEX[(_a, _b)] = _i
    EDGE_INDEX[(_b, _a)] = _i

# Face j is opposite vertex j.
FACE_VERTICES = tuple(tuple(v for v in range(4) if v != f) for f in range(4))

# Edge indices contained in each face.
FACE_EDGES = tuple(
    tuple(EDGE_INDEX[(a, b)] for a in fv for b in fv if a < b)
    for fv in FACE_VERTICES
)


def perm_inverse(p):
    q = [0, 0, 0, 0]
    for i in range(4):
        q[p[i]] = i
    return tuple(q)


def perm_sign(p):
    """Sign of a permutation of {0,1,2,3}: +1 even, -1 odd."""
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


class Triangulation:
    """An immutable gluing table.

    gluings[t][f] is None for a boundary face, else a pair (t2, p) where
    p is the vertex permutation into tetrahedron t2.  The constructor
    checks index ranges, involutivity and the identity self-gluing ban;
    everything else (connectedness, orientability, link conditions) is
    reported by validate() rather than rejected.
    """

    def __init__(self, gluings):
        gluings = [tuple(row) for row in gluings]
        n = len(gluings)
        for t, row in enumerate(gluings):
            if len(row) != 4:
                raise TriangulationError(
                    "tet %d has %d face entries, expected 4" % (t, len(row)))
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                if not 0 <= t2 < n:
                    raise TriangulationError(
                        "gluing (%d,%d) targets tet %d, out of range" % (t, f, t2))
                if sorted(p) != [0, 1, 2, 3]:
                    raise TriangulationError(
                        "gluing (%d,%d) image %r is not a permutation" % (t, f, p))
                if t2 == t and p == (0, 1, 2, 3):
                    raise TriangulationError(
                        "face (%d,%d) glued to itself by the identity" % (t, f))
        # Involutivity: gluing face f of t by p identifies it with face
        # p[f] of the target, which must be glued back by the inverse.
        for t, row in enumerate(gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                f2 = p[f]
                back = gluings[t2][f2]
                if back is None:
                    raise TriangulationError(
                        "non-involutive gluing: (%d,%d)->(%d,%d) but "
                        "(%d,%d)->bdry" % (t, f, t2, f2, t2, f2))
                if back != (t, perm_inverse(p)):
                    raise TriangulationError(
                        "non-involutive gluing: (%d,%d)->(%d,%d) is not "
                        "returned by the inverse permutation" % (t, f, t2, f2))
        self.gluings = tuple(gluings)
        self.tet_count = n
        self._skeleton = None

    def __eq__(self, other):
        return (isinstance(other, Triangulation)
                and self.gluings == other.gluings)

    def __hash__(self):
        return hash(self.gluings)

    def skeleton(self):
        if self._skeleton is None:
            self._skeleton = Skeleton(self)
        return self._skeleton


_TETS_RE = re.compile(r"^tets\s+(\d+)$")
_TET_RE = re.compile(r"^tet\s+(\d+)\s*:\s*(.*)$")
_GLUING_RE = re.compile(r"^(\d+)\((\d{4})\)$")


def parse_triangulation(text):
    """Parse the line-based gluing format into a Triangulation.

    Raises TriangulationError carrying the offending line number for
    syntax problems, bad indices, non-involutive tables and identity
    self-gluings.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    if not lines:
        raise TriangulationError("empty input: expected a 'tets <n>' line")
    lineno, head = lines[0]
    m = _TETS_RE.match(head)
    if not m:
        raise TriangulationError("expected 'tets <n>', got %r" % head,
                                 line=lineno)
    n = int(m.group(1))
    if len(lines) - 1 != n:
        raise TriangulationError(
            "declared %d tets but found %d 'tet' lines" % (n, len(lines) - 1),
            line=lineno)
    gluings = []
    for i in range(n):
        lineno, body = lines[1 + i]
        m = _TET_RE.match(body)
        if not m:
            raise TriangulationError("expected 'tet %d: ...', got %r"
                                     % (i, body), line=lineno)
        if int(m.group(1)) != i:
            raise TriangulationError(
                "tet lines out of order: expected index %d, got %s"
                % (i, m.group(1)), line=lineno)
        entries = m.group(2).split()
        if len(entries) != 4:
            raise TriangulationError(
                "tet %d: expected 4 face entries, got %d" % (i, len(entries)),
                line=lineno)
        row = []
        for f, entry in enumerate(entries):
            if entry == "bdry":
                row.append(None)
                continue
            g = _GLUING_RE.match(entry)
            if not g:
                raise TriangulationError(
                    "tet %d face %d: bad gluing %r (want 'bdry' or "
                    "'<t>(<p0p1p2p3>)')" % (i, f, entry), line=lineno)
            t2 = int(g.group(1))
            p = tuple(int(c) for c in g.group(2))
            row.append((t2, p))
        gluings.append(row)
    return Triangulation(gluings)


def serialize_triangulation(tri):
    """Canonical text form; parse(serialize(tri)) reproduces the table."""
    out = ["tets %d" % tri.tet_count]
    for t in range(tri.tet_count):
        entries = []
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None:
                entries.append("bdry")
            else:
                t2, p = g
                entries.append("%d(%s)" % (t2, "".join(str(x) for x in p)))
        out.append("tet %d: %s" % (t, " ".join(entries)))
    return "\n".join(out) + "\n"


def triangulation_digest(tri):
    """Hex digest of the canonical serialization, quoted in CLI payloads."""
    return hashlib.sha256(serialize_triangulation(tri).encode()).hexdigest()


class _SignedUnionFind:
    """Union-find tracking a relative sign (+1/-1) to the root."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.sign = {x: 1 for x in items}
        self.conflict = set()   # roots whose class is sign-inconsistent

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        s = 1
        for y in reversed(path):
            s *= self.sign[y]
            self.parent[y] = x
            self.sign[y] = s
        return x

    def union(self, a, b, rel):
        """Record that a's direction equals rel times b's direction."""
        ra, rb = self.find(a), self.find(b)
        sa, sb = self.sign[a], self.sign[b]
        if ra == rb:
            if sa != rel * sb:
                self.conflict.add(ra)
            return
        # attach rb under ra: sign of rb must satisfy sa = rel * sb * s(rb)
        self.parent[rb] = ra
        self.sign[rb] = sa * rel * sb
        if rb in self.conflict:
            self.conflict.discard(rb)
            self.conflict.add(ra)

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return groups


class Skeleton:
    """Vertex, edge and face classes of the quotient complex.

    Attributes (all indices are assigned in order of the smallest member):

    vertex_classes  list of sorted (tet, vertex) tuples
    vertex_class_of dict (tet, vertex) -> class index
    edge_classes    list of sorted (tet, edge_index) tuples
    edge_class_of   dict (tet, edge_index) -> class index
    edge_sign       dict (tet, edge_index) -> +1/-1 relative to the class
                    orientation (lowest representative, low-to-high vertex)
    reversed_edges  set of edge class indices identified with themselves
                    reversing orientation (the complex is then not a
                    manifold triangulation along that edge)
    face_classes    list of tuples of (tet, face) pairs: length 2 for an
                    interior identification between distinct face slots,
                    length 1 for a boundary face or a face glued to itself
    boundary_faces  list of (tet, face) with no gluing
    """

    def __init__(self, tri):
        self.tri = tri
        n = tri.tet_count

        vuf = _SignedUnionFind([(t, v) for t in range(n) for v in range(4)])
        euf = _SignedUnionFind([(t, e) for t in range(n) for e in range(6)])
        for t in range(n):
            for f in range(4):
                g = tri.gluings[t][f]
                if g is None:
                    continue
                t2, p = g
                for v in FACE_VERTICES[f]:
                    vuf.union((t, v), (t2, p[v]), 1)
                for a, b in ((x, y) for x in FACE_VERTICES[f]
                             for y in FACE_VERTICES[f] if x < y):
                    ia, ib = EDGE_INDEX[(a, b)], EDGE_INDEX[(p[a], p[b])]
                    # direction a->b maps to p[a]->p[b]
                    rel = 1 if (p[a] < p[b]) else -1
                    euf.union((t, ia), (t2, ib), rel)

        self.vertex_classes = []
        self.vertex_class_of = {}
        for root, members in sorted(vuf.classes().items(),
                                    key=lambda kv: min(kv[1])):
            idx = len(self.vertex_classes)
            members = sorted(members)
            self.vertex_classes.append(tuple(members))
            for mkey in members:
                self.vertex_class_of[mkey] = idx

        self.edge_classes = []
        self.edge_class_of = {}
        self.edge_sign = {}
        self.reversed_edges = set()
        for root, members in sorted(euf.classes().items(),
                                    key=lambda kv: min(kv[1])):
            idx = len(self.edge_classes)
            members = sorted(members)
            self.edge_classes.append(tuple(members))
            base = euf.sign[members[0]]
            for mkey in members:
                self.edge_class_of[mkey] = idx
                self.edge_sign[mkey] = euf.sign[mkey] * base
            if root in euf.conflict:
                self.reversed_edges.add(idx)

        self.face_classes = []
        self.face_class_of = {}
        self.boundary_faces = []
        seen = set()
        for t in range(n):
            for f in range(4):
                if (t, f) in seen:
                    continue
                g = tri.gluings[t][f]
                if g is None:
                    cls = ((t, f),)
                    self.boundary_faces.append((t, f))
                else:
                    t2, p = g
                    other = (t2, p[f])
                    cls = ((t, f),) if other == (t, f) else ((t, f), other)
                seen.update(cls)
                idx = len(self.face_classes)
                self.face_classes.append(cls)
                for mkey in cls:
                    self.face_class_of[mkey] = idx

    def interior_face_classes(self):
        """Face classes that are identifications, in index order.

        Yields (class_index, (t, f), (t2, f2), p) where p is the gluing
        permutation from the side (t, f).  For a face glued to itself the
        two sides coincide.
        """
        bdry = set(self.boundary_faces)
        for idx, cls in enumerate(self.face_classes):
            t, f = cls[0]
            if (t, f) in bdry:
                continue
            t2, p = self.tri.gluings[t][f]
            yield idx, (t, f), (t2, p[f]), p

    def edge_weight_positions(self, t, a, b):
        """Class index and a mapper from 'position counted from vertex a'
        to 'position along the class orientation' for edge {a,b} of tet t.

        Returns (class_index, to_class) where to_class(pos, weight) maps a
        1-based crossing position counted from the a end.
        """
        e = EDGE_INDEX[(a, b)]
        cls = self.edge_class_of[(t, e)]
        sign = self.edge_sign[(t, e)]
        # local positive direction is low-to-high vertex label
        forward = (a < b)

        def to_class(pos, weight, _fwd=forward, _sign=sign):
            local = pos if _fwd else weight + 1 - pos
            return local if _sign == 1 else weight + 1 - local

        return cls, to_class


def connected_components(tri):
    """Partition of tetrahedron indices under face gluings."""
    n = tri.tet_count
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in range(n):
        for f in range(4):
            g = tri.gluings[t][f]
            if g is not None:
                ra, rb = find(t), find(g[0])
                if ra != rb:
                    parent[rb] = ra
    groups = {}
    for t in range(n):
        groups.setdefault(find(t), []).append(t)
    return sorted(groups.values())


def is_orientable(tri):
    """Two-colour the tetrahedra so every gluing reverses orientation.

    A gluing by permutation p is compatible with tetrahedron signs s, s2
    iff s2 = -sign(p) * s; the triangulation is orientable iff the whole
    constraint graph is consistent.
    """
    n = tri.tet_count
    colour = [0] * n
    for start in range(n):
        if colour[start] != 0:
            continue
        colour[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.gluings[t][f]
                if g is None:
                    continue
                t2, p = g
                want = -perm_sign(p) * colour[t]
                if colour[t2] == 0:
                    colour[t2] = want
                    stack.append(t2)
                elif colour[t2] != want:
                    return False
    return True


def _boundary_components(tri, sk):
    """Group boundary faces into surface components and describe each."""
    bdry = sk.boundary_faces
    if not bdry:
        return []
    # occurrences of each edge class on boundary faces
    occs = {}
    for (t, f) in bdry:
        for a, b in ((x, y) for x in FACE_VERTICES[f]
                     for y in FACE_VERTICES[f] if x < y):
            cls = sk.edge_class_of[(t, EDGE_INDEX[(a, b)])]
            occs.setdefault(cls, []).append((t, f))
    parent = {fc: fc for fc in bdry}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cls, faces in occs.items():
        for other in faces[1:]:
            ra, rb = find(faces[0]), find(other)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for fc in bdry:
        groups.setdefault(find(fc), []).append(fc)

    out = []
    for members in sorted(groups.values(), key=min):
        faces = sorted(members)
        ecls = set()
        vcls = set()
        for (t, f) in faces:
            for v in FACE_VERTICES[f]:
                vcls.add(sk.vertex_class_of[(t, v)])
            for e in FACE_EDGES[f]:
                ecls.add(sk.edge_class_of[(t, e)])
        euler = len(vcls) - len(ecls) + len(faces)
        orient = _boundary_orientable(tri, sk, faces)
        out.append({
            "faces": len(faces),
            "edge_classes": len(ecls),
            "vertex_classes": len(vcls),
            "euler": euler,
            "one_vertex": len(vcls) == 1,
            "orientable": orient,
            "torus": euler == 0 and orient,
        })
    return out


def _boundary_face_orientations(tri, sk, faces):
    """Orient the given boundary faces compatibly, or return None.

    A face (t, f) with vertices a < b < c is oriented by the cycle
    (a, b, c) when its flag is +1 and by (a, c, b) when -1.  Compatible
    means each boundary edge class is traversed once in each direction by
    the oriented face boundaries.
    """
    occ = {}   # edge class -> [(face, direction vs class orientation)]
    for fc in faces:
        t, f = fc
        a, b, c = FACE_VERTICES[f]
        for (x, y) in ((a, b), (b, c), (c, a)):
            ei = EDGE_INDEX[(x, y)]
            cls = sk.edge_class_of[(t, ei)]
            sign = sk.edge_sign[(t, ei)]
            fwd = 1 if x < y else -1
            occ.setdefault(cls, []).append((fc, fwd * sign))
    adj = {fc: [] for fc in faces}
    for cls, lst in occ.items():
        if len(lst) != 2:
            return None
        (f1, d1), (f2, d2) = lst
        # flag(f1)*d1 = -flag(f2)*d2, i.e. flag(f2) = -d1*d2*flag(f1)
        adj[f1].append((f2, -d1 * d2))
        adj[f2].append((f1, -d1 * d2))
    flags = {}
    for start in sorted(faces):
        if start in flags:
            continue
        flags[start] = 1
        stack = [start]
        while stack:
            cur = stack.pop()
            for other, rel in adj[cur]:
                want = rel * flags[cur]
                if other in flags:
                    if flags[other] != want:
                        return None
                else:
                    flags[other] = want
                    stack.append(other)
    return flags


def _boundary_orientable(tri, sk, faces):
    # A face glued to itself along an edge (same slot pair) shows up as a
    # single face with two slots on one class; the flag test covers it.
    counts = {}
    for fc in faces:
        t, f = fc
        for e in FACE_EDGES[f]:
            cls = sk.edge_class_of[(t, e)]
            counts[cls] = counts.get(cls, 0) + 1
    if any(c != 2 for c in counts.values()):
        return False   # not a closed surface; call it non-orientable
    return _boundary_face_orientations(tri, sk, faces) is not None


def validate(tri):
    """Structural report for a triangulation.

    Always succeeds on a well-formed gluing table; the report carries the
    flags downstream modules use to refuse unsuitable input (orientable,
    valid_edges, boundary shape).
    """
    sk = tri.skeleton()
    comps = connected_components(tri)
    v = len(sk.vertex_classes)
    e = len(sk.edge_classes)
    fcl = len(sk.face_classes)
    report = {
        "tet_count": tri.tet_count,
        "connected": len(comps) == 1,
        "closed": not sk.boundary_faces,
        "orientable": is_orientable(tri),
        "valid_edges": not sk.reversed_edges,
        "vertex_classes": v,
        "edge_classes": e,
        "face_classes": fcl,
        "boundary_faces": len(sk.boundary_faces),
        "euler": v - e + fcl - tri.tet_count,
        "boundary": _boundary_components(tri, sk),
    }
    return report
