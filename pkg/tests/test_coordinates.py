"""Coordinate systems, matching equations, admissibility, Haken sums."""

import os

import pytest

from nsurf.coordinates import (ALMOST_NORMAL, NORMAL, all_triangles_vector,
                               arc_total_on_face, block_size, boundary_weight,
                               check_vector, coordinate_count, edge_weights,
                               euler_characteristic, haken_sum, is_admissible,
                               matching_matrix, oct_index, octagon_total,
                               primitive, quad_index, satisfies_matching,
                               tri_index, vertex_link_vector, zero_vector)
from nsurf.errors import (CoordinateError, IncompatibleVectorsError,
                          InconsistentWeightsError)
from nsurf.triangulation import parse_triangulation

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def load(name):
    with open(os.path.join(DATA, name)) as handle:
        return parse_triangulation(handle.read())


def test_block_sizes_and_indexing():
    assert block_size(NORMAL) == 7
    assert block_size(ALMOST_NORMAL) == 10
    tri = load("rp3_2tet.tri")
    assert coordinate_count(tri, NORMAL) == 14
    assert coordinate_count(tri, ALMOST_NORMAL) == 20
    seen = set()
    for t in range(2):
        for v in range(4):
            seen.add(tri_index(t, v, ALMOST_NORMAL))
        for k in range(3):
            seen.add(quad_index(t, k, ALMOST_NORMAL))
            seen.add(oct_index(t, k))
    assert seen == set(range(20))


def test_check_vector_errors():
    tri = load("s3_1tet.tri")
    with pytest.raises(CoordinateError):
        check_vector(tri, NORMAL, [0] * 10)
    with pytest.raises(CoordinateError):
        check_vector(tri, NORMAL, [0, 0, 0, 0, 0, 0, -1])
    with pytest.raises(CoordinateError):
        check_vector(tri, NORMAL, [0.5] + [0] * 6)
    with pytest.raises(CoordinateError):
        check_vector(tri, "octal", [0] * 7)


def test_matching_matrix_shape():
    for name in ("s3_1tet.tri", "rp3_2tet.tri", "solidtorus_1tet.tri"):
        tri = load(name)
        for system in (NORMAL, ALMOST_NORMAL):
            rows = matching_matrix(tri, system)
            n = coordinate_count(tri, system)
            assert all(len(row) == n for row in rows)
            assert satisfies_matching(tri, system, zero_vector(tri, system))


def test_vertex_link_is_solution():
    # the link of an interior vertex is a sphere, of a boundary vertex a disk
    for name, chi in (("s3_1tet.tri", 2), ("lens41_1tet.tri", 2),
                      ("rp3_2tet.tri", 2), ("solidtorus_1tet.tri", 1)):
        tri = load(name)
        sk = tri.skeleton()
        for system in (NORMAL, ALMOST_NORMAL):
            total = zero_vector(tri, system)
            for cls in range(len(sk.vertex_classes)):
                link = vertex_link_vector(tri, system, cls)
                assert is_admissible(tri, system, link)
                assert euler_characteristic(tri, system, link) == chi
                total = tuple(a + b for a, b in zip(total, link))
            assert total == all_triangles_vector(tri, system)


def test_admissibility_rejections():
    tri = load("s3_1tet.tri")
    v = list(zero_vector(tri, NORMAL))
    v[quad_index(0, 0, NORMAL)] = 1
    v[quad_index(0, 1, NORMAL)] = 1
    assert not is_admissible(tri, NORMAL, v)       # two quad kinds in one tet

    v = list(all_triangles_vector(tri, ALMOST_NORMAL))
    v[oct_index(0, 0)] = 2
    assert octagon_total(tri, ALMOST_NORMAL, v) == 2
    assert not is_admissible(tri, ALMOST_NORMAL, v)


def test_edge_weights_and_inconsistency():
    tri = load("s3_1tet.tri")
    link = all_triangles_vector(tri, NORMAL)
    weights = edge_weights(tri, NORMAL, link)
    assert len(weights) == 2
    assert all(w > 0 for w in weights)
    # a lone triangle fails matching, and one of its edge classes sees it
    lone = list(zero_vector(tri, NORMAL))
    lone[tri_index(0, 0, NORMAL)] = 1
    with pytest.raises(InconsistentWeightsError):
        edge_weights(tri, NORMAL, lone)


def test_boundary_weight_and_arc_totals():
    tri = load("solidtorus_1tet.tri")
    link = all_triangles_vector(tri, NORMAL)
    assert boundary_weight(tri, NORMAL, link) > 0
    closed = load("s3_1tet.tri")
    assert boundary_weight(closed, NORMAL, all_triangles_vector(closed, NORMAL)) == 0
    for f in range(4):
        assert arc_total_on_face(tri, NORMAL, link, 0, f) >= 0


def test_haken_sum_additivity_and_errors():
    tri = load("rp3_2tet.tri")
    link = all_triangles_vector(tri, NORMAL)
    double = haken_sum(tri, NORMAL, link, link)
    assert double == tuple(2 * x for x in link)
    assert (euler_characteristic(tri, NORMAL, double)
            == 2 * euler_characteristic(tri, NORMAL, link))
    w1 = edge_weights(tri, NORMAL, link)
    w2 = edge_weights(tri, NORMAL, double)
    assert w2 == tuple(2 * x for x in w1)

    a = list(zero_vector(tri, NORMAL))
    b = list(zero_vector(tri, NORMAL))
    a[quad_index(0, 0, NORMAL)] = 1
    b[quad_index(0, 1, NORMAL)] = 1
    with pytest.raises(IncompatibleVectorsError):
        haken_sum(tri, NORMAL, a, b)

    s3 = load("s3_1tet.tri")
    oct_sphere = [0, 0, 1, 1, 0, 0, 0, 1, 0, 0]
    assert is_admissible(s3, ALMOST_NORMAL, oct_sphere)
    with pytest.raises(IncompatibleVectorsError):
        haken_sum(s3, ALMOST_NORMAL, oct_sphere, oct_sphere)


def test_primitive():
    assert primitive((2, 4, 6)) == (1, 2, 3)
    assert primitive((0, 0)) == (0, 0)
    assert primitive((3, 5)) == (3, 5)


def test_euler_characteristic_census():
    s3 = load("s3_1tet.tri")
    assert euler_characteristic(s3, ALMOST_NORMAL, (0, 0, 1, 1, 0, 0, 0, 1, 0, 0)) == 2
    torus = (1, 1, 0, 0, 1, 0, 0)
    assert is_admissible(s3, NORMAL, torus)
    assert euler_characteristic(s3, NORMAL, torus) == 0
