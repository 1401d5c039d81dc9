"""Surface reconstruction: components, Euler characteristic, orientability,
boundary curves, vertex-link detection, tube candidates."""

import os

import pytest

from nsurf.coordinates import (ALMOST_NORMAL, NORMAL, all_triangles_vector,
                               euler_characteristic, haken_sum,
                               vertex_link_vector)
from nsurf.enumeration import vertex_solutions
from nsurf.errors import CoordinateError
from nsurf.surfaces import analyze, build_cell_complex, tube_candidates
from nsurf.triangulation import parse_triangulation

import oracles

DATA = os.path.join(os.path.dirname(__file__), "..", "data")

BUNDLES = ["s3_1tet.tri", "lens41_1tet.tri", "rp3_2tet.tri",
           "solidtorus_1tet.tri"]


def load(name):
    with open(os.path.join(DATA, name)) as handle:
        return parse_triangulation(handle.read())


def summary(comp):
    cross = comp.get("crosscaps", comp.get("genus"))
    return (comp["chi"], comp["orientable"], comp["closed"],
            comp["boundary_curves"], cross, comp["vertex_linking"])


# Frozen topology of every normal vertex solution on the bundled
# triangulations: (chi, orientable, closed, boundary curves,
# genus or cross-cap count, vertex linking).
NORMAL_CENSUS = {
    "s3_1tet.tri": [
        (0, True, True, 0, 1, False),     # Heegaard torus
        (2, True, True, 0, 0, True),      # vertex link
    ],
    "lens41_1tet.tri": [
        (0, False, True, 0, 2, False),    # Klein bottle
        (2, True, True, 0, 0, True),
    ],
    "rp3_2tet.tri": [
        (-1, False, True, 0, 3, False),
        (0, True, True, 0, 1, False),     # genus one
        (1, False, True, 0, 1, False),    # projective plane
        (2, True, True, 0, 0, True),
    ],
    "solidtorus_1tet.tri": [
        (0, False, False, 1, 1, False),   # Moebius band
        (0, True, False, 2, 0, False),    # annulus
        (1, True, False, 1, 0, False),    # meridian disk
        (1, True, False, 1, 0, True),     # vertex link is a disk
    ],
}


def test_normal_census():
    for name, expected in sorted(NORMAL_CENSUS.items()):
        tri = load(name)
        got = []
        for vec in vertex_solutions(tri, NORMAL):
            report = analyze(tri, NORMAL, vec)
            assert report["connected"]
            assert report["component_count"] == 1
            got.append(summary(report["components"][0]))
        assert sorted(got) == sorted(expected), name


def test_octagon_sphere():
    # The tubed sphere in the one-tetrahedron sphere: a connected genus
    # zero surface that is not a vertex link.
    tri = load("s3_1tet.tri")
    vec = (0, 0, 1, 1, 0, 0, 0, 1, 0, 0)
    report = analyze(tri, ALMOST_NORMAL, vec)
    assert report["connected"]
    assert report["chi"] == 2
    comp = report["components"][0]
    assert comp["orientable"]
    assert comp["closed"]
    assert comp["genus"] == 0
    assert not comp["vertex_linking"]


def test_vertex_link_flag_only_on_links():
    for name in BUNDLES:
        tri = load(name)
        sk = tri.skeleton()
        link_vectors = {vertex_link_vector(tri, NORMAL, c)
                        for c in range(len(sk.vertex_classes))}
        for vec in vertex_solutions(tri, NORMAL):
            report = analyze(tri, NORMAL, vec)
            flagged = report["components"][0]["vertex_linking"]
            assert flagged == (tuple(vec) in link_vectors), (name, vec)


def test_doubled_link_splits_into_two_copies():
    tri = load("s3_1tet.tri")
    link = all_triangles_vector(tri, NORMAL)
    doubled = haken_sum(tri, NORMAL, link, link)
    report = analyze(tri, NORMAL, doubled)
    assert not report["connected"]
    assert report["component_count"] == 2
    assert report["chi"] == 4
    for comp in report["components"]:
        assert comp["chi"] == 2
        assert comp["vertex_linking"]


def test_empty_vector():
    tri = load("s3_1tet.tri")
    report = analyze(tri, NORMAL, (0,) * 7)
    assert report["component_count"] == 0
    assert not report["connected"]
    assert report["chi"] == 0
    assert report["components"] == []
    assert report["tube_candidates"] == 0


def test_chi_agrees_with_coordinate_formula():
    for name in BUNDLES:
        tri = load(name)
        for system in (NORMAL, ALMOST_NORMAL):
            for vec in vertex_solutions(tri, system):
                cc = build_cell_complex(tri, system, vec)
                assert cc.euler() == euler_characteristic(tri, system, vec)


def test_orientability_matches_bruteforce():
    # Exhaustive sign assignment over the disks of each component must
    # agree with the incremental orientation pass.
    for name in BUNDLES:
        tri = load(name)
        for system in (NORMAL, ALMOST_NORMAL):
            for vec in vertex_solutions(tri, system):
                cc = build_cell_complex(tri, system, vec)
                report = analyze(tri, system, vec)
                comps = cc.components()
                assert len(comps) == report["component_count"]
                for comp, desc in zip(comps, report["components"]):
                    want = oracles.component_orientable_bruteforce(cc, comp)
                    assert desc["orientable"] == want, (name, system, vec)


def test_tube_candidates():
    tri = load("s3_1tet.tri")
    link = all_triangles_vector(tri, NORMAL)
    assert tube_candidates(tri, link) == []
    doubled = haken_sum(tri, NORMAL, link, link)
    assert tube_candidates(tri, doubled) == [
        (0, 0, 1, 2), (0, 1, 1, 2), (0, 2, 1, 2), (0, 3, 1, 2)]
    torus = (1, 1, 0, 0, 1, 0, 0)
    assert tube_candidates(tri, torus) == []
    fat = haken_sum(tri, NORMAL, torus, torus)
    assert tube_candidates(tri, fat) == [
        (0, 0, 1, 2), (0, 1, 1, 2), (0, 4, 1, 2)]
    report = analyze(tri, NORMAL, fat)
    assert report["tube_candidates"] == 3


def test_inadmissible_vectors_rejected():
    tri = load("s3_1tet.tri")
    bad = (1, 1, 0, 0, 1, 1, 0)
    with pytest.raises(CoordinateError):
        tube_candidates(tri, bad)
    with pytest.raises(CoordinateError):
        build_cell_complex(tri, NORMAL, bad)
    with pytest.raises(CoordinateError):
        analyze(tri, NORMAL, bad)


def test_analysis_report_shape():
    tri = load("solidtorus_1tet.tri")
    report = analyze(tri, NORMAL, (1, 1, 0, 0, 0, 0, 1))
    assert sorted(report) == ["chi", "component_count", "components",
                              "connected", "tube_candidates"]
    comp = report["components"][0]
    assert sorted(comp) == ["boundary_curves", "chi", "closed", "disks",
                            "genus", "orientable", "vertex_linking"]
    assert comp["disks"] == 3
