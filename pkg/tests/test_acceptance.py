"""Acceptance gate: one test per shipped guarantee.

Each test here locks one externally checkable property of the package,
from oracle equivalence of the enumerators down to byte-identical CLI
output.  Run with -v to get one pass/fail line per guarantee.
"""

import hashlib
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from nsurf.coordinates import (ALMOST_NORMAL, NORMAL, all_triangles_vector,
                               edge_weights, euler_characteristic, haken_sum,
                               is_admissible, octagon_total)
from nsurf.enumeration import (bounded_candidates, brute_force_solutions,
                               vertex_solutions)
from nsurf.errors import IncompatibleVectorsError
from nsurf.morse import (LMAX, LeafComponent, LeafDescriptor, LmaxProfile,
                         BOUNDED, CLOSED, RELATIVE_TO_K, bridge_report,
                         leaf_complexity, minimize, parse_morse_word, width)
from nsurf.slopes import (BoundaryTorus, _apply_band, _pair_of, _trace,
                          band_sum_slopes, boundary_curves, slope_of,
                          slope_survey)
from nsurf.surfaces import analyze
from nsurf.triangulation import parse_triangulation

import oracles

DATA = os.path.join(os.path.dirname(__file__), "..", "data")

BUNDLES = ["s3_1tet.tri", "lens41_1tet.tri", "rp3_2tet.tri",
           "solidtorus_1tet.tri"]
CLOSED_BUNDLES = ["s3_1tet.tri", "lens41_1tet.tri", "rp3_2tet.tri"]


def load(name):
    with open(os.path.join(DATA, name)) as handle:
        return parse_triangulation(handle.read())


def load_word(name):
    with open(os.path.join(DATA, name)) as handle:
        return parse_morse_word(handle.read())


def test_criterion_1_enumeration_matches_bruteforce_oracle():
    # The cone enumerator must agree exactly with the extreme primitives
    # of an exhaustive bounded search, in both coordinate systems, on
    # every bundled triangulation, within the stated time budget.
    start = time.perf_counter()
    for name in BUNDLES:
        tri = load(name)
        for system in (NORMAL, ALMOST_NORMAL):
            fast = vertex_solutions(tri, system)
            slow = oracles.extreme_primitives(tri, system, 8)
            assert sorted(fast) == sorted(slow), (name, system)
            assert list(fast) == sorted(fast)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, "enumeration took %.1fs" % elapsed


def test_criterion_2_vertex_link_is_admissible_sphere():
    for name in CLOSED_BUNDLES:
        tri = load(name)
        vec = all_triangles_vector(tri, NORMAL)
        assert is_admissible(tri, NORMAL, vec), name
        report = analyze(tri, NORMAL, vec)
        assert report["connected"], name
        assert report["chi"] == 2, name
        comp = report["components"][0]
        assert comp["closed"] and comp["orientable"], name
        assert comp["genus"] == 0, name
        assert comp["vertex_linking"], name


def test_criterion_3_haken_sum_additivity():
    # 200 randomized compatible pairs per triangulation (100 per
    # coordinate system), drawn from the exhaustive bound-4 solution
    # pool with a fixed seed.
    for name in BUNDLES:
        tri = load(name)
        for system in (NORMAL, ALMOST_NORMAL):
            pool = [v for v in brute_force_solutions(tri, system, 4)
                    if any(v)]
            rng = random.Random("additivity:%s:%s" % (name, system))
            checked = 0
            attempts = 0
            while checked < 100:
                attempts += 1
                assert attempts < 20000, (name, system)
                v1 = rng.choice(pool)
                v2 = rng.choice(pool)
                try:
                    total = haken_sum(tri, system, v1, v2)
                except IncompatibleVectorsError:
                    continue
                assert euler_characteristic(tri, system, total) == \
                    euler_characteristic(tri, system, v1) + \
                    euler_characteristic(tri, system, v2)
                w1 = edge_weights(tri, system, v1)
                w2 = edge_weights(tri, system, v2)
                wt = edge_weights(tri, system, total)
                assert wt == tuple(a + b for a, b in zip(w1, w2))
                checked += 1


def test_criterion_4_single_octagon_discipline():
    # Exhaustive over every enumerated almost-normal set: octagon totals
    # never exceed one, and at least one enumerated vector actually
    # carries an octagon so the check is not vacuous.
    carrying = 0
    for name in BUNDLES:
        tri = load(name)
        enumerated = list(vertex_solutions(tri, ALMOST_NORMAL))
        enumerated += list(bounded_candidates(tri, ALMOST_NORMAL, -2, 6, 2))
        for vec in enumerated:
            total = octagon_total(tri, ALMOST_NORMAL, vec)
            assert total <= 1, (name, vec)
            if total == 1:
                carrying += 1
        b = 10
        doubled = [2 if i % b >= 7 else 0
                   for i in range(tri.tet_count * b)]
        assert not is_admissible(tri, ALMOST_NORMAL, doubled)
    assert carrying > 0
    # two octagons in different tetrahedra are rejected as well
    rp3 = load("rp3_2tet.tri")
    two_tets = [0] * 20
    two_tets[7] = 1
    two_tets[17] = 1
    assert not is_admissible(rp3, ALMOST_NORMAL, two_tets)


def test_criterion_5_solid_torus_meridian():
    tri = load("solidtorus_1tet.tri")
    torus = BoundaryTorus(tri)
    hits = []
    for vec in vertex_solutions(tri, NORMAL):
        report = analyze(tri, NORMAL, vec)
        if not (report["connected"] and report["chi"] == 1):
            continue
        cs = boundary_curves(tri, vec)
        if cs.essential_count() == 1:
            hits.append((vec, slope_of(torus, cs)))
    assert len(hits) == 1
    vec, slope = hits[0]
    assert vec == (1, 1, 0, 0, 0, 0, 1)
    assert slope.pair == (2, -3)
    assert slope.multiplicity == 1
    # independent check: the boundary class must die in the homology of
    # the manifold, computed by exhaustive rational solvability on the
    # two-triangle boundary complex
    kernel = oracles.nullhomologous_boundary_classes(tri, torus.basis, 10)
    assert kernel == [(2, -3)]


def test_criterion_6_slope_survey_finite_deterministic():
    tri = load("solidtorus_1tet.tri")
    torus = BoundaryTorus(tri)
    for chi_min in (-1, -2, -4):
        first = slope_survey(tri, chi_min, 8)
        second = slope_survey(tri, chi_min, 8)
        assert first == second
        assert len(first) <= 16
        assert [row["slope"] for row in first] == \
            sorted(row["slope"] for row in first)
    # band-sum closure stays finite on each candidate system
    for vec in bounded_candidates(tri, ALMOST_NORMAL, -2, 6, 2):
        cs = boundary_curves(tri, vec)
        assert len(band_sum_slopes(torus, cs)) <= 8
    # double band sum restores the original curve classes
    inverted = 0
    for vec in ((1, 1, 1, 1, 0, 0, 0), (0, 0, 1, 1, 1, 0, 0)):
        cs = boundary_curves(tri, vec)
        chords = cs._chords
        _, classes = _trace(torus, chords)
        original = sorted(_pair_of(torus, c) for c in classes)
        by_face = {}
        for m, ch in enumerate(chords):
            by_face.setdefault(ch.face, []).append(m)
        for face, members in sorted(by_face.items()):
            for i in members:
                for j in members:
                    if i >= j:
                        continue
                    once = _apply_band(chords, members, i, j)
                    if once is None:
                        continue
                    fresh = [m for m, ch in enumerate(once)
                             if ch.face == face]
                    twice = _apply_band(once, fresh, len(once) - 2,
                                        len(once) - 1)
                    assert twice is not None
                    _, back = _trace(torus, twice)
                    assert sorted(_pair_of(torus, c) for c in back) == \
                        original
                    inverted += 1
    assert inverted >= 2


def test_criterion_7_width_calculus():
    unknot = load_word("unknot.morse")
    assert width(unknot) == 2
    trefoil = load_word("trefoil.morse")
    assert width(trefoil) == 8
    assert bridge_report(trefoil) == (True, 2)
    fat = load_word("trefoil_fat.morse")
    assert width(fat) == 14
    start = time.perf_counter()
    best, score = minimize(fat)
    elapsed = time.perf_counter() - start
    assert score == 8
    assert best == trefoil
    assert elapsed < 1.0, "minimization took %.2fs" % elapsed


def closed_leaf(chi):
    return LeafComponent(True, chi)


def bounded_leaf(chi, k_points=0):
    return LeafComponent(False, chi, k_points)


def marked(chi, k_points, closed=True):
    return LeafComponent(closed, chi, k_points)


# 30 descriptor cases spanning the three regimes: the trivial leaves,
# the closed 1 - chi rule, the bounded 1/2 - chi rule, the intersection
# offset, and multi-component sums.
COMPLEXITY_TABLE = [
    # ambient sweeps of a closed manifold (intersection counts ignored)
    (CLOSED, [closed_leaf(2)], 0),
    (CLOSED, [closed_leaf(0)], 1),
    (CLOSED, [closed_leaf(-2)], 3),
    (CLOSED, [closed_leaf(-4)], 5),
    (CLOSED, [closed_leaf(1)], 0),
    (CLOSED, [closed_leaf(-1)], 2),
    (CLOSED, [closed_leaf(2), closed_leaf(2)], 0),
    (CLOSED, [closed_leaf(2), closed_leaf(0)], 1),
    (CLOSED, [closed_leaf(-2), closed_leaf(-2)], 6),
    (CLOSED, [marked(2, 5)], 0),
    # sweeps of a bounded manifold
    (BOUNDED, [bounded_leaf(1)], 0),
    (BOUNDED, [closed_leaf(2)], 0),
    (BOUNDED, [bounded_leaf(0)], Fraction(1, 2)),
    (BOUNDED, [bounded_leaf(0), bounded_leaf(1)], Fraction(1, 2)),
    (BOUNDED, [bounded_leaf(-1)], Fraction(3, 2)),
    (BOUNDED, [bounded_leaf(-3)], Fraction(7, 2)),
    (BOUNDED, [closed_leaf(0)], 1),
    (BOUNDED, [bounded_leaf(1), bounded_leaf(1)], 0),
    (BOUNDED, [closed_leaf(-2), bounded_leaf(0)], Fraction(7, 2)),
    (BOUNDED, [marked(2, 9), marked(1, 3, closed=False)], 0),
    # sweeps counted relative to the embedded graph
    (RELATIVE_TO_K, [marked(2, 6)], 6),
    (RELATIVE_TO_K, [marked(1, 1, closed=False)], 1),
    (RELATIVE_TO_K, [marked(2, 0)], 0),
    (RELATIVE_TO_K, [marked(0, 0, closed=False)], Fraction(1, 2)),
    (RELATIVE_TO_K, [marked(0, 2, closed=False)], Fraction(5, 2)),
    (RELATIVE_TO_K, [marked(0, 3)], 4),
    (RELATIVE_TO_K, [marked(-1, 1, closed=False)], Fraction(5, 2)),
    (RELATIVE_TO_K, [marked(1, 4, closed=False)], 4),
    (RELATIVE_TO_K, [marked(-2, 0)], 3),
    (RELATIVE_TO_K,
     [marked(2, 6), marked(1, 1, closed=False),
      marked(0, 0, closed=False)], Fraction(15, 2)),
]


def test_criterion_8_leaf_complexity_table():
    assert len(COMPLEXITY_TABLE) == 30
    for ambient, comps, expected in COMPLEXITY_TABLE:
        got = leaf_complexity(LeafDescriptor(comps), ambient)
        assert got == expected, (ambient, comps, expected, got)


CLI_MATRIX = [
    ("validate", "s3_1tet.tri"),
    ("tri", "validate", "s3_1tet.tri"),
    ("validate", "lens41_1tet.tri"),
    ("validate", "rp3_2tet.tri"),
    ("validate", "solidtorus_1tet.tri"),
    ("enumerate", "s3_1tet.tri"),
    ("enumerate", "rp3_2tet.tri", "--system", "almost-normal"),
    ("enumerate", "solidtorus_1tet.tri", "--system", "almost-normal"),
    ("analyze", "s3_1tet.tri", "--vector", "[1,1,0,0,1,0,0]"),
    ("analyze", "lens41_1tet.tri", "--vector", "[0,0,0,0,0,1,0]"),
    ("slopes", "solidtorus_1tet.tri", "--chi-min", "-2", "--max-bdry", "6"),
    ("slopes", "s3_1tet.tri", "--chi-min", "-1", "--max-bdry", "4"),
    ("width", "unknot.morse"),
    ("width", "trefoil.morse", "--format", "text"),
    ("width", "trefoil_fat.morse", "--minimize"),
    ("width", "trefoil_fat.morse", "--minimize", "--objective", "lmax"),
]


def run_cli(argv):
    argv = [arg if arg.endswith((".tri", ".morse")) is False
            else os.path.join(DATA, arg) for arg in argv]
    proc = subprocess.run([sys.executable, "-m", "nsurf.cli"] + argv,
                          capture_output=True)
    return proc.returncode, proc.stdout


def test_criterion_9_cli_byte_determinism():
    for entry in CLI_MATRIX:
        outputs = {run_cli(list(entry)) for _ in range(3)}
        assert len(outputs) == 1, entry
        code, _ = outputs.pop()
        expected = 1 if entry[:2] == ("slopes", "s3_1tet.tri") else 0
        assert code == expected, entry
    for name in ("rp3_2tet.tri", "solidtorus_1tet.tri"):
        base = ["enumerate", name, "--system", "almost-normal"]
        one = run_cli(base + ["--threads", "1"])
        four = run_cli(base + ["--threads", "4"])
        assert one == four, name
