"""Acceptance suite: the package's headline guarantees, one test each.

Every check is exact (rational or quadratic-field equality); there are no
tolerances anywhere.  Each test prints a PASS line so a full run doubles
as a report.
"""

import json
import random
import subprocess
import sys

from gmpy2 import mpq

from sidesum.bounds import BoundCurve, cs_bound, maximize_curve
from sidesum.constructions import build, figure8, packing8, parse_construction_id
from sidesum.geometry import (
    HORIZONTAL,
    REFLECT_X,
    REFLECT_Y,
    ROTATE90,
    TRANSPOSE,
    big_pair_sides,
    canonical_form,
    coastal_report,
    cross_section,
    is_corner_tile,
    sigma,
    to_json,
    transform,
    verify,
)
from sidesum.numerics import QuadExt, quadext_cmp
from sidesum.oracle import grid_enumerate, grid_to_tiling
from sidesum.search import enumerate_max

THIRTEEN_FIFTHS = mpq(13, 5)


def _report(name):
    print(f"ACCEPTANCE[{name}]: PASS")


def test_a1_eight_tile_optimum_is_13_5(result8):
    assert not result8.infeasible
    assert result8.max_sigma == THIRTEEN_FIFTHS
    target = to_json(canonical_form(figure8()))
    assert any(to_json(w) == target for w in result8.witnesses)
    for w in result8.witnesses:
        assert verify(w, require_full_cover=True).ok
        assert sigma(w) == THIRTEEN_FIFTHS
    _report("eight-tile optimum = 13/5, witness matches the explicit tiling")


def test_a1_cli_surface_and_worker_invariance(result8):
    proc = subprocess.run(
        [sys.executable, "-m", "sidesum", "enumerate", "--n", "8", "--workers", "2"],
        capture_output=True,
        text=True,
        timeout=540,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["max_sigma"] == "13/5" and doc["infeasible"] is False
    assert doc["nodes_explored"] == result8.nodes_explored
    target = to_json(canonical_form(figure8()))
    cli_witnesses = {json.dumps(w, separators=(", ", ": ")) for w in doc["witnesses"]}
    assert target in cli_witnesses
    _report("the enumerate command line reproduces 13/5, parallel run included")


def test_optimum_class_census(result8):
    """Not a numbered criterion, but the strongest cross-check available:
    the symbolic search and the integer-grid oracle, sharing no code, must
    agree on the complete set of optimal 8-tile tilings up to symmetry."""
    oracle_classes = set()
    for board in (5, 10):
        r = grid_enumerate(8, board)
        assert mpq(r.max_sum, board) == THIRTEEN_FIFTHS
        for w in r.witnesses:
            oracle_classes.add(to_json(canonical_form(grid_to_tiling(w, board))))
    search_classes = {to_json(w) for w in result8.witnesses}
    assert search_classes == oracle_classes
    assert len(search_classes) == 5
    assert all(dim == 0 for dim in result8.witness_face_dims)
    _report("both engines agree: exactly 5 optimal tilings up to symmetry, all rigid")


def test_a2_impossible_tile_counts(small_search_results):
    for n in (2, 3, 5):
        assert small_search_results[n].infeasible
    for board in range(1, 13):
        assert grid_enumerate(5, board).max_sum is None
    _report("no tiling exists for n = 2, 3, 5 (search and grid oracle)")


def test_a3_packing_beats_tiling_at_eight(result8):
    assert sigma(packing8()) == mpq(8, 3)
    t_star, value = maximize_curve(BoundCurve(1, 1, 10, -15, 0, mpq(1, 2)))
    assert t_star.as_rational == mpq(5, 12)
    assert value.as_rational == mpq(8, 3)
    assert result8.max_sigma < mpq(8, 3)
    _report("packings reach 8/3 while tilings are capped by the 8/3 curve and attain only 13/5")


def test_a4_four_equal_tiles_curve(result8):
    t_star, value = maximize_curve(BoundCurve(1, 3, 6, -15, 0, mpq(2, 5)))
    assert t_star == QuadExt(mpq(1, 5), mpq(1, 20), 6)
    assert value == QuadExt(mpq(8, 5), mpq(2, 5), 6)
    assert quadext_cmp(value, mpq(258, 100)) == -1
    assert quadext_cmp(value, THIRTEEN_FIFTHS) == -1
    _report("four-equal-tiles curve peaks at (4+sqrt(6))/20 with value (8+2*sqrt(6))/5 < 2.58")


def test_a5_boundary_curve(result8):
    t_star, value = maximize_curve(BoundCurve(1, 2, 8, -16, mpq(2, 5), mpq(1, 2)))
    assert t_star.as_rational == mpq(2, 5)
    assert value.as_rational == THIRTEEN_FIFTHS
    _report("three-equal-tiles curve attains 13/5 at the boundary t = 2/5")


def test_a6_note_construction_line():
    for k in range(3, 13):
        t = build(parse_construction_id(f"note:{k}"))
        assert t.n == k * k - 1
        assert verify(t, require_full_cover=True).ok
        assert sigma(t) == mpq(k) - mpq(1, k - 1)
    assert mpq(3) - mpq(1, 2) < THIRTEEN_FIFTHS  # the k=3 construction is non-optimal
    _report("note construction: k^2-1 tiles, side sum k - 1/(k-1), for k = 3..12")


def test_a7_structural_audit_of_emitted_leaves(result8):
    def check_structure(tiling):
        rep = coastal_report(tiling)
        assert rep.inland_sigma < 1, to_json(tiling)
        pair = big_pair_sides(tiling, rep)
        assert pair is not None and pair[0] + pair[1] == 1, to_json(tiling)
        i, j = rep.big_pair
        assert is_corner_tile(tiling.tiles[i]) or is_corner_tile(tiling.tiles[j]), to_json(tiling)

    audited = 0
    for value, tiling in result8.leaf_log:
        if value < mpq(5, 2):
            continue
        check_structure(tiling)
        audited += 1
    assert audited > 0
    # the same structure must hold for every 8-tile tiling the independent
    # grid oracle produces, whatever its side sum
    extra = 0
    for board in range(1, 9):
        r = grid_enumerate(8, board)
        for w in r.witnesses:
            check_structure(grid_to_tiling(w, board))
            extra += 1
    for w in result8.witnesses:
        rep = coastal_report(w)
        big = max(w.tiles[i].s for i in range(w.n) if is_corner_tile(w.tiles[i]))
        assert rep.size_class_counts[1 - big] == 3
    _report(
        f"structural audit clean over {audited} emitted leaf tilings, "
        f"{extra} oracle tilings, and all optima"
    )


def test_a8_oracle_consistency(result8, small_search_results):
    maxima = {n: small_search_results[n].max_sigma for n in (1, 4, 6, 7)}
    maxima[8] = result8.max_sigma
    for n in (1, 4, 6, 7, 8):
        for board in range(1, 9):
            r = grid_enumerate(n, board)
            if r.max_sum is not None:
                assert mpq(r.max_sum, board) <= maxima[n]
    assert mpq(grid_enumerate(8, 5).max_sum, 5) == maxima[8]
    assert mpq(grid_enumerate(6, 3).max_sum, 3) == maxima[6]
    _report("grid oracle never beats the search; equality at (n=8, D=5) and (n=6, D=3)")


def test_a9_randomized_property_suites(oracle_tilings):
    rng = random.Random(20250809)

    # exact field axioms
    for _ in range(1000):
        p, q, r = (mpq(rng.randint(-999, 999), rng.randint(1, 999)) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p * (q + r) == p * q + p * r

    # verifier and side-sum equivariance under the dihedral transforms
    ops = (ROTATE90, REFLECT_X, REFLECT_Y, TRANSPOSE)
    for _ in range(1000):
        t = rng.choice(oracle_tilings)
        image = transform(t, rng.choice(ops))
        assert verify(image, require_full_cover=True).ok
        assert sigma(image) == sigma(t)

    # unambiguous cross sections cut sides summing to exactly 1
    checked = 0
    while checked < 1000:
        t = rng.choice(oracle_tilings)
        c = mpq(rng.randint(1, 996), 997)
        hit = cross_section(t, c, rng.choice((HORIZONTAL, "vertical")))
        if hit is None:
            continue
        assert sum(t.tiles[i].s for i in hit) == 1
        checked += 1

    # the area bound is tight exactly for equal squares
    for _ in range(1000):
        n = rng.randint(1, 30)
        s = mpq(rng.randint(1, 60), rng.randint(60, 600))
        assert cs_bound(n, n * s * s).as_rational == n * s

    _report("randomized property suites: 1000 exact cases each")
