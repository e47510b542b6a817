import random
from fractions import Fraction

from manyfaces.cutting import (
    build_hierarchical,
    classify_line_cell,
    dump_cells,
    verify_cutting,
)
from manyfaces.geom import Line, Point
from manyfaces.instrumentation import Counters

F = Fraction


def random_lines(rng, n, slope_range=60, icpt_range=200):
    lines = []
    seen = set()
    while len(lines) < n:
        a = rng.randint(-slope_range, slope_range)
        b = rng.randint(-icpt_range, icpt_range)
        if (a, b) not in seen:
            seen.add((a, b))
            lines.append(Line(F(a), F(b)))
    return lines


def test_single_line_small_r():
    lines = [Line(F(1), F(0))]
    hc = build_hierarchical(lines, 1, random.Random(0))
    assert len(hc.levels) >= 1
    for cid in hc.leaves:
        assert len(hc.cells[cid].conflict) <= 1
    rep = verify_cutting(hc, lines)
    assert rep.ok, rep.issues


def test_leaf_conflict_bound_64_4():
    rng = random.Random(3)
    lines = random_lines(rng, 64)
    hc = build_hierarchical(lines, 4, rng)
    # every leaf cell holds at most n/r = 16 conflicts
    for cid in hc.leaves:
        assert len(hc.cells[cid].conflict) <= 16
    rep = verify_cutting(hc, lines)
    assert rep.ok, rep.issues


def test_per_level_bounds_and_refinement():
    rng = random.Random(9)
    lines = random_lines(rng, 100)
    hc = build_hierarchical(lines, 8, rng)
    n = len(lines)
    for i, ids in enumerate(hc.levels):
        for cid in ids:
            cell = hc.cells[cid]
            assert cell.level == i
            assert len(cell.conflict) <= hc.level_targets[i]
            if i > 0:
                assert cell.parent is not None
                assert cell.id in hc.cells[cell.parent].children


def test_locate_cell_path_containment_and_brute_force():
    rng = random.Random(17)
    lines = random_lines(rng, 40)
    hc = build_hierarchical(lines, 6, rng)
    for _ in range(300):
        p = Point(F(rng.randint(-900, 900), 7), F(rng.randint(-900, 900), 13))
        path = hc.locate_cell_path(p)
        assert len(path) == len(hc.levels)
        assert hc.cells[path[0]].level == 0
        for cid in path[1:]:
            cell = hc.cells[cid]
            verts = cell.vertices
            from manyfaces.geom import orient

            assert all(
                orient(verts[i], verts[(i + 1) % len(verts)], p) >= 0
                for i in range(len(verts))
            )
        # leaf agrees with a scan over all leaves (up to boundary ties)
        containing = [
            cid
            for cid in hc.leaves
            if all(
                orient(
                    hc.cells[cid].vertices[i],
                    hc.cells[cid].vertices[(i + 1) % 3],
                    p,
                )
                > 0
                for i in range(3)
            )
        ]
        if containing:
            assert path[-1] == containing[0]


def test_verifier_catches_injected_fault():
    rng = random.Random(23)
    lines = random_lines(rng, 30)
    hc = build_hierarchical(lines, 4, rng)
    victim = next(cid for cid in hc.leaves if hc.cells[cid].conflict)
    hc.cells[victim].conflict.pop()
    rep = verify_cutting(hc, lines)
    assert not rep.ok
    assert any(f"cell {victim}" in issue for issue in rep.issues)


def test_constants_stable_across_seeds():
    lines = random_lines(random.Random(31), 256)
    cell_consts, conf_consts = [], []
    for seed in range(10):
        stats = Counters()
        hc = build_hierarchical(lines, 8, random.Random(seed), stats=stats)
        rep = verify_cutting(hc, lines, probes=40)
        assert rep.ok, rep.issues
        cell_consts.append(rep.cells_constant)
        conf_consts.append(rep.conflict_constant)
    assert max(cell_consts) <= 2 * min(cell_consts)
    assert max(conf_consts) <= 2 * min(conf_consts)


def test_parallel_lines_only():
    lines = [Line(F(2), F(b)) for b in range(-8, 9, 2)]
    rng = random.Random(5)
    hc = build_hierarchical(lines, 3, rng)
    rep = verify_cutting(hc, lines)
    assert rep.ok, rep.issues


def test_classify_line_cell_touching_corner():
    tri = (Point(F(0), F(0)), Point(F(4), F(0)), Point(F(2), F(3)))
    # through the apex with both base vertices below: misses the interior
    assert classify_line_cell(Line(F(0), F(3)), tri) == 1
    assert classify_line_cell(Line(F(1), F(1)), tri) == 1
    # through the apex separating the base vertices: crosses
    assert classify_line_cell(Line(F(-2), F(7)), tri) == 0
    # strictly below everything
    assert classify_line_cell(Line(F(0), F(-1)), tri) == -1


def test_dump_cells_shape():
    rng = random.Random(41)
    lines = random_lines(rng, 12)
    hc = build_hierarchical(lines, 3, rng)
    text = dump_cells(hc)
    rows = text.splitlines()
    assert len(rows) == len(hc.cells)
    for row in rows[1:]:
        parts = row.split()
        assert len(parts) == 13  # level id parent 3x(a b c) count
