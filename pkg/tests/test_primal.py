import math
import random
from fractions import Fraction

from bruteforce import brute_hull
from manyfaces.chain import chain_value_at
from manyfaces.cutting import build_hierarchical, classify_line_cell
from manyfaces.geom import Instance, Line, Point, side_of_line
from manyfaces.instrumentation import Counters
from manyfaces.primal import (
    assign_points,
    cell_envelopes_topdown,
    compute_side_sets,
    points_box,
    primal_chains,
)
from manyfaces.solver import SolverConfig, solve

F = Fraction


def random_lines(rng, n):
    lines, seen = [], set()
    while len(lines) < n:
        a, b = rng.randint(-20, 20), rng.randint(-50, 50)
        if (a, b) not in seen:
            seen.add((a, b))
            lines.append(Line(F(a), F(b)))
    return lines


def random_points(rng, m, lines, span=60):
    pts = []
    while len(pts) < m:
        p = Point(F(rng.randint(-span, span)), F(rng.randint(-span, span)) + F(1, 512))
        if all(side_of_line(p, l) != 0 for l in lines):
            pts.append(p)
    return pts


def test_side_sets_match_brute_filter():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(4, 40)
        lines = list(enumerate(random_lines(rng, n)))
        hc = build_hierarchical([l for _, l in lines], 4, rng)
        below_sets, above_sets = compute_side_sets(hc, lines)
        slope_key = lambda j: (lines[j][1].a, lines[j][1].b)
        for cell in hc.cells:
            if cell.level == 0:
                continue
            parent = hc.cells[cell.parent]
            expect_b = [
                j for j in parent.conflict
                if classify_line_cell(lines[j][1], cell.vertices) == -1
            ]
            expect_a = [
                j for j in parent.conflict
                if classify_line_cell(lines[j][1], cell.vertices) == 1
            ]
            assert sorted(below_sets[cell.id]) == sorted(expect_b)
            assert sorted(above_sets[cell.id]) == sorted(expect_a)
            # emitted in global slope order without per-cell sorting
            assert below_sets[cell.id] == sorted(below_sets[cell.id], key=slope_key)
            assert above_sets[cell.id] == sorted(above_sets[cell.id], key=slope_key)
        # root has no parent, hence no side sets
        assert below_sets[hc.levels[0][0]] == []


def test_cumulative_envelopes_match_brute_force():
    rng = random.Random(11)
    for _ in range(8):
        n = rng.randint(4, 32)
        lines = list(enumerate(random_lines(rng, n)))
        hc = build_hierarchical([l for _, l in lines], 4, rng)
        below_sets, above_sets = compute_side_sets(hc, lines)
        stats = Counters()
        cums = cell_envelopes_topdown(hc, lines, below_sets, above_sets, stats)
        assert stats.max_crossings <= 4
        for cell in hc.cells:
            if cell.level == 0:
                continue
            below_all = [
                (Point(l.a, -l.b), j)
                for j, l in lines
                if classify_line_cell(l, cell.vertices) == -1
            ]
            above_all = [
                (Point(l.a, -l.b), j)
                for j, l in lines
                if classify_line_cell(l, cell.vertices) == 1
            ]
            cb, ca = cums[cell.id]
            assert cb.vertices() == brute_hull(below_all, 1)
            assert ca.vertices() == brute_hull(above_all, -1)


def test_assign_points_group_arithmetic():
    # ten points in one leaf with r^2 = 4 make ceil(10/4)=3-sized groups, 4 of them
    rng = random.Random(5)
    lines = random_lines(rng, 9)
    hc = build_hierarchical(lines, 2, rng, box=(-100, 100, -100, 100))
    pts = [(i, Point(F(1, 3), F(1, 7))) for i in range(10)]
    groups = assign_points(hc, pts)
    assert all(len(g) <= math.ceil(10 / 4) for _, g in groups)
    leaves = {leaf for leaf, _ in groups}
    assert len(leaves) == 1
    assert len(groups) == 4
    single = assign_points(hc, pts[:1])
    assert len(single) == 1


def test_point_envelopes_match_direct_max():
    rng = random.Random(19)
    stats = Counters()
    cfg = SolverConfig(backend="primal", base_n=6, base_m=4)
    for _ in range(6):
        n = rng.randint(8, 40)
        m = rng.randint(1, 12)
        lines = random_lines(rng, n)
        pts = random_points(rng, m, lines)
        chains = primal_chains(
            list(enumerate(pts)), list(enumerate(lines)), cfg, 0, stats
        )
        for pi, p in enumerate(pts):
            below, above = chains[pi]
            below_lines = [l for l in lines if side_of_line(p, l) == 1]
            above_lines = [l for l in lines if side_of_line(p, l) == -1]
            for _ in range(12):
                x = F(rng.randint(-200, 200), rng.randint(1, 5))
                if below_lines:
                    assert chain_value_at(below, x) == max(
                        l.a * x + l.b for l in below_lines
                    )
                else:
                    assert below.is_empty()
                if above_lines:
                    assert chain_value_at(above, x) == min(
                        l.a * x + l.b for l in above_lines
                    )
                else:
                    assert above.is_empty()
    assert stats.max_crossings <= 4


def test_primal_backend_equals_oracle():
    rng = random.Random(31)
    for _ in range(15):
        n = rng.randint(1, 40)
        m = rng.randint(1, 16)
        lines = random_lines(rng, n)
        pts = random_points(rng, m, lines)
        inst = Instance(pts, lines)
        ref = solve(inst, SolverConfig(backend="naive"))
        got = solve(inst, SolverConfig(backend="primal", base_n=6, base_m=4))
        assert set(ref.faces) == set(got.faces)
        assert ref.witnesses == got.witnesses
        assert got.stats.max_crossings <= 4


def test_points_box_contains_all_points():
    pts = [(0, Point(F(3), F(-2))), (1, Point(F(-5), F(9)))]
    x0, x1, y0, y1 = points_box(pts)
    assert x0 < -5 and x1 > 3 and y0 < -2 and y1 > 9
