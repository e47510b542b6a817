"""Primal-side envelope computation over a hierarchical cutting.

For every query point we want chain representations of the upper envelope of
the lines below it and the lower envelope of the lines above it.  Per cell
of a cutting of the lines, the lines completely below the cell split as
"below the parent" plus "crossing the parent but below the cell", so the
per-cell envelope is a bounded-crossing merge of the parent's envelope with
the hull of the cell's own below-set; per point, the leaf envelope is merged
with the recursively computed envelope of the leaf's conflict lines.  Both
sides are produced in one pass over a shared cutting.
"""

import math
import random

from .chain import LOWER, UPPER, HullChain, merge_bounded_crossings
from .cutting import _classify_filtered, _classify_float, build_hierarchical
from .geom import Point, dualize_point


def chain_from_slope_sorted(entries, side):
    """Chain of the duals of lines given in ascending slope order.

    ``entries`` yields (orig_index, Line); parallel lines collapse to the one
    facing the query side (side=+1 below, side=-1 above).
    """
    items = [(Point(l.a, -l.b), idx) for idx, l in entries]
    return HullChain.hull_of_sorted_loose(items, LOWER if side > 0 else UPPER)


def direct_chains(points, lines, cfg, depth, stats):
    """Base case: each point's two envelope chains from scratch."""
    order = sorted(range(len(lines)), key=lambda j: (lines[j][1].a, lines[j][1].b))
    out = {}
    for orig_idx, p in points:
        px, py = p.x, p.y
        below = []
        above = []
        for j in order:
            li, l = lines[j]
            d = py - (l.a * px + l.b)
            if d > 0:
                if below and below[-1][1].a == l.a:
                    below[-1] = (li, l)  # larger intercept wins below
                else:
                    below.append((li, l))
            else:
                # the smallest intercept above was seen first; keep it
                if not (above and above[-1][1].a == l.a):
                    above.append((li, l))
        out[orig_idx] = (
            chain_from_slope_sorted(below, 1),
            chain_from_slope_sorted(above, -1),
        )
    return out


def compute_side_sets(hc, lines, stats=None):
    """Per-cell slope-sorted below-sets and above-sets.

    For each cell, the lines of its parent's conflict list lying completely
    below (resp. above) the cell, in global slope order without per-cell
    sorting: per-line cell lists are filled cell by cell, then emitted by
    walking the lines in slope order.
    """
    lines_f = [(float(l.a), float(l.b)) for _, l in lines]
    float_mode = bool(lines) and isinstance(lines[0][1].a, float)
    below_lists = [[] for _ in lines]
    above_lists = [[] for _ in lines]
    for cell in hc.cells:
        if cell.level == 0:
            continue
        parent = hc.cells[cell.parent]
        verts = cell.vertices
        verts_f = tuple((float(v[0]), float(v[1])) for v in verts)
        for j in parent.conflict:
            if float_mode:
                c = _classify_float(lines_f[j], verts_f)
            else:
                c = _classify_filtered(lines[j][1], lines_f[j], verts, verts_f)
            if c == -1:
                below_lists[j].append(cell.id)
            elif c == 1:
                above_lists[j].append(cell.id)
    order = sorted(range(len(lines)), key=lambda j: (lines[j][1].a, lines[j][1].b))
    below_sets = {cell.id: [] for cell in hc.cells}
    above_sets = {cell.id: [] for cell in hc.cells}
    for j in order:
        for cid in below_lists[j]:
            below_sets[cid].append(j)
        for cid in above_lists[j]:
            above_sets[cid].append(j)
    return below_sets, above_sets


def cell_envelopes_topdown(hc, lines, below_sets, above_sets, stats=None):
    """Cumulative envelope chains per cell, both sides, top down.

    Each cell reuses its parent's persistent chain and merges in the hull of
    its own side-set; every merge crosses at most four times.
    """
    root = hc.levels[0][0]
    cums = {root: (HullChain.empty(LOWER), HullChain.empty(UPPER))}
    for level in hc.levels[1:]:
        for cid in level:
            cell = hc.cells[cid]
            parent = hc.cells[cell.parent]
            if parent.vertices is None:
                separator = []
            else:
                separator = [dualize_point(v) for v in parent.vertices]
            cum_b, cum_a = cums[cell.parent]
            hat_b = chain_from_slope_sorted(
                ((lines[j][0], lines[j][1]) for j in below_sets[cid]), 1
            )
            hat_a = chain_from_slope_sorted(
                ((lines[j][0], lines[j][1]) for j in above_sets[cid]), -1
            )
            cums[cid] = (
                merge_bounded_crossings(cum_b, hat_b, separator, stats=stats),
                merge_bounded_crossings(cum_a, hat_a, separator, stats=stats),
            )
    return cums


def assign_points(hc, points):
    """Route points to leaf cells and split into groups of <= ceil(m/r^2)."""
    by_leaf = {}
    for pos, (_, p) in enumerate(points):
        leaf = hc.locate_cell_path(p)[-1]
        by_leaf.setdefault(leaf, []).append(pos)
    m = len(points)
    cap = max(1, math.ceil(m / (hc.r * hc.r)))
    groups = []
    for leaf, positions in by_leaf.items():
        for i in range(0, len(positions), cap):
            groups.append((leaf, positions[i : i + cap]))
    return groups


def points_box(points):
    xs = [p.x for _, p in points]
    ys = [p.y for _, p in points]
    return (min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1)


def primal_chains(points, lines, cfg, depth, stats, subsolver=None, r=None):
    """Envelope chain pairs for every point by the cutting recursion.

    ``subsolver`` handles the per-leaf subproblems (point group, leaf's
    conflict lines); it defaults to this function, the pure primal recursion.
    ``r`` overrides the cutting parameter for this call only.
    """
    sub = subsolver or primal_chains
    m, n = len(points), len(lines)
    if m == 0:
        return {}
    if n == 0:
        empty = (HullChain.empty(LOWER), HullChain.empty(UPPER))
        return {idx: empty for idx, _ in points}
    r = r or cfg.r_override or max(2, math.ceil(n ** (1 / 3)))
    r = min(r, n)
    if n <= cfg.base_n or m <= cfg.base_m or r < 2:
        return direct_chains(points, lines, cfg, depth, stats)

    rng = random.Random(hash((cfg.seed, depth, n, m)) & 0xFFFFFFFF)
    hc = build_hierarchical(
        [l for _, l in lines], r, rng, box=points_box(points), stats=stats
    )
    below_sets, above_sets = compute_side_sets(hc, lines, stats)
    cums = cell_envelopes_topdown(hc, lines, below_sets, above_sets, stats)
    groups = assign_points(hc, points)

    cap = max(1, math.ceil(m / (r * r)))
    out = {}
    for leaf_id, grp in groups:
        leaf = hc.cells[leaf_id]
        assert len(grp) <= cap
        assert len(leaf.conflict) <= hc.level_targets[-1]
        sub_points = [points[pos] for pos in grp]
        sub_lines = [lines[j] for j in leaf.conflict]
        sub_out = sub(sub_points, sub_lines, cfg, depth + 1, stats)
        separator = [dualize_point(v) for v in leaf.vertices]
        cum_b, cum_a = cums[leaf_id]
        for orig_idx, _ in sub_points:
            sb, sa = sub_out[orig_idx]
            out[orig_idx] = (
                merge_bounded_crossings(cum_b, sb, separator, stats=stats),
                merge_bounded_crossings(cum_a, sa, separator, stats=stats),
            )
    return out
