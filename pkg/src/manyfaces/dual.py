"""Dual-side solver: hulls of the lines' dual points, gathered per query line.

The points' dual lines get a hierarchical cutting; the lines' dual points
are located in its cells in sorted x order, so every cell's point list (and
convex hull, kept as persistent lower/upper chains) is built in linear time.
Oversized leaf cells are further split into slabs holding at most n/r^2
points each.  For a query point's dual line, the dual points above it are
covered by whole cells lying above the line plus the crossed slabs' upper
parts (computed recursively); the envelope chain is assembled from the
cells' chains with a representative-segment sweep and tangent merging.

Per-cell chains are persistent: assemblies split and read them but every
handle survives for the next query line.
"""

import math
import random
from dataclasses import dataclass, field

from .chain import LOWER, UPPER, HullChain, ListChain, hull_scan_loose
from .cutting import (_classify_filtered, _classify_float, build_hierarchical,
                      classify_line_cell)
from .errors import SegmentsCross
from .geom import Point, dualize_line, dualize_point, orient
from .primal import direct_chains

# ---------------------------------------------------------------------------
# lower envelope of disjoint segments (plane sweep)
# ---------------------------------------------------------------------------


def _seg_y_at(seg, x):
    (x1, y1), (x2, y2) = seg
    if x2 == x1:
        return y1 if y1 < y2 else y2
    return y1 + (x - x1) * (y2 - y1) / (x2 - x1)


def disjoint_segment_lower_envelope(segments, validate=False):
    """Left-to-right pieces of the lower envelope of interior-disjoint segments.

    ``segments`` is a sequence of ((x1,y1),(x2,y2)) with x1 <= x2; returns
    [(segment index, xl, xr)] with xl == xr for a degenerate vertical or
    point segment that is instantaneously lowest.  Piece count is at most
    2K - 1.  Endpoint ties resolve by segment index.
    """
    if validate:
        _validate_disjoint(segments)
    events = []  # (x, kind, index): kind 0 delete, 1 insert, 2 point
    for i, (p, q) in enumerate(segments):
        if p[0] > q[0]:
            p, q = q, p
        if p[0] == q[0]:
            events.append((p[0], 2, i))
        else:
            events.append((p[0], 1, i))
            events.append((q[0], 0, i))
    events.sort(key=lambda e: (e[0], e[1], e[2]))

    active = []  # indices ordered by y at the sweep line
    pieces = []
    owner = None
    start = None

    def switch(new_owner, x):
        nonlocal owner, start
        if new_owner == owner:
            return
        if owner is not None and start < x:
            pieces.append((owner, start, x))
        owner = new_owner
        start = x

    k = 0
    nev = len(events)
    while k < nev:
        x = events[k][0]
        batch = []
        while k < nev and events[k][0] == x:
            batch.append(events[k])
            k += 1
        for _, kind, i in batch:
            if kind == 0:
                active.remove(i)
            elif kind == 1:
                y = _seg_y_at(segments[i], x)
                lo, hi = 0, len(active)
                while lo < hi:
                    mid = (lo + hi) // 2
                    ym = _seg_y_at(segments[active[mid]], x)
                    if (y, i) < (ym, active[mid]):
                        hi = mid
                    else:
                        lo = mid + 1
                active.insert(lo, i)
        cur = active[0] if active else None
        for _, kind, i in batch:
            if kind != 2:
                continue
            y = _seg_y_at(segments[i], x)
            if cur is None or (y, i) < (_seg_y_at(segments[cur], x), cur):
                switch(i, x)
                pieces.append((i, x, x))
                owner = None
                start = None
        switch(cur, x)
    assert owner is None, "sweep ended with an open piece"
    return pieces


def _validate_disjoint(segments):
    def cross(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    for i in range(len(segments)):
        p1, q1 = segments[i]
        for j in range(i + 1, len(segments)):
            p2, q2 = segments[j]
            d1 = cross(p1, q1, p2)
            d2 = cross(p1, q1, q2)
            d3 = cross(p2, q2, p1)
            d4 = cross(p2, q2, q1)
            if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
                    and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
                raise SegmentsCross(f"segments {i} and {j} cross")


# ---------------------------------------------------------------------------
# rotational extreme-vertex schedule
# ---------------------------------------------------------------------------


def rotational_extremes_schedule(slopes, hulls):
    """Extreme hull vertices along every line direction, by angular sweep.

    ``slopes`` are the query line slopes (direction (1, a)), ``hulls`` are
    cyclic CCW vertex lists.  Yields, for slopes in ascending order, the
    per-hull (leftmost, rightmost) vertices, i.e. the minimizers and
    maximizers of the projection x + a*y; ties take the vertex reached first
    on the walk.  Total pointer movement is bounded by the total hull size.
    """
    chains = []
    for hull in hulls:
        # endpoints chosen so horizontal top/bottom edges join neither chain
        top_l = max(range(len(hull)), key=lambda i: (hull[i][1], -hull[i][0]))
        bot_l = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
        bot_r = min(range(len(hull)), key=lambda i: (hull[i][1], -hull[i][0]))
        top_r = max(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
        left, right = [], []
        i = top_l
        while True:
            left.append(hull[i])
            if i == bot_l:
                break
            i = (i + 1) % len(hull)  # CCW from the top descends the left side
        i = bot_r
        while True:
            right.append(hull[i])
            if i == top_r:
                break
            i = (i + 1) % len(hull)
        chains.append((left, right))

    def events(chain):
        evs = []
        for u, v in zip(chain, chain[1:]):
            evs.append((u[0] - v[0]) / (v[1] - u[1]))  # proj tie abscissa
        return evs

    state = []
    for left, right in chains:
        state.append([0, events(left), 0, events(right)])

    order = sorted(range(len(slopes)), key=lambda i: slopes[i])
    for qi in order:
        a = slopes[qi]
        out = []
        for (left, right), st in zip(chains, state):
            while st[0] < len(st[1]) and st[1][st[0]] < a:
                st[0] += 1
            while st[2] < len(st[3]) and st[3][st[2]] < a:
                st[2] += 1
            out.append((left[st[0]], right[st[2]]))
        yield qi, out


# ---------------------------------------------------------------------------
# dual structure
# ---------------------------------------------------------------------------


@dataclass
class RefinedCell:
    region: tuple  # convex CCW polygon
    positions: list  # indices into the dual-point array
    lower: HullChain
    upper: HullChain
    conflict: list  # positions into the query-point array
    sub_out: dict = field(default_factory=dict)


def _clip_band(poly, xl, xr):
    """Convex CCW polygon clipped to the vertical band [xl, xr]."""
    out = list(poly)
    for bound, keep_left in ((xr, True), (xl, False)):
        if bound is None:
            continue
        nxt = []
        n = len(out)
        for i in range(n):
            p, q = out[i], out[(i + 1) % n]
            dp = (bound - p[0]) if keep_left else (p[0] - bound)
            dq = (bound - q[0]) if keep_left else (q[0] - bound)
            if dp >= 0:
                nxt.append(p)
            if (dp > 0 > dq) or (dp < 0 < dq):
                t = dp / (dp - dq)
                nxt.append(Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        out = nxt
        if len(out) < 3:
            return None
    dedup = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) >= 2 and dedup[0] == dedup[-1]:
        dedup.pop()
    return tuple(dedup) if len(dedup) >= 3 else None


def _chain_pair(items):
    """Read-only hull chains of one cell; arrays, since assemblies only read."""
    return (
        ListChain(hull_scan_loose(items, LOWER), LOWER),
        ListChain(hull_scan_loose(items, UPPER), UPPER),
    )


def _blocks_by_x(items, cap):
    """Consecutive blocks of <= cap items that never split an equal-x run."""
    runs = []
    for it in items:
        if runs and runs[-1][-1][0][0] == it[0][0]:
            runs[-1].append(it)
        else:
            runs.append([it])
    blocks = []
    cur = []
    for run in runs:
        if cur and len(cur) + len(run) > cap:
            blocks.append(cur)
            cur = []
        cur.extend(run)
        if len(cur) >= cap:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    return blocks


@dataclass
class DualStructure:
    """Cutting of the points' dual lines plus per-cell point lists, hulls,
    and the refined slab layer."""

    hc: object
    cell_pts: dict  # cell id -> sorted dual points located in the cell
    cell_chains: dict  # cell id -> (lower ListChain, upper ListChain)
    refined: dict  # leaf id -> [RefinedCell]
    dual_lines: list
    dual_lines_f: list
    verts_f_cache: dict
    region_f_cache: dict
    float_mode: bool
    cap: int


def dual_preprocess(points, lines, r, rng, stats=None):
    """Locate the lines' dual points in a cutting of the points' dual lines.

    Point location follows the globally x-sorted dual points, so every
    cell's list (and hence its hull chains) is built in sorted order in
    linear time; oversized leaves split into slabs of at most n/r^2 points,
    never cutting an equal-abscissa (parallel line) family apart.
    """
    n = len(lines)
    dual_lines = [dualize_point(p) for _, p in points]
    dual_pts = sorted(
        ((Point(l.a, -l.b), idx) for idx, l in lines),
        key=lambda it: (it[0][0], it[0][1]),
    )
    xs = [pt[0] for pt, _ in dual_pts]
    ys = [pt[1] for pt, _ in dual_pts]
    box = (min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1)
    hc = build_hierarchical(dual_lines, r, rng, box=box, stats=stats)

    cell_pts = {cell.id: [] for cell in hc.cells}
    for item in dual_pts:
        for cid in hc.locate_cell_path(item[0]):
            cell_pts[cid].append(item)

    cell_chains = {}
    for cell in hc.cells:
        items = cell_pts[cell.id]
        if cell.level == 0 or not items:
            continue
        cell_chains[cell.id] = _chain_pair(items)

    cap = max(1, n // (r * r))
    refined = {}
    lines_f = [(float(l.a), float(l.b)) for l in dual_lines]
    for leaf_id in hc.leaves:
        leaf = hc.cells[leaf_id]
        items = cell_pts[leaf_id]
        cells_here = []
        if len(items) <= cap:
            blocks = [items] if items else []
            regions = [tuple(leaf.vertices)] if items else []
        else:
            blocks = _blocks_by_x(items, cap)
            bounds = []
            for b1, b2 in zip(blocks, blocks[1:]):
                bounds.append((b1[-1][0][0] + b2[0][0][0]) / 2)
            regions = []
            for bi in range(len(blocks)):
                xl = bounds[bi - 1] if bi > 0 else None
                xr = bounds[bi] if bi < len(bounds) else None
                region = _clip_band(leaf.vertices, xl, xr)
                assert region is not None, "slab clip emptied a populated cell"
                regions.append(region)
        for block, region in zip(blocks, regions):
            verts_f = tuple((float(v[0]), float(v[1])) for v in region)
            conflict = [
                j for j in leaf.conflict
                if _classify_filtered(dual_lines[j], lines_f[j], region, verts_f) == 0
            ]
            lower, upper = _chain_pair(block)
            cells_here.append(
                RefinedCell(region, [b[1] for b in block], lower, upper, conflict)
            )
        refined[leaf_id] = cells_here

    verts_f_cache = {
        cell.id: tuple((float(v[0]), float(v[1])) for v in cell.vertices)
        for cell in hc.cells
        if cell.vertices is not None
    }
    region_f_cache = {
        (leaf_id, k): tuple((float(v[0]), float(v[1])) for v in rc.region)
        for leaf_id, cells_here in refined.items()
        for k, rc in enumerate(cells_here)
    }
    return DualStructure(
        hc, cell_pts, cell_chains, refined, dual_lines,
        [(float(l.a), float(l.b)) for l in dual_lines],
        verts_f_cache, region_f_cache,
        isinstance(dual_lines[0].a, float), cap,
    )


def gather_hull_set(ds, pos, orig_idx, stats=None):
    """Hull chains covering the dual points on each side of one dual line.

    Whole-cell chains come from cells lying entirely on a side whose parent
    is crossed; crossed slabs contribute their recursively computed
    side-chains.  The chains on each side are pairwise disjoint and their
    vertex sets union to the hulls of that side's dual points.
    """
    hc = ds.hc
    cells = hc.cells
    pstar = ds.dual_lines[pos]
    pstar_f = ds.dual_lines_f[pos]
    pa, pb = pstar_f
    float_mode = ds.float_mode
    cell_chains = ds.cell_chains
    above_parts, below_parts = [], []
    crossed = [hc.levels[0][0]]
    for _ in range(hc.k):
        nxt = []
        for cid in crossed:
            for child_id in cells[cid].children:
                verts_f = ds.verts_f_cache[child_id]
                if float_mode:
                    # inline three-vertex side test, the innermost hot loop
                    has_above = has_below = False
                    for x, y in verts_f:
                        d = y - (pa * x + pb)
                        if d > 0.0:
                            has_above = True
                        elif d < 0.0:
                            has_below = True
                    if has_above:
                        c = 0 if has_below else -1
                    else:
                        c = 1
                else:
                    c = _classify_filtered(
                        pstar, pstar_f, cells[child_id].vertices, verts_f
                    )
                if c == 0:
                    nxt.append(child_id)
                elif child_id in cell_chains:
                    if c == -1:
                        above_parts.append(cell_chains[child_id][0])
                    else:
                        below_parts.append(cell_chains[child_id][1])
        crossed = nxt
    for leaf_id in crossed:
        for k, rc in enumerate(ds.refined[leaf_id]):
            verts_f = ds.region_f_cache[(leaf_id, k)]
            if float_mode:
                c = _classify_float(pstar_f, verts_f)
            else:
                c = _classify_filtered(pstar, pstar_f, rc.region, verts_f)
            if c == -1:
                if not rc.lower.is_empty():
                    above_parts.append(rc.lower)
            elif c == 1:
                if not rc.upper.is_empty():
                    below_parts.append(rc.upper)
            else:
                pair = rc.sub_out.get(orig_idx)
                if pair is not None:
                    if not pair[0].is_empty():
                        above_parts.append(pair[0])
                    if not pair[1].is_empty():
                        below_parts.append(pair[1])
    if stats is not None:
        stats.record_hull_set(len(above_parts))
        stats.record_hull_set(len(below_parts))
    return above_parts, below_parts


def dual_chains(points, lines, cfg, depth, stats, subsolver=None, r=None):
    """Envelope chain pairs for every point via the dual-plane recursion.

    ``subsolver`` handles the per-slab subproblems (crossing points, slab's
    lines); it defaults to this function, the pure dual recursion.
    """
    sub = subsolver or dual_chains
    m, n = len(points), len(lines)
    if m == 0:
        return {}
    if n == 0:
        empty = (HullChain.empty(LOWER), HullChain.empty(UPPER))
        return {idx: empty for idx, _ in points}
    r = r or cfg.r_override or max(2, math.ceil(n ** (1 / 3)))
    r = min(r, m)
    if n <= cfg.base_n or m <= cfg.base_m or r < 2:
        return direct_chains(points, lines, cfg, depth, stats)

    rng = random.Random(hash((cfg.seed, depth, n, m, 1)) & 0xFFFFFFFF)
    ds = dual_preprocess(points, lines, r, rng, stats)

    # recursive subproblems: one per crossed slab, solved for all its lines
    line_by_idx = dict(lines)
    point_by_pos = list(points)
    for leaf_id, cells_here in ds.refined.items():
        for rc in cells_here:
            if not rc.conflict or not rc.positions:
                continue
            sub_points = [point_by_pos[j] for j in rc.conflict]
            sub_lines = [(li, line_by_idx[li]) for li in rc.positions]
            assert len(sub_lines) <= max(ds.cap, _max_run(sub_lines))
            rc.sub_out = sub(sub_points, sub_lines, cfg, depth + 1, stats)

    out = {}
    for pos, (orig_idx, p) in enumerate(points):
        above_parts, below_parts = gather_hull_set(ds, pos, orig_idx, stats)
        out[orig_idx] = (
            assemble_hull(above_parts, LOWER, stats),
            assemble_hull(below_parts, UPPER, stats),
        )
    return out


def _max_run(sub_lines):
    best = run = 1
    prev = None
    for _, l in sub_lines:
        if prev is not None and l.a == prev:
            run += 1
            best = max(best, run)
        else:
            run = 1
        prev = l.a
    return best


def assemble_hull(parts, orientation, stats=None):
    """Hull chain of the union of disjoint hull chains.

    Representative segments (each part's end-to-end chord) are swept for
    their lower/upper envelope; each envelope piece contributes the owning
    part's vertices over the piece interval, and one monotone scan stitches
    the pieces into the final chain.  The parts themselves are never
    modified.
    """
    s = orientation
    parts = [p for p in parts if not p.is_empty()]
    if not parts:
        return HullChain.empty(s)
    if len(parts) == 1:
        return parts[0].as_tree()
    segs = []
    for part in parts:
        a, b = part.first[0], part.last[0]
        if s == LOWER:
            segs.append((a, b))
        else:
            # mirror y so one sweep direction serves both orientations
            segs.append((Point(a[0], -a[1]), Point(b[0], -b[1])))
    pieces = disjoint_segment_lower_envelope(segs)
    if stats is not None:
        stats.record_envelope(len(parts), len(pieces))
    acc = []
    for owner, xl, xr in pieces:
        part = parts[owner]
        lo = part.first_index_with_x_geq(xl)
        hi = part.first_index_with_x_geq(xr)
        if hi < part.size and part.get(hi)[0][0] == xr:
            hi += 1
        for item in part.slice_range(lo, hi):
            pt = item[0]
            if acc and pt[0] == acc[-1][0][0]:
                if s * (pt[1] - acc[-1][0][1]) < 0:
                    acc.pop()
                else:
                    continue
            while len(acc) >= 2 and s * orient(acc[-2][0], acc[-1][0], pt) <= 0:
                acc.pop()
            acc.append(item)
    return HullChain.from_sorted(acc, s)
