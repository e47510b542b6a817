"""Hierarchical (1/r)-cuttings of a line set, with conflict lists.

Construction is randomized refinement with verification: each overweight
cell samples a few of its conflict lines, triangulates their arrangement
restricted to the cell, and keeps the result only if every sub-triangle's
conflict list shrank below the level target, resampling otherwise.  The
output contract (per-level conflict bounds, refinement containment, plane
coverage over the working box) is checked by ``verify_cutting``.

Cells below the root are closed triangles; the root is the whole plane.
Level i cells are crossed by at most n/rho^i lines, so the last level is a
(1/r)-cutting.
"""

import math
import random
from dataclasses import dataclass, field

from .errors import DegenerateInput
from .geom import Point, line_eval, line_intersection, orient

RHO = 2


@dataclass
class Cell:
    id: int
    level: int
    vertices: tuple | None  # None marks the root (whole plane)
    parent: int | None
    children: list = field(default_factory=list)
    conflict: list = field(default_factory=list)


@dataclass
class HierarchicalCutting:
    cells: list
    levels: list  # levels[i] = list of cell ids
    r: int
    rho: int
    k: int
    box: tuple  # (x_lo, x_hi, y_lo, y_hi) covering every query point
    n: int
    level_targets: list = None  # per-level conflict bounds, ending at n // r

    @property
    def leaves(self):
        return self.levels[-1]

    def cell(self, cid):
        return self.cells[cid]

    def locate_cell_path(self, p):
        """Containing cell per level, root to leaf; boundary points go to the
        lowest-id child containing them."""
        path = [self.levels[0][0]]
        cur = self.cells[path[0]]
        for _ in range(len(self.levels) - 1):
            nxt = None
            for cid in cur.children:
                child = self.cells[cid]
                if _point_in_triangle(p, child.vertices):
                    nxt = child
                    break
            assert nxt is not None, f"point {p} escaped the cutting box"
            path.append(nxt.id)
            cur = nxt
        return path


def _point_in_triangle(p, verts):
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if orient(a, b, p) < 0:
            return False
    return True


def classify_line_cell(l, verts):
    """-1 line below cell, +1 above cell, 0 crossing the open interior.

    Vertices touching the line do not make a crossing; a line through a
    corner with the cell otherwise above it counts as below.
    """
    has_above = False
    has_below = False
    a, b = l
    for v in verts:
        d = v[1] - (a * v[0] + b)
        if d > 0:
            has_above = True
            if has_below:
                return 0
        elif d < 0:
            has_below = True
            if has_above:
                return 0
    if has_above and not has_below:
        return -1
    if has_below and not has_above:
        return 1
    raise DegenerateInput("cell with all vertices on one line")


def _classify_filtered(l, lf, verts, verts_f):
    """classify_line_cell with a double-precision prefilter.

    Signs certified only when the float offset clears a conservative error
    bound; anything closer falls back to the exact test, so the result is
    always the exact one.
    """
    a, b = lf
    has_above = False
    has_below = False
    for x, y in verts_f:
        ax = a * x
        d = y - (ax + b)
        guard = 1e-9 * (abs(ax) + abs(b) + abs(y)) + 1e-300
        if d > guard:
            has_above = True
            if has_below:
                return 0
        elif d < -guard:
            has_below = True
            if has_above:
                return 0
        else:
            return classify_line_cell(l, verts)
    if has_above and not has_below:
        return -1
    if has_below and not has_above:
        return 1
    return classify_line_cell(l, verts)


def _classify_float(lf, verts_f):
    """Plain float classification for float-coordinate runs."""
    a, b = lf
    has_above = False
    has_below = False
    for x, y in verts_f:
        d = y - (a * x + b)
        if d > 0.0:
            has_above = True
            if has_below:
                return 0
        elif d < 0.0:
            has_below = True
            if has_above:
                return 0
    if has_above and not has_below:
        return -1
    return 1


def is_float_geometry(lines):
    return bool(lines) and isinstance(lines[0][0] if isinstance(lines[0], tuple)
                                      else lines[0].a, float)


def _clean_polygon(poly):
    """Drop duplicate and collinear vertices of a convex CCW polygon."""
    out = []
    for p in poly:
        if out and p == out[-1]:
            continue
        out.append(p)
    if len(out) >= 2 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            if orient(a, b, c) == 0:
                out.pop(i)
                changed = True
                break
    return out


def _split_polygon(poly, l):
    """Split a convex CCW polygon by a line into (below part, above part)."""
    a, b = l
    below, above = [], []
    n = len(poly)
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        dp = p[1] - (a * p[0] + b)
        dq = q[1] - (a * q[0] + b)
        if dp <= 0:
            below.append(p)
        if dp >= 0:
            above.append(p)
        if (dp > 0 > dq) or (dp < 0 < dq):
            x = (q[0] - p[0])
            t = -dp / (dq - dp)
            cut = Point(p[0] + t * x, p[1] + t * (q[1] - p[1]))
            below.append(cut)
            above.append(cut)
    below = _clean_polygon(below)
    above = _clean_polygon(above)
    return (below if len(below) >= 3 else None, above if len(above) >= 3 else None)


def _fan_triangulate(poly):
    """Bottom-vertex fan of a convex CCW polygon."""
    bi = min(range(len(poly)), key=lambda i: (poly[i][1], poly[i][0]))
    poly = poly[bi:] + poly[:bi]
    tris = []
    for i in range(1, len(poly) - 1):
        tri = (poly[0], poly[i], poly[i + 1])
        if orient(*tri) != 0:
            tris.append(tri)
    return tris


def _refine_region(poly, sample_lines):
    """Triangles of the sample arrangement restricted to a convex region."""
    polys = [poly]
    for l in sample_lines:
        nxt = []
        for p in polys:
            lo, hi = _split_polygon(p, l)
            if lo is not None:
                nxt.append(lo)
            if hi is not None:
                nxt.append(hi)
        polys = nxt
    tris = []
    for p in polys:
        tris.extend(_fan_triangulate(p))
    return tris


def build_hierarchical(lines, r, rng=None, box=None, stats=None,
                       sample_base=2, max_retries=60):
    """Hierarchical (1/r)-cutting of the lines over a bounding box.

    The box must contain every point the cutting will be queried with; when
    omitted it is derived from the lines' intercepts.  Construction retries
    a cell's sample until every sub-triangle meets the level target, so the
    conflict bounds hold unconditionally on return.
    """
    n = len(lines)
    rng = rng or random.Random(0)
    if n == 0:
        r = 1
    r = max(1, min(int(r), max(n, 1)))
    k = 0 if r <= 1 else max(1, math.ceil(math.log2(r)))
    if n >= 1 and r == 1:
        k = 0
    # per-level conflict targets interpolate geometrically down to n/r, so an
    # r strictly between powers of two is not over-refined
    targets = [n]
    for i in range(1, k + 1):
        targets.append(max(1, math.ceil(n * (r ** (-i / k)))))
    if k > 0:
        targets[k] = max(1, n // r)

    if box is None:
        mags = [abs(l.b) for l in lines] + [abs(l.a) for l in lines] + [1]
        m = max(mags) + 1
        box = (-m, m, -m, m)
    x_lo, x_hi, y_lo, y_hi = box

    cells = [Cell(0, 0, None, None, [], list(range(n)))]
    levels = [[0]]
    root_poly = [
        Point(x_lo, y_lo),
        Point(x_hi, y_lo),
        Point(x_hi, y_hi),
        Point(x_lo, y_hi),
    ]

    lines_f = [(float(l.a), float(l.b)) for l in lines]
    float_mode = bool(lines) and isinstance(lines[0].a, float)
    regions = {0: tuple(root_poly)}
    for i in range(1, k + 1):
        level_ids = []
        target = targets[i]
        for pid in levels[i - 1]:
            parent = cells[pid]
            conflict = parent.conflict
            s = len(conflict)
            if s <= target:
                # already under target: the cell passes through unchanged
                cid = len(cells)
                cells.append(Cell(cid, i, parent.vertices, pid, [], list(conflict)))
                regions[cid] = regions[pid]
                parent.children.append(cid)
                level_ids.append(cid)
                continue
            poly = list(regions[pid])
            got = None
            t = min(s, sample_base)
            for attempt in range(max_retries):
                sample_idx = rng.sample(conflict, t)
                tris = _refine_region(poly, [lines[j] for j in sample_idx])
                ok = True
                tri_conf = []
                for tri in tris:
                    tri_f = tuple((float(v[0]), float(v[1])) for v in tri)
                    if float_mode:
                        conf = [
                            j for j in conflict
                            if _classify_float(lines_f[j], tri_f) == 0
                        ]
                    else:
                        conf = [
                            j for j in conflict
                            if _classify_filtered(lines[j], lines_f[j], tri, tri_f) == 0
                        ]
                    if len(conf) > target:
                        ok = False
                        break
                    tri_conf.append(conf)
                if ok:
                    got = (tris, tri_conf)
                    break
                if stats is not None:
                    stats.cutting_retries += 1
                if attempt % 5 == 4:
                    # escalate gently; a full sample always succeeds
                    t = min(s, t + 1 + t // 4)
            if got is None:
                raise DegenerateInput(
                    f"cutting refinement failed for cell {pid} after retries"
                )
            tris, tri_conf = got
            for tri, conf in zip(tris, tri_conf):
                cid = len(cells)
                cells.append(Cell(cid, i, tri, pid, [], conf))
                regions[cid] = tri
                parent.children.append(cid)
                level_ids.append(cid)
        levels.append(level_ids)

    hc = HierarchicalCutting(cells, levels, r, RHO, k, box, n, targets)
    if stats is not None:
        stats.cutting_cells += len(cells)
        stats.cutting_conflict_total += sum(len(c.conflict) for c in cells)
    return hc


@dataclass
class CuttingReport:
    ok: bool
    issues: list
    total_cells: int
    total_conflict: int
    cells_constant: float  # total cells / r^2
    conflict_constant: float  # total conflict size / (n*r)
    max_leaf_conflict: int


def verify_cutting(hc, lines, rng=None, probes=200):
    """Recheck every invariant of a built cutting by brute force."""
    rng = rng or random.Random(1)
    issues = []
    n = len(lines)

    for cell in hc.cells:
        if cell.level == 0:
            continue
        full = [
            j for j in range(n)
            if classify_line_cell(lines[j], cell.vertices) == 0
        ]
        if sorted(cell.conflict) != full:
            issues.append(f"cell {cell.id}: stored conflict list wrong")
        if len(cell.conflict) > hc.level_targets[cell.level]:
            issues.append(f"cell {cell.id}: conflict bound violated")
        if cell.parent is not None and hc.cells[cell.parent].vertices is not None:
            pverts = hc.cells[cell.parent].vertices
            for v in cell.vertices:
                if not _point_in_triangle(v, pverts):
                    issues.append(f"cell {cell.id}: escapes parent")
                    break

    x_lo, x_hi, y_lo, y_hi = hc.box
    for _ in range(probes):
        p = Point(
            x_lo + (x_hi - x_lo) * rng.random(),
            y_lo + (y_hi - y_lo) * rng.random(),
        )
        for ids in hc.levels[1:]:
            strict = 0
            weak = 0
            for cid in ids:
                verts = hc.cells[cid].vertices
                if _point_in_triangle(p, verts):
                    weak += 1
                    if all(
                        orient(verts[i], verts[(i + 1) % len(verts)], p) > 0
                        for i in range(len(verts))
                    ):
                        strict += 1
            if strict > 1 or weak == 0:
                issues.append(f"coverage broken at probe {p}")
                break

    total_cells = len(hc.cells)
    total_conflict = sum(len(c.conflict) for c in hc.cells)
    max_leaf = max((len(hc.cells[c].conflict) for c in hc.leaves), default=0)
    return CuttingReport(
        ok=not issues,
        issues=issues,
        total_cells=total_cells,
        total_conflict=total_conflict,
        cells_constant=total_cells / (hc.r ** 2),
        conflict_constant=total_conflict / (n * hc.r) if n else 0.0,
        max_leaf_conflict=max_leaf,
    )


def dump_cells(hc):
    """Debug dump: one cell per line with its half-plane constraints."""
    rows = []
    for cell in hc.cells:
        parent = -1 if cell.parent is None else cell.parent
        cons = []
        if cell.vertices is not None:
            k = len(cell.vertices)
            for i in range(k):
                a, b = cell.vertices[i], cell.vertices[(i + 1) % k]
                # inward half-plane: cross((b-a), (p-a)) >= 0
                cons.extend(
                    (str(a[1] - b[1]), str(b[0] - a[0]),
                     str(b[0] * a[1] - a[0] * b[1]))
                )
        rows.append(
            f"{cell.level} {cell.id} {parent} "
            + " ".join(cons)
            + f" {len(cell.conflict)}"
        )
    return "\n".join(rows)
