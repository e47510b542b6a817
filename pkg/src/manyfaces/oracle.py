"""Brute-force ground truth: the full arrangement as a DCEL inside a bounding
box, sign-vector point location, and naive non-empty-face reporting.

Deliberately the slow O(n^2) reference everything else is checked against.
The box is chosen beyond every line-line intersection, so dropping box edges
from a cell's boundary cycle leaves exactly the cycle the envelope-based
backends report, and keys match across backends.
"""

from fractions import Fraction
from functools import cmp_to_key

from .chain import ListChain, LOWER, UPPER
from .errors import EmptyInput, OnBoundary
from .faces import Face, PLANE_FACE, face_from_envelopes
from .geom import ON, Point, line_eval, line_intersection, side_of_line


def _dir_cmp(d1, d2):
    """CCW comparison of direction vectors starting from the +x axis."""

    def quadrant(d):
        x, y = d
        if x > 0 and y >= 0:
            return 0
        if x <= 0 and y > 0:
            return 1
        if x < 0 and y <= 0:
            return 2
        return 3

    q1, q2 = quadrant(d1), quadrant(d2)
    if q1 != q2:
        return -1 if q1 < q2 else 1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


class ArrangementDCEL:
    """Arrangement of lines clipped to a generic bounding box."""

    def __init__(self, lines):
        if not lines:
            raise EmptyInput("cannot build an arrangement of zero lines")
        self.lines = list(lines)
        self._build()

    # -- construction ------------------------------------------------------

    def _pick_box(self, pts):
        """Width and height of a generic box beyond every intersection.

        The box is deliberately non-square and its height is bumped until no
        line passes through a corner (a square box would put y=x through two
        corners forever).
        """
        bound = Fraction(2)
        for p in pts:
            for c in (p.x, p.y):
                mag = -c if c < 0 else c
                while bound <= mag:
                    bound *= 2
        b = bound + 1
        h = bound + 2
        while True:
            corners = [Point(sx * b, sy * h) for sx in (1, -1) for sy in (1, -1)]
            if all(
                side_of_line(c, l) != ON for c in corners for l in self.lines
            ):
                return b, h
            h += 1

    def _box_crossings(self, l, b, h):
        pts = []
        for x in (-b, b):
            y = line_eval(l, x)
            if -h < y < h:
                pts.append(Point(x, y))
        if l.a != 0:
            for y in (-h, h):
                x = (y - l.b) / l.a
                if -b < x < b:
                    pts.append(Point(x, y))
        assert len(pts) == 2, "line must cross the box boundary exactly twice"
        return pts

    def _build(self):
        lines = self.lines
        n = len(lines)
        inter = {}
        per_line = [set() for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                p = line_intersection(lines[i], lines[j])
                if p is None:
                    continue
                per_line[i].add(p)
                per_line[j].add(p)
                inter[p] = True
        anchors = list(inter) + [Point(Fraction(0), l.b) for l in lines]
        b, h = self._pick_box(anchors)
        self.box = (b, h)

        corners = [Point(b, h), Point(-b, h), Point(-b, -h), Point(b, -h)]
        side_pts = {"left": [], "right": [], "bottom": [], "top": []}
        for i, l in enumerate(lines):
            for p in self._box_crossings(l, b, h):
                per_line[i].add(p)
                if p.x == -b:
                    side_pts["left"].append(p)
                elif p.x == b:
                    side_pts["right"].append(p)
                elif p.y == -h:
                    side_pts["bottom"].append(p)
                else:
                    side_pts["top"].append(p)

        edges = []  # (u Point, v Point, label)
        for i in range(n):
            pts = sorted(per_line[i], key=lambda p: p.x)
            for k in range(len(pts) - 1):
                edges.append((pts[k], pts[k + 1], ("L", i)))
        side_pts["left"] = sorted(
            side_pts["left"] + [corners[1], corners[2]], key=lambda p: p.y
        )
        side_pts["right"] = sorted(
            side_pts["right"] + [corners[0], corners[3]], key=lambda p: p.y
        )
        side_pts["bottom"] = sorted(
            side_pts["bottom"] + [corners[2], corners[3]], key=lambda p: p.x
        )
        side_pts["top"] = sorted(
            side_pts["top"] + [corners[0], corners[1]], key=lambda p: p.x
        )
        for side, pts in side_pts.items():
            for k in range(len(pts) - 1):
                edges.append((pts[k], pts[k + 1], ("B", side)))

        vid = {}

        def vertex(p):
            if p not in vid:
                vid[p] = len(vid)
            return vid[p]

        origin, dest, label, twin = [], [], [], []
        for u, v, lab in edges:
            ui, vi = vertex(u), vertex(v)
            h1 = len(origin)
            origin.append(ui)
            dest.append(vi)
            label.append(lab)
            origin.append(vi)
            dest.append(ui)
            label.append(lab)
            twin.append(h1 + 1)
            twin.append(h1)
        self.points = [None] * len(vid)
        for p, i in vid.items():
            self.points[i] = p

        outgoing = [[] for _ in vid]
        for h in range(len(origin)):
            outgoing[origin[h]].append(h)
        pts = self.points

        for v, outs in enumerate(outgoing):
            pv = pts[v]
            outs.sort(
                key=cmp_to_key(
                    lambda h1, h2: _dir_cmp(
                        (pts[dest[h1]].x - pv.x, pts[dest[h1]].y - pv.y),
                        (pts[dest[h2]].x - pv.x, pts[dest[h2]].y - pv.y),
                    )
                )
            )
        pos = {}
        for v, outs in enumerate(outgoing):
            for idx, h in enumerate(outs):
                pos[h] = idx
        nxt = [None] * len(origin)
        prv = [None] * len(origin)
        for h in range(len(origin)):
            w = dest[h]
            outs = outgoing[w]
            t = twin[h]
            nh = outs[(pos[t] - 1) % len(outs)]
            nxt[h] = nh
            prv[nh] = h

        self.origin, self.dest, self.label = origin, dest, label
        self.twin, self.nxt, self.prv = twin, nxt, prv

        face_of = [None] * len(origin)
        cycles = []
        for h0 in range(len(origin)):
            if face_of[h0] is not None:
                continue
            cyc = []
            h = h0
            while face_of[h] is None:
                face_of[h] = len(cycles)
                cyc.append(h)
                h = nxt[h]
            cycles.append(cyc)
        self.face_of = face_of
        self.cycles = cycles

        interior = []
        outer = None
        for fi, cyc in enumerate(cycles):
            area2 = 0
            for h in cyc:
                p, q = pts[origin[h]], pts[dest[h]]
                area2 += p.x * q.y - q.x * p.y
            if area2 > 0:
                interior.append(fi)
            else:
                assert outer is None, "more than one outer cycle"
                outer = fi
        self.interior_faces = interior
        self.outer_face = outer

        self.num_vertices = len(vid)
        self.num_edges = len(edges)
        self.num_faces = len(cycles)

        self._faces_cache = {}
        self._sign_to_face = {}
        for fi in interior:
            sample = self._face_sample(fi)
            sv = tuple(side_of_line(sample, l) for l in lines)
            assert ON not in sv, "face sample landed on a line"
            self._sign_to_face[sv] = fi

    def euler_ok(self):
        return self.num_vertices - self.num_edges + self.num_faces == 2

    def _face_sample(self, fi):
        cyc = self.cycles[fi]
        xs = ys = 0
        for h in cyc:
            p = self.points[self.origin[h]]
            xs += p.x
            ys += p.y
        k = len(cyc)
        return Point(xs / k, ys / k)

    def face_object(self, fi):
        """The reduced Face for an interior face: box edges dropped."""
        if fi in self._faces_cache:
            return self._faces_cache[fi]
        cyc = self.cycles[fi]
        runs = []  # (label, first half-edge)
        for h in cyc:
            lab = self.label[h]
            if runs and runs[-1][0] == lab:
                continue
            runs.append((lab, h))
        if len(runs) > 1 and runs[0][0] == runs[-1][0]:
            runs[0] = runs.pop()
        line_runs = [(lab[1], h, k) for k, (lab, h) in enumerate(runs) if lab[0] == "L"]
        assert line_runs, "interior face with no line edge"
        lines_cyc = [li for li, _, _ in line_runs]
        sample = self._face_sample(fi)
        sides = [side_of_line(sample, self.lines[li]) for li in lines_cyc]
        junctions = []
        nruns = len(runs)
        for r in range(len(line_runs)):
            _, _, k = line_runs[r]
            _, h_next, k_next = line_runs[(r + 1) % len(line_runs)]
            if (k + 1) % nruns == k_next:
                junctions.append(self.points[self.origin[h_next]])
            else:
                junctions.append(None)  # box edges intervene: open junction
        face = Face.build(lines_cyc, sides, junctions)
        self._faces_cache[fi] = face
        return face


def build_arrangement(lines):
    return ArrangementDCEL(lines)


def locate_face(arr, p):
    """Id of the interior face containing p, via its exact sign vector."""
    sv = []
    for l in arr.lines:
        s = side_of_line(p, l)
        if s == ON:
            raise OnBoundary(f"point {p} lies on a line")
        sv.append(s)
    fi = arr._sign_to_face.get(tuple(sv))
    assert fi is not None, "sign vector without a cell: arrangement bug"
    return fi


def non_empty_faces_naive(instance):
    """Faces containing at least one point, one entry per cell.

    Returns {key: (Face, [witness point indices])}, the format every backend
    produces.
    """
    out = {}
    if not instance.points:
        return out
    if not instance.lines:
        return {(): (PLANE_FACE, list(range(len(instance.points))))}
    arr = build_arrangement(instance.lines)
    by_cell = {}
    for pi, p in enumerate(instance.points):
        fi = locate_face(arr, p)
        by_cell.setdefault(fi, []).append(pi)
    for fi, witnesses in by_cell.items():
        face = arr.face_object(fi)
        out[face.key] = (face, witnesses)
    return out


def non_empty_faces_scan(instance):
    """The straightforward algorithm without the quadratic arrangement:
    each point's cell is rebuilt from scratch from its two envelopes.

    Same output as non_empty_faces_naive; usable at sizes where the DCEL
    would not fit in memory.
    """
    out = {}
    if not instance.points:
        return out
    if not instance.lines:
        return {(): (PLANE_FACE, list(range(len(instance.points))))}
    order = sorted(
        range(len(instance.lines)),
        key=lambda i: (instance.lines[i].a, instance.lines[i].b),
    )
    lines = instance.lines
    slopes = [lines[i].a for i in order]
    icpts = [lines[i].b for i in order]
    duals = [(Point(lines[i].a, -lines[i].b), i) for i in order]
    n = len(order)
    for pi, p in enumerate(instance.points):
        px, py = p.x, p.y
        below = []
        above = []
        b_app, a_app = below.append, above.append
        prev_slope = None
        for k in range(n):
            a = slopes[k]
            if py - a * px - icpts[k] > 0:
                # collapse parallels: the highest line below p wins
                if below and a == prev_slope:
                    below[-1] = duals[k]
                else:
                    b_app(duals[k])
            else:
                # the lowest line above p wins (first seen in intercept order)
                if not (above and above[-1][0][0] == a):
                    a_app(duals[k])
            prev_slope = a
        out_b = []
        for it in below:
            while len(out_b) >= 2 and _turn(out_b[-2][0], out_b[-1][0], it[0]) <= 0:
                out_b.pop()
            out_b.append(it)
        out_a = []
        for it in above:
            while len(out_a) >= 2 and _turn(out_a[-2][0], out_a[-1][0], it[0]) >= 0:
                out_a.pop()
            out_a.append(it)
        face = face_from_envelopes(
            ListChain(out_b, LOWER), ListChain(out_a, UPPER), px
        )
        hit = out.get(face.key)
        if hit is None:
            out[face.key] = (face, [pi])
        else:
            hit[1].append(pi)
    return out


def _turn(o, a, b):
    d = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0
