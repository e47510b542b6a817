"""Exact planar primitives: points, non-vertical lines, duality, normalization.

Coordinates are exact rationals (fractions.Fraction) in the correctness path.
Every predicate is duck-typed over the coordinate type, so the benchmark
harness can run the same code over floats.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import EmptyInput, PointOnLine

ABOVE = 1
ON = 0
BELOW = -1


class Point(NamedTuple):
    x: Fraction
    y: Fraction


class Line(NamedTuple):
    """Non-vertical line y = a*x + b."""

    a: Fraction
    b: Fraction


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the signed area of triangle (p, q, r); +1 is counterclockwise."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def side_of_line(p: Point, l: Line) -> int:
    """ABOVE iff p.y > a*p.x + b, exactly; ON iff equal; BELOW otherwise."""
    d = p[1] - (l[0] * p[0] + l[1])
    if d > 0:
        return ABOVE
    if d < 0:
        return BELOW
    return ON


def line_offset(p: Point, l: Line):
    """Signed vertical offset of p from l (positive above)."""
    return p[1] - (l[0] * p[0] + l[1])


def line_intersection(l1: Line, l2: Line):
    """Exact intersection point, or None when the lines are parallel."""
    da = l1[0] - l2[0]
    if da == 0:
        return None
    x = (l2[1] - l1[1]) / da
    return Point(x, l1[0] * x + l1[1])


def dualize_line(l: Line) -> Point:
    """Line y = a*x + b maps to the point (a, -b)."""
    return Point(l[0], -l[1])


def dualize_point(p: Point) -> Line:
    """Point (px, py) maps to the line y = px*x - py."""
    return Line(p[0], -p[1])


def line_eval(l: Line, x):
    return l[0] * x + l[1]


@dataclass
class Instance:
    """Input bundle: m points and n non-vertical lines, no incidences."""

    points: list
    lines: list

    @property
    def m(self):
        return len(self.points)

    @property
    def n(self):
        return len(self.lines)


@dataclass
class NormalizationReport:
    duplicate_lines: list = field(default_factory=list)  # (dropped_raw_idx, kept_raw_idx)
    line_index_map: dict = field(default_factory=dict)  # raw index -> normalized index
    shear: Fraction | None = None
    perturbed_points: list = field(default_factory=list)  # point indices
    epsilon: Fraction | None = None

    def summary(self):
        parts = []
        if self.duplicate_lines:
            parts.append(f"{len(self.duplicate_lines)} duplicate line(s) dropped")
        if self.shear is not None:
            parts.append(f"shear delta={self.shear}")
        if self.perturbed_points:
            parts.append(
                f"{len(self.perturbed_points)} point(s) perturbed, eps={self.epsilon}"
            )
        return "; ".join(parts) if parts else "clean"


REJECT = "reject"
PERTURB = "perturb"


def _choose_shear(slopes, n_checks=64):
    """Shear delta = 1/q keeping every sheared offset sign intact.

    Requires 1 + a*delta > 0 for every slope a, so q exceeds max |a|.
    """
    bound = 2
    for a in slopes:
        mag = -a if a < 0 else a
        while bound <= mag:
            bound *= 2
    return Fraction(1, bound)


def _apply_shear(points, lines, verticals, delta):
    new_lines = []
    for l in lines:
        denom = 1 + l.a * delta
        new_lines.append(Line(l.a / denom, l.b / denom))
    q = 1 / delta
    for c in verticals:
        new_lines.append(Line(q, -q * c))
    new_points = [Point(p.x + delta * p.y, p.y) for p in points]
    return new_points, new_lines


def normalize_instance(raw: Instance, policy: str = REJECT, verticals=()) -> tuple:
    """Repair an instance into general position; returns (Instance, report).

    Duplicate lines are dropped, vertical lines (given as x = c abscissae in
    ``verticals``) are removed by a global shear x' = x + delta*y, and points
    lying on a line are rejected or displaced by (+eps, +eps^2) depending on
    ``policy``.
    """
    if not raw.points and not raw.lines and not verticals:
        raise EmptyInput("no points and no lines")

    points = list(raw.points)
    lines = list(raw.lines)
    report = NormalizationReport()

    if verticals:
        delta = _choose_shear([l.a for l in lines])
        points, lines = _apply_shear(points, lines, verticals, delta)
        report.shear = delta

    seen = {}
    kept = []
    for idx, l in enumerate(lines):
        key = (l.a, l.b)
        if key in seen:
            report.duplicate_lines.append((idx, seen[key]))
            report.line_index_map[idx] = report.line_index_map[seen[key]]
        else:
            seen[key] = idx
            report.line_index_map[idx] = len(kept)
            kept.append(l)
    lines = kept

    on_pairs = []
    min_gap = None
    max_slope = Fraction(0)
    for l in lines:
        mag = -l.a if l.a < 0 else l.a
        if mag > max_slope:
            max_slope = mag
    for pi, p in enumerate(points):
        for li, l in enumerate(lines):
            off = line_offset(p, l)
            if off == 0:
                on_pairs.append((pi, li))
            else:
                mag = -off if off < 0 else off
                if min_gap is None or mag < min_gap:
                    min_gap = mag

    if on_pairs:
        if policy == REJECT:
            raise PointOnLine(on_pairs[0][0], on_pairs[0][1])
        if min_gap is None:
            min_gap = Fraction(1)
        eps = min(Fraction(1), min_gap) / (2 * (1 + max_slope))
        # eps must not equal any slope, or a point sitting on that line
        # would stay on it after the displacement
        while any(l.a == eps for l in lines):
            eps /= 2
        moved = set(pi for pi, _ in on_pairs)
        for pi in moved:
            p = points[pi]
            points[pi] = Point(p.x + eps, p.y + eps * eps)
        report.perturbed_points = sorted(moved)
        report.epsilon = eps
        for pi in moved:
            for li, l in enumerate(lines):
                if line_offset(points[pi], l) == 0:
                    raise PointOnLine(pi, li)

    return Instance(points, lines), report


def validate_instance(inst: Instance):
    """Check the Instance invariants; raises on violation."""
    seen = set()
    for i, l in enumerate(inst.lines):
        key = (l.a, l.b)
        if key in seen:
            raise ValueError(f"duplicate line at index {i}")
        seen.add(key)
    for pi, p in enumerate(inst.points):
        for li, l in enumerate(inst.lines):
            if side_of_line(p, l) == ON:
                raise PointOnLine(pi, li)
