"""Seeded instance generators, degeneracy-free by construction.

Points carry a dyadic offset with an odd numerator over a power of two
larger than any coordinate denominator the lines can produce, so no point
ever lies on a line and the instances pass normalization with zero repairs.
All coordinates are dyadic rationals, hence exactly representable as floats
for the benchmark path.
"""

import random
from fractions import Fraction

from .geom import Instance, Line, Point

F = Fraction

KINDS = ("uniform", "grid", "clustered")


def generate_instance(kind, n, m, seed):
    if kind == "uniform":
        return _uniform(n, m, seed)
    if kind == "grid":
        return _grid(n, m, seed)
    if kind == "clustered":
        return _clustered(n, m, seed)
    raise ValueError(f"unknown instance kind {kind!r}")


def _int_lines(rng, n, slope_span, icpt_span):
    lines = []
    seen = set()
    guard = 0
    while len(lines) < n:
        guard += 1
        a = rng.randint(-slope_span, slope_span)
        b = rng.randint(-icpt_span, icpt_span)
        if (a, b) not in seen:
            seen.add((a, b))
            lines.append(Line(F(a), F(b)))
        elif guard > 100 * n + 100:
            icpt_span *= 2
            guard = 0
    return lines


def _offset_points(rng, m, span, denom=1 << 17):
    """Integer-x points whose y has an odd numerator over ``denom``; such a
    point can never lie on a line with dyadic coefficients of coarser
    denominator."""
    pts = []
    seen = set()
    while len(pts) < m:
        x = rng.randint(-span, span)
        t = rng.randint(-span * 16, span * 16) * 2 + 1
        if (x, t) in seen:
            continue
        seen.add((x, t))
        pts.append(Point(F(x), F(t, denom) + rng.randint(-span, span)))
    return pts


def _uniform(n, m, seed):
    rng = random.Random(("uniform", n, m, seed).__str__())
    size = max(n, m, 1)
    slope_span = max(8, 4 * size)  # mostly distinct slopes
    icpt_span = max(16, 8 * size)
    lines = _int_lines(rng, n, slope_span, icpt_span)
    pts = _offset_points(rng, m, max(8, size))
    return Instance(pts, lines)


GRID_SLOPES = (
    (0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 3), (-1, 3), (3, 1), (-3, 1),
)


def _grid(n, m, seed):
    """Lines in a few slope classes sweeping a square grid region, points at
    jittered grid cells; drives the output complexity toward the
    many-incidences regime."""
    rng = random.Random(("grid", n, m, seed).__str__())
    g = max(2, int(round(max(n, m) ** 0.5)))
    lines = []
    seen = set()
    jitter = 0
    while len(lines) < n:
        p, q = GRID_SLOPES[len(lines) % len(GRID_SLOPES)]
        # integer base intercept keeping the line inside the grid window
        b0 = rng.randint(-(abs(p) * g) // q - g, g + (abs(p) * g) // q)
        jitter += 1
        a = F(p, q)
        b = F(b0) + F(jitter, 1 << 12)
        if (a, b) not in seen:
            seen.add((a, b))
            lines.append(Line(a, b))
    pts = []
    seen_cells = set()
    while len(pts) < m:
        i = rng.randint(0, g - 1)
        j = rng.randint(0, g - 1)
        t = rng.randint(0, 4 * g) * 2 + 1
        if (i, j, t) in seen_cells:
            continue
        seen_cells.add((i, j, t))
        # x has denominator 2, slopes have odd denominators, line intercepts
        # denominator 2^12: an odd /2^17 y-offset can never satisfy equality
        pts.append(Point(F(2 * i + 1, 2), F(j) + F(t, 1 << 17)))
    return Instance(pts, lines)


def _clustered(n, m, seed):
    rng = random.Random(("clustered", n, m, seed).__str__())
    span = max(8, int(round(max(n, m) ** 0.5)) * 4)
    lines = _int_lines(rng, n, span, span * span)
    centers = [
        (rng.randint(-span * span, span * span), rng.randint(-span * span, span * span))
        for _ in range(max(1, int(round(m ** 0.5 / 2)) or 1))
    ]
    pts = []
    seen = set()
    while len(pts) < m:
        cx, cy = centers[rng.randrange(len(centers))]
        dx = rng.randint(-64, 64)
        t = rng.randint(-256, 256) * 2 + 1
        key = (cx, cy, dx, t)
        if key in seen:
            continue
        seen.add(key)
        pts.append(Point(F(cx) + F(dx, 64), F(cy) + F(t, 1 << 17)))
    return Instance(pts, lines)


def to_float_instance(inst):
    """Float copy for benchmark runs; exact for dyadic inputs."""
    return Instance(
        [Point(float(p.x), float(p.y)) for p in inst.points],
        [Line(float(l.a), float(l.b)) for l in inst.lines],
    )
