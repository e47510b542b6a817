"""Independent brute-force oracles the fast structures are checked against."""

from fractions import Fraction

from manyfaces.geom import Point, orient


def brute_hull(items, orientation=1):
    """Hull chain of (Point, payload) items by full rescan.

    orientation +1 = lower hull, -1 = upper.  x-ties collapse to the extreme
    point; collinear middle vertices are dropped.
    """
    s = orientation
    pts = sorted(items, key=lambda it: (it[0][0], s * it[0][1]))
    dedup = []
    for it in pts:
        if dedup and it[0][0] == dedup[-1][0][0]:
            continue
        dedup.append(it)
    hull = []
    for it in dedup:
        while len(hull) >= 2 and s * orient(hull[-2][0], hull[-1][0], it[0]) <= 0:
            hull.pop()
        hull.append(it)
    return hull


def brute_tangent(v1, v2, orientation=1):
    """Common tangent of two x-separated vertex lists, O(k^2) scan.

    For each candidate on the first chain, the tangent vertex on the second
    is the slope-extreme (ties toward smaller x); the candidate wins when its
    chain neighbors sit weakly on the convex side.  Returns (i, j).
    """
    s = orientation

    def tangent_to_second(u):
        best = 0
        for j in range(1, len(v2)):
            # j improves when it is strictly on the non-convex side of (u, best)
            if s * orient(u, v2[best][0], v2[j][0]) < 0:
                best = j
        return best

    for i, (u, _) in enumerate(v1):
        j = tangent_to_second(u)
        t = v2[j][0]
        if i + 1 < len(v1) and s * orient(u, t, v1[i + 1][0]) < 0:
            continue
        if i - 1 >= 0 and s * orient(u, t, v1[i - 1][0]) <= 0:
            continue
        return i, j
    raise AssertionError("no tangent found")


def brute_envelope_value(duals, x, orientation=1):
    """Envelope of the lines dual to the given points, evaluated at x."""
    vals = [pt[0] * x - pt[1] for pt, _ in duals]
    return max(vals) if orientation == 1 else min(vals)


def frac_points(coords, start_line=0):
    return [
        (Point(Fraction(x), Fraction(y)), start_line + i)
        for i, (x, y) in enumerate(coords)
    ]
