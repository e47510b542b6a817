"""Faces of the arrangement: canonical keys and extraction from envelope pairs.

A face is reported as the counterclockwise cycle of its bounding line
indices, each paired with the side of that line the cell lies on (+1 above,
-1 below); the side bit is needed because the bare index cycle is not
injective (all four cells of two crossing lines share the cycle (0,1)).
Junction k of the cycle sits between entries k and k+1 (cyclically); bounded
junctions carry a vertex, unbounded ones are marked in the mask.  The key is
the lexicographically minimal rotation of the (line, side) cycle, identical
across backends for the same arrangement cell.
"""

from dataclasses import dataclass
from functools import cached_property

from .chain import breakpoint_x, crossing_on_side
from .geom import Point


def canonical_rotation(cycle):
    """Index of the lexicographically minimal rotation of the cycle."""
    n = len(cycle)
    if n <= 1:
        return 0
    best = 0
    for i in range(1, n):
        for k in range(n):
            a = cycle[(i + k) % n]
            b = cycle[(best + k) % n]
            if a != b:
                if a < b:
                    best = i
                break
    return best


def canonical_face_key(cycle):
    """Rotation-minimal tuple of a cyclic sequence."""
    cycle = tuple(cycle)
    r = canonical_rotation(cycle)
    return cycle[r:] + cycle[:r]


@dataclass(frozen=True)
class Face:
    """An arrangement cell: CCW (line, side) cycle, vertices, infinity mask."""

    lines: tuple
    sides: tuple
    vertices: tuple
    mask: tuple

    @staticmethod
    def build(lines, sides, junctions):
        """Construct from a boundary cycle and per-junction vertices (None =
        open junction), rotated into canonical position."""
        pairs = tuple(zip(lines, sides))
        r = canonical_rotation(pairs)
        n = len(pairs)
        rot = lambda seq: tuple(seq[(r + k) % n] for k in range(n))
        rot_junctions = rot(junctions)
        return Face(
            rot(tuple(lines)),
            rot(tuple(sides)),
            tuple(v for v in rot_junctions if v is not None),
            tuple(v is None for v in rot_junctions),
        )

    @cached_property
    def key(self):
        return tuple(zip(self.lines, self.sides))

    @property
    def bounded(self):
        return not any(self.mask)

    @property
    def complexity(self):
        return len(self.lines)

    def junctions(self):
        """Per-junction vertices with None at unbounded junctions."""
        out = []
        it = iter(self.vertices)
        for open_ in self.mask:
            out.append(None if open_ else next(it))
        return out


PLANE_FACE = Face((), (), (), ())


def _piece_value(pt, x):
    """Value at x of the line dual to chain vertex pt."""
    return pt[0] * x - pt[1]


def _junction_breakpoints(items):
    """Vertices between consecutive envelope pieces of one chain."""
    out = []
    for k in range(len(items) - 1):
        u, v = items[k][0], items[k + 1][0]
        x = breakpoint_x(u, v)
        out.append(Point(x, _piece_value(u, x)))
    return out


def face_from_envelopes(below, above, x0):
    """The arrangement cell around abscissa x0 between two envelopes.

    ``below`` is the LOWER chain of the duals of the lines below the query
    point (their upper envelope bounds the face from below), ``above`` the
    UPPER chain of the duals of the lines above it.  Either side may be
    empty.  x0 must be an abscissa strictly inside the face, e.g. the query
    point's x.
    """
    if below.is_empty() and above.is_empty():
        return PLANE_FACE
    if above.is_empty():
        items = below.vertices()
        lines = [line for _, line in items]
        junctions = _junction_breakpoints(items) + [None]
        return Face.build(lines, [1] * len(lines), junctions)
    if below.is_empty():
        items = above.vertices()
        lines = [line for _, line in items]
        junctions = _junction_breakpoints(items) + [None]
        return Face.build(lines, [-1] * len(lines), junctions)

    left = crossing_on_side(below, above, x0, leftward=True)
    right = crossing_on_side(below, above, x0, leftward=False)
    il = left[1] if left else 0
    ir = right[1] if right else below.size - 1
    jl = left[2] if left else above.size - 1
    jr = right[2] if right else 0

    bottom = below.slice_range(il, ir + 1)
    top = above.slice_range(jr, jl + 1)
    lines = [line for _, line in bottom] + [line for _, line in top]
    sides = [1] * len(bottom) + [-1] * len(top)

    junctions = _junction_breakpoints(bottom)
    if right is None:
        junctions.append(None)
    else:
        x = right[0]
        junctions.append(Point(x, _piece_value(bottom[-1][0], x)))
    junctions.extend(_junction_breakpoints(top))
    if left is None:
        junctions.append(None)
    else:
        x = left[0]
        junctions.append(Point(x, _piece_value(bottom[0][0], x)))
    return Face.build(lines, sides, junctions)
