"""Plain-text instance files.

Format: a header ``lines N points M``, then N rows ``a b`` (slope,
intercept) and M rows ``x y``; every token is an exact rational, either an
integer or ``p/q``.
"""

from fractions import Fraction

from .errors import CountMismatch, ParseError
from .geom import Instance, Line, Point


def _rat(token, lineno):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {token!r}: {e}", lineno)


def parse_instance_text(text):
    rows = [
        (i + 1, row.strip())
        for i, row in enumerate(text.splitlines())
        if row.strip() and not row.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError("empty instance file", 1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "lines" or parts[2] != "points":
        raise ParseError(f"bad header {header!r}", lineno)
    try:
        n, m = int(parts[1]), int(parts[3])
    except ValueError:
        raise ParseError(f"bad counts in header {header!r}", lineno)
    body = rows[1:]
    if len(body) != n + m:
        raise CountMismatch(
            f"header announces {n} lines + {m} points, file has {len(body)} rows",
            lineno,
        )
    lines = []
    for lineno, row in body[:n]:
        parts = row.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'a b', got {row!r}", lineno)
        lines.append(Line(_rat(parts[0], lineno), _rat(parts[1], lineno)))
    points = []
    for lineno, row in body[n:]:
        parts = row.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'x y', got {row!r}", lineno)
        points.append(Point(_rat(parts[0], lineno), _rat(parts[1], lineno)))
    return Instance(points, lines)


def parse_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read())


def write_instance_text(inst):
    out = [f"lines {len(inst.lines)} points {len(inst.points)}"]
    for l in inst.lines:
        out.append(f"{l.a} {l.b}")
    for p in inst.points:
        out.append(f"{p.x} {p.y}")
    return "\n".join(out) + "\n"


def write_instance(inst, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_instance_text(inst))
