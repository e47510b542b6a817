"""Deterministic SVG rendering of an instance and its non-empty faces."""

from fractions import Fraction

WIDTH = 800
HEIGHT = 800
PAD = 0.08


def _viewport(inst, faceset):
    xs, ys = [], []
    for p in inst.points:
        xs.append(float(p.x))
        ys.append(float(p.y))
    if faceset is not None:
        for face in faceset.faces.values():
            for v in face.vertices:
                xs.append(float(v[0]))
                ys.append(float(v[1]))
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    side = max(x1 - x0, y1 - y0, 1.0)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = side * (0.5 + PAD)
    return cx - half, cx + half, cy - half, cy + half


def _clip_halfplane(poly, a, b, side):
    """Clip polygon to side*(y - a*x - b) >= 0."""
    out = []
    n = len(poly)
    for i in range(n):
        px, py = poly[i]
        qx, qy = poly[(i + 1) % n]
        dp = side * (py - (a * px + b))
        dq = side * (qy - (a * qx + b))
        if dp >= 0:
            out.append((px, py))
        if (dp > 0 > dq) or (dp < 0 < dq):
            t = dp / (dp - dq)
            out.append((px + t * (qx - px), py + t * (qy - py)))
    return out


def _face_polygon(face, lines, viewport):
    x0, x1, y0, y1 = viewport
    poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for li, side in zip(face.lines, face.sides):
        l = lines[li]
        poly = _clip_halfplane(poly, float(l.a), float(l.b), side)
        if len(poly) < 3:
            return []
    return poly


def _color(key):
    h = hash(key) & 0xFFFFFFFF
    return f"hsl({h % 360},60%,{55 + (h >> 9) % 25}%)"


def render_svg(inst, faceset, path=None):
    """SVG with every line, input point, and non-empty face filled.

    Unbounded faces are clipped to the viewport.  Output bytes depend only
    on the inputs.
    """
    x0, x1, y0, y1 = _viewport(inst, faceset)
    sx = WIDTH / (x1 - x0)
    sy = HEIGHT / (y1 - y0)

    def tx(x):
        return (x - x0) * sx

    def ty(y):
        return HEIGHT - (y - y0) * sy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if faceset is not None:
        for key in sorted(faceset.faces):
            face = faceset.faces[key]
            poly = _face_polygon(face, inst.lines, (x0, x1, y0, y1))
            if len(poly) < 3:
                continue
            pts = " ".join(f"{tx(px):.3f},{ty(py):.3f}" for px, py in poly)
            parts.append(
                f'<polygon points="{pts}" fill="{_color(key)}" '
                f'fill-opacity="0.55" stroke="none"/>'
            )
    for i, l in enumerate(inst.lines):
        a, b = float(l.a), float(l.b)
        p1 = (x0, a * x0 + b)
        p2 = (x1, a * x1 + b)
        parts.append(
            f'<line x1="{tx(p1[0]):.3f}" y1="{ty(p1[1]):.3f}" '
            f'x2="{tx(p2[0]):.3f}" y2="{ty(p2[1]):.3f}" '
            f'stroke="black" stroke-width="1"/>'
        )
    for p in inst.points:
        parts.append(
            f'<circle cx="{tx(float(p.x)):.3f}" cy="{ty(float(p.y)):.3f}" '
            f'r="3" fill="crimson"/>'
        )
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return svg
