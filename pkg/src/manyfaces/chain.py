"""Persistent x-monotone convex chains with split, tangent, and merge operations.

A chain stores dual points in strictly increasing x order, strictly convex in
the tagged orientation, inside a persistent treap with path copying: every
handle stays valid forever, and split/join produce new versions in O(log)
without touching the originals.

A LOWER chain is a lower hull; read through duality it represents the upper
envelope of the lines dual to its vertices.  UPPER is the mirror image.
"""

from dataclasses import dataclass

from .errors import DuplicateX, EmptyChain, PreconditionViolated
from .geom import orient

LOWER = 1
UPPER = -1

LOWER_COMMON = "lower_common"
UPPER_COMMON = "upper_common"
INNER_PAIR = "inner_pair"


@dataclass(frozen=True)
class TangentPair:
    t1: tuple  # (Point, payload)
    t2: tuple
    kind: str


class _Node:
    __slots__ = ("left", "right", "pt", "line", "prio", "size", "first", "last")

    def __init__(self, left, pt, line, prio, right):
        self.left = left
        self.right = right
        self.pt = pt
        self.line = line
        self.prio = prio
        self.size = 1 + (left.size if left else 0) + (right.size if right else 0)
        self.first = left.first if left else (pt, line)
        self.last = right.last if right else (pt, line)


def _prio(pt, line):
    return hash((pt[0], pt[1], line)) * 0x9E3779B97F4A7C15 & 0xFFFFFFFFFFFFFFFF


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio >= b.prio:
        return _Node(a.left, a.pt, a.line, a.prio, _merge(a.right, b))
    return _Node(_merge(a, b.left), b.pt, b.line, b.prio, b.right)


def _split_leq_x(node, x):
    """(keys <= x, keys > x)."""
    if node is None:
        return None, None
    if node.pt[0] <= x:
        l, r = _split_leq_x(node.right, x)
        return _Node(node.left, node.pt, node.line, node.prio, l), r
    l, r = _split_leq_x(node.left, x)
    return l, _Node(r, node.pt, node.line, node.prio, node.right)


def _split_index(node, k):
    """(first k vertices, the rest)."""
    if node is None:
        return None, None
    lsize = node.left.size if node.left else 0
    if k <= lsize:
        l, r = _split_index(node.left, k)
        return l, _Node(r, node.pt, node.line, node.prio, node.right)
    l, r = _split_index(node.right, k - lsize - 1)
    return _Node(node.left, node.pt, node.line, node.prio, l), r


def _get(node, i):
    while True:
        lsize = node.left.size if node.left else 0
        if i < lsize:
            node = node.left
        elif i == lsize:
            return node.pt, node.line
        else:
            i -= lsize + 1
            node = node.right


def _collect(node, out):
    stack = []
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.left
        node = stack.pop()
        out.append((node.pt, node.line))
        node = node.right


def _slice_collect(node, i, j, base, out):
    """Append items with global in-order positions in [i, j)."""
    while node is not None:
        lsize = node.left.size if node.left else 0
        lo = base
        hi = base + lsize + 1 + (node.right.size if node.right else 0)
        if j <= lo or i >= hi:
            return
        if i <= lo and hi <= j:
            _collect(node, out)
            return
        _slice_collect(node.left, i, j, base, out)
        pos = base + lsize
        if i <= pos < j:
            out.append((node.pt, node.line))
        base = pos + 1
        node = node.right


def _build(items):
    """Treap from in-order items in O(k): stack of the right spine."""
    spine = []  # (pt, line, prio, left_subtree), strictly decreasing prio
    for pt, line in items:
        prio = _prio(pt, line)
        left = None
        while spine and spine[-1][2] < prio:
            t_pt, t_line, t_prio, t_left = spine.pop()
            left = _Node(t_left, t_pt, t_line, t_prio, left)
        spine.append((pt, line, prio, left))
    root = None
    while spine:
        t_pt, t_line, t_prio, t_left = spine.pop()
        root = _Node(t_left, t_pt, t_line, t_prio, root)
    return root


def hull_scan_loose(items, orientation):
    """Hull vertex list of x-sorted items; x-ties collapse to the extreme."""
    s = orientation
    hull = []
    for pt, line in items:
        if hull and pt[0] == hull[-1][0][0]:
            if s * (pt[1] - hull[-1][0][1]) < 0:
                hull.pop()
            else:
                continue
        while len(hull) >= 2 and s * orient(hull[-2][0], hull[-1][0], pt) <= 0:
            hull.pop()
        hull.append((pt, line))
    return hull


class ListChain:
    """Read-only chain over a plain vertex list; same query surface as
    HullChain, O(1) access.  Used where building a tree would be waste."""

    __slots__ = ("items", "orientation")

    def __init__(self, items, orientation):
        self.items = items
        self.orientation = orientation

    @property
    def size(self):
        return len(self.items)

    def is_empty(self):
        return not self.items

    @property
    def first(self):
        if not self.items:
            raise EmptyChain("empty chain has no first vertex")
        return self.items[0]

    @property
    def last(self):
        if not self.items:
            raise EmptyChain("empty chain has no last vertex")
        return self.items[-1]

    def get(self, i):
        return self.items[i]

    def vertices(self):
        return list(self.items)

    def slice_range(self, i, j):
        return self.items[i:j]

    def split_at_x(self, x0):
        k = self.first_index_with_x_geq(x0)
        if k < len(self.items) and self.items[k][0][0] == x0:
            k += 1
        return (
            ListChain(self.items[:k], self.orientation),
            ListChain(self.items[k:], self.orientation),
        )

    def split_at_index(self, k):
        return (
            ListChain(self.items[:k], self.orientation),
            ListChain(self.items[k:], self.orientation),
        )

    def first_index_with_x_geq(self, x):
        lo, hi = 0, len(self.items)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.items[mid][0][0] >= x:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def as_tree(self):
        return HullChain(_build(self.items), self.orientation)


class HullChain:
    """Immutable convex chain; every operation returns a new chain."""

    __slots__ = ("root", "orientation")

    def __init__(self, root, orientation):
        self.root = root
        self.orientation = orientation

    @classmethod
    def empty(cls, orientation=LOWER):
        return cls(None, orientation)

    @classmethod
    def from_sorted(cls, items, orientation=LOWER):
        """Hull of points already strictly sorted by x; linear scan.

        ``items`` is a sequence of (Point, payload).  Raises DuplicateX when
        two points share an abscissa; collinear middle points are dropped.
        """
        s = orientation
        hull = []
        prev_x = None
        for pt, line in items:
            if prev_x is not None and pt[0] == prev_x:
                raise DuplicateX(f"duplicate abscissa {pt[0]}")
            prev_x = pt[0]
            while len(hull) >= 2 and s * orient(hull[-2][0], hull[-1][0], pt) <= 0:
                hull.pop()
            hull.append((pt, line))
        return cls(_build(hull), orientation)

    @classmethod
    def hull_of_sorted_loose(cls, items, orientation=LOWER):
        """Like from_sorted but collapses x-ties, keeping the extreme point."""
        return cls(_build(hull_scan_loose(items, orientation)), orientation)

    @property
    def size(self):
        return self.root.size if self.root else 0

    def is_empty(self):
        return self.root is None

    @property
    def first(self):
        if self.root is None:
            raise EmptyChain("empty chain has no first vertex")
        return self.root.first

    @property
    def last(self):
        if self.root is None:
            raise EmptyChain("empty chain has no last vertex")
        return self.root.last

    def get(self, i):
        if i < 0 or i >= self.size:
            raise IndexError(i)
        return _get(self.root, i)

    def vertices(self):
        out = []
        _collect(self.root, out)
        return out

    def split_at_x(self, x0):
        l, r = _split_leq_x(self.root, x0)
        return HullChain(l, self.orientation), HullChain(r, self.orientation)

    def split_at_index(self, k):
        l, r = _split_index(self.root, k)
        return HullChain(l, self.orientation), HullChain(r, self.orientation)

    def concat(self, other):
        """Structural concatenation; caller guarantees order and convexity."""
        return HullChain(_merge(self.root, other.root), self.orientation)

    def slice_range(self, i, j):
        """Vertices with indices in [i, j), by traversal; no node copying."""
        out = []
        if j <= i:
            return out
        _slice_collect(self.root, i, j, 0, out)
        return out

    def first_index_with_x_geq(self, x):
        """Smallest vertex index whose abscissa is >= x (== size if none)."""
        node = self.root
        base = 0
        ans = self.size
        while node is not None:
            if node.pt[0] >= x:
                ans = base + (node.left.size if node.left else 0)
                node = node.left
            else:
                base += (node.left.size if node.left else 0) + 1
                node = node.right
        return ans

    def as_tree(self):
        return self

    def assert_valid(self):
        vs = self.vertices()
        s = self.orientation
        for k in range(1, len(vs)):
            assert vs[k][0][0] > vs[k - 1][0][0], "x not strictly increasing"
        for k in range(2, len(vs)):
            assert s * orient(vs[k - 2][0], vs[k - 1][0], vs[k][0]) > 0, (
                "chain not strictly convex"
            )
        return True


# ---------------------------------------------------------------------------
# envelope evaluation: a chain vertex (a, -b) stands for the line y = a*x + b
# ---------------------------------------------------------------------------


def _bp_cmp(u, v, x):
    """Sign of (breakpoint(u,v) - x); the breakpoint sits at the edge slope."""
    d = (v[1] - u[1]) - x * (v[0] - u[0])
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def breakpoint_x(u, v):
    """Abscissa where the lines dual to u and v swap on the envelope."""
    return (v[1] - u[1]) / (v[0] - u[0])


def active_index(chain, x):
    """Index of the envelope piece (a chain vertex) active at abscissa x.

    Breakpoints increase along LOWER chains and decrease along UPPER chains;
    at an exact breakpoint either neighbor evaluates equally.
    """
    n = chain.size
    if n == 0:
        raise EmptyChain("cannot evaluate empty chain")
    s = chain.orientation
    lo, hi = 0, n - 1
    while lo < hi:
        mid = (lo + hi) // 2
        u = chain.get(mid)[0]
        v = chain.get(mid + 1)[0]
        if s * _bp_cmp(u, v, x) >= 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def chain_value_at(chain, x):
    """Envelope value at x: the extreme of a*x + b over the chain's lines."""
    pt, _ = chain.get(active_index(chain, x))
    return pt[0] * x - pt[1]


def envelope_eval(chain, x):
    if chain.is_empty():
        raise EmptyChain("cannot evaluate empty chain")
    return chain_value_at(chain, x)


def polyline_height(chain, x):
    """Height of the chain polyline at x; x must lie within the vertex span."""
    n = chain.size
    i = chain.first_index_with_x_geq(x)
    if i >= n:
        raise ValueError("abscissa beyond chain span")
    p = chain.get(i)[0]
    if p[0] == x:
        return p[1]
    if i == 0:
        raise ValueError("abscissa before chain span")
    q = chain.get(i - 1)[0]
    return q[1] + (x - q[0]) * (p[1] - q[1]) / (p[0] - q[0])


# ---------------------------------------------------------------------------
# tangents
# ---------------------------------------------------------------------------


def _tangent_from_point(u, chain):
    """Tangent vertex of ``chain`` seen from point u strictly to its left.

    For LOWER chains: the leftmost vertex minimizing the slope from u.
    """
    s = chain.orientation
    lo, hi = 0, chain.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        vj = chain.get(mid)[0]
        vj1 = chain.get(mid + 1)[0]
        if s * orient(u, vj, vj1) >= 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def common_tangent_separated(c1, c2):
    """Common tangent of two same-orientation chains separated in x.

    Every vertex of c1 must lie strictly left of every vertex of c2.  Returns
    (i, j, TangentPair).  Double binary search with the local support test:
    a line through a vertex whose two incident edges stay on the convex side
    supports the whole chain.  Ties resolve toward smaller x on both chains.
    """
    if c1.is_empty() or c2.is_empty():
        raise EmptyChain("tangent of empty chain")
    if c1.last[0][0] >= c2.first[0][0]:
        raise PreconditionViolated("chains are not x-separated")
    s = c1.orientation
    n1 = c1.size
    lo, hi = 0, n1 - 1
    while True:
        i = (lo + hi) // 2
        u = c1.get(i)[0]
        j = _tangent_from_point(u, c2)
        t = c2.get(j)[0]
        if i + 1 < n1 and s * orient(u, t, c1.get(i + 1)[0]) < 0:
            lo = i + 1
            continue
        if i - 1 >= 0 and s * orient(u, t, c1.get(i - 1)[0]) <= 0:
            hi = i - 1
            continue
        break
    kind = LOWER_COMMON if s == LOWER else UPPER_COMMON
    return i, j, TangentPair(c1.get(i), c2.get(j), kind)


def _strip_boundary_tie(c1, c2):
    """Drop the dominated vertex when the chains meet at an equal abscissa."""
    s = c1.orientation
    (p1, _), (p2, _) = c1.last, c2.first
    if p1[0] != p2[0]:
        return c1, c2
    if s * (p1[1] - p2[1]) <= 0:
        return c1, c2.split_at_index(1)[1]
    return c1.split_at_index(c1.size - 1)[0], c2


def join_separated(c1, c2, stats=None):
    """Hull of the union of two x-separated chains via one common tangent."""
    if c1.is_empty():
        return c2
    if c2.is_empty():
        return c1
    c1, c2 = _strip_boundary_tie(c1, c2)
    if c1.is_empty():
        return c2
    if c2.is_empty():
        return c1
    if stats is not None:
        stats.chain_ops += 1
    i, j, _ = common_tangent_separated(c1, c2)
    # the tangent tie-breaks toward smaller x on both chains; when the next
    # c2 vertex is collinear with the bridge, step over it to keep the spliced
    # chain strictly convex (a strict chain allows at most one such step)
    u = c1.get(i)[0]
    if j + 1 < c2.size:
        t, t_next = c2.get(j)[0], c2.get(j + 1)[0]
        if orient(u, t, t_next) == 0:
            j += 1
    left = c1.split_at_index(i + 1)[0]
    right = c2.split_at_index(j)[1]
    return left.concat(right)


# ---------------------------------------------------------------------------
# bounded-crossing merge
# ---------------------------------------------------------------------------


def _separator_envelope_vertices(lines, s):
    """Breakpoint abscissae of the extreme envelope of <= 3 lines.

    s=+1 takes the upper envelope (max), s=-1 the lower (min).
    """
    xs = []
    k = len(lines)
    for i in range(k):
        ai, bi = lines[i]
        for j in range(i + 1, k):
            aj, bj = lines[j]
            if ai == aj:
                continue
            x = (bj - bi) / (ai - aj)
            v = ai * x + bi
            if all(s * (v - (a * x + b)) >= 0 for a, b in lines):
                xs.append(x)
    return sorted(set(xs))


def _poly_g(chain, s, sa, sb, x):
    """s * (polyline(x) - segment_line(x)); positive on the chain's side."""
    return s * (polyline_height(chain, x) - (sa * x + sb))


def _zero_on_monotone(chain, s, sa, sb, xa, xb, falling):
    """Zero of g on [xa, xb] where g is monotone and changes sign.

    falling=True: g(xa) >= 0 > g(xb); falling=False mirrored.  The zero lies
    on a single polyline edge, solved exactly.
    """
    n = chain.size
    lo = chain.first_index_with_x_geq(xa)
    hi = chain.first_index_with_x_geq(xb)
    if hi < n and chain.get(hi)[0][0] == xb:
        hi += 1
    # vertex indices in [lo, hi) lie inside (xa, xb]; find the sign flip
    a, b = lo, hi - 1

    def gv(k):
        pt = chain.get(k)[0]
        return s * (pt[1] - (sa * pt[0] + sb))

    left_x, right_x = xa, xb
    if a <= b:
        if falling:
            # first vertex with gv < 0
            llo, lhi = a, b + 1
            while llo < lhi:
                mid = (llo + lhi) // 2
                if gv(mid) < 0:
                    lhi = mid
                else:
                    llo = mid + 1
            if llo <= b:
                right_x = chain.get(llo)[0][0]
            if llo - 1 >= a:
                left_x = chain.get(llo - 1)[0][0]
        else:
            # last vertex with gv < 0
            llo, lhi = a - 1, b
            while llo < lhi:
                mid = (llo + lhi + 1) // 2
                if gv(mid) < 0:
                    llo = mid
                else:
                    lhi = mid - 1
            if llo >= a:
                left_x = chain.get(llo)[0][0]
            if llo + 1 <= b:
                right_x = chain.get(llo + 1)[0][0]
    # the flip interval [left_x, right_x] spans one polyline edge
    k = chain.first_index_with_x_geq(right_x)
    if k >= n:
        k = n - 1
    if k == 0:
        k = 1
    q = chain.get(k - 1)[0]
    p = chain.get(k)[0]
    ea = (p[1] - q[1]) / (p[0] - q[0])
    eb = q[1] - ea * q[0]
    if ea == sa:
        return None  # parallel edge: a touch, not a strict crossing
    x = (sb - eb) / (ea - sa)
    if x < xa or x > xb:
        return None
    return x


def _segment_chain_crossings(p1, p2, chain, s):
    """Abscissae where segment p1->p2 strictly crosses the chain polyline."""
    if chain.is_empty():
        return []
    x1, x2 = p1[0], p2[0]
    cl, cr = chain.first[0][0], chain.last[0][0]
    wl = x1 if x1 > cl else cl
    wr = x2 if x2 < cr else cr
    if not wl < wr:
        return []
    sa = (p2[1] - p1[1]) / (x2 - x1)
    sb = p1[1] - sa * x1

    n = chain.size
    klo = chain.first_index_with_x_geq(wl)
    khi = chain.first_index_with_x_geq(wr)
    if khi >= n or chain.get(khi)[0][0] > wr:
        khi -= 1

    def gv(k):
        pt = chain.get(k)[0]
        return s * (pt[1] - (sa * pt[0] + sb))

    g_wl = _poly_g(chain, s, sa, sb, wl)
    g_wr = _poly_g(chain, s, sa, sb, wr)
    gmin, xmin = (g_wl, wl) if g_wl <= g_wr else (g_wr, wr)
    if klo <= khi:
        lo, hi = klo, khi
        while lo < hi:
            mid = (lo + hi) // 2
            if gv(mid + 1) >= gv(mid):
                hi = mid
            else:
                lo = mid + 1
        vpt = chain.get(lo)[0]
        gval = gv(lo)
        if gval < gmin:
            gmin, xmin = gval, vpt[0]
    if gmin >= 0:
        return []

    out = []
    if g_wl >= 0:
        x = _zero_on_monotone(chain, s, sa, sb, wl, xmin, falling=True)
        if x is not None:
            out.append(x)
    if g_wr >= 0:
        x = _zero_on_monotone(chain, s, sa, sb, xmin, wr, falling=False)
        if x is not None:
            out.append(x)
    return out


def merge_bounded_crossings(ca, cb, separator, stats=None, check=False):
    """Hull of the union of two chains whose polylines cross O(1) times.

    ``ca`` holds points beyond the separator envelope (built from the <= 3
    dual lines in ``separator``), ``cb`` points on the near side.  Crossings
    are located through the separator envelope's vertices, both chains are
    split into slabs at the crossing abscissae (plus span endpoints), the
    extreme portion of each slab is kept, and the portions are stitched back
    with common tangents.  The instrumented crossing count can never exceed 4
    while the separation precondition holds.
    """
    if ca.is_empty():
        return cb
    if cb.is_empty():
        return ca
    s = ca.orientation
    if check:
        _check_separation(ca, cb, separator, s)

    crossings = []
    if separator:
        env_xs = _separator_envelope_vertices(separator, s)
        edges = set()
        nb = cb.size
        for vx in env_xs:
            if vx <= cb.first[0][0] or vx >= cb.last[0][0]:
                continue
            lo = cb.first_index_with_x_geq(vx)
            if 0 < lo < nb:
                edges.add(lo - 1)
                if cb.get(lo)[0][0] == vx and lo + 1 < nb:
                    edges.add(lo)
        for j in sorted(edges):
            p1 = cb.get(j)[0]
            p2 = cb.get(j + 1)[0]
            crossings.extend(_segment_chain_crossings(p1, p2, ca, s))
    crossings = sorted(set(crossings))
    if stats is not None:
        stats.record_merge(len(crossings))
    if len(crossings) > 4 and not isinstance(crossings[0], float):
        # exact arithmetic leaves no excuse; float runs only log the excess
        raise PreconditionViolated(
            f"{len(crossings)} crossings found; separation precondition broken"
        )

    pieces = []
    rest_a, rest_b = ca, cb
    prev = None
    for b in crossings:
        part_a, rest_a = rest_a.split_at_x(b)
        part_b, rest_b = rest_b.split_at_x(b)
        pieces.extend(_slab_pieces(part_a, part_b, ca, cb, s, prev, b))
        prev = b
    pieces.extend(_slab_pieces(rest_a, rest_b, ca, cb, s, prev, None))

    out = HullChain.empty(s)
    for piece in pieces:
        if not piece.is_empty():
            out = join_separated(out, piece, stats)
    return out


def _slab_pieces(part_a, part_b, ca, cb, s, slab_lo, slab_hi):
    """x-ordered hull pieces contributed by one crossing-free slab.

    Within the slab the two polylines do not cross, so on the x-overlap of
    their spans one dominates: its portion is kept whole, the dominated
    portion keeps only its overhangs outside the overlap.
    """
    if part_a.is_empty():
        return [] if part_b.is_empty() else [part_b]
    if part_b.is_empty():
        return [part_a]
    ol = ca.first[0][0]
    bx = cb.first[0][0]
    if bx > ol:
        ol = bx
    orr = ca.last[0][0]
    bx = cb.last[0][0]
    if bx < orr:
        orr = bx
    if slab_lo is not None and ol < slab_lo:
        ol = slab_lo
    if slab_hi is not None and orr > slab_hi:
        orr = slab_hi
    if ol > orr:
        # the curves miss each other inside this slab
        return sorted(
            (part_a, part_b), key=lambda c: (c.first[0][0], c.last[0][0])
        )
    probe = (ol + orr) / 2
    ha = polyline_height(ca, probe)
    hb = polyline_height(cb, probe)
    if ha == hb and ol < orr:
        probe = (ol + 3 * orr) / 4
        ha = polyline_height(ca, probe)
        hb = polyline_height(cb, probe)
    a_low = s * (ha - hb) <= 0
    low_part = part_a if a_low else part_b
    high_part = part_b if a_low else part_a
    left_hang, rest = high_part.split_at_x(ol)
    if not left_hang.is_empty() and left_hang.last[0][0] == ol:
        left_hang = left_hang.split_at_index(left_hang.size - 1)[0]
    _, right_hang = high_part.split_at_x(orr)
    return [p for p in (left_hang, low_part, right_hang) if not p.is_empty()]


def _check_separation(ca, cb, separator, s):
    if not separator:
        raise PreconditionViolated("nonempty far chain with no separator")

    def env(x):
        vals = [a * x + b for a, b in separator]
        return max(vals) if s == LOWER else min(vals)

    for pt, _ in ca.vertices():
        if not s * (pt[1] - env(pt[0])) > 0:
            raise PreconditionViolated(f"far-side vertex {pt} not beyond separator")
    for pt, _ in cb.vertices():
        if not s * (pt[1] - env(pt[0])) < 0:
            raise PreconditionViolated(f"near-side vertex {pt} not inside separator")


# ---------------------------------------------------------------------------
# crossings between the two envelopes of one point (inner common tangents)
# ---------------------------------------------------------------------------


def envelope_crossing_exists(below, above, leftward):
    """Whether the upper envelope (from ``below``) meets the lower envelope
    (from ``above``) toward the given infinity.  Exact asymptotic slope test.
    """
    if leftward:
        su, bu = below.first[0][0], -below.first[0][1]
        sv, bv = above.last[0][0], -above.last[0][1]
        if su != sv:
            return su < sv
    else:
        su, bu = below.last[0][0], -below.last[0][1]
        sv, bv = above.first[0][0], -above.first[0][1]
        if su != sv:
            return su > sv
    if bu == bv:
        raise PreconditionViolated("identical line on both envelope sides")
    return bu > bv


def _env_diff(below, above, x):
    return chain_value_at(below, x) - chain_value_at(above, x)


def _below_breakpoint(below, i):
    """Breakpoint between pieces i and i+1 of the below chain."""
    u = below.get(i)[0]
    v = below.get(i + 1)[0]
    return breakpoint_x(u, v)


def crossing_on_side(below, above, x0, leftward):
    """Exact crossing of the two envelopes on one side of x0.

    The difference u - v is convex and negative at x0.  Returns
    (x, below_piece, above_piece) or None when the face is unbounded on that
    side.
    """
    if not envelope_crossing_exists(below, above, leftward):
        return None
    nb = below.size
    i0 = active_index(below, x0)
    if leftward:
        # first below-piece i (i <= i0) whose right breakpoint has diff < 0
        lo, hi = 0, i0
        while lo < hi:
            mid = (lo + hi) // 2
            bp = _below_breakpoint(below, mid)
            if bp > x0:
                bp = x0
            if _env_diff(below, above, bp) < 0:
                hi = mid
            else:
                lo = mid + 1
        piece = lo
        span_lo = _below_breakpoint(below, piece - 1) if piece > 0 else None
        span_hi = _below_breakpoint(below, piece) if piece < nb - 1 else x0
        if span_hi > x0:
            span_hi = x0
    else:
        # last below-piece i (i >= i0) whose left breakpoint has diff < 0
        lo, hi = i0, nb - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            bp = _below_breakpoint(below, mid - 1)
            if bp < x0:
                bp = x0
            if _env_diff(below, above, bp) < 0:
                lo = mid
            else:
                hi = mid - 1
        piece = lo
        span_lo = _below_breakpoint(below, piece - 1) if piece > 0 else x0
        if span_lo < x0:
            span_lo = x0
        span_hi = _below_breakpoint(below, piece) if piece < nb - 1 else None

    a_pt = below.get(piece)[0]
    hit = _line_envelope_crossing(
        above, a_pt[0], -a_pt[1], x0, leftward, span_lo, span_hi
    )
    if hit is None:
        raise PreconditionViolated("envelope crossing vanished during search")
    x, j = hit
    return x, piece, j


def _line_envelope_crossing(above, la, lb, x0, leftward, span_lo, span_hi):
    """Zero of h(x) = la*x + lb - v(x) on one side of x0, within a piece span.

    h is convex and negative just inside the span on the x0 side; its zero on
    the requested side is the envelope crossing.
    """

    def h(x):
        return la * x + lb - chain_value_at(above, x)

    n = above.size
    j0 = active_index(above, x0 if span_lo is None or span_hi is None else
                      (span_lo if leftward else span_hi))
    # refine: the above-piece active at the search start
    start = span_hi if leftward else span_lo
    if start is not None:
        j0 = active_index(above, start)
    if leftward:
        # pieces to the left have larger indices on an UPPER chain
        lo, hi = j0, n - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            u = above.get(mid - 1)[0]
            v = above.get(mid)[0]
            bp = breakpoint_x(u, v)
            if span_lo is not None and bp < span_lo:
                bp = span_lo
            if span_hi is not None and bp > span_hi:
                bp = span_hi
            if h(bp) < 0:
                lo = mid
            else:
                hi = mid - 1
        j = lo
    else:
        lo, hi = 0, j0
        while lo < hi:
            mid = (lo + hi) // 2
            u = above.get(mid)[0]
            v = above.get(mid + 1)[0]
            bp = breakpoint_x(u, v)
            if span_lo is not None and bp < span_lo:
                bp = span_lo
            if span_hi is not None and bp > span_hi:
                bp = span_hi
            if h(bp) < 0:
                hi = mid
            else:
                lo = mid + 1
        j = lo
    v_pt = above.get(j)[0]
    va, vb = v_pt[0], -v_pt[1]
    if va == la:
        return None
    x = (vb - lb) / (la - va)
    return x, j


@dataclass(frozen=True)
class InnerTangents:
    """Inner tangents and the face boundary portions they delimit.

    ``left``/``right`` are TangentPairs (t1 on the lower chain, t2 on the
    upper); on an unbounded side the pair degenerates to the limit vertices
    and the matching open flag is set.  When one input chain is empty the
    pairs are None and the surviving chain is the whole boundary.
    ``lower_portion``/``upper_portion`` are the chain pieces between the
    tangents, in chain order.
    """

    left: TangentPair | None
    right: TangentPair | None
    open_left: bool
    open_right: bool
    lower_portion: HullChain
    upper_portion: HullChain
    left_cross: tuple | None  # (x, below_piece, above_piece)
    right_cross: tuple | None


def inner_common_tangents(upper, lower, x0):
    """Inner tangent pairs between the hull chains on the two sides of a line.

    ``lower`` is the LOWER chain of the dual points above the line, ``upper``
    the UPPER chain of the points below it; x0 is an abscissa strictly
    between the two envelopes (the dual line's slope for a face query).
    """
    if lower.is_empty() and upper.is_empty():
        raise EmptyChain("no lines on either side")
    if lower.is_empty() or upper.is_empty():
        full = lower if upper.is_empty() else upper
        lo = full if upper.is_empty() else HullChain.empty(LOWER)
        up = full if lower.is_empty() else HullChain.empty(UPPER)
        return InnerTangents(None, None, True, True, lo, up, None, None)
    hits = []
    for leftward in (True, False):
        hits.append(crossing_on_side(lower, upper, x0, leftward))
    left_hit, right_hit = hits
    nl, nu = lower.size, upper.size
    il = left_hit[1] if left_hit else 0
    ir = right_hit[1] if right_hit else nl - 1
    # upper-chain indices run right to left along the lower envelope
    jl = left_hit[2] if left_hit else nu - 1
    jr = right_hit[2] if right_hit else 0
    left_pair = TangentPair(lower.get(il), upper.get(jl), INNER_PAIR)
    right_pair = TangentPair(lower.get(ir), upper.get(jr), INNER_PAIR)
    lower_portion = lower.split_at_index(ir + 1)[0].split_at_index(il)[1]
    upper_portion = upper.split_at_index(jl + 1)[0].split_at_index(jr)[1]
    return InnerTangents(
        left_pair,
        right_pair,
        left_hit is None,
        right_hit is None,
        lower_portion,
        upper_portion,
        left_hit,
        right_hit,
    )
