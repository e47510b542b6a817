import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bruteforce import brute_envelope_value, brute_hull, brute_tangent, frac_points
from manyfaces.chain import (
    LOWER,
    UPPER,
    HullChain,
    active_index,
    chain_value_at,
    common_tangent_separated,
    envelope_eval,
    inner_common_tangents,
    join_separated,
    merge_bounded_crossings,
    polyline_height,
)
from manyfaces.errors import DuplicateX, EmptyChain
from manyfaces.geom import Line, Point
from manyfaces.instrumentation import Counters

F = Fraction


def P(x, y):
    return Point(F(x), F(y))


def chain_of(coords, orientation=LOWER):
    return HullChain.from_sorted(frac_points(coords), orientation)


def test_from_sorted_examples():
    c = chain_of([(0, 0), (1, 1), (2, 2)])
    assert [pt for pt, _ in c.vertices()] == [P(0, 0), P(2, 2)]
    c = chain_of([(0, 0), (1, -1), (2, 0)])
    assert len(c.vertices()) == 3
    c = chain_of([(5, 7)])
    assert c.size == 1


def test_from_sorted_duplicate_x():
    with pytest.raises(DuplicateX):
        chain_of([(0, 0), (0, 1)])


def test_split_examples():
    c = chain_of([(0, 0), (2, 2)])
    l, r = c.split_at_x(F(1))
    assert [pt for pt, _ in l.vertices()] == [P(0, 0)]
    assert [pt for pt, _ in r.vertices()] == [P(2, 2)]
    l, r = c.split_at_x(F(-5))
    assert l.is_empty()
    assert r.size == 2
    # persistence: the original is untouched
    assert [pt for pt, _ in c.vertices()] == [P(0, 0), P(2, 2)]


def test_persistence_across_many_operations():
    c = chain_of([(0, 0), (1, -2), (3, -3), (6, -1), (9, 4)])
    before = c.vertices()
    for x in range(-2, 12):
        c.split_at_x(F(x))
    join_separated(c, chain_of([(20, 30), (25, 29)]))
    assert c.vertices() == before


def test_tangent_singletons():
    c1, c2 = chain_of([(0, 0)]), chain_of([(1, 1)])
    i, j, pair = common_tangent_separated(c1, c2)
    assert (i, j) == (0, 0)
    assert pair.t1[0] == P(0, 0) and pair.t2[0] == P(1, 1)


def test_tangent_frozen_example():
    # brute force over support pairs gives (2,0)-(5,5): the line to (4,4)
    # leaves (5,5) strictly below it, so (4,4) cannot be a tangent point
    c1 = chain_of([(0, 0), (1, -1), (2, 0)])
    c2 = chain_of([(3, 5), (4, 4), (5, 5)])
    bi, bj = brute_tangent(c1.vertices(), c2.vertices())
    assert (c1.vertices()[bi][0], c2.vertices()[bj][0]) == (P(2, 0), P(5, 5))
    i, j, _ = common_tangent_separated(c1, c2)
    assert (i, j) == (bi, bj)


def test_join_frozen_example():
    c1 = chain_of([(0, 0), (1, -1), (2, 0)])
    c2 = chain_of([(3, 5), (4, 4), (5, 5)])
    joined = join_separated(c1, c2)
    expect = brute_hull(c1.vertices() + c2.vertices())
    assert joined.vertices() == expect
    assert [pt for pt, _ in joined.vertices()] == [P(0, 0), P(1, -1), P(2, 0), P(5, 5)]
    # identity on empty
    assert join_separated(c1, HullChain.empty()).vertices() == c1.vertices()


def _random_chain(rng, xs, orientation, max_y=50):
    pts = [(x, rng.randint(-max_y, max_y)) for x in xs]
    hull = brute_hull(frac_points(pts), orientation)
    return HullChain(
        HullChain.from_sorted(hull, orientation).root, orientation
    )


@pytest.mark.parametrize("orientation", [LOWER, UPPER])
def test_tangent_matches_brute_force_random(orientation):
    rng = random.Random(7 + orientation)
    for _ in range(200):
        k1 = rng.randint(1, 24)
        k2 = rng.randint(1, 24)
        xs = rng.sample(range(-200, 200), k1 + k2)
        xs.sort()
        c1 = _random_chain(rng, xs[:k1], orientation)
        c2 = _random_chain(rng, xs[k1:], orientation)
        i, j, _ = common_tangent_separated(c1, c2)
        bi, bj = brute_tangent(c1.vertices(), c2.vertices(), orientation)
        assert (i, j) == (bi, bj)


@pytest.mark.parametrize("orientation", [LOWER, UPPER])
def test_join_matches_brute_force_random(orientation):
    rng = random.Random(11 + orientation)
    for _ in range(200):
        k1 = rng.randint(1, 30)
        k2 = rng.randint(1, 30)
        xs = rng.sample(range(-300, 300), k1 + k2)
        xs.sort()
        c1 = _random_chain(rng, xs[:k1], orientation)
        c2 = _random_chain(rng, xs[k1:], orientation)
        joined = join_separated(c1, c2)
        joined.assert_valid()
        assert joined.vertices() == brute_hull(
            c1.vertices() + c2.vertices(), orientation
        )


def test_envelope_eval_examples():
    c = chain_of([(2, -3)])  # dual of y = 2x + 3
    assert envelope_eval(c, F(1)) == 5
    c = HullChain.hull_of_sorted_loose(frac_points([(-1, 0), (1, 0)]), LOWER)
    assert envelope_eval(c, F(0)) == 0  # upper envelope of y=x, y=-x at 0
    with pytest.raises(EmptyChain):
        envelope_eval(HullChain.empty(), F(0))


@pytest.mark.parametrize("orientation", [LOWER, UPPER])
def test_envelope_eval_matches_direct_max(orientation):
    rng = random.Random(23 + orientation)
    for _ in range(50):
        k = rng.randint(1, 40)
        xs = rng.sample(range(-100, 100), k)
        xs.sort()
        duals = frac_points([(x, rng.randint(-60, 60)) for x in xs])
        c = HullChain.from_sorted(brute_hull(duals, orientation), orientation)
        for _ in range(20):
            x = F(rng.randint(-500, 500), rng.randint(1, 7))
            assert chain_value_at(c, x) == brute_envelope_value(
                duals, x, orientation
            )


def test_polyline_height_interpolates():
    c = chain_of([(0, 0), (2, -2), (6, 2)])
    assert polyline_height(c, F(1)) == F(-1)
    assert polyline_height(c, F(2)) == F(-2)
    assert polyline_height(c, F(4)) == F(0)


def _merge_case(rng, orientation):
    """Build a random valid merge instance from a random separator triangle.

    Separator = three dual lines; far chain from points beyond the envelope,
    near chain from points inside it.
    """
    s = orientation
    lines = []
    while len(lines) < 3:
        a, b = rng.randint(-6, 6), rng.randint(-30, 30)
        if all(a != la for la, _ in lines):
            lines.append((F(a), F(b)))

    def env(x):
        vals = [a * x + b for a, b in lines]
        return max(vals) if s == LOWER else min(vals)

    far, near = [], []
    taken = set()
    for _ in range(rng.randint(1, 26)):
        x = F(rng.randint(-40, 40))
        if x in taken:
            continue
        taken.add(x)
        off = F(rng.randint(1, 60))
        far.append((Point(x, env(x) + s * off), len(far)))
    for _ in range(rng.randint(1, 26)):
        x = F(rng.randint(-40, 40))
        if x in taken:
            continue
        taken.add(x)
        off = F(rng.randint(1, 60))
        near.append((Point(x, env(x) - s * off), 100 + len(near)))
    if not far or not near:
        return None
    ca = HullChain.from_sorted(brute_hull(far, s), s)
    cb = HullChain.from_sorted(brute_hull(near, s), s)
    return ca, cb, [Line(a, b) for a, b in lines], far, near


@pytest.mark.parametrize("orientation", [LOWER, UPPER])
def test_merge_bounded_crossings_random(orientation):
    rng = random.Random(37 + orientation)
    stats = Counters()
    runs = 0
    while runs < 300:
        case = _merge_case(rng, orientation)
        if case is None:
            continue
        runs += 1
        ca, cb, seps, far, near = case
        merged = merge_bounded_crossings(ca, cb, seps, stats=stats, check=True)
        merged.assert_valid()
        assert merged.vertices() == brute_hull(
            ca.vertices() + cb.vertices(), orientation
        )
    assert stats.max_crossings <= 4


def test_merge_trivial_cases():
    ca = chain_of([(0, 10), (5, 8)])
    stats = Counters()
    out = merge_bounded_crossings(ca, HullChain.empty(), [], stats=stats)
    assert out.vertices() == ca.vertices()
    # single near vertex below one separator line
    cb = chain_of([(2, -5)])
    sep = [Line(F(0), F(0))]
    out = merge_bounded_crossings(ca, cb, sep, stats=stats, check=True)
    assert out.vertices() == brute_hull(ca.vertices() + cb.vertices())
    assert stats.max_crossings == 0


def test_merge_with_two_crossings_counts_them():
    # separator envelope is the vee max(x, -x); the far chain dips to (0, 1/10)
    # just above the vee's bottom, and a near edge at height 4.9 crosses its
    # polyline twice
    sep = [Line(F(1), F(0)), Line(F(-1), F(0))]
    far = [
        (P(-6, F(13, 2)), 0),
        (P(0, F(1, 10)), 1),
        (P(6, F(13, 2)), 2),
    ]
    near = [(P(-5, F(49, 10)), 10), (P(5, F(49, 10)), 11)]
    ca = HullChain.from_sorted(brute_hull(far), LOWER)
    cb = HullChain.from_sorted(brute_hull(near), LOWER)
    stats = Counters()
    out = merge_bounded_crossings(ca, cb, sep, stats=stats, check=True)
    assert out.vertices() == brute_hull(far + near)
    assert stats.crossings_total == 2
    assert stats.max_crossings <= 4


def test_inner_common_tangents_two_singletons():
    # parallel lines y = x - 1 below and y = x + 1 above the origin: the face
    # is a slab, both tangents degenerate to the segment between the duals
    lower = chain_of([(1, 1)], LOWER)
    upper = chain_of([(1, -1)], UPPER)
    res = inner_common_tangents(upper, lower, F(0))
    assert res.open_left and res.open_right
    assert res.left.t1[0] == P(1, 1) and res.left.t2[0] == P(1, -1)
    assert res.right.t1[0] == P(1, 1) and res.right.t2[0] == P(1, -1)
    assert [pt for pt, _ in res.lower_portion.vertices()] == [P(1, 1)]
    assert [pt for pt, _ in res.upper_portion.vertices()] == [P(1, -1)]


def test_inner_common_tangents_triangle_instance():
    # lines y=x, y=-x below the point (0,1); line y=3 above it
    lower = HullChain.hull_of_sorted_loose(frac_points([(-1, 0), (1, 0)]), LOWER)
    upper = chain_of([(0, -3)], UPPER)
    res = inner_common_tangents(upper, lower, F(0))
    assert not res.open_left and not res.open_right
    # left tangent dualizes the face vertex (-3,3); right the vertex (3,3)
    assert res.left.t1[0] == P(-1, 0) and res.left.t2[0] == P(0, -3)
    assert res.right.t1[0] == P(1, 0) and res.right.t2[0] == P(0, -3)
    assert res.left_cross[0] == F(-3)
    assert res.right_cross[0] == F(3)


def test_inner_common_tangents_empty_side():
    lower = chain_of([(0, 0), (2, -1)], LOWER)
    with pytest.raises(EmptyChain):
        inner_common_tangents(HullChain.empty(UPPER), HullChain.empty(LOWER), F(0))
    res = inner_common_tangents(HullChain.empty(UPPER), lower, F(0))
    assert res.left is None and res.right is None
    assert res.open_left and res.open_right
    assert res.lower_portion.vertices() == lower.vertices()
