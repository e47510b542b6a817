from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from manyfaces.errors import EmptyInput, PointOnLine
from manyfaces.geom import (
    ABOVE,
    BELOW,
    ON,
    PERTURB,
    REJECT,
    Instance,
    Line,
    Point,
    dualize_line,
    dualize_point,
    line_intersection,
    normalize_instance,
    orient,
    side_of_line,
    validate_instance,
)

F = Fraction


def P(x, y):
    return Point(F(x), F(y))


def L(a, b):
    return Line(F(a), F(b))


rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == 0
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_orient_antisymmetric(ax, ay, bx, by, cx, cy):
    a, b, c = Point(ax, ay), Point(bx, by), Point(cx, cy)
    assert orient(a, b, c) == -orient(b, a, c)
    assert orient(a, b, c) == -orient(a, c, b)
    assert orient(a, b, c) == orient(b, c, a)


def test_side_of_line_examples():
    assert side_of_line(P(0, 1), L(0, 0)) == ABOVE
    assert side_of_line(P(1, 1), L(1, 0)) == ON
    assert side_of_line(P(2, 0), L(1, 1)) == BELOW


def test_line_intersection_examples():
    assert line_intersection(L(1, 0), L(-1, 2)) == P(1, 1)
    assert line_intersection(L(1, 0), L(1, 1)) is None
    assert line_intersection(L(2, 3), L(0, 3)) == P(0, 3)


def test_duality_examples():
    assert dualize_line(L(2, 3)) == P(2, -3)
    assert dualize_point(P(2, -3)) == L(2, 3)
    assert dualize_point(dualize_line(L(2, 3))) == L(2, 3)
    # order preservation on the spec's worked incidence
    p, l = P(1, 6), L(2, 3)
    assert side_of_line(p, l) == ABOVE
    assert side_of_line(dualize_line(l), dualize_point(p)) == ABOVE


@given(rationals, rationals, rationals, rationals)
def test_duality_preserves_sidedness(px, py, a, b):
    p = Point(px, py)
    l = Line(a, b)
    assert side_of_line(p, l) == side_of_line(dualize_line(l), dualize_point(p))


def test_normalize_drops_duplicates():
    inst = Instance([P(0, 1)], [L(1, 0), L(1, 0)])
    out, report = normalize_instance(inst)
    assert len(out.lines) == 1
    assert report.duplicate_lines == [(1, 0)]
    assert report.line_index_map == {0: 0, 1: 0}


def test_normalize_shears_vertical_lines():
    inst = Instance([P(0, 1)], [L(1, 0), L(-2, 5)])
    out, report = normalize_instance(inst, verticals=[F(3)])
    assert report.shear is not None
    assert len(out.lines) == 3
    slopes = [l.a for l in out.lines]
    assert len(set(slopes)) == 3
    validate_instance(out)
    # sidedness against the sheared copies of the original lines is preserved
    assert side_of_line(out.points[0], out.lines[0]) == side_of_line(P(0, 1), L(1, 0))
    assert side_of_line(out.points[0], out.lines[1]) == side_of_line(P(0, 1), L(-2, 5))


def test_normalize_rejects_point_on_line():
    inst = Instance([P(1, 1)], [L(1, 0)])
    with pytest.raises(PointOnLine) as err:
        normalize_instance(inst, policy=REJECT)
    assert err.value.point_index == 0
    assert err.value.line_index == 0


def test_normalize_perturbs_point_on_line():
    inst = Instance([P(1, 1), P(0, 5)], [L(1, 0), L(0, -3)])
    out, report = normalize_instance(inst, policy=PERTURB)
    assert report.perturbed_points == [0]
    assert report.epsilon is not None
    validate_instance(out)
    # the untouched point stays put, the moved one stays in its face
    assert out.points[1] == P(0, 5)
    assert side_of_line(out.points[0], out.lines[1]) == ABOVE


def test_normalize_empty_input():
    with pytest.raises(EmptyInput):
        normalize_instance(Instance([], []))


@given(
    st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6),
    st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6),
)
def test_normalize_output_always_valid(raw_points, raw_lines):
    inst = Instance(
        [Point(x, y) for x, y in raw_points],
        [Line(a, b) for a, b in raw_lines],
    )
    out, _ = normalize_instance(inst, policy=PERTURB)
    validate_instance(out)
