import pytest
from hypothesis import given
from hypothesis import strategies as st

from trimtrees.errors import NotExactError, SymbolError
from trimtrees.points import (
    BINARY, AlphabetSpec, Point, ZERO, eventually_agrees, patch_point, point_from_json,
    point_value,
)
from trimtrees.seq import UPSeq, combine, support_bound

from conftest import alphabets, nodes_for, points_over


def test_patch_override_and_fallthrough():
    p = Point.make(patch={3: 1})
    assert point_value(p, 3) == 1
    assert point_value(p, 4) == 0


def test_period_read():
    assert point_value(Point.make(period=(0, 1)), 7) == 1


def test_patch_point_definition():
    assert patch_point(ZERO, (1, 1)).values(5) == [1, 1, 0, 0, 0]
    p = Point.make(period=(0, 1))
    assert patch_point(p, ()) == p


def test_redundant_patch_is_canonicalized_away():
    q = patch_point(Point.make(patch={0: 1}), (0,))
    assert q == ZERO
    assert q.patch == ()


def test_patch_point_rejects_bad_symbol():
    with pytest.raises(SymbolError):
        patch_point(ZERO, (2,), BINARY)


def test_alphabet_needs_two_symbols():
    with pytest.raises(ValueError):
        AlphabetSpec.of((2, 1), (3,))


def test_eventually_agrees_examples():
    assert eventually_agrees(ZERO, Point.make(patch={5: 1})) == (True, 6)
    assert eventually_agrees(ZERO, Point.constant(1)) == (False, None)
    # periods 2 and 3: the difference pattern repeats every 6 coordinates
    ok, _ = eventually_agrees(Point.make(period=(0, 1)), Point.make(period=(0, 1, 1)))
    assert not ok
    ok, b = eventually_agrees(Point.make(period=(0, 1)), Point.make(head=(1, 1), period=(0, 1)))
    assert (ok, b) == (True, 1)


def test_eventually_agrees_rejects_lazy_points():
    from trimtrees.points import FunctionPoint
    with pytest.raises(NotExactError):
        eventually_agrees(ZERO, FunctionPoint(lambda i: 0))


def test_json_round_trip_example():
    p = point_from_json({"base": {"head": [], "period": [0, 1]}, "patch": {"3": 0}})
    assert p.values(6) == [0, 1, 0, 0, 0, 1]
    assert point_from_json(p.to_json()) == p


@given(st.data())
def test_patch_point_laws(data):
    a = data.draw(alphabets())
    p = data.draw(points_over(a))
    s = data.draw(nodes_for(a))
    q = patch_point(p, s, a)
    assert patch_point(q, s, a) == q
    for i in range(len(s) + 12):
        assert q.value(i) == (s[i] if i < len(s) else p.value(i))


@given(st.data())
def test_eventually_agrees_is_an_equivalence(data):
    a = data.draw(alphabets())
    ps = [data.draw(points_over(a)) for _ in range(3)]
    rel = [[eventually_agrees(x, y)[0] for y in ps] for x in ps]
    for i in range(3):
        assert rel[i][i]
        for j in range(3):
            assert rel[i][j] == rel[j][i]
            for k in range(3):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


@given(st.data())
def test_eventual_bound_is_least(data):
    a = data.draw(alphabets())
    p = data.draw(points_over(a))
    q = patch_point(p, data.draw(nodes_for(a, max_len=6)))
    ok, b = eventually_agrees(p, q)
    assert ok
    assert all(p.value(i) == q.value(i) for i in range(b, b + 24))
    assert b == 0 or p.value(b - 1) != q.value(b - 1)


@given(st.data())
def test_point_json_round_trip(data):
    p = data.draw(points_over(data.draw(alphabets())))
    assert point_from_json(p.to_json()) == p


@given(st.lists(st.integers(0, 3), max_size=6), st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_upseq_canonical_form_is_semantic(head, period):
    s = UPSeq(tuple(head), tuple(period))
    raw = head + period * 8
    assert s.prefix(len(raw)) == raw
    t = UPSeq(tuple(raw[:len(head) + len(period)]), tuple(period * 2))
    assert s == t


def test_support_bound():
    flags = combine(lambda x, y: x != y, UPSeq((1, 0, 1), (0,)), UPSeq.constant(0))
    assert support_bound(flags) == 3
