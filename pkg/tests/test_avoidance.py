import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trimtrees.avoidance import (
    CountablePointSet, UnionResponder, finite_nodes, level_avoid, point_set_responder,
    sigma_avoid, star_closure_avoid, translate_responder,
)
from trimtrees.errors import PreconditionError
from trimtrees.natsets import ODDS
from trimtrees.points import BINARY, ZERO, Point, disagreement_from, mix_point
from trimtrees.trees import contains_node, in_branches, in_star, subset_n, tree, tree_subset

from conftest import EVENS_TREE, FULL_TREE, points_over, trees

ONE = Point.constant(1)


def enumerated_point(k: int) -> Point:
    # binary numeral of k, then 11, then zeros: injective in k
    head = [int(b) for b in bin(k)[2:]] + [1, 1]
    return Point.make(head, (0,))


def excluded(P, y, depth=8) -> bool:
    return not contains_node(P, y.values(depth))


# ---------------------------------------------------------------- responders

def test_single_point_dodge():
    P = point_set_responder([ZERO]).respond(FULL_TREE)
    assert P.ground.value(0) == 1 and not P.A.contains(0)
    assert excluded(P, ZERO) and tree_subset(P, FULL_TREE)


def test_two_points_on_evens_tree():
    P = point_set_responder([ZERO, ONE]).respond(EVENS_TREE)
    assert P.A.take(3) == [4, 6, 8]
    assert [P.ground.value(i) for i in range(3)] == [1, 0, 0]
    assert excluded(P, ZERO) and excluded(P, ONE)


def test_point_outside_tree_needs_nothing():
    R = point_set_responder([ONE])
    assert in_branches(EVENS_TREE, ONE) is False
    assert R.avoid_translates(EVENS_TREE, 0) == EVENS_TREE


@given(trees(), st.data())
def test_respond_is_a_subtree_missing_the_points(T, data):
    pts = [data.draw(points_over(T.alphabet)) for _ in range(data.draw(st.integers(0, 4)))]
    P = point_set_responder(pts).respond(T)
    assert tree_subset(P, T)
    assert all(excluded(P, y, 40) for y in pts)


@given(trees(), st.data())
def test_respond_star_avoids_finite_modifications(T, data):
    pts = [data.draw(points_over(T.alphabet)) for _ in range(data.draw(st.integers(1, 3)))]
    P = point_set_responder(pts).respond_star(T)
    assert tree_subset(P, T)
    for y in pts:
        assert not in_star(P, y)[0]


def test_infinite_set_needs_a_stage():
    R = point_set_responder(CountablePointSet(enumerated_point))
    with pytest.raises(PreconditionError):
        R.respond(FULL_TREE)
    staged = point_set_responder(CountablePointSet(enumerated_point), stage=5)
    P = staged.respond(FULL_TREE)
    assert all(excluded(P, enumerated_point(k), 16) for k in range(5))


def test_countable_point_set_enumeration():
    F = CountablePointSet(enumerated_point)
    assert F[3] is F[3]
    assert [p.values(3) for p in F.take(3)] == [[0, 1, 1], [1, 1, 1], [1, 0, 1]]
    with pytest.raises(TypeError):
        len(F)
    G = CountablePointSet([ZERO, ONE])
    with pytest.raises(IndexError):
        G[2]
    assert len(G.map(lambda p: p)) == 2


def test_union_responder():
    R = UnionResponder((point_set_responder([ZERO]), point_set_responder([ONE])))
    P = R.respond(FULL_TREE)
    assert excluded(P, ZERO) and excluded(P, ONE)
    assert R.translate_closed and len(R.target_points(5)) == 2


# ---------------------------------------------------------------- translation

def test_translate_responder_example():
    R = translate_responder(point_set_responder([ZERO]), (0,), (1,))
    y = Point.make(patch={0: 1})
    P = R.respond(FULL_TREE)
    assert tree_subset(P, FULL_TREE) and excluded(P, y)
    assert [q.values(4) for q in R.target_points(1)] == [[1, 0, 0, 0]]


def test_translate_responder_vacuous_when_t_missing():
    R = translate_responder(point_set_responder([ZERO]), (0,), (1,))
    T = tree(ODDS, ZERO)  # coordinate 0 is forced to 0
    assert not contains_node(T, (1,))
    assert R.respond(T) is T


def test_translate_same_node_behaves_like_inner():
    inner = point_set_responder([Point.make((0, 1), (0,))])
    R = translate_responder(inner, (0, 1), (0, 1))
    P = R.respond(FULL_TREE)
    assert tree_subset(P, FULL_TREE) and excluded(P, Point.make((0, 1), (0,)))
    assert [q.values(4) for q in R.target_points(1)] == [[0, 1, 0, 0]]


def test_translate_rejects_length_mismatch():
    with pytest.raises(PreconditionError):
        translate_responder(point_set_responder([ZERO]), (0,), (0, 1))


# ---------------------------------------------------------------- engines

def test_level_avoid_example():
    R = point_set_responder([ZERO])
    P = level_avoid(R, FULL_TREE, 1)
    assert subset_n(P, FULL_TREE, 1)
    assert excluded(P, ZERO)
    # translates of 0̄ by nodes of length a_1 + 1 = 2 all leave P
    for u in finite_nodes(BINARY):
        if len(u) > 2:
            break
        if len(u) == 2:
            assert excluded(P, Point.make(u, (0,)))


def test_level_avoid_empty_target():
    assert level_avoid(point_set_responder([]), EVENS_TREE, 2) == EVENS_TREE


def test_level_avoid_needs_translate_closure():
    from trimtrees.avoidance import AvoidanceResponder

    class Opaque(AvoidanceResponder):
        def respond(self, T):
            return T

    with pytest.raises(PreconditionError):
        level_avoid(Opaque(), FULL_TREE, 0)


@settings(max_examples=50)
@given(trees(), st.integers(0, 4), st.data())
def test_level_avoid_keeps_first_levels(T, k, data):
    pts = [data.draw(points_over(T.alphabet)) for _ in range(data.draw(st.integers(1, 3)))]
    P = level_avoid(point_set_responder(pts), T, k)
    assert subset_n(P, T, k)
    assert all(excluded(P, y, 64) for y in pts)


def test_sigma_avoid_hundred_points():
    pts = [enumerated_point(k) for k in range(100)]
    assert len({tuple(p.values(64)) for p in pts}) == 100
    targets = [point_set_responder([p]) for p in pts]
    P = sigma_avoid(targets, FULL_TREE, depth=16)
    assert tree_subset(P, FULL_TREE)
    assert all(excluded(P, p, 64) for p in pts)


def test_sigma_avoid_single_target_matches_level_avoid():
    R = point_set_responder([ZERO])
    assert sigma_avoid([R], FULL_TREE) == level_avoid(R, FULL_TREE, 0)
    assert sigma_avoid([point_set_responder([])], EVENS_TREE) == EVENS_TREE


def test_sigma_avoid_lazy_targets():
    P = sigma_avoid(lambda k: point_set_responder([enumerated_point(k)]), FULL_TREE, depth=12)
    assert all(excluded(P, enumerated_point(k), 64) for k in range(12))


def sample_branches(P, count, seed=0):
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        bits = [rng.randrange(2) for _ in range(24)]
        out.append(mix_point(P.A, Point.make(bits, (rng.randrange(2),)), P.ground))
    return out


def test_star_closure_avoid_zero():
    depth = 24
    P = star_closure_avoid(point_set_responder([ZERO]), FULL_TREE, depth=depth)
    assert tree_subset(P, FULL_TREE, horizon=64)
    cuts = [P.A.nth(k) + 1 for k in range(depth)]
    for b in sample_branches(P, 50):
        # a nonzero coordinate beyond every certified stage bound
        assert all(disagreement_from(b, ZERO, c, c + 64) is not None for c in cuts)


def test_star_closure_avoid_empty_target():
    assert star_closure_avoid(point_set_responder([]), EVENS_TREE) == EVENS_TREE


def test_star_closure_is_sigma_avoid_over_translates():
    R = point_set_responder([ZERO])
    nodes = finite_nodes(BINARY)
    targets = [R.translate(next(nodes)) for _ in range(6)]
    assert star_closure_avoid(R, FULL_TREE, count=6) == sigma_avoid(targets, FULL_TREE)


def test_finite_nodes_order():
    it = finite_nodes(BINARY)
    assert [next(it) for _ in range(7)] == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
