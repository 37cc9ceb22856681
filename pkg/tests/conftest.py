import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from trimtrees.natsets import Glue, MinusFinite, TailFrom, UltimatelyPeriodic, up
from trimtrees.points import AlphabetSpec, Point
from trimtrees.seq import UPSeq, combine
from trimtrees.trees import TrimmedTree

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


bitstrings = st.lists(st.booleans(), max_size=5)


@st.composite
def periodic_sets(draw):
    head = draw(bitstrings)
    period = draw(st.lists(st.booleans(), min_size=1, max_size=4))
    if not any(period):
        period[draw(st.integers(0, len(period) - 1))] = True
    return UltimatelyPeriodic(UPSeq(tuple(head), tuple(period)))


@st.composite
def natsets(draw):
    base = draw(periodic_sets())
    kind = draw(st.sampled_from(["up", "up", "tail", "minus", "glue"]))
    if kind == "tail":
        return TailFrom(draw(st.integers(0, 6)))
    if kind == "minus":
        return MinusFinite(base, tuple(base.take(draw(st.integers(0, 3)))))
    if kind == "glue":
        return Glue(base, draw(periodic_sets()), draw(st.integers(0, 8)))
    return base


@st.composite
def alphabets(draw, max_size=4):
    if draw(st.booleans()):
        return AlphabetSpec.constant(2)
    head = draw(st.lists(st.integers(2, max_size), max_size=3))
    period = draw(st.lists(st.integers(2, max_size), min_size=1, max_size=2))
    return AlphabetSpec(UPSeq(tuple(head), tuple(period)))


@st.composite
def points_over(draw, alphabet):
    head = draw(st.lists(st.integers(0, 3), max_size=4))
    period = draw(st.lists(st.integers(0, 3), min_size=1, max_size=3))
    raw = UPSeq(tuple(head), tuple(period))
    seq = combine(lambda r, k: r % k, raw, alphabet.sizes)
    patch = draw(st.dictionaries(st.integers(0, 8), st.integers(0, 3), max_size=3))
    patch = {i: v % alphabet.size(i) for i, v in patch.items()}
    return Point(seq, tuple(sorted(patch.items())))


@st.composite
def trees(draw, alphabet=None, A=None):
    alphabet = alphabet if alphabet is not None else draw(alphabets())
    A = A if A is not None else draw(natsets())
    return TrimmedTree(A, draw(points_over(alphabet)), alphabet)


@st.composite
def tree_pairs(draw, same_A_bias=True):
    alphabet = draw(alphabets())
    return draw(trees(alphabet)), draw(trees(alphabet))


@st.composite
def nodes_for(draw, alphabet, max_len=4):
    n = draw(st.integers(0, max_len))
    return tuple(draw(st.integers(0, alphabet.size(i) - 1)) for i in range(n))


def binary_tree(A, ground=None):
    return TrimmedTree(A, ground if ground is not None else Point.constant(0))


EVENS_TREE = binary_tree(up("", "10"))
ODDS_TREE = binary_tree(up("", "01"))
FULL_TREE = binary_tree(up("", "1"))
