"""Trimmed trees ``T[A, ground]`` and their coordinatewise δ-view.

A trimmed tree branches fully at the coordinates of ``A`` and is forced to
``ground(n)`` everywhere else.  Its node set at level ``n`` is the product of
those per-coordinate choices, so inclusion between trees is inclusion of
δ-values at every coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterator, Sequence

from .errors import NotExactError, PreconditionError
from .natsets import NatSet, UltimatelyPeriodic, drop_below, natset_from_json, same_set
from .points import (
    BINARY, AlphabetSpec, Point, PointLike, check_node, check_point, patch_point, point_from_json,
)
from .seq import UPSeq, combine, support_bound


class _Full:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Full"

    def __reduce__(self):
        return (_Full, ())


FULL = _Full()


def delta_le(x, y) -> bool:
    """δ-value inclusion; ``FULL`` is the whole alphabet, an int a singleton."""
    if x is FULL:
        return y is FULL
    return y is FULL or x == y


@dataclass(frozen=True, eq=False)
class TrimmedTree:
    A: NatSet
    ground: PointLike
    alphabet: AlphabetSpec = BINARY

    def __post_init__(self):
        g = self.ground.periodic()
        if g is None:
            return
        check_point(self.alphabet, self.ground)
        a = self.A.periodic()
        if a is not None:
            # the tree ignores the ground on A; pin it to 0 there
            object.__setattr__(self, "ground", Point(combine(lambda b, v: 0 if b else v, a, g)))

    @property
    def exact(self) -> bool:
        return self.A.periodic() is not None and self.ground.periodic() is not None

    @cached_property
    def _delta_seq(self) -> UPSeq | None:
        a, g = self.A.periodic(), self.ground.periodic()
        if a is None or g is None:
            return None
        return combine(lambda b, v: FULL if b else v, a, g)

    def delta_seq(self) -> UPSeq | None:
        return self._delta_seq

    def delta_at(self, n: int):
        s = self._delta_seq
        if s is not None:
            return s.at(n)
        return FULL if self.A.contains(n) else self.ground.value(n)

    def size(self, n: int) -> int:
        return self.alphabet.size(n)

    def __eq__(self, other):
        if not isinstance(other, TrimmedTree):
            return NotImplemented
        if self.alphabet != other.alphabet:
            return False
        if self.exact and other.exact:
            return self._delta_seq == other._delta_seq
        return same_set(self.A, other.A) and self.ground == other.ground

    def __hash__(self):
        if self.exact:
            return hash((self.alphabet, self._delta_seq))
        return id(self)

    def __repr__(self):
        if self.exact:
            d = self._delta_seq
            return f"TrimmedTree(delta={_fmt(d.head)}({_fmt(d.period)})*)"
        return f"TrimmedTree(A={self.A!r}, ground={self.ground!r})"

    def to_json(self) -> dict:
        return {"sizes": self.alphabet.sizes.to_json(), "A": self.A.to_json(),
                "ground": self.ground.to_json()}


def _fmt(values) -> str:
    return "".join("*" if v is FULL else str(v) for v in values)


def tree_from_json(obj: dict) -> TrimmedTree:
    alphabet = AlphabetSpec(UPSeq.from_json(obj["sizes"])) if "sizes" in obj else BINARY
    return TrimmedTree(natset_from_json(obj["A"]), point_from_json(obj["ground"]), alphabet)


def tree(A: NatSet, ground: PointLike | None = None, alphabet: AlphabetSpec = BINARY) -> TrimmedTree:
    return TrimmedTree(A, ground if ground is not None else Point.constant(0), alphabet)


# ---------------------------------------------------------------- δ-view

@dataclass(frozen=True)
class DeltaFn:
    tree: TrimmedTree

    def at(self, n: int):
        return self.tree.delta_at(n)

    def periodic(self) -> UPSeq | None:
        return self.tree.delta_seq()

    def window(self, n: int) -> list:
        return [self.at(i) for i in range(n)]

    def to_json(self) -> dict:
        seq = self.periodic()
        if seq is None:
            raise NotExactError("δ of a lazy tree has no finite description")
        enc = lambda vs: ["full" if v is FULL else v for v in vs]  # noqa: E731
        return {"head": enc(seq.head), "period": enc(seq.period)}


def delta(T: TrimmedTree) -> DeltaFn:
    return DeltaFn(T)


def tree_from_delta(d: DeltaFn | UPSeq, alphabet: AlphabetSpec = BINARY) -> TrimmedTree:
    if isinstance(d, DeltaFn):
        alphabet = d.tree.alphabet
        seq = d.periodic()
        if seq is None:
            return d.tree
    else:
        seq = d
    A = UltimatelyPeriodic(seq.map(lambda v: v is FULL))
    return TrimmedTree(A, Point(seq.map(lambda v: 0 if v is FULL else v)), alphabet)


# ---------------------------------------------------------------- nodes

def _choices(T: TrimmedTree, i: int):
    return range(T.size(i)) if T.A.contains(i) else (T.ground.value(i),)


def iter_level(T: TrimmedTree, n: int) -> Iterator[tuple]:
    """Nodes of length ``n + 1`` in lexicographic order."""
    return product(*(_choices(T, i) for i in range(n + 1)))


def levels(T: TrimmedTree, n: int) -> list[tuple]:
    """The node set ``T[A, ground, n]`` as a sorted list."""
    if n < 0:
        return [()]
    return list(iter_level(T, n))


def level_count(T: TrimmedTree, n: int) -> int:
    return prod(T.size(i) for i in range(n + 1) if T.A.contains(i))


def contains_node(T: TrimmedTree, s: Sequence[int]) -> bool:
    for i, v in enumerate(s):
        if not 0 <= v < T.size(i):
            return False
        if not T.A.contains(i) and v != T.ground.value(i):
            return False
    return True


def restrict(T: TrimmedTree, s: Sequence[int]) -> TrimmedTree:
    """``T_s``: branching dropped below ``len(s)``, ground patched by ``s``."""
    s = check_node(T.alphabet, s)
    if not s:
        return T
    return TrimmedTree(drop_below(T.A, len(s)), patch_point(T.ground, s), T.alphabet)


# ---------------------------------------------------------------- relations

def _same_alphabet(P: TrimmedTree, T: TrimmedTree) -> None:
    if P.alphabet != T.alphabet:
        raise PreconditionError("trees over different alphabets")


def delta_violations(P: TrimmedTree, T: TrimmedTree) -> UPSeq | None:
    """Exact indicator of coordinates where ``δ(P) ⊄ δ(T)``; ``None`` if not periodic."""
    dp, dt = P.delta_seq(), T.delta_seq()
    if dp is None or dt is None:
        return None
    return combine(lambda x, y: not delta_le(x, y), dp, dt)


def tree_subset(P: TrimmedTree, T: TrimmedTree, horizon: int | None = None) -> bool:
    """Every node of ``P`` is a node of ``T``.

    Exact on periodic trees.  Otherwise ``horizon`` must be given and the
    answer only covers coordinates below it.
    """
    _same_alphabet(P, T)
    bad = delta_violations(P, T)
    if bad is not None:
        return not any(bad.head) and not any(bad.period)
    if horizon is None:
        raise NotExactError("tree_subset on lazy trees needs a horizon")
    return all(delta_le(P.delta_at(i), T.delta_at(i)) for i in range(horizon))


def subset_n(P: TrimmedTree, T: TrimmedTree, n: int, horizon: int | None = None) -> bool:
    """``P ⊆_n T``: inclusion plus equal first ``n + 1`` branching coordinates."""
    if not tree_subset(P, T, horizon):
        return False
    return all(P.A.nth(k) == T.A.nth(k) for k in range(n + 1))


def in_branches(T: TrimmedTree, p: PointLike, horizon: int | None = None) -> bool:
    """``p`` is a branch of ``T`` (checked below ``horizon`` for lazy inputs)."""
    dt, sp = T.delta_seq(), p.periodic()
    if dt is not None and sp is not None:
        bad = combine(lambda d, v: not (d is FULL or d == v), dt, sp)
        return not any(bad.head) and not any(bad.period)
    if horizon is None:
        raise NotExactError("branch membership on lazy inputs needs a horizon")
    return all(_admits(T.delta_at(i), p.value(i)) for i in range(horizon))


def in_star(T: TrimmedTree, p: PointLike) -> tuple[bool, int | None]:
    """Whether ``p`` is a finite modification of a branch of ``T``; bound when true."""
    dt, sp = T.delta_seq(), p.periodic()
    if dt is None or sp is None:
        raise NotExactError("star membership on lazy inputs is not decidable here")
    b = support_bound(combine(lambda d, v: not (d is FULL or d == v), dt, sp))
    return (b is not None, b)


def _admits(d, v) -> bool:
    return d is FULL or d == v


def star_violations_window(T: TrimmedTree, p: PointLike, start: int, stop: int) -> list[int]:
    """Coordinates in ``[start, stop)`` where ``p`` leaves ``δ(T)``."""
    return [i for i in range(start, stop) if not _admits(T.delta_at(i), p.value(i))]
