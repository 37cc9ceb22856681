"""Avoiding countable point sets and their translates.

A responder answers "give me a smaller tree missing the target".  Point-set
responders dodge each point at one branching coordinate by forcing a
different symbol there.  ``level_avoid`` does this above the ``k``-th
branching coordinate so the result stays ``⊆_k`` the input, and
``sigma_avoid`` chains those steps and fuses them.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import count as _count, product
from typing import Callable, Iterator, Sequence

from .config import DEFAULTS
from .errors import PreconditionError
from .fusion import TreeSequence, fuse
from .natsets import index_class, index_classes, remove_finite
from .points import FunctionPoint, Point, PointLike, force_values, patch_point
from .seq import combine, first_true_from
from .star import glue_trees
from .trees import FULL, TrimmedTree, contains_node, restrict


class CountablePointSet:
    """Deterministically enumerated points; finite (a list) or lazy (``k -> point``)."""

    def __init__(self, source: Sequence[PointLike] | Callable[[int], PointLike],
                 length: int | None = None):
        if callable(source):
            self._gen, self.length = source, length
        else:
            items = list(source)
            self._gen, self.length = items.__getitem__, len(items)
        self._memo: dict[int, PointLike] = {}

    def __getitem__(self, k: int) -> PointLike:
        if self.length is not None and not 0 <= k < self.length:
            raise IndexError(k)
        if k not in self._memo:
            self._memo[k] = self._gen(k)
        return self._memo[k]

    def take(self, k: int) -> list[PointLike]:
        n = k if self.length is None else min(k, self.length)
        return [self[i] for i in range(n)]

    def __len__(self):
        if self.length is None:
            raise TypeError("infinite point set")
        return self.length

    def map(self, fn: Callable[[PointLike], PointLike]) -> "CountablePointSet":
        return CountablePointSet(lambda k: fn(self[k]), self.length)


class AvoidanceResponder(ABC):
    translate_closed: bool = False

    @abstractmethod
    def respond(self, T: TrimmedTree) -> TrimmedTree:
        """A subtree of ``T`` whose branches miss the target."""

    def avoid_translates(self, T: TrimmedTree, L: int) -> TrimmedTree:
        """A subtree of ``T`` that misses every translate ``Y_s`` with ``|s| = L``.

        Changes only coordinates ``>= L``.
        """
        raise PreconditionError(f"{type(self).__name__} is not translate-closed")

    def respond_star(self, T: TrimmedTree) -> TrimmedTree:
        """A subtree whose star misses the target."""
        raise PreconditionError(f"{type(self).__name__} cannot avoid stars")

    def translate(self, s: Sequence[int]) -> "AvoidanceResponder":
        raise PreconditionError(f"{type(self).__name__} is not translate-closed")

    def is_empty(self) -> bool:
        return False

    def target_points(self, k: int) -> list[PointLike] | None:
        """Up to ``k`` concrete target points, or ``None`` if the target is opaque."""
        return None


# ---------------------------------------------------------------- point sets

def _dodge_symbol(v: int) -> int:
    return 1 if v == 0 else 0


def _excluded_from(T: TrimmedTree, y: PointLike, L: int, window: int) -> bool:
    """``y`` leaves δ(T) at some coordinate ``>= L`` (exact, or searched in a window)."""
    dt, sy = T.delta_seq(), y.periodic()
    if dt is not None and sy is not None:
        flags = combine(lambda d, v: not (d is FULL or d == v), dt, sy)
        return first_true_from(flags, L) is not None
    return any(not T.A.contains(i) and T.ground.value(i) != y.value(i)
               for i in range(L, L + window))


def _force(T: TrimmedTree, forced: dict[int, int]) -> TrimmedTree:
    if not forced:
        return T
    return TrimmedTree(remove_finite(T.A, forced), force_values(T.ground, forced), T.alphabet)


@dataclass
class PointSetResponder(AvoidanceResponder):
    """Responder for a countable point set.

    ``stage`` bounds how many points of an infinite set one call handles.
    """

    points: CountablePointSet
    stage: int | None = None
    window: int = DEFAULTS.horizon
    translate_closed = True

    def _handled(self) -> list[PointLike]:
        if self.points.length is None:
            if self.stage is None:
                raise PreconditionError("infinite point set needs a stage bound")
            return self.points.take(self.stage)
        return self.points.take(self.points.length if self.stage is None else self.stage)

    def is_empty(self):
        return self.points.length == 0

    def target_points(self, k):
        return self.points.take(k)

    def respond(self, T):
        # one fresh branching coordinate per point, least first
        pts = self._handled()
        coords = [T.A.nth(j) for j in range(len(pts))]
        return _force(T, {a: _dodge_symbol(y.value(a)) for a, y in zip(coords, pts)})

    def avoid_translates(self, T, L):
        # a point's translates share its tail from L on; dodge that tail unless T already does
        cur = T
        for y in self._handled():
            if _excluded_from(cur, y, L, self.window):
                continue
            a = cur.A.nth(cur.A.rank(L))
            cur = _force(cur, {a: _dodge_symbol(y.value(a))})
        return cur

    def respond_star(self, T):
        if self.points.length is None:
            raise PreconditionError("star avoidance needs a finite point set")
        pts = self.points.take(self.points.length)
        m = len(pts)
        if m == 0:
            return T
        q = m + 1
        cls = index_classes(T.A, q)
        seqs = [y.periodic() for y in pts]
        g = T.ground.periodic()
        if cls is not None and g is not None and all(s is not None for s in seqs):
            def pick(c, base, *ys):
                if c is None:
                    return base
                return 0 if c == m else _dodge_symbol(ys[c])

            ground = Point(combine(pick, cls, g, *seqs))
        else:
            def value(n):
                if not T.A.contains(n):
                    return T.ground.value(n)
                c = T.A.rank(n) % q
                return 0 if c == m else _dodge_symbol(pts[c].value(n))

            ground = FunctionPoint(value, "star-dodge")
        # class j < m is forced away from point j; class m keeps branching
        return TrimmedTree(index_class(T.A, m, q), ground, T.alphabet)

    def translate(self, s):
        s = tuple(s)
        return PointSetResponder(self.points.map(lambda p: patch_point(p, s)), self.stage,
                                 self.window)


def point_set_responder(F: CountablePointSet | Sequence[PointLike],
                        stage: int | None = None) -> PointSetResponder:
    if not isinstance(F, CountablePointSet):
        F = CountablePointSet(F)
    return PointSetResponder(F, stage)


# ---------------------------------------------------------------- combinators

@dataclass
class UnionResponder(AvoidanceResponder):
    parts: tuple

    @property
    def translate_closed(self):
        return all(r.translate_closed for r in self.parts)

    def is_empty(self):
        return all(r.is_empty() for r in self.parts)

    def _chain(self, T, step):
        for r in self.parts:
            T = step(r, T)
        return T

    def respond(self, T):
        return self._chain(T, lambda r, t: r.respond(t))

    def avoid_translates(self, T, L):
        return self._chain(T, lambda r, t: r.avoid_translates(t, L))

    def respond_star(self, T):
        return self._chain(T, lambda r, t: r.respond_star(t))

    def translate(self, s):
        return UnionResponder(tuple(r.translate(s) for r in self.parts))

    def target_points(self, k):
        out = []
        for r in self.parts:
            pts = r.target_points(k)
            if pts is None:
                return None
            out.extend(pts)
        return out


@dataclass
class TranslatedResponder(AvoidanceResponder):
    """Avoids ``Y_t`` given a responder ``inner`` for ``Y_s`` (``|s| = |t|``)."""

    inner: AvoidanceResponder
    s: tuple
    t: tuple

    def __post_init__(self):
        if len(self.s) != len(self.t):
            raise PreconditionError("translation nodes must have equal length")

    @property
    def translate_closed(self):
        return self.inner.translate_closed

    def is_empty(self):
        return self.inner.is_empty()

    def respond(self, T):
        if not contains_node(T, self.t):
            return T  # no branch of T starts with t, so none lies in Y_t
        P_s = self.inner.respond(restrict(T, self.s))
        return restrict(P_s, self.t)

    def avoid_translates(self, T, L):
        # beyond |t| the points of Y_t are tails of Y_s
        return self.inner.avoid_translates(T, max(L, len(self.t)))

    def translate(self, u):
        if not self.translate_closed:
            return super().translate(u)
        u = tuple(u)
        return self.inner.translate(u + self.t[len(u):])

    def target_points(self, k):
        pts = self.inner.target_points(k)
        return None if pts is None else [patch_point(p, self.t) for p in pts]


def translate_responder(R: AvoidanceResponder, s: Sequence[int],
                        t: Sequence[int]) -> TranslatedResponder:
    return TranslatedResponder(R, tuple(s), tuple(t))


# ---------------------------------------------------------------- engines

def level_avoid(R: AvoidanceResponder, T: TrimmedTree, k: int) -> TrimmedTree:
    """``P ⊆_k T`` whose branches miss the target of ``R``.

    Coordinates up to ``a_k`` are left alone; above them the tree is cut
    down to miss every translate of the target by a node of that length.
    """
    if not R.translate_closed:
        raise PreconditionError("level_avoid needs a translate-closed responder")
    if R.is_empty():
        return T
    L = T.A.nth(k) + 1
    return glue_trees(T, R.avoid_translates(T, L), L)


def sigma_avoid(targets, T: TrimmedTree, depth: int | None = None,
                count: int | None = None) -> TrimmedTree:
    """A subtree of ``T`` missing every target.

    ``targets`` is a list of responders or a function ``k -> responder``
    (infinite unless ``count`` is given).  Stage ``k + 1`` runs
    ``level_avoid`` for target ``k`` on stage ``k``; earlier targets are
    already missed by every subtree.  The stages form a ``⊆_k``-chain, which
    is fused.
    """
    if not callable(targets):
        targets = list(targets)
        count = len(targets) if count is None else count
        if all(r.is_empty() for r in targets[:count]):
            return T
        get = targets.__getitem__
    else:
        get = targets
    stages: list[TrimmedTree] = [T]

    def stage(n: int) -> TrimmedTree:
        while len(stages) <= n:
            k = len(stages) - 1
            stages.append(level_avoid(get(k), stages[k], k))
        return stages[n]

    if count is not None:
        return fuse(TreeSequence([stage(n) for n in range(count + 1)]), depth)
    return fuse(TreeSequence(stage), depth)


def finite_nodes(alphabet) -> Iterator[tuple]:
    """All finite nodes in length-lexicographic order, starting with ``()``."""
    for n in _count():
        yield from product(*(range(alphabet.size(i)) for i in range(n)))


def star_closure_avoid(R: AvoidanceResponder, T: TrimmedTree, depth: int | None = None,
                       count: int | None = None) -> TrimmedTree:
    """A subtree of ``T`` missing every finite modification of the target.

    The translates ``Y_u`` are enumerated over all finite nodes ``u`` in
    length-lex order and handed to ``sigma_avoid``.
    """
    if not R.translate_closed:
        raise PreconditionError("star_closure_avoid needs a translate-closed responder")
    if R.is_empty():
        return T
    nodes = finite_nodes(T.alphabet)
    cache: list[AvoidanceResponder] = []

    def target(j: int) -> AvoidanceResponder:
        while len(cache) <= j:
            cache.append(R.translate(next(nodes)))
        return cache[j]

    if count is not None:
        return sigma_avoid([target(j) for j in range(count)], T, depth)
    return sigma_avoid(target, T, depth)

