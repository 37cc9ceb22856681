"""Seeded random instances for experiments and the acceptance runs.

Everything is drawn from a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random

from .natsets import Glue, MinusFinite, TailFrom, UltimatelyPeriodic, index_class, remove_finite
from .points import AlphabetSpec, Point, force_values
from .seq import UPSeq, combine
from .star import splice
from .trees import TrimmedTree


def _bits(rng: random.Random, lo: int, hi: int) -> tuple:
    return tuple(rng.random() < 0.5 for _ in range(rng.randint(lo, hi)))


def periodic_set(rng: random.Random) -> UltimatelyPeriodic:
    head, period = _bits(rng, 0, 5), list(_bits(rng, 1, 4))
    if not any(period):
        period[rng.randrange(len(period))] = True
    return UltimatelyPeriodic(UPSeq(head, tuple(period)))


def natset(rng: random.Random):
    base = periodic_set(rng)
    kind = rng.choice(["up", "up", "tail", "minus", "glue"])
    if kind == "tail":
        return TailFrom(rng.randint(0, 6))
    if kind == "minus":
        return MinusFinite(base, tuple(base.take(rng.randint(0, 3))))
    if kind == "glue":
        return Glue(base, periodic_set(rng), rng.randint(0, 8))
    return base


def alphabet(rng: random.Random, max_size: int = 4) -> AlphabetSpec:
    if rng.random() < 0.5:
        return AlphabetSpec.constant(2)
    head = [rng.randint(2, max_size) for _ in range(rng.randint(0, 3))]
    period = [rng.randint(2, max_size) for _ in range(rng.randint(1, 2))]
    return AlphabetSpec.of(head, period)


def point(rng: random.Random, alpha: AlphabetSpec) -> Point:
    head = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 4)))
    period = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 3)))
    seq = combine(lambda r, k: r % k, UPSeq(head, period), alpha.sizes)
    patch = {rng.randint(0, 8): rng.randint(0, 3) for _ in range(rng.randint(0, 3))}
    return Point(seq, tuple(sorted((i, v % alpha.size(i)) for i, v in patch.items())))


def tree(rng: random.Random, alpha: AlphabetSpec | None = None, max_size: int = 4) -> TrimmedTree:
    alpha = alpha if alpha is not None else alphabet(rng, max_size)
    return TrimmedTree(natset(rng), point(rng, alpha), alpha)


def node(rng: random.Random, alpha: AlphabetSpec, max_len: int = 4) -> tuple:
    return tuple(rng.randrange(alpha.size(i)) for i in range(rng.randint(0, max_len)))


def shrink(rng: random.Random, T: TrimmedTree) -> TrimmedTree:
    """A tree whose star lies in ``[T]*``: a thinner branching set, finitely patched ground."""
    q = rng.randint(1, 3)
    A = index_class(T.A, rng.randrange(q), q)
    A = remove_finite(A, A.take(rng.randint(0, 2)))
    patch = {rng.randint(0, 6): rng.randint(0, 3) for _ in range(rng.randint(0, 3))}
    return TrimmedTree(A, force_values(T.ground, {i: v % T.size(i) for i, v in patch.items()}),
                       T.alphabet)


def star_pair(rng: random.Random) -> tuple[TrimmedTree, TrimmedTree]:
    """Independent pairs and inclusion pairs, half each."""
    if rng.random() < 0.5:
        a = alphabet(rng)
        return tree(rng, a), tree(rng, a)
    T = tree(rng)
    return shrink(rng, T), T


def thin(rng: random.Random, T: TrimmedTree, strict: bool = False) -> TrimmedTree:
    """Same ground, every ``q``-th branching coordinate (``q >= 2`` when ``strict``)."""
    q = rng.randint(2 if strict else 1, 2)
    return TrimmedTree(index_class(T.A, rng.randrange(q), q), T.ground, T.alphabet)


def _retouch(rng: random.Random, T: TrimmedTree, n: int) -> TrimmedTree:
    """Same star as ``T``: one or two branching coordinates past ``a_n`` forced."""
    picks = T.A.take(n + 4)[n + 1:]
    forced = {a: rng.randrange(T.size(a)) for a in rng.sample(picks, rng.randint(1, 2))}
    return TrimmedTree(remove_finite(T.A, forced), force_values(T.ground, forced), T.alphabet)


def splice_chain(rng: random.Random, length: int | None, T: TrimmedTree | None = None,
                 thinnings: int = 3):
    """A ``⊆_n``-chain: stage ``n + 1`` is a smaller tree spliced below stage ``n``.

    At most ``thinnings`` stages thin the branching set (which shrinks the
    star); the others only retouch finitely many coordinates.  With
    ``length=None`` the chain is a function ``n -> tree`` extended on demand.
    """
    chain = [T if T is not None else tree(rng)]
    budget = [thinnings]

    def extend(n: int) -> TrimmedTree:
        while len(chain) <= n:
            k, cur = len(chain) - 1, chain[-1]
            if budget[0] and rng.random() < 0.5:
                budget[0] -= 1
                P = thin(rng, cur, strict=True)
            else:
                P = _retouch(rng, cur, k)
            chain.append(splice(P, cur, k))
        return chain[n]

    if length is None:
        return extend
    extend(length - 1)
    return chain


def strict_chain(rng: random.Random, length: int, T: TrimmedTree | None = None) -> list:
    """Trees whose stars strictly decrease (each stage thins and patches the last)."""
    out = [T if T is not None else tree(rng)]
    for _ in range(length - 1):
        cur = thin(rng, out[-1], strict=True)
        patch = {rng.randint(0, 8): rng.randint(0, 3) for _ in range(rng.randint(0, 2))}
        g = force_values(cur.ground, {i: v % cur.size(i) for i, v in patch.items()})
        out.append(TrimmedTree(cur.A, g, cur.alphabet))
    return out


def subtree(rng: random.Random, T: TrimmedTree) -> TrimmedTree:
    """A subtree branching on part of ``A`` and forced elsewhere on ``A``."""
    q = rng.randint(1, 3)
    A = index_class(T.A, rng.randrange(q), q)
    forced = {a: rng.randrange(T.size(a)) for a in T.A.take(4) if not A.contains(a)}
    return TrimmedTree(A, force_values(T.ground, forced), T.alphabet)


def subtree_pair(rng: random.Random) -> tuple[TrimmedTree, TrimmedTree]:
    T = tree(rng)
    return T, subtree(rng, T)
