"""Fusion of ``⊆_n``-chains and lower bounds for decreasing stars.

A chain with ``T[n+1] ⊆_n T[n]`` freezes its first ``n + 1`` branching
coordinates at stage ``n``, so the diagonal ``C = {a^n_n}`` is well defined
and ``T[C, α]`` sits below every member.  Chains are handles: trees are
generated on demand, memoized, and checked against the promise as soon as
they are materialized.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .config import DEFAULTS
from .errors import NotExactError, PreconditionError, PromiseViolation
from .natsets import Diagonal
from .points import FunctionPoint
from .star import InclusionCert, StarSet, _tree, splice, star_subset
from .trees import TrimmedTree, subset_n, tree_subset


class TreeSequence:
    """A memoized sequence of trees carrying the ``T[n+1] ⊆_n T[n]`` promise.

    ``source`` is either a finite list (extended by repeating its last tree)
    or a function ``n -> tree``.  With ``eager_depth`` the first trees are
    materialized and validated at construction.
    """

    def __init__(self, source: Sequence[TrimmedTree] | Callable[[int], TrimmedTree],
                 horizon: int | None = None, eager_depth: int | None = None):
        if callable(source):
            self._gen, self.length = source, None
        else:
            items = list(source)
            if not items:
                raise PreconditionError("empty tree sequence")
            self._gen, self.length = items.__getitem__, len(items)
        self.horizon = horizon or DEFAULTS.horizon
        self._trees: list[TrimmedTree] = []
        self._poison: PromiseViolation | None = None
        self._lock = threading.RLock()
        if eager_depth is not None:
            self.materialize(eager_depth)

    @property
    def finite(self) -> bool:
        return self.length is not None

    @property
    def materialized(self) -> int:
        return len(self._trees)

    def materialize(self, n: int) -> None:
        """Generate and validate trees ``0..n``."""
        with self._lock:
            if self._poison is not None:
                raise self._poison
            top = n if self.length is None else min(n, self.length - 1)
            while len(self._trees) <= top:
                i = len(self._trees)
                t = _tree(self._gen(i))
                if i > 0 and not subset_n(t, self._trees[i - 1], i - 1, self.horizon):
                    self._poison = PromiseViolation(
                        i, f"tree {i} is not ⊆_{i - 1} tree {i - 1}")
                    raise self._poison
                self._trees.append(t)

    def __getitem__(self, n: int) -> TrimmedTree:
        if n < 0:
            raise IndexError(n)
        self.materialize(n)
        if self.length is not None and n >= self.length:
            return self._trees[-1]
        return self._trees[n]

    def prefix(self, n: int) -> list[TrimmedTree]:
        return [self[i] for i in range(n)]


def as_sequence(seq) -> TreeSequence:
    return seq if isinstance(seq, TreeSequence) else TreeSequence(seq)


def _fused_ground(seq: TreeSequence, C: Diagonal) -> FunctionPoint:
    def value(i: int) -> int:
        # the first stage whose diagonal element reaches i has frozen coordinate i
        n = C.rank(i)
        if C.nth(n) == i:
            return 0
        return seq[n].ground.value(i)

    return FunctionPoint(value, "fused")


def fuse(seq, depth: int | None = None) -> TrimmedTree:
    """``T[C, α]`` below every tree of a ``⊆_n``-chain.

    A finite chain stabilizes at its last tree, which is returned exactly.
    Otherwise ``C`` is the diagonal handle and α takes each coordinate from
    the first stage that froze it (0 on ``C``); containment in the first
    ``depth + 1`` trees is checked up to coordinate ``depth``.
    """
    seq = as_sequence(seq)
    depth = DEFAULTS.fuse_depth if depth is None else depth
    seq.materialize(depth)
    if seq.finite:
        return seq[seq.length - 1]
    C = Diagonal(seq)
    out = TrimmedTree(C, _fused_ground(seq, C), seq[0].alphabet)
    for n in range(depth + 1):
        if not tree_subset(out, seq[n], horizon=depth + 1):
            raise PromiseViolation(n, f"fused tree leaves tree {n} below coordinate {depth}")
    return out


def fusion_trace(seq, count: int) -> Iterator[dict]:
    """Per-stage records ``{"n", "a_n_n", "checked_subset_n"}``."""
    seq = as_sequence(seq)
    for n in range(count):
        t = seq[n]  # materializing validates the pair (n-1, n)
        yield {"n": n, "a_n_n": t.A.nth(n), "checked_subset_n": True}


# ---------------------------------------------------------------- lower bounds

@dataclass
class HadamardResult:
    star: StarSet
    chain: TreeSequence  # the spliced ⊆_n-chain Q
    certs: list[InclusionCert] = field(default_factory=list)  # [W]* ⊆ stars(n)
    cuts: list[int] = field(default_factory=list)


def _star_at(stars, n):
    s = stars(n) if callable(stars) else stars[n]
    return s if isinstance(s, StarSet) else StarSet(s)


def hadamard_pipeline(stars, count: int | None = None, depth: int | None = None,
                      allow_unverified: bool = False) -> HadamardResult:
    """Lower bound of a decreasing sequence of stars.

    Each star is spliced below the previous spliced tree, giving a
    ``⊆_n``-chain ``Q`` with ``[Q_n]* = stars(n)``; the fusion of ``Q`` is
    the lower bound.  ``count`` limits a callable source to a finite chain.
    """
    depth = DEFAULTS.fuse_depth if depth is None else depth
    if count is None and not callable(stars):
        count = len(stars)
    if count is not None and count < 1:
        raise PreconditionError("need at least one star")
    Q: list[TrimmedTree] = []
    cuts: list[int] = []  # Q[n+1] copies Q[n] below cuts[n], stars(n+1) from there

    def build(n: int) -> TrimmedTree:
        while len(Q) <= n:
            i = len(Q)
            s = _star_at(stars, i)
            if i == 0:
                Q.append(s.tree)
                continue
            prev = _star_at(stars, i - 1)
            try:
                ok, cert = star_subset(s, prev)
            except NotExactError as exc:
                raise PreconditionError(f"no inclusion certificate for star {i}") from exc
            if not ok:
                raise PreconditionError(f"star {i} is not contained in star {i - 1}")
            q = Q[i - 1]
            if s.tree.exact and q.exact:
                cert = star_subset(s.tree, q).cert
            else:
                cert = InclusionCert(cert.kind, max(cert.k0, cuts[-1] if cuts else 0),
                                     cert.provenance, cert.depth)
            cut = max(q.A.nth(i - 1), cert.k0) + 1
            Q.append(splice(s.tree, q, i - 1, cert, allow_unverified))
            cuts.append(cut)
        return Q[n]

    chain = TreeSequence([build(n) for n in range(count)] if count is not None else build)
    W = fuse(chain, depth)
    top = count if count is not None else depth + 1
    chain.materialize(top - 1)
    certs = []
    for n in range(top):
        t = _star_at(stars, n).tree
        if W.exact and t.exact:
            ok, cert = star_subset(W, t)
            if not ok:
                raise PromiseViolation(n, f"lower bound escapes star {n}")
        else:
            # W ⊆ Q_n as trees, and Q_n equals the n-th tree from the previous cut on
            cert = InclusionCert("constructed", cuts[n - 1] if n else 0, "hadamard",
                                 None if count is not None else depth)
        certs.append(cert)
    return HadamardResult(StarSet(W), chain, certs, list(cuts))


def hadamard_lower_bound(stars, count_hint: int | None = None,
                         depth: int | None = None) -> StarSet:
    return hadamard_pipeline(stars, count_hint, depth).star
