"""Ultimately periodic sequences.

An ``UPSeq`` is ``head`` followed by ``period`` repeated forever.  Instances
are kept canonical (minimal period, then minimal head), so structural
equality coincides with equality of the infinite sequences.  Almost every
exact decision in the package reduces to building a pointwise combination
of such sequences and inspecting one head plus one period.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Callable, Iterable, Sequence


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _minimal_period(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and all(period[i] == period[i % d] for i in range(d, n)):
            return period[:d]
    return period


@dataclass(frozen=True)
class UPSeq:
    head: tuple
    period: tuple

    def __post_init__(self):
        period = tuple(self.period)
        if not period:
            raise ValueError("period must be non-empty")
        head = list(self.head)
        period = _minimal_period(period)
        while head and head[-1] == period[-1]:
            head.pop()
            period = (period[-1],) + period[:-1]
        object.__setattr__(self, "head", tuple(head))
        object.__setattr__(self, "period", period)

    @classmethod
    def constant(cls, value: Any) -> "UPSeq":
        return cls((), (value,))

    @classmethod
    def tabulate(cls, fn: Callable[[int], Any], head_len: int, period_len: int) -> "UPSeq":
        """Sample ``fn`` on ``[0, head_len + period_len)``; caller guarantees periodicity."""
        values = [fn(i) for i in range(head_len + period_len)]
        return cls(tuple(values[:head_len]), tuple(values[head_len:]))

    def at(self, i: int) -> Any:
        if i < 0:
            raise IndexError(i)
        h = len(self.head)
        if i < h:
            return self.head[i]
        return self.period[(i - h) % len(self.period)]

    __getitem__ = at

    def prefix(self, n: int) -> list:
        return [self.at(i) for i in range(n)]

    def map(self, fn: Callable[[Any], Any]) -> "UPSeq":
        return UPSeq(tuple(fn(v) for v in self.head), tuple(fn(v) for v in self.period))

    @property
    def horizon(self) -> int:
        """Length of head plus one period: everything is visible below it."""
        return len(self.head) + len(self.period)

    def to_json(self) -> dict:
        return {"head": list(self.head), "period": list(self.period)}

    @classmethod
    def from_json(cls, obj: dict) -> "UPSeq":
        return cls(tuple(obj.get("head", ())), tuple(obj["period"]))


def combine(fn: Callable[..., Any], *seqs: UPSeq) -> UPSeq:
    """Pointwise ``fn`` of several sequences, exact."""
    h = max(len(s.head) for s in seqs)
    p = lcm(*(len(s.period) for s in seqs))
    values = list(map(fn, *(_expand(s, h + p) for s in seqs)))
    return UPSeq(tuple(values[:h]), tuple(values[h:]))


def _expand(s: UPSeq, n: int) -> list:
    """The first ``n`` values of ``s``."""
    out = list(s.head[:n])
    if len(out) < n:
        reps = -(-(n - len(out)) // len(s.period))
        out.extend((s.period * reps)[: n - len(out)])
    return out


def cutoff(m: int) -> UPSeq:
    """Boolean sequence true exactly on ``[0, m)``."""
    return UPSeq((True,) * m, (False,))


def with_overrides(seq: UPSeq, overrides: dict) -> UPSeq:
    if not overrides:
        return seq
    h = max(len(seq.head), max(overrides) + 1)
    vals = [overrides.get(i, seq.at(i)) for i in range(h)]
    return UPSeq(tuple(vals), tuple(seq.at(h + j) for j in range(len(seq.period))))


def support_bound(flags: UPSeq):
    """Least ``b`` with ``flags[i]`` false for every ``i >= b``; ``None`` if true infinitely often."""
    if any(flags.period):
        return None
    return len(flags.head)  # canonical head of an eventually-false sequence ends in True


def true_indices(flags: UPSeq, start: int, stop: int) -> list[int]:
    return [i for i in range(start, stop) if flags.at(i)]


def first_true_from(flags: UPSeq, start: int):
    """Least ``i >= start`` with ``flags[i]``, or ``None``."""
    stop = max(start, len(flags.head)) + len(flags.period)
    for i in range(start, stop):
        if flags.at(i):
            return i
    return None


def bits(head: Iterable | str, period: Iterable | str) -> UPSeq:
    """Boolean ``UPSeq`` from ``"0101"``-style strings or iterables of truthy values."""

    def conv(x: Iterable | str) -> tuple:
        if isinstance(x, str):
            if set(x) - {"0", "1"}:
                raise ValueError(f"not a bitstring: {x!r}")
            return tuple(c == "1" for c in x)
        return tuple(bool(v) for v in x)

    return UPSeq(conv(head), conv(period))


def bitstring(values: Sequence[bool]) -> str:
    return "".join("1" if v else "0" for v in values)
