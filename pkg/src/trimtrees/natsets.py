"""Finitely described infinite subsets of the naturals.

Every descriptor supports ``nth`` (strictly increasing enumeration),
``contains`` and ``rank`` (number of elements below ``n``).  Descriptors
built only from periodic pieces also answer ``periodic()`` with their exact
indicator sequence; that is what the exact decision procedures consume.
"""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from itertools import count
from typing import Iterator

from .errors import NotSerializableError, PreconditionError
from .seq import UPSeq, bits, bitstring, combine, lcm

# heads longer than this are not tabulated; such sets stay on the lazy path
MAX_HEAD = 1 << 20


class NatSet(ABC):
    @abstractmethod
    def nth(self, k: int) -> int: ...

    @abstractmethod
    def contains(self, n: int) -> bool: ...

    def rank(self, n: int) -> int:
        """Number of elements strictly below ``n``."""
        k = 0
        while self.nth(k) < n:
            k += 1
        return k

    def periodic(self) -> UPSeq | None:
        return None

    def to_json(self) -> dict:
        raise NotSerializableError(f"{type(self).__name__} is a programmatic handle")

    def take(self, k: int) -> list[int]:
        return [self.nth(i) for i in range(k)]

    def below(self, n: int) -> list[int]:
        out = []
        for i in count():
            x = self.nth(i)
            if x >= n:
                return out
            out.append(x)

    def __iter__(self) -> Iterator[int]:
        return (self.nth(i) for i in count())

    def __contains__(self, n: int) -> bool:
        return self.contains(n)


@dataclass(frozen=True)
class UltimatelyPeriodic(NatSet):
    indicator: UPSeq  # booleans

    def __post_init__(self):
        if not any(self.indicator.period):
            raise PreconditionError("period must contain a one, else the set is finite")

    @cached_property
    def _layout(self):
        head_ones = [i for i, b in enumerate(self.indicator.head) if b]
        offsets = [j for j, b in enumerate(self.indicator.period) if b]
        return head_ones, offsets

    def nth(self, k):
        head_ones, offsets = self._layout
        if k < len(head_ones):
            return head_ones[k]
        q, r = divmod(k - len(head_ones), len(offsets))
        return len(self.indicator.head) + q * len(self.indicator.period) + offsets[r]

    def contains(self, n):
        return n >= 0 and self.indicator.at(n)

    def rank(self, n):
        head_ones, offsets = self._layout
        h = len(self.indicator.head)
        if n <= h:
            return bisect_left(head_ones, n)
        q, r = divmod(n - h, len(self.indicator.period))
        return len(head_ones) + q * len(offsets) + bisect_left(offsets, r)

    def periodic(self):
        return self.indicator

    def to_json(self):
        return {"up": {"head": bitstring(self.indicator.head),
                       "period": bitstring(self.indicator.period)}}


@dataclass(frozen=True)
class TailFrom(NatSet):
    start: int

    def nth(self, k):
        return self.start + k

    def contains(self, n):
        return n >= self.start

    def rank(self, n):
        return max(0, n - self.start)

    def periodic(self):
        if self.start > MAX_HEAD:
            return None
        return UPSeq((False,) * self.start, (True,))

    def to_json(self):
        return {"tail": self.start}


@dataclass(frozen=True)
class MinusFinite(NatSet):
    inner: NatSet
    removed: tuple  # sorted, each a member of inner

    def __post_init__(self):
        object.__setattr__(self, "removed",
                           tuple(sorted(n for n in set(self.removed) if self.inner.contains(n))))

    def nth(self, k):
        c = 0
        while True:
            e = self.inner.nth(k + c)
            c2 = bisect_left(self.removed, e + 1)
            if c2 == c:
                return e
            c = c2

    def contains(self, n):
        return n not in self.removed and self.inner.contains(n)

    def rank(self, n):
        return self.inner.rank(n) - bisect_left(self.removed, n)

    @cached_property
    def _periodic(self):
        inner = self.inner.periodic()
        if inner is None:
            return None
        if not self.removed:
            return inner
        h = max(len(inner.head), self.removed[-1] + 1)
        gone = set(self.removed)
        return UPSeq(tuple(inner.at(i) and i not in gone for i in range(h)),
                     tuple(inner.at(h + j) for j in range(len(inner.period))))

    def periodic(self):
        return self._periodic

    def to_json(self):
        return {"minus": {"inner": self.inner.to_json(), "removed": list(self.removed)}}


@dataclass(frozen=True)
class Glue(NatSet):
    """Elements of ``low`` below ``cut`` followed by elements of ``high`` from ``cut`` on."""

    low: NatSet
    high: NatSet
    cut: int

    @cached_property
    def _split(self):
        return self.low.rank(self.cut), self.high.rank(self.cut)

    def nth(self, k):
        lo, hi = self._split
        if k < lo:
            return self.low.nth(k)
        return self.high.nth(hi + k - lo)

    def contains(self, n):
        return self.low.contains(n) if n < self.cut else self.high.contains(n)

    def rank(self, n):
        if n <= self.cut:
            return self.low.rank(n)
        lo, hi = self._split
        return lo + self.high.rank(n) - hi

    def periodic(self):
        a, b = self.low.periodic(), self.high.periodic()
        if a is None or b is None or self.cut > MAX_HEAD:
            return None
        h = max(len(a.head), len(b.head), self.cut)
        p = lcm(len(a.period), len(b.period))
        return UPSeq.tabulate(lambda i: a.at(i) if i < self.cut else b.at(i), h, p)

    def to_json(self):
        return {"glue": {"low": self.low.to_json(), "high": self.high.to_json(), "cut": self.cut}}


@dataclass(frozen=True)
class EveryOther(NatSet):
    """Elements of ``inner`` at even enumeration indices."""

    inner: NatSet

    def nth(self, k):
        return self.inner.nth(2 * k)

    def contains(self, n):
        return self.inner.contains(n) and self.inner.rank(n) % 2 == 0

    def rank(self, n):
        return (self.inner.rank(n) + 1) // 2

    def to_json(self):
        return {"alt": self.inner.to_json()}


@dataclass(frozen=True)
class IndexClass(NatSet):
    """Elements of ``inner`` whose enumeration index is ``residue`` mod ``q``."""

    inner: NatSet
    residue: int
    q: int

    def nth(self, k):
        return self.inner.nth(self.q * k + self.residue)

    def contains(self, n):
        return self.inner.contains(n) and self.inner.rank(n) % self.q == self.residue

    def rank(self, n):
        r = self.inner.rank(n)
        return max(0, (r - self.residue + self.q - 1) // self.q)


def _code(prefix_value: int, length: int) -> int:
    """Length-lex rank of a binary string given as an integer of ``length`` bits."""
    return (1 << length) - 1 + prefix_value


@dataclass(frozen=True)
class ADMember(NatSet):
    """``{carrier[code(seed[:k])] : k >= 1}`` (branch coding of a binary sequence)."""

    seed: UPSeq  # 0/1 values
    carrier: NatSet

    def _codes(self):
        v = 0
        for k in count(1):
            v = 2 * v + int(self.seed.at(k - 1))
            yield _code(v, k)

    def nth(self, k):
        v = 0
        for i in range(k + 1):
            v = 2 * v + int(self.seed.at(i))
        return self.carrier.nth(_code(v, k + 1))

    def contains(self, n):
        if not self.carrier.contains(n):
            return False
        idx = self.carrier.rank(n)
        length = (idx + 1).bit_length() - 1
        if length < 1:
            return False
        v = idx - ((1 << length) - 1)
        w = 0
        for i in range(length):
            w = 2 * w + int(self.seed.at(i))
        return v == w

    def rank(self, n):
        bound = self.carrier.rank(n)  # carrier[c] < n  iff  c < bound
        k = 0
        for c in self._codes():
            if c >= bound:
                return k
            k += 1

    def to_json(self):
        return {"ad": {"seed": self.seed.to_json(), "carrier": self.carrier.to_json()}}


class Diagonal(NatSet):
    """``{a^n_n}``: the n-th element of the n-th tree's branching set."""

    def __init__(self, sequence):
        self.sequence = sequence
        self._lock = threading.RLock()
        self._memo: list[int] = []

    def nth(self, k):
        with self._lock:
            while len(self._memo) <= k:
                i = len(self._memo)
                self._memo.append(self.sequence[i].A.nth(i))
            return self._memo[k]

    def contains(self, n):
        return self.nth(self.rank(n)) == n

    def rank(self, n):
        k = 0
        while self.nth(k) < n:
            k += 1
        return k

    def __repr__(self):
        return f"Diagonal({self.sequence!r})"


# ---------------------------------------------------------------- constructors

def up(head: str, period: str) -> UltimatelyPeriodic:
    return UltimatelyPeriodic(bits(head, period))


def from_indicator(seq: UPSeq) -> UltimatelyPeriodic:
    return UltimatelyPeriodic(seq)


OMEGA = up("", "1")
EVENS = up("", "10")
ODDS = up("", "01")


def same_set(a: NatSet, b: NatSet) -> bool:
    """Exact set equality when both are periodic, structural equality otherwise."""
    pa, pb = a.periodic(), b.periodic()
    if pa is not None and pb is not None:
        return pa == pb
    return a == b


def normalize(a: NatSet) -> NatSet:
    p = a.periodic()
    return a if p is None or isinstance(a, UltimatelyPeriodic) else UltimatelyPeriodic(p)


def enumerate_set(a: NatSet, k: int) -> int:
    return a.nth(k)


def drop_below(a: NatSet, m: int) -> NatSet:
    """``a`` minus its elements smaller than ``m``."""
    if m <= 0:
        return a
    p = a.periodic()
    if p is not None:
        return UltimatelyPeriodic(combine(lambda b, keep: b and keep, p,
                                          UPSeq((False,) * m, (True,))))
    return MinusFinite(a, tuple(a.below(m)))


def remove_finite(a: NatSet, removed) -> NatSet:
    removed = tuple(removed)
    if not removed:
        return a
    p = a.periodic()
    m = MinusFinite(a, removed)
    return UltimatelyPeriodic(m.periodic()) if p is not None else m


def glue(low: NatSet, high: NatSet, cut: int) -> NatSet:
    g = Glue(low, high, cut)
    p = g.periodic()
    return UltimatelyPeriodic(p) if p is not None else g


def index_classes(a: NatSet, q: int) -> UPSeq | None:
    """Sequence over n: ``rank(n) mod q`` for members, ``None`` otherwise (periodic ``a`` only)."""
    p = a.periodic()
    if p is None:
        return None
    ones = sum(p.period)
    period = len(p.period) * (q // _gcd(ones, q))
    return UPSeq.tabulate(lambda n: a.rank(n) % q if p.at(n) else None, len(p.head), period)


def _gcd(x, y):
    from math import gcd
    return gcd(x, y)


def index_class(a: NatSet, residue: int, q: int) -> NatSet:
    """Elements of ``a`` whose enumeration index is congruent to ``residue`` mod ``q``."""
    cls = index_classes(a, q)
    if cls is None:
        if q == 2 and residue == 0:
            return EveryOther(a)
        return IndexClass(a, residue, q)
    return UltimatelyPeriodic(cls.map(lambda c: c == residue))


def alternate_split(c: NatSet) -> NatSet:
    """Elements of ``c`` at even enumeration indices; both halves stay infinite."""
    if c.periodic() is not None:
        return index_class(c, 0, 2)
    return EveryOther(c)


def reindex(seq: UPSeq, a: NatSet) -> UPSeq:
    """The sequence ``k -> seq[a_k]`` for periodic ``a``, exact."""
    p = a.periodic()
    if p is None:
        raise PreconditionError("reindex needs a periodic index set")
    ones = sum(p.period)
    head_count = sum(p.head)
    k0 = max(head_count, a.rank(len(seq.head)))
    steps = len(seq.period) // _gcd(len(p.period), len(seq.period))
    return UPSeq.tabulate(lambda k: seq.at(a.nth(k)), k0, ones * steps)


def spread(seq: UPSeq, a: NatSet, other: UPSeq) -> UPSeq:
    """Sequence over n: ``seq[rank(n)]`` on members of ``a``, ``other[n]`` off ``a``."""
    p = a.periodic()
    if p is None:
        raise PreconditionError("spread needs a periodic index set")
    ones = sum(p.period)
    n0 = max(len(p.head), len(other.head), a.nth(len(seq.head)))
    steps = lcm(len(seq.period) // _gcd(ones, len(seq.period)),
                len(other.period) // _gcd(len(p.period), len(other.period)))
    return UPSeq.tabulate(lambda n: seq.at(a.rank(n)) if p.at(n) else other.at(n),
                          n0, len(p.period) * steps)


# ---------------------------------------------------------------- AD families

def ad_seed(j: int, width: int) -> UPSeq:
    """``j`` as ``width`` binary digits (most significant first), then ``1010...``."""
    digits = tuple((j >> (width - 1 - i)) & 1 for i in range(width))
    return UPSeq(digits, (1, 0))


def common_prefix_length(a: UPSeq, b: UPSeq) -> int:
    """Length of the longest common prefix; raises if the sequences are equal."""
    if a == b:
        raise PreconditionError("sequences are identical")
    diff = combine(lambda x, y: x != y, a, b)
    return next(i for i in range(diff.horizon) if diff.at(i))


def ad_family(carrier: NatSet, m: int) -> list[ADMember]:
    """``m`` pairwise almost disjoint infinite subsets of ``carrier``.

    Member ``j`` codes the prefixes of a binary sequence starting with the
    digits of ``j``; two members share exactly as many elements as their
    seeds share prefix bits, which is fewer than ``log2(m)`` rounded up.
    """
    if m < 1:
        raise PreconditionError("need at least one member")
    width = max(1, (m - 1).bit_length())
    return [ADMember(ad_seed(j, width), carrier) for j in range(m)]


def ad_intersection(x: ADMember, y: ADMember) -> list[int]:
    """Exact common elements of two members over the same carrier."""
    if x.carrier != y.carrier:
        raise PreconditionError("members over different carriers")
    return [x.nth(k) for k in range(common_prefix_length(x.seed, y.seed))]


# ---------------------------------------------------------------- serialization

def natset_from_json(obj: dict) -> NatSet:
    if "up" in obj:
        return up(obj["up"].get("head", ""), obj["up"]["period"])
    if "tail" in obj:
        return TailFrom(int(obj["tail"]))
    if "minus" in obj:
        body = obj["minus"]
        return MinusFinite(natset_from_json(body["inner"]), tuple(body["removed"]))
    if "glue" in obj:
        body = obj["glue"]
        return Glue(natset_from_json(body["low"]), natset_from_json(body["high"]), int(body["cut"]))
    if "alt" in obj:
        return EveryOther(natset_from_json(obj["alt"]))
    if "ad" in obj:
        body = obj["ad"]
        return ADMember(UPSeq.from_json(body["seed"]), natset_from_json(body["carrier"]))
    raise ValueError(f"unrecognised set descriptor: {obj!r}")
