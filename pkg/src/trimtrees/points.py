"""The product universe: alphabets, points and finite nodes.

Exact points (``Point``) are a purely periodic base plus a finite patch; this
form is unique, so dataclass equality is equality of points.  Constructions
that leave the periodic class (recolouring on a sparse set, fused grounds)
produce lazy points that evaluate coordinates on demand.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import NotExactError, NotSerializableError, SymbolError
from .seq import UPSeq, combine, support_bound, with_overrides

FiniteNode = tuple  # tuple[int, ...]; length m means a node in X_0 x ... x X_{m-1}


@dataclass(frozen=True)
class AlphabetSpec:
    sizes: UPSeq

    def __post_init__(self):
        if any(s < 2 for s in self.sizes.head + self.sizes.period):
            raise ValueError("every alphabet needs at least two symbols")

    @classmethod
    def constant(cls, k: int) -> "AlphabetSpec":
        return cls(UPSeq.constant(k))

    @classmethod
    def of(cls, head: Sequence[int], period: Sequence[int]) -> "AlphabetSpec":
        return cls(UPSeq(tuple(head), tuple(period)))

    def size(self, i: int) -> int:
        return self.sizes.at(i)

    def to_json(self) -> dict:
        return {"sizes": self.sizes.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "AlphabetSpec":
        return cls(UPSeq.from_json(obj["sizes"] if "sizes" in obj else obj))


BINARY = AlphabetSpec.constant(2)


def check_node(alphabet: AlphabetSpec, s: Sequence[int]) -> FiniteNode:
    s = tuple(int(v) for v in s)
    for i, v in enumerate(s):
        if not 0 <= v < alphabet.size(i):
            raise SymbolError(f"symbol {v} at coordinate {i} outside 0..{alphabet.size(i) - 1}")
    return s


class PointLike(ABC):
    """Anything with a value at every coordinate."""

    @abstractmethod
    def value(self, i: int) -> int: ...

    def values(self, n: int) -> list[int]:
        return [self.value(i) for i in range(n)]

    def periodic(self) -> UPSeq | None:
        return None

    def to_json(self) -> dict:
        raise NotSerializableError(f"{type(self).__name__} has no textual form")


@dataclass(frozen=True)
class Point(PointLike):
    """Purely periodic ``base`` with a minimal finite ``patch``."""

    base: UPSeq
    patch: tuple = ()  # sorted (coordinate, value) pairs

    def __post_init__(self):
        full = with_overrides(self.base, dict(self.patch))
        h = len(full.head)
        p = len(full.period)
        base = UPSeq((), tuple(full.period[(j - h) % p] for j in range(p)))
        patch = tuple((i, v) for i, v in enumerate(full.head) if v != base.at(i))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "patch", patch)

    @classmethod
    def make(cls, head: Iterable[int] = (), period: Iterable[int] = (0,),
             patch: Mapping[int, int] | None = None) -> "Point":
        seq = UPSeq(tuple(head), tuple(period))
        return cls(seq, tuple(sorted((patch or {}).items())))

    @classmethod
    def constant(cls, v: int) -> "Point":
        return cls(UPSeq.constant(v))

    @classmethod
    def from_seq(cls, seq: UPSeq) -> "Point":
        return cls(seq)

    @property
    def patch_map(self) -> dict:
        return dict(self.patch)

    @cached_property
    def _full(self) -> UPSeq:
        return with_overrides(self.base, dict(self.patch))

    def value(self, i: int) -> int:
        return self._full.at(i)

    def periodic(self) -> UPSeq:
        return self._full

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "patch": {str(i): v for i, v in self.patch}}


ZERO = Point.constant(0)


@dataclass(frozen=True, eq=False)
class PatchedPoint(PointLike):
    inner: PointLike
    patch: tuple

    @cached_property
    def _overrides(self) -> dict:
        return dict(self.patch)

    def value(self, i):
        v = self._overrides.get(i)
        return self.inner.value(i) if v is None else v

    def to_json(self):
        return {"patched": {"inner": self.inner.to_json(),
                            "patch": {str(i): v for i, v in self.patch}}}


@dataclass(frozen=True, eq=False)
class MixedPoint(PointLike):
    """``inside`` on the coordinates of ``on``, ``outside`` elsewhere."""

    on: Any  # NatSet
    inside: PointLike
    outside: PointLike

    def value(self, i):
        return self.inside.value(i) if self.on.contains(i) else self.outside.value(i)

    def to_json(self):
        return {"mix": {"on": self.on.to_json(), "inside": self.inside.to_json(),
                        "outside": self.outside.to_json()}}


@dataclass(frozen=True, eq=False)
class SuccessorPoint(PointLike):
    """Coordinatewise ``(inner(i) + 1) mod sizes(i)``."""

    inner: PointLike
    alphabet: AlphabetSpec

    def value(self, i):
        return (self.inner.value(i) + 1) % self.alphabet.size(i)

    def to_json(self):
        return {"succ": {"inner": self.inner.to_json(), "sizes": self.alphabet.sizes.to_json()}}


@dataclass(frozen=True, eq=False)
class FunctionPoint(PointLike):
    fn: Callable[[int], int]
    label: str = "lazy"
    _memo: dict = field(default_factory=dict, repr=False)

    def value(self, i):
        try:
            return self._memo[i]
        except KeyError:
            v = self._memo[i] = self.fn(i)  # idempotent; a racing recomputation is harmless
            return v


def point_value(p: PointLike, i: int) -> int:
    return p.value(i)


def patch_point(p: PointLike, s: Sequence[int], alphabet: AlphabetSpec | None = None) -> PointLike:
    """The point agreeing with ``s`` below ``len(s)`` and with ``p`` elsewhere."""
    if alphabet is not None:
        s = check_node(alphabet, s)
    overrides = {i: int(v) for i, v in enumerate(s)}
    seq = p.periodic()
    if seq is not None:
        return Point(with_overrides(seq, overrides))
    if not overrides:
        return p
    return PatchedPoint(p, tuple(sorted(overrides.items())))


def force_values(p: PointLike, overrides: Mapping[int, int]) -> PointLike:
    if not overrides:
        return p
    seq = p.periodic()
    if seq is not None:
        return Point(with_overrides(seq, dict(overrides)))
    return PatchedPoint(p, tuple(sorted(overrides.items())))


def mix_point(on, inside: PointLike, outside: PointLike) -> PointLike:
    bits_on, si, so = on.periodic(), inside.periodic(), outside.periodic()
    if bits_on is not None and si is not None and so is not None:
        return Point(combine(lambda b, x, y: x if b else y, bits_on, si, so))
    return MixedPoint(on, inside, outside)


def successor_point(p: PointLike, alphabet: AlphabetSpec) -> PointLike:
    seq = p.periodic()
    if seq is not None:
        return Point(combine(lambda v, k: (v + 1) % k, seq, alphabet.sizes))
    return SuccessorPoint(p, alphabet)


def check_point(alphabet: AlphabetSpec, p: PointLike) -> None:
    seq = p.periodic()
    if seq is None:
        return
    bad = combine(lambda v, k: not 0 <= v < k, seq, alphabet.sizes)
    if any(bad.head) or any(bad.period):
        i = next(i for i in range(bad.horizon) if bad.at(i))
        raise SymbolError(f"point value {seq.at(i)} at coordinate {i} outside alphabet")


def eventually_agrees(p: PointLike, q: PointLike) -> tuple[bool, int | None]:
    """Decide whether ``p`` and ``q`` differ at finitely many coordinates.

    Returns ``(True, b)`` with ``b`` the least bound beyond which they agree,
    or ``(False, None)``.
    """
    sp, sq = p.periodic(), q.periodic()
    if sp is None or sq is None:
        raise NotExactError("eventually_agrees needs ultimately periodic points")
    b = support_bound(combine(lambda x, y: x != y, sp, sq))
    return (b is not None, b)


def disagreement_from(p: PointLike, q: PointLike, start: int, limit: int) -> int | None:
    """First coordinate in ``[start, limit)`` where the points differ."""
    for i in range(start, limit):
        if p.value(i) != q.value(i):
            return i
    return None


def point_from_json(obj: dict) -> PointLike:
    from .natsets import natset_from_json

    if "base" in obj:
        patch = {int(k): int(v) for k, v in obj.get("patch", {}).items()}
        return Point(UPSeq.from_json(obj["base"]), tuple(sorted(patch.items())))
    if "patched" in obj:
        body = obj["patched"]
        inner = point_from_json(body["inner"])
        return force_values(inner, {int(k): int(v) for k, v in body["patch"].items()})
    if "mix" in obj:
        body = obj["mix"]
        return mix_point(natset_from_json(body["on"]), point_from_json(body["inside"]),
                         point_from_json(body["outside"]))
    if "succ" in obj:
        body = obj["succ"]
        return successor_point(point_from_json(body["inner"]),
                               AlphabetSpec(UPSeq.from_json(body["sizes"])))
    raise ValueError(f"unrecognised point: {obj!r}")
