"""Finite pairwise-incompatible families of stars.

These are finite approximations of maximal antichains: nothing here claims
maximality, and ``complement_check`` reports probes that a family misses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import NamedTuple

from .avoidance import CountablePointSet, PointSetResponder
from .config import DEFAULTS
from .errors import NotExactError, PreconditionError
from .points import ZERO, Point, PointLike, mix_point
from .seq import UPSeq, combine
from .star import StarSet, splice, star_equal, star_intersect, star_subset
from .trees import TrimmedTree, in_star, star_violations_window


def _as_star(x) -> StarSet:
    return x if isinstance(x, StarSet) else StarSet(x)


def _compatible(a: StarSet, b: StarSet) -> bool:
    return star_intersect(a, b, horizon=DEFAULTS.horizon).compatible


def check_family(members) -> tuple[bool, tuple[int, int] | None]:
    """Whether all pairs are incompatible; otherwise the first compatible pair."""
    members = [_as_star(m) for m in members]
    for i, j in combinations(range(len(members)), 2):
        if _compatible(members[i], members[j]):
            return False, (i, j)
    return True, None


@dataclass(frozen=True)
class IncompatibleFamily:
    members: tuple
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(_as_star(m) for m in self.members))
        ok, pair = check_family(self.members)
        if not ok:
            raise PreconditionError(f"members {pair} are compatible")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_json(self) -> list:
        return [m.to_json() for m in self.members]


def _members(F) -> tuple:
    return F.members if isinstance(F, IncompatibleFamily) else tuple(_as_star(m) for m in F)


def refines(P, Q) -> bool:
    """Every member of ``P`` lies inside some member of ``Q``."""
    qs = _members(Q)
    return all(any(star_subset(p, q, horizon=DEFAULTS.horizon).answer for q in qs)
               for p in _members(P))


def _dedupe(stars: list[StarSet]) -> list[StarSet]:
    out: list[StarSet] = []
    for s in stars:
        if s.tree.exact and any(o.tree.exact and star_equal(s, o) for o in out):
            continue
        out.append(s)
    return out


def common_refinement(families) -> IncompatibleFamily:
    """Intersection witnesses over the product of the families.

    Choices that differ in some family are incompatible there, so the
    surviving witnesses are pairwise incompatible.
    """
    fams = [_members(F) for F in families]
    if not fams:
        return IncompatibleFamily(())
    out = []
    for choice in product(*fams):
        cur = choice[0]
        for m in choice[1:]:
            r = star_intersect(cur, m, horizon=DEFAULTS.horizon)
            if not r.compatible or r.witness is None:
                cur = None
                break
            cur = r.witness
        if cur is not None:
            out.append(cur)
    return IncompatibleFamily(tuple(_dedupe(out)), ("common refinement",))


def build_avoiding_family(R, seeds) -> IncompatibleFamily:
    """Stars below the seeds that miss the target, thinned greedily in input order."""
    kept: list[StarSet] = []
    for T in seeds:
        s = StarSet(R.respond_star(T.tree if isinstance(T, StarSet) else T))
        if all(not _compatible(s, k) for k in kept):
            kept.append(s)
    return IncompatibleFamily(tuple(kept), ("avoiding family",))


# ---------------------------------------------------------------- selectors

def canonical_point(T: TrimmedTree) -> PointLike:
    """The branch of ``T`` that is 0 on every branching coordinate."""
    return mix_point(T.A, ZERO, T.ground)


def _patterns():
    yield UPSeq.constant(0)
    yield UPSeq.constant(1)
    yield UPSeq((), (0, 1))
    yield UPSeq((), (1, 0))
    yield UPSeq((), (0, 0, 1))
    yield UPSeq((), (1, 1, 0))


def _candidates(T: TrimmedTree):
    yield canonical_point(T)
    a = T.A.periodic()
    g = T.ground.periodic()
    if a is None or g is None:
        return
    for pat in list(_patterns())[1:]:
        yield Point(combine(lambda b, v, c: c if b else v, a, g, pat))


def _outside_star(p: PointLike, member: StarSet, origin_of_p) -> bool:
    t = member.tree
    if t.exact and p.periodic() is not None:
        return not in_star(t, p)[0]
    o = member.origin
    if o is not None and origin_of_p is not None and o.members == origin_of_p.members:
        # a family member's canonical point leaves every other member's recoloured half
        return o.index != origin_of_p.index
    w = DEFAULTS.horizon
    return bool(star_violations_window(t, p, w // 2, w))


class SelectorDemo(NamedTuple):
    points: CountablePointSet
    responder: "SelectorResponder"


@dataclass
class SelectorResponder(PointSetResponder):
    """Dodges a finite selector of a family.

    Given ``T``, a member compatible with ``[T]*`` meets it in a star that can
    hold only that member's selector point; that point's star is removed and
    the result is spliced back under ``T``.
    """

    family: tuple = field(default=())

    def respond(self, T):
        pts = self.points.take(self.points.length)
        for j, m in enumerate(self.family):
            try:
                r = star_intersect(T, m)
                if not r.compatible:
                    continue
                W = PointSetResponder(CountablePointSet([pts[j]])).respond_star(r.witness.tree)
                ok, cert = star_subset(W, T)
                if ok:
                    return splice(W, T, 0, cert)
            except NotExactError:
                break
        return self.respond_star(T)


def selector_demo(F) -> SelectorDemo:
    members = _members(F)
    if not members:
        raise PreconditionError("selector of an empty family")
    chosen: list[PointLike] = []
    for i, m in enumerate(members):
        others = [o for j, o in enumerate(members) if j != i]
        pick = None
        for p in _candidates(m.tree):
            if all(_outside_star(p, o, m.origin) for o in others):
                pick = p
                break
        if pick is None:
            raise PreconditionError(f"no selector candidate for member {i}")
        chosen.append(pick)
    pts = CountablePointSet(chosen)
    return SelectorDemo(pts, SelectorResponder(pts, family=members))


def complement_check(F, probes) -> list[dict]:
    """For each probe, a witness inside it and some member, or a non-maximality flag."""
    members = _members(F)
    out = []
    for i, probe in enumerate(probes):
        probe = _as_star(probe)
        rec = {"probe": i, "member": None, "witness": None, "non_maximal": True}
        for j, m in enumerate(members):
            r = star_intersect(probe, m, horizon=DEFAULTS.horizon)
            if r.compatible:
                rec.update(member=j, witness=r.witness, non_maximal=False)
                break
        out.append(rec)
    return out
