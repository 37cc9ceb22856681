"""The poset of star-closures ``[T]*`` under inclusion.

``[P]* ⊆ [T]*`` holds iff ``δ(P)(k) ⊆ δ(T)(k)`` for all but finitely many
``k``.  On periodic trees that is one scan of a combined periodic sequence;
the least valid bound ``k0`` is the length of its canonical head.  Inputs
outside the periodic class get either a construction-backed ``constructed``
certificate or a windowed ``horizon`` answer, never a silent guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import NotExactError, PreconditionError
from .natsets import (
    ADMember, EveryOther, IndexClass, MinusFinite, NatSet, TailFrom, UltimatelyPeriodic, ad_family,
    ad_intersection, alternate_split, glue, reindex, spread,
)
from .points import AlphabetSpec, Point, mix_point, successor_point
from .seq import UPSeq, combine, cutoff, support_bound
from .trees import FULL, TrimmedTree, delta_le, delta_violations, tree_subset


class _Empty:
    def __repr__(self):
        return "Empty"


EMPTY = _Empty()


@dataclass(frozen=True)
class FamilyOrigin:
    """Provenance of a ``disjoint_family`` member."""

    parent: TrimmedTree
    members: tuple  # the AD sets C_j
    index: int


@dataclass(frozen=True, eq=False)
class StarSet:
    tree: TrimmedTree
    origin: FamilyOrigin | None = None

    def __eq__(self, other):
        return isinstance(other, StarSet) and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)

    def to_json(self):
        return self.tree.to_json()


def star(T: TrimmedTree) -> StarSet:
    return StarSet(T)


@dataclass(frozen=True)
class InclusionCert:
    kind: str  # "exact" | "constructed" | "horizon"
    k0: int
    provenance: str | None = None
    depth: int | None = None

    @property
    def conclusive(self) -> bool:
        return self.kind != "horizon"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "k0": self.k0}
        if self.provenance:
            out["provenance"] = self.provenance
        if self.depth is not None:
            out["depth"] = self.depth
        return out


class SubsetResult(NamedTuple):
    answer: bool
    cert: InclusionCert | None


def _tree(x) -> TrimmedTree:
    return x.tree if isinstance(x, StarSet) else x


def star_subset(P, T, horizon: int | None = None) -> SubsetResult:
    """Decide ``[P]* ⊆ [T]*`` and return the least bound ``k0`` when true."""
    p, t = _tree(P), _tree(T)
    if p.alphabet != t.alphabet:
        raise PreconditionError("stars over different alphabets")
    bad = delta_violations(p, t)
    if bad is not None:
        k0 = support_bound(bad)
        return SubsetResult(k0 is not None, InclusionCert("exact", k0) if k0 is not None else None)
    origin = P.origin if isinstance(P, StarSet) else None
    if origin is not None and origin.parent == t:
        # each family member sits inside its parent at every coordinate
        return SubsetResult(True, InclusionCert("constructed", 0, "disjoint_family"))
    if p.ground == t.ground and _thinned_from(p.A, t.A):
        return SubsetResult(True, InclusionCert("constructed", 0, "thinned"))
    if horizon is None:
        raise NotExactError("star_subset on lazy trees needs a horizon")
    viol = [k for k in range(horizon) if not delta_le(p.delta_at(k), t.delta_at(k))]
    ok = not viol or viol[-1] < horizon // 2
    k0 = viol[-1] + 1 if viol else 0
    return SubsetResult(ok, InclusionCert("horizon", k0, depth=horizon) if ok else None)


def _thinned_from(a, b) -> bool:
    """``a`` is built from ``b`` by dropping elements, so ``a ⊆ b``."""
    while a != b:
        if isinstance(a, (IndexClass, EveryOther, MinusFinite)):
            a = a.inner
        else:
            return False
    return True


def star_equal(P, T) -> bool:
    return star_subset(P, T).answer and star_subset(T, P).answer


# ---------------------------------------------------------------- intersection

def _meet(x, y):
    if x is FULL:
        return y
    if y is FULL or x == y:
        return x
    return EMPTY


@dataclass(frozen=True)
class IntersectionPattern:
    values: UPSeq | None  # Empty / int / FULL per coordinate; None for lazy inputs
    finitely_many_empty: bool
    infinitely_many_full: bool
    empty_bound: int | None  # least b with no Empty at or beyond b

    def at(self, n: int):
        return self.values.at(n)


class IntersectionResult(NamedTuple):
    pattern: IntersectionPattern | None
    compatible: bool
    witness: StarSet | None
    evidence: str = "exact"  # "exact" | "constructed" | "horizon"
    empty_bound: int | None = None  # constructed: Empty recurs beyond this bound
    empty_coords: tuple = ()  # horizon: Empty coordinates seen in the window


def intersection_pattern(P, Q) -> IntersectionPattern:
    p, q = _tree(P), _tree(Q)
    dp, dq = p.delta_seq(), q.delta_seq()
    if dp is None or dq is None:
        raise NotExactError("intersection pattern of lazy trees")
    pat = combine(_meet, dp, dq)
    b = support_bound(pat.map(lambda v: v is EMPTY))
    return IntersectionPattern(pat, b is not None, any(v is FULL for v in pat.period), b)


def star_intersect(P, Q, horizon: int | None = None) -> IntersectionResult:
    """Compatibility of two stars and, when compatible, a tree for the intersection.

    Compatible iff Empty occurs finitely often and both branch fully
    infinitely often; otherwise the intersection is empty or a single
    eventual-agreement class, which is countable.
    """
    p, q = _tree(P), _tree(Q)
    if p.alphabet != q.alphabet:
        raise PreconditionError("stars over different alphabets")
    if p.exact and q.exact:
        pat = intersection_pattern(p, q)
        compatible = pat.finitely_many_empty and pat.infinitely_many_full
        witness = None
        if compatible:
            seq = pat.values.map(lambda v: 0 if v is EMPTY else v)
            A = UltimatelyPeriodic(seq.map(lambda v: v is FULL))
            witness = StarSet(TrimmedTree(A, Point(seq.map(lambda v: 0 if v is FULL else v)),
                                          p.alphabet))
        return IntersectionResult(pat, compatible, witness)
    fam = _family_pair(P, Q)
    if fam is not None:
        return fam
    for a, b in ((P, Q), (Q, P)):
        try:
            inside = star_subset(a, b).answer
        except NotExactError:
            continue
        if inside:
            # a star inside the other one by construction (family member, thinning)
            return IntersectionResult(None, True, a if isinstance(a, StarSet) else StarSet(a),
                                      "constructed")
    if horizon is None:
        raise NotExactError("star_intersect on lazy trees needs a horizon")
    pat = [_meet(p.delta_at(k), q.delta_at(k)) for k in range(horizon)]
    late = pat[horizon // 2:]
    compatible = all(v is not EMPTY for v in late) and any(v is FULL for v in late)
    empties = tuple(k for k, v in enumerate(pat) if v is EMPTY)
    return IntersectionResult(None, compatible, None, "horizon", empty_coords=empties)


def _family_pair(P, Q) -> IntersectionResult | None:
    oa = P.origin if isinstance(P, StarSet) else None
    ob = Q.origin if isinstance(Q, StarSet) else None
    if oa is None or ob is None or oa.parent != ob.parent or oa.members != ob.members:
        return None
    if oa.index == ob.index:
        return IntersectionResult(None, True, P, "constructed")
    bound = family_pair_bound(oa.members[oa.index], oa.members[ob.index])
    return IntersectionResult(None, False, None, "constructed", empty_bound=bound)


# ---------------------------------------------------------------- constructions

def _cert_for(P, T, cert: InclusionCert | None, allow_unverified: bool) -> InclusionCert:
    if cert is None:
        ok, cert = star_subset(P, T)
        if not ok:
            raise PreconditionError("[P]* is not contained in [T]*")
    if cert.kind == "horizon" and not allow_unverified:
        raise PreconditionError("horizon certificate is not conclusive; pass allow_unverified")
    return cert


def splice(P, T, n: int, cert: InclusionCert | None = None,
           allow_unverified: bool = False) -> TrimmedTree:
    """A tree ``Q ⊆_n T`` with ``[Q]* = [P]*``.

    ``δ(Q)`` copies ``δ(T)`` up to ``max(a_n, k0)`` and ``δ(P)`` beyond,
    where ``a_n`` is the n-th branching coordinate of ``T``.
    """
    p, t = _tree(P), _tree(T)
    cert = _cert_for(P, T, cert, allow_unverified)
    m = max(t.A.nth(n), cert.k0)
    return glue_trees(t, p, m + 1)


def splice_cut(T, n: int, cert: InclusionCert) -> int:
    return max(_tree(T).A.nth(n), cert.k0)


def glue_trees(low: TrimmedTree, high: TrimmedTree, cut: int) -> TrimmedTree:
    """δ of ``low`` below ``cut``, δ of ``high`` from ``cut`` on."""
    if low.alphabet != high.alphabet:
        raise PreconditionError("trees over different alphabets")
    dl, dh = low.delta_seq(), high.delta_seq()
    if dl is not None and dh is not None:
        seq = combine(lambda c, x, y: x if c else y, cutoff(cut), dl, dh)
        A = UltimatelyPeriodic(seq.map(lambda v: v is FULL))
        return TrimmedTree(A, Point(seq.map(lambda v: 0 if v is FULL else v)), low.alphabet)
    A = glue(low.A, high.A, cut)
    return TrimmedTree(A, mix_point(TailFrom(cut), high.ground, low.ground), low.alphabet)


def separative_witness(P, T) -> StarSet:
    """``[Q]* ⊆ [P]*`` incompatible with ``[T]*``, given ``[P]* ⊄ [T]*``."""
    p, t = _tree(P), _tree(T)
    if star_subset(p, t).answer:
        raise PreconditionError("[P]* is contained in [T]*; no witness exists")
    dp, dt = p.delta_seq(), t.delta_seq()
    if dp is None or dt is None:
        raise NotExactError("separative_witness needs periodic trees")

    def escape(x, y):
        # least symbol of δ(P)(n) outside δ(T)(n), or None
        if y is FULL:
            return None
        if x is FULL:
            return 0 if y != 0 else 1
        return x if x != y else None

    esc = combine(escape, dp, dt)
    Z = UltimatelyPeriodic(esc.map(lambda v: v is not None))
    full_p = p.A.periodic()
    N = alternate_split(Z)
    rest = combine(lambda f, z: f and not z, full_p, N.periodic())
    if not any(rest.period):
        N = UltimatelyPeriodic(combine(lambda z, e: z and not e, Z.periodic(), N.periodic()))
    nb = N.periodic()
    seq = combine(lambda inn, x, e: e if inn else x, nb, dp, esc)
    A = UltimatelyPeriodic(seq.map(lambda v: v is FULL))
    return StarSet(TrimmedTree(A, Point(seq.map(lambda v: 0 if v is FULL else v)), p.alphabet))


def disjoint_family(T, m: int) -> list[StarSet]:
    """``m`` pairwise disjoint stars inside ``[T]*``.

    Takes an almost disjoint family ``C_j`` inside the branching set, keeps
    every other element of each ``C_j`` branching, and recolours the rest of
    ``C_j`` to ``ground + 1``.
    """
    t = _tree(T)
    if m < 1:
        raise PreconditionError("need at least one member")
    members = tuple(ad_family(t.A, m))
    gamma = successor_point(t.ground, t.alphabet)
    out = []
    for j, C in enumerate(members):
        ground = mix_point(C, gamma, t.ground)
        out.append(StarSet(TrimmedTree(alternate_split(C), ground, t.alphabet),
                           FamilyOrigin(t, members, j)))
    return out


def family_pair_bound(C: ADMember, D: ADMember) -> int:
    """Least ``b`` such that ``C`` and ``D`` share no element ``>= b``."""
    common = ad_intersection(C, D)
    return common[-1] + 1 if common else 0


def family_empty_coords(C: NatSet, bound: int, limit: int) -> list[int]:
    """Coordinates of ``C`` minus its kept half in ``[bound, limit)``: each is Empty for the pair."""
    kept = alternate_split(C)
    return [n for n in C.below(limit) if n >= bound and not kept.contains(n)]


# ---------------------------------------------------------------- isomorphisms

def _check_prefix_perm(perm):
    if perm is None:
        return None
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise PreconditionError("prefix table must be a permutation of 0..m-1")
    return perm


def _permute_front(seq: UPSeq, perm) -> UPSeq:
    if not perm:
        return seq
    m = len(perm)
    h = max(len(seq.head), m)
    vals = [seq.at(i) for i in range(h)]
    inv = [0] * m
    for k, j in enumerate(perm):
        inv[j] = k
    front = [vals[inv[j]] for j in range(m)]
    return UPSeq(tuple(front + vals[m:]), tuple(seq.at(h + j) for j in range(len(seq.period))))


def _unpermute_front(seq: UPSeq, perm) -> UPSeq:
    if not perm:
        return seq
    m = len(perm)
    h = max(len(seq.head), m)
    vals = [seq.at(i) for i in range(h)]
    back = [vals[perm[k]] for k in range(m)]
    return UPSeq(tuple(back + vals[m:]), tuple(seq.at(h + j) for j in range(len(seq.period))))


def iso_phi(T: TrimmedTree, sub: TrimmedTree, prefix_perm=None) -> TrimmedTree:
    """Re-index a subtree of ``T = T[A, α]`` along ``a_k -> k``.

    The image lives over the alphabet ``k -> sizes(a_k)``.  ``prefix_perm``
    optionally permutes the first ``m`` indices of the bijection.
    """
    perm = _check_prefix_perm(prefix_perm)
    if not (T.exact and sub.exact):
        raise NotExactError("isomorphisms need periodic trees")
    if not tree_subset(sub, T):
        raise PreconditionError("argument is not a subtree of T")
    sizes = _permute_front(reindex(T.alphabet.sizes, T.A), perm)
    assert all(s >= 2 for s in sizes.head + sizes.period)
    A = _permute_front(reindex(sub.A.periodic(), T.A), perm)
    g = _permute_front(reindex(sub.ground.periodic(), T.A), perm)
    return TrimmedTree(UltimatelyPeriodic(A), Point(g), AlphabetSpec(sizes))


def iso_psi(T: TrimmedTree, other: TrimmedTree, prefix_perm=None) -> TrimmedTree:
    """Inverse of ``iso_phi``: pull a tree over the re-indexed alphabet back below ``T``."""
    perm = _check_prefix_perm(prefix_perm)
    if not (T.exact and other.exact):
        raise NotExactError("isomorphisms need periodic trees")
    expected = _permute_front(reindex(T.alphabet.sizes, T.A), perm)
    if other.alphabet.sizes != expected:
        raise PreconditionError("tree is not over the re-indexed alphabet of T")
    C = _unpermute_front(other.A.periodic(), perm)
    g = _unpermute_front(other.ground.periodic(), perm)
    A = spread(C, T.A, UPSeq.constant(False))
    ground = spread(g, T.A, T.ground.periodic())
    return TrimmedTree(UltimatelyPeriodic(A), Point(ground), T.alphabet)

