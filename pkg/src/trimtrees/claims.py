"""Claim records: what the main modules assert, in a form the oracle can re-check.

Trees and points are written as their textual descriptors when they have
one and as explicit window prefixes otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import DEFAULTS
from .errors import NotSerializableError
from .points import PointLike
from .seq import lcm
from .trees import TrimmedTree, levels


def tree_desc(T: TrimmedTree, window: int) -> dict:
    try:
        return {"tree": T.to_json()}
    except NotSerializableError:
        return {"window": {"sizes": [T.size(i) for i in range(window)],
                           "A": [int(T.A.contains(i)) for i in range(window)],
                           "ground": [T.ground.value(i) for i in range(window)]}}


def point_desc(p: PointLike, window: int) -> dict:
    try:
        return {"point": p.to_json()}
    except NotSerializableError:
        return {"values": p.values(window)}


def exact_window(*trees: TrimmedTree, minimum: int | None = None) -> int:
    """A window whose upper half contains a full period of every exact input."""
    base = DEFAULTS.oracle_window if minimum is None else minimum
    seqs = [t.delta_seq() for t in trees]
    if any(s is None for s in seqs):
        return base
    h = max(len(s.head) for s in seqs)
    p = lcm(*(len(s.period) for s in seqs))
    return max(base, 2 * (h + p) + 2)


def levels_claim(T: TrimmedTree, n: int, nodes=None) -> dict:
    nodes = levels(T, n) if nodes is None else nodes
    return {"kind": "levels", "tree": tree_desc(T, n + 1), "n": n,
            "nodes": [list(s) for s in nodes], "window": n + 1}


def restrict_claim(T: TrimmedTree, s: Sequence[int], n: int, nodes) -> dict:
    w = max(n + 1, len(s))
    return {"kind": "restrict", "tree": tree_desc(T, w), "s": list(s), "n": n,
            "nodes": [list(x) for x in nodes], "window": w}


def tree_subset_claim(P, Q, answer: bool, window: int) -> dict:
    return {"kind": "tree_subset", "p": tree_desc(P, window), "q": tree_desc(Q, window),
            "answer": answer, "window": window}


def subset_n_claim(P, Q, n: int, answer: bool, window: int) -> dict:
    return {"kind": "subset_n", "p": tree_desc(P, window), "q": tree_desc(Q, window), "n": n,
            "answer": answer, "window": window}


def star_subset_claim(P, Q, result, window: int) -> dict:
    answer, cert = result
    rec = {"kind": "star_subset", "p": tree_desc(P, window), "q": tree_desc(Q, window),
           "answer": answer, "window": window}
    if answer:
        rec.update(k0=cert.k0, least=cert.kind == "exact")
    return rec


def star_intersect_claim(P, Q, result, window: int) -> dict:
    rec = {"kind": "star_intersect", "p": tree_desc(P, window), "q": tree_desc(Q, window),
           "compatible": result.compatible, "window": window}
    if result.witness is not None and result.evidence == "exact":
        rec["witness"] = tree_desc(result.witness.tree, window)
    return rec


def splice_claim(P, T, n: int, Q, cut: int, window: int) -> dict:
    return {"kind": "splice", "p": tree_desc(P, window), "t": tree_desc(T, window),
            "q": tree_desc(Q, window), "n": n, "cut": cut, "window": window}


def fusion_claim(inputs: Iterable[TrimmedTree], result: TrimmedTree, depth: int,
                 diagonal: Sequence[int] = (), window: int | None = None) -> dict:
    w = max(depth + 1, window or 0, (max(diagonal) + 1) if diagonal else 0)
    return {"kind": "fusion", "inputs": [tree_desc(t, w) for t in inputs],
            "result": tree_desc(result, w), "depth": depth, "diagonal": list(diagonal),
            "window": w}


def separative_claim(P, T, Q, window: int) -> dict:
    return {"kind": "separative", "p": tree_desc(P, window), "t": tree_desc(T, window),
            "q": tree_desc(Q, window), "window": window}


def disjoint_claim(members, bounds: dict, samples, window: int) -> dict:
    return {"kind": "disjoint", "members": [tree_desc(m, window) for m in members],
            "bounds": {f"{i},{j}": b for (i, j), b in bounds.items()},
            "samples": [{"member": i, "other": j, "values": list(x)} for i, j, x in samples],
            "window": window}


def avoid_claim(P: TrimmedTree, points, depth: int) -> dict:
    return {"kind": "avoid", "tree": tree_desc(P, depth), "depth": depth,
            "points": [point_desc(p, depth) for p in points], "window": depth}


def iso_claim(T, sub, image, perm, window: int) -> dict:
    return {"kind": "iso", "t": tree_desc(T, window), "sub": tree_desc(sub, window),
            "image": tree_desc(image, window), "perm": list(perm or ()), "window": window}


def eventual_claim(p: PointLike, q: PointLike, agrees: bool, bound, window: int) -> dict:
    return {"kind": "eventual", "p": point_desc(p, window), "q": point_desc(q, window),
            "agrees": agrees, "bound": bound, "window": window}


@dataclass
class ClaimLog:
    records: list = field(default_factory=list)

    def add(self, rec: dict) -> dict:
        self.records.append(rec)
        return rec

    def extend(self, recs: Iterable[dict]) -> None:
        self.records.extend(recs)

    def write(self, path) -> None:
        with open(path, "w") as fh:
            for r in self.records:
                fh.write(json.dumps(r) + "\n")

    def __len__(self):
        return len(self.records)
