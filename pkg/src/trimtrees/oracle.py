"""Brute-force ground truth on truncated universes.

Deliberately self-contained: this module imports nothing from the rest of
the package.  It re-reads the textual descriptors, evaluates them on a
finite window of coordinates, builds node sets level by level, and checks
claim records against those finite objects.  Words are ``bytes`` (one
symbol per byte), a representation the main modules never use.

Window conventions: a statement "for all but finitely many k" is only ever
confirmed inside ``[0, W)``.  A claimed bound ``k0`` must be violation free
on ``[k0, W)`` and, when it claims to be least, violated at ``k0 - 1``.  A
claimed failure of an eventual statement needs a witness in ``[W/2, W)``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

GUARD = 1 << 20
DEFAULT_WINDOW = 32


class OracleError(Exception):
    pass


class GuardError(OracleError):
    pass


class UnsupportedClaim(OracleError):
    pass


# ---------------------------------------------------------------- descriptors

def _periodic(head, period, N):
    head, period = list(head), list(period)
    return [head[i] if i < len(head) else period[(i - len(head)) % len(period)] for i in range(N)]


def _bitlist(s):
    return [c == "1" for c in s]


def set_prefix(desc: dict, N: int) -> list[bool]:
    """Membership of ``0..N-1`` in a serialized set."""
    if "up" in desc:
        return _periodic(_bitlist(desc["up"].get("head", "")), _bitlist(desc["up"]["period"]), N)
    if "tail" in desc:
        return [i >= desc["tail"] for i in range(N)]
    if "minus" in desc:
        out = set_prefix(desc["minus"]["inner"], N)
        for r in desc["minus"]["removed"]:
            if r < N:
                out[r] = False
        return out
    if "glue" in desc:
        g = desc["glue"]
        lo, hi = set_prefix(g["low"], N), set_prefix(g["high"], N)
        return [lo[i] if i < g["cut"] else hi[i] for i in range(N)]
    if "alt" in desc:
        inner = set_prefix(desc["alt"], N)
        out, seen = [], 0
        for b in inner:
            out.append(b and seen % 2 == 0)
            seen += b
        return out
    if "ad" in desc:
        carrier = set_prefix(desc["ad"]["carrier"], N)
        seed = desc["ad"]["seed"]
        out, rank = [], 0
        for b in carrier:
            hit = False
            if b:
                length = (rank + 1).bit_length() - 1
                if length >= 1:
                    bitsv = _periodic(seed.get("head", []), seed["period"], length)
                    want = int("".join(str(int(x)) for x in bitsv), 2)
                    hit = rank - (2 ** length - 1) == want
                rank += 1
            out.append(hit)
        return out
    raise UnsupportedClaim(f"unknown set descriptor {sorted(desc)}")


def sizes_prefix(desc: dict | None, N: int) -> list[int]:
    if desc is None:
        return [2] * N
    return _periodic(desc.get("head", []), desc["period"], N)


def point_prefix(desc: dict, N: int) -> list[int]:
    if "values" in desc:
        vals = list(desc["values"])
        if len(vals) < N:
            raise OracleError(f"point prefix has {len(vals)} values, need {N}")
        return vals[:N]
    if "point" in desc:
        return point_prefix(desc["point"], N)
    if "base" in desc:
        out = _periodic(desc["base"].get("head", []), desc["base"]["period"], N)
        for k, v in desc.get("patch", {}).items():
            if int(k) < N:
                out[int(k)] = v
        return out
    if "patched" in desc:
        out = point_prefix(desc["patched"]["inner"], N)
        for k, v in desc["patched"]["patch"].items():
            if int(k) < N:
                out[int(k)] = v
        return out
    if "mix" in desc:
        m = desc["mix"]
        on = set_prefix(m["on"], N)
        a, b = point_prefix(m["inside"], N), point_prefix(m["outside"], N)
        return [a[i] if on[i] else b[i] for i in range(N)]
    if "succ" in desc:
        inner = point_prefix(desc["succ"]["inner"], N)
        sz = sizes_prefix(desc["succ"]["sizes"], N)
        return [(v + 1) % k for v, k in zip(inner, sz)]
    raise UnsupportedClaim(f"unknown point descriptor {sorted(desc)}")


@dataclass(frozen=True)
class WindowTree:
    """A tree seen through coordinates ``0..N-1``."""

    sizes: tuple
    A: tuple
    ground: tuple

    @property
    def N(self):
        return len(self.A)

    def choices(self, i: int) -> frozenset:
        return frozenset(range(self.sizes[i])) if self.A[i] else frozenset((self.ground[i],))

    def branching(self) -> list[int]:
        return [i for i, b in enumerate(self.A) if b]


def tree_window(desc: dict, N: int) -> WindowTree:
    if "window" in desc:
        w = desc["window"]
        if len(w["A"]) < N:
            raise OracleError(f"tree window has {len(w['A'])} coordinates, need {N}")
        sz = w.get("sizes") or [2] * len(w["A"])
        return WindowTree(tuple(sz[:N]), tuple(bool(b) for b in w["A"][:N]), tuple(w["ground"][:N]))
    if "tree" in desc:
        desc = desc["tree"]
    sz = sizes_prefix(desc.get("sizes"), N)
    if any(s < 2 or s > 255 for s in sz):
        raise OracleError("alphabet sizes must lie in 2..255")
    A = set_prefix(desc["A"], N)
    g = point_prefix(desc["ground"], N)
    return WindowTree(tuple(sz), tuple(A), tuple(g))


# ---------------------------------------------------------------- universes and nodes

@dataclass(frozen=True)
class TruncatedUniverse:
    N: int
    sizes: tuple

    def __post_init__(self):
        if len(self.sizes) != self.N or any(s < 2 for s in self.sizes):
            raise OracleError("need N sizes, each at least 2")

    def words(self, n: int) -> list[bytes]:
        """All words of length ``n + 1``, lexicographic (guarded)."""
        total = 1
        for s in self.sizes[: n + 1]:
            total *= s
        if total > GUARD:
            raise GuardError(f"{total} words exceed the guard")
        level = [b""]
        for i in range(n + 1):
            level = [w + bytes((v,)) for w in level for v in range(self.sizes[i])]
        return level


def nodes_to_depth(T: WindowTree, n: int) -> set[bytes]:
    """Nodes of length ``n + 1``, grown one coordinate at a time."""
    if n >= T.N:
        raise OracleError(f"depth {n} outside window {T.N}")
    level = {b""}
    for i in range(n + 1):
        allowed = sorted(T.choices(i))
        if len(level) * len(allowed) > GUARD:
            raise GuardError("node set exceeds the guard")
        level = {w + bytes((v,)) for w in level for v in allowed}
    return level


def is_node(T: WindowTree, word) -> bool:
    """Walk a word down the tree; every prefix must be a node."""
    for i, v in enumerate(word):
        if v not in T.choices(i):
            return False
    return True


def _max_depth(T: WindowTree, cap: int = 1 << 12) -> int:
    total, d = 1, -1
    for i in range(T.N):
        total *= len(T.choices(i))
        if total > cap:
            break
        d = i
    return d


def _subset_windows(P: WindowTree, T: WindowTree) -> int | None:
    """First coordinate where P's nodes leave T, or ``None`` inside the window.

    Levels are compared as node sets while small; beyond that the product
    structure lets each coordinate be checked on its own.
    """
    d = _max_depth(P)
    if d >= 0:
        tn = nodes_to_depth(T, d) if _max_depth(T) >= d else None
        for w in sorted(nodes_to_depth(P, d)):
            if tn is not None and w not in tn or tn is None and not is_node(T, w):
                return next(i for i in range(d + 1) if w[i] not in T.choices(i))
    for i in range(max(d + 1, 0), P.N):
        if not P.choices(i) <= T.choices(i):
            return i
    return None


def _violations(P: WindowTree, T: WindowTree) -> list[int]:
    return [i for i in range(P.N) if not P.choices(i) <= T.choices(i)]


def _meet(P: WindowTree, T: WindowTree, i: int):
    return P.choices(i) & T.choices(i)


def brute_relation(kind: str, *args, window: int = DEFAULT_WINDOW):
    """Windowed answers for ``subset``, ``subset_n``, ``star_subset_window``, ``intersect_pattern``."""
    if kind == "subset":
        P, T = (tree_window(a, window) for a in args)
        return _subset_windows(P, T) is None
    if kind == "subset_n":
        p, t, n = args
        P, T = tree_window(p, window), tree_window(t, window)
        bp, bt = P.branching(), T.branching()
        if len(bp) <= n or len(bt) <= n:
            raise OracleError("window too small for the branching prefix")
        return _subset_windows(P, T) is None and bp[: n + 1] == bt[: n + 1]
    if kind == "star_subset_window":
        P, T = (tree_window(a, window) for a in args)
        return _violations(P, T)
    if kind == "intersect_pattern":
        P, T = (tree_window(a, window) for a in args)
        out = []
        for i in range(window):
            m = _meet(P, T, i)
            full = P.A[i] and T.A[i]
            out.append("full" if full else (None if not m else min(m)))
        return out
    raise UnsupportedClaim(kind)


# ---------------------------------------------------------------- claims

@dataclass
class Report:
    ok: bool
    kind: str
    detail: str = ""
    coordinate: int | None = None

    def to_json(self):
        return {"ok": self.ok, "kind": self.kind, "detail": self.detail,
                "coordinate": self.coordinate}


def _fail(kind, detail, coordinate=None):
    return Report(False, kind, detail, coordinate)


def _words(values) -> set[bytes]:
    return {bytes(w) for w in values}


def _common_prefix(a: bytes, b: bytes) -> int:
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return k


def _check_levels(c, W):
    n = c["n"]
    T = tree_window(c["tree"], max(W, n + 1))
    got = nodes_to_depth(T, n)
    claimed = _words(c["nodes"])
    if got != claimed:
        extra = sorted(claimed - got)
        if extra:
            bad = extra[0]
            where = next((i for i, v in enumerate(bad) if i >= T.N or v not in T.choices(i)),
                         len(bad))
            return _fail("levels", f"claimed node {list(bad)} is not a node", where)
        bad = sorted(got - claimed)[0]
        where = max((_common_prefix(bad, w) for w in claimed), default=0)
        return _fail("levels", f"node {list(bad)} is missing", where)
    return Report(True, "levels")


def _check_restrict(c, W):
    n, s = c["n"], bytes(c["s"])
    T = tree_window(c["tree"], max(W, n + 1, len(s)))
    if n + 1 <= len(s):
        want = {s[: n + 1]}
    else:
        # prefixes of branches of T with their first |s| values replaced by s
        want = {s + w[len(s):] for w in nodes_to_depth(T, n)}
    claimed = _words(c["nodes"])
    if want != claimed:
        bad = sorted(want ^ claimed)[0]
        return _fail("restrict", f"node {list(bad)} differs")
    return Report(True, "restrict")


def _check_tree_subset(c, W):
    P, T = tree_window(c["p"], W), tree_window(c["q"], W)
    bad = _subset_windows(P, T)
    if c["answer"] != (bad is None):
        return _fail("tree_subset", f"claimed {c['answer']}", bad)
    return Report(True, "tree_subset")


def _check_subset_n(c, W):
    got = brute_relation("subset_n", c["p"], c["q"], c["n"], window=W)
    if got != c["answer"]:
        return _fail("subset_n", f"claimed {c['answer']}")
    return Report(True, "subset_n")


def _check_star_subset(c, W):
    P, T = tree_window(c["p"], W), tree_window(c["q"], W)
    viol = _violations(P, T)
    if not c["answer"]:
        late = [i for i in viol if i >= W // 2]
        if not late:
            return _fail("star_subset", "non-inclusion without a violation in the upper window")
        return Report(True, "star_subset")
    k0 = c["k0"]
    late = [i for i in viol if i >= k0]
    if late:
        return _fail("star_subset", f"violation beyond k0={k0}", late[0])
    if c.get("least", True) and k0 > 0 and (k0 - 1) not in viol:
        return _fail("star_subset", f"k0={k0} is not least", k0 - 1)
    return Report(True, "star_subset")


def _check_star_intersect(c, W):
    P, T = tree_window(c["p"], W), tree_window(c["q"], W)
    empty = [i for i in range(W) if not _meet(P, T, i)]
    fullboth = [i for i in range(W // 2, W) if P.A[i] and T.A[i]]
    late_empty = [i for i in empty if i >= W // 2]
    if c["compatible"]:
        if late_empty:
            return _fail("star_intersect", "Empty in the upper window", late_empty[0])
        if not fullboth:
            return _fail("star_intersect", "no common branching in the upper window")
        if "witness" in c:
            Wt = tree_window(c["witness"], W)
            for i in range(W):
                m = _meet(P, T, i)
                want = m if m else frozenset((0,))
                if Wt.choices(i) != want:
                    return _fail("star_intersect", "witness differs from the meet", i)
        return Report(True, "star_intersect")
    if not late_empty and fullboth:
        return _fail("star_intersect", "no incompatibility evidence in the upper window")
    return Report(True, "star_intersect")


def _check_splice(c, W):
    P, T, Q = (tree_window(c[k], W) for k in ("p", "t", "q"))
    n, cut = c["n"], c["cut"]
    bad = _subset_windows(Q, T)
    if bad is not None:
        return _fail("splice", "result is not a subtree", bad)
    bq, bt = Q.branching(), T.branching()
    if bq[: n + 1] != bt[: n + 1]:
        return _fail("splice", "branching prefix moved")
    for i in range(W):
        ref = T if i < cut else P
        if Q.choices(i) != ref.choices(i):
            return _fail("splice", "δ differs from the spliced inputs", i)
    return Report(True, "splice")


def _check_fusion(c, W):
    depth = c["depth"]
    N = max(W, depth + 1)
    R = tree_window(c["result"], N)
    for k, t in enumerate(c["inputs"]):
        T = tree_window(t, N)
        bad = _subset_windows(R, T)
        if bad is not None and bad <= depth:
            return _fail("fusion", f"result leaves input {k}", bad)
    br = R.branching()
    for n, a in enumerate(c.get("diagonal", [])):
        if n >= len(br) or br[n] != a:
            return _fail("fusion", f"diagonal element {n} is not {a}", a)
    return Report(True, "fusion")


def _check_separative(c, W):
    P, T, Q = (tree_window(c[k], W) for k in ("p", "t", "q"))
    if [i for i in _violations(Q, P) if i >= W // 2]:
        return _fail("separative", "witness is not eventually inside P")
    if not [i for i in range(W // 2, W) if not _meet(Q, T, i)]:
        return _fail("separative", "no Empty coordinate against T in the upper window")
    return Report(True, "separative")


def _check_disjoint(c, W):
    members = [tree_window(m, W) for m in c["members"]]
    bounds = c.get("bounds", {})
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            b = bounds.get(f"{i},{j}", 0)
            empty = [k for k in range(b, W) if not _meet(members[i], members[j], k)]
            if not empty:
                return _fail("disjoint", f"members {i},{j} share every coordinate from {b}")
    for s in c.get("samples", []):
        i, j, x = s["member"], s["other"], s["values"]
        if not is_node(members[i], x[:W]):
            return _fail("disjoint", f"sample is not a branch of member {i}")
        b = bounds.get(f"{min(i, j)},{max(i, j)}", 0)
        if not [k for k in range(b, W) if x[k] not in members[j].choices(k)]:
            return _fail("disjoint", f"sample of {i} stays in member {j}")
    return Report(True, "disjoint")


def _check_avoid(c, W):
    d = c["depth"]
    P = tree_window(c["tree"], max(W, d))
    for k, p in enumerate(c["points"]):
        x = point_prefix(p, d)
        if is_node(P, x):
            return _fail("avoid", f"target {k} has its depth-{d} prefix in the tree")
    return Report(True, "avoid")


def _check_iso(c, W):
    T = tree_window(c["t"], W)
    S = tree_window(c["sub"], W)
    br = T.branching()
    M = len(br)
    Img = tree_window(c["image"], M)
    perm = c.get("perm") or []
    src = list(range(M))
    for k, j in enumerate(perm):
        src[j] = k  # image coordinate j comes from enumeration index k
    for j in range(M):
        a = br[src[j]] if src[j] < M else None
        if a is None:
            continue
        if Img.sizes[j] != T.sizes[a] or Img.choices(j) != S.choices(a):
            return _fail("iso", "image differs from the re-indexed subtree", j)
    for i in range(W):
        if not T.A[i] and S.choices(i) != T.choices(i):
            return _fail("iso", "subtree moves off the branching set", i)
    return Report(True, "iso")


def _check_eventual(c, W):
    p, q = point_prefix(c["p"], W), point_prefix(c["q"], W)
    diff = [i for i in range(W) if p[i] != q[i]]
    if c["agrees"]:
        b = c["bound"]
        if [i for i in diff if i >= b]:
            return _fail("eventual", f"points differ beyond {b}")
        if b > 0 and (b - 1) not in diff:
            return _fail("eventual", f"bound {b} is not least", b - 1)
        return Report(True, "eventual")
    if not [i for i in diff if i >= W // 2]:
        return _fail("eventual", "no disagreement in the upper window")
    return Report(True, "eventual")


CHECKS = {
    "levels": _check_levels, "restrict": _check_restrict, "tree_subset": _check_tree_subset,
    "subset_n": _check_subset_n, "star_subset": _check_star_subset,
    "star_intersect": _check_star_intersect, "splice": _check_splice, "fusion": _check_fusion,
    "separative": _check_separative, "disjoint": _check_disjoint, "avoid": _check_avoid,
    "iso": _check_iso, "eventual": _check_eventual,
}


def verify_claim(claim: dict, window: int | None = None) -> Report:
    kind = claim.get("kind")
    check = CHECKS.get(kind)
    if check is None:
        raise UnsupportedClaim(f"unsupported claim kind {kind!r}")
    W = claim.get("window") or window or DEFAULT_WINDOW
    try:
        return check(claim, W)
    except GuardError as exc:
        return _fail(kind, f"guard: {exc}")
    except (OracleError, KeyError, IndexError, ValueError) as exc:
        return _fail(kind, f"{type(exc).__name__}: {exc}")


def _verify_one(args):
    claim, window = args
    return verify_claim(claim, window)


def verify_claims(claims, window: int | None = None, jobs: int = 1) -> list[Report]:
    """Reports in input order; ``jobs > 1`` fans out over processes."""
    claims = list(claims)
    if jobs > 1 and len(claims) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_verify_one, [(c, window) for c in claims], chunksize=16))
    return [verify_claim(c, window) for c in claims]


def read_claims(path: str) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="oracle", description="Verify claim records by brute force.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", help="check every record of a JSONL claims file")
    v.add_argument("claims")
    v.add_argument("--window", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true", help="one report record per claim")
    args = ap.parse_args(argv)
    try:
        claims = read_claims(args.claims)
        reports = verify_claims(claims, args.window, args.jobs)
    except (OSError, json.JSONDecodeError, UnsupportedClaim) as exc:
        print(f"oracle: {exc}", file=sys.stderr)
        return 2
    failed = 0
    for i, r in enumerate(reports):
        if args.json:
            print(json.dumps({"line": i, **r.to_json()}))
        elif not r.ok:
            print(f"line {i}: {r.kind} FAIL {r.detail}"
                  + (f" (coordinate {r.coordinate})" if r.coordinate is not None else ""))
        failed += not r.ok
    if not args.json:
        print(f"{len(reports) - failed}/{len(reports)} claims verified")
    return 5 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
