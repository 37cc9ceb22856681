"""Command-line interface.

Exit codes: 2 parse error, 3 precondition violation, 4 promise violation,
5 oracle mismatch.  ``--json`` switches to one JSON record per line.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import claims as C
from . import oracle
from .avoidance import point_set_responder, sigma_avoid, star_closure_avoid
from .config import Settings
from .errors import NotExactError, NotSerializableError, PromiseViolation, TrimTreeError
from .fusion import TreeSequence, fuse, fusion_trace, hadamard_pipeline
from .partitions import check_family, common_refinement, refines, selector_demo
from .points import point_from_json
from .star import (
    StarSet, disjoint_family, family_pair_bound, separative_witness, splice, splice_cut,
    star_intersect, star_subset,
)
from .trees import FULL, delta, levels, restrict, subset_n, tree_from_json, tree_subset

EXIT_PARSE, EXIT_PRECONDITION, EXIT_PROMISE, EXIT_ORACLE = 2, 3, 4, 5


class InputError(Exception):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _tree(path: str):
    obj = _load(path)
    try:
        return tree_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: not a tree ({exc})") from exc


def _trees(path: str):
    obj = _load(path)
    if not isinstance(obj, list):
        raise InputError(f"{path}: expected a list of trees")
    return [tree_from_json(t) for t in obj]


def _node(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad node {text!r}") from exc


def _tree_out(T, window: int) -> dict:
    return C.tree_desc(T, window)


class Output:
    def __init__(self, structured: bool):
        self.structured = structured

    def emit(self, record: dict, human: str | None = None) -> None:
        if self.structured:
            print(json.dumps(record, default=str))
        else:
            print(human if human is not None else json.dumps(record, default=str))


# ---------------------------------------------------------------- subcommands

def cmd_levels(a, out, log, cfg):
    T = _tree(a.tree)
    nodes = levels(T, a.depth)
    log.add(C.levels_claim(T, a.depth, nodes))
    out.emit({"depth": a.depth, "nodes": [list(s) for s in nodes]},
             "\n".join(",".join(map(str, s)) for s in nodes))


def cmd_restrict(a, out, log, cfg):
    T = _tree(a.tree)
    s = _node(a.node)
    R = restrict(T, s)
    rec = {"tree": _tree_out(R, cfg.horizon)}
    if a.depth is not None:
        nodes = levels(R, a.depth)
        log.add(C.restrict_claim(T, s, a.depth, nodes))
        rec["nodes"] = [list(x) for x in nodes]
    out.emit(rec)


def cmd_delta(a, out, log, cfg):
    T = _tree(a.tree)
    try:
        out.emit({"delta": delta(T).to_json()})
    except NotExactError:
        w = delta(T).window(a.horizon or cfg.horizon)
        out.emit({"window": ["full" if v is FULL else v for v in w]})


def cmd_subset(a, out, log, cfg):
    P, Q = _tree(a.p), _tree(a.q)
    h = a.horizon or cfg.horizon
    ans = tree_subset(P, Q, None if P.exact and Q.exact else h)
    log.add(C.tree_subset_claim(P, Q, ans, C.exact_window(P, Q)))
    out.emit({"subset": ans}, str(ans).lower())


def cmd_subset_n(a, out, log, cfg):
    P, Q = _tree(a.p), _tree(a.q)
    h = a.horizon or cfg.horizon
    ans = subset_n(P, Q, a.n, None if P.exact and Q.exact else h)
    w = max(C.exact_window(P, Q), Q.A.nth(a.n) + 1, P.A.nth(a.n) + 1)
    log.add(C.subset_n_claim(P, Q, a.n, ans, w))
    out.emit({"subset_n": ans, "n": a.n}, str(ans).lower())


def cmd_star_subset(a, out, log, cfg):
    P, Q = _tree(a.p), _tree(a.q)
    res = star_subset(P, Q, a.horizon)
    log.add(C.star_subset_claim(P, Q, res, C.exact_window(P, Q)))
    rec = {"relation": "star_subset", "answer": res.answer,
           "cert": res.cert.to_json() if res.cert else None}
    out.emit(rec, f"{str(res.answer).lower()}" + (f" k0={res.cert.k0}" if res.cert else ""))


def cmd_compat(a, out, log, cfg):
    P, Q = _tree(a.a), _tree(a.b)
    r = star_intersect(P, Q, a.horizon)
    log.add(C.star_intersect_claim(P, Q, r, C.exact_window(P, Q)))
    rec = {"compatible": r.compatible, "evidence": r.evidence}
    if r.pattern is not None:
        rec["finitely_many_empty"] = r.pattern.finitely_many_empty
        rec["infinitely_many_full"] = r.pattern.infinitely_many_full
    if r.witness is not None:
        rec["witness"] = _tree_out(r.witness.tree, cfg.horizon)
    out.emit(rec)


def cmd_splice(a, out, log, cfg):
    P, T = _tree(a.p), _tree(a.t)
    ok, cert = star_subset(P, T)
    if not ok:
        raise TrimTreeError("[P]* is not contained in [T]*")
    Q = splice(P, T, a.n, cert)
    cut = splice_cut(T, a.n, cert) + 1
    w = max(C.exact_window(P, T, Q), cut + 2)
    log.add(C.splice_claim(P, T, a.n, Q, cut, w))
    out.emit({"tree": _tree_out(Q, cfg.horizon), "cut": cut, "cert": cert.to_json()})


def cmd_witness(a, out, log, cfg):
    P, T = _tree(a.p), _tree(a.t)
    Q = separative_witness(P, T).tree
    log.add(C.separative_claim(P, T, Q, C.exact_window(P, T, Q)))
    out.emit({"tree": _tree_out(Q, cfg.horizon)})


def cmd_family(a, out, log, cfg):
    T = _tree(a.tree)
    fam = disjoint_family(T, a.m)
    members = fam[0].origin.members
    bounds = {(i, j): family_pair_bound(members[i], members[j])
              for i in range(a.m) for j in range(i + 1, a.m)}
    log.add(C.disjoint_claim([f.tree for f in fam], bounds, [], a.horizon or 512))
    for i, f in enumerate(fam):
        out.emit({"member": i, "tree": _tree_out(f.tree, cfg.horizon)})


def cmd_fuse(a, out, log, cfg):
    trees = _trees(a.chain)
    seq = TreeSequence(trees, horizon=cfg.horizon)
    for rec in fusion_trace(seq, len(trees)):
        out.emit(rec)
    F = fuse(seq, a.depth or cfg.fuse_depth)
    diag = [seq[n].A.nth(n) for n in range(len(trees))]
    log.add(C.fusion_claim(trees, F, a.depth or cfg.fuse_depth, diag))
    out.emit({"tree": _tree_out(F, cfg.horizon)})


def cmd_hadamard(a, out, log, cfg):
    trees = _trees(a.chain)
    count = min(a.count, len(trees)) if a.count else len(trees)
    res = hadamard_pipeline([StarSet(t) for t in trees[:count]], count, a.depth)
    W = res.star.tree
    for n, cert in enumerate(res.certs):
        t = trees[n]
        log.add(C.star_subset_claim(W, t, (True, cert), C.exact_window(W, t)))
        out.emit({"n": n, "cert": cert.to_json()})
    out.emit({"tree": _tree_out(W, cfg.horizon)})


def _points(path):
    obj = _load(path)
    if not isinstance(obj, list):
        raise InputError(f"{path}: expected a list of points")
    return [point_from_json(p) for p in obj]


def cmd_avoid(a, out, log, cfg):
    T = _tree(a.tree)
    pts = _points(a.points)
    depth = a.depth or cfg.horizon
    P = sigma_avoid([point_set_responder([p]) for p in pts], T, depth)
    log.add(C.avoid_claim(P, pts, depth))
    out.emit({"tree": _tree_out(P, depth)})


def cmd_star_avoid(a, out, log, cfg):
    T = _tree(a.tree)
    pts = _points(a.points)
    depth = a.depth or cfg.horizon
    P = star_closure_avoid(point_set_responder(pts), T, depth, a.count)
    out.emit({"tree": _tree_out(P, depth)})


def _families(path):
    obj = _load(path)
    return [[StarSet(tree_from_json(t)) for t in fam] for fam in obj]


def cmd_refine(a, out, log, cfg):
    fams = _families(a.families)
    for i, f in enumerate(fams):
        ok, pair = check_family(f)
        if not ok:
            raise TrimTreeError(f"family {i}: members {pair} are compatible")
    R = common_refinement(fams)
    for s in R.members:
        out.emit({"member": _tree_out(s.tree, cfg.horizon)})
    out.emit({"refines": [refines(R, f) for f in fams]})


def cmd_selector(a, out, log, cfg):
    fam = [StarSet(t) for t in _trees(a.family)]
    demo = selector_demo(fam)
    pts = demo.points.take(demo.points.length)
    for p in pts:
        out.emit({"point": C.point_desc(p, cfg.horizon)})
    if a.tree:
        T = _tree(a.tree)
        P = demo.responder.respond(T)
        log.add(C.avoid_claim(P, pts, a.depth or cfg.horizon))
        out.emit({"tree": _tree_out(P, cfg.horizon)})


def cmd_oracle(a, out, log, cfg):
    argv = ["verify", a.claims] + (["--window", str(a.window)] if a.window else [])
    argv += ["--json"] if out.structured else []
    argv += ["--jobs", str(a.jobs)]
    return oracle.main(argv)


# ---------------------------------------------------------------- parser

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trimtrees", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")
    common.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                        help="re-check emitted claims with the oracle (default on)")
    common.add_argument("--horizon", type=_positive, default=None)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn: Callable, *specs, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for flags, opts in specs:
            p.add_argument(*flags, **opts)
        p.set_defaults(fn=fn)
        return p

    req = {"required": True}
    add("levels", cmd_levels, (["--tree"], req), (["--depth"], {"type": int, "required": True}))
    add("restrict", cmd_restrict, (["--tree"], req), (["--node"], req),
        (["--depth"], {"type": int}))
    add("delta", cmd_delta, (["--tree"], req))
    add("subset", cmd_subset, (["--p"], req), (["--q"], req))
    add("subset-n", cmd_subset_n, (["--p"], req), (["--q"], req),
        (["--n"], {"type": int, "required": True}))
    add("star-subset", cmd_star_subset, (["--p"], req), (["--q"], req))
    add("compat", cmd_compat, (["--a"], req), (["--b"], req))
    add("splice", cmd_splice, (["--p"], req), (["--t"], req),
        (["--n"], {"type": int, "required": True}))
    add("witness", cmd_witness, (["--p"], req), (["--t"], req))
    add("family", cmd_family, (["--tree"], req), (["--m"], {"type": _positive, "required": True}))
    add("fuse", cmd_fuse, (["--chain"], req), (["--depth"], {"type": _positive}))
    add("hadamard", cmd_hadamard, (["--chain"], req), (["--count"], {"type": _positive}),
        (["--depth"], {"type": _positive}))
    add("avoid", cmd_avoid, (["--tree"], req), (["--points"], req),
        (["--depth"], {"type": _positive}))
    add("star-avoid", cmd_star_avoid, (["--tree"], req), (["--points"], req),
        (["--count"], {"type": _positive, "help": "translates to handle (default: all, lazily)"}),
        (["--depth"], {"type": _positive}))
    add("refine", cmd_refine, (["--families"], req))
    add("selector", cmd_selector, (["--family"], req), (["--tree"], {}),
        (["--depth"], {"type": _positive}))
    add("oracle", cmd_oracle, (["action"], {"choices": ["verify"]}), (["claims"], {}),
            (["--window"], {"type": _positive}), (["--jobs"], {"type": _positive, "default": 1}))
    return ap


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def run(argv=None) -> int:
    ap = _parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    cfg = Settings.from_env()
    out = Output(a.json)
    log = C.ClaimLog()
    try:
        code = a.fn(a, out, log, cfg)
        if code is not None:
            return code
    except InputError as exc:
        print(f"trimtrees: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PromiseViolation as exc:
        print(f"trimtrees: promise violation at index {exc.index}: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except (TrimTreeError, ValueError, NotSerializableError) as exc:
        print(f"trimtrees: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if a.verify and a.cmd != "oracle" and len(log):
        reports = oracle.verify_claims(log.records, cfg.oracle_window)
        bad = [r for r in reports if not r.ok]
        out.emit({"verify": {"claims": len(reports), "passed": len(reports) - len(bad)}},
                 f"verified {len(reports) - len(bad)}/{len(reports)} claims")
        for r in bad:
            print(f"trimtrees: oracle mismatch: {r.kind} {r.detail}", file=sys.stderr)
        if bad:
            return EXIT_ORACLE
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
