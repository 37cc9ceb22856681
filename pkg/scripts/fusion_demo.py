"""Fuse the evens-tail chain and bound a decreasing sequence of stars from below."""

import argparse
import json

from trimtrees import StarSet, TreeSequence, fuse, fusion_trace, hadamard_pipeline, tree
from trimtrees.natsets import EVENS, OMEGA, glue


def evens_tail(n):
    return tree(glue(EVENS, OMEGA, 2 * n + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stages", type=int, default=8)
    ap.add_argument("--depth", type=int, default=16)
    args = ap.parse_args()

    seq = TreeSequence(evens_tail)
    for rec in fusion_trace(seq, args.stages):
        print(json.dumps(rec))
    F = fuse(seq, args.depth)
    print("fused C starts", F.A.take(10))
    print("fused ground starts", F.ground.values(10))

    res = hadamard_pipeline([StarSet(evens_tail(n)) for n in range(args.stages)])
    print("lower bound", res.star.tree)
    for n, cert in enumerate(res.certs):
        print(f"  W ⊆* stage {n}: {cert.to_json()}")


if __name__ == "__main__":
    main()
