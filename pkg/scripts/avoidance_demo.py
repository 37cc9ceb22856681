"""Avoid countably many points, then the whole star of the zero point."""

import argparse

from trimtrees import Point, point_set_responder, sigma_avoid, star_closure_avoid, tree
from trimtrees.natsets import OMEGA
from trimtrees.points import ZERO
from trimtrees.trees import contains_node


def enumerated_point(k):
    return Point.make([int(b) for b in bin(k)[2:]] + [1, 1], (0,))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=100)
    ap.add_argument("--depth", type=int, default=64)
    args = ap.parse_args()

    full = tree(OMEGA)
    pts = [enumerated_point(k) for k in range(args.points)]
    P = sigma_avoid([point_set_responder([p]) for p in pts], full, depth=16)
    hit = sum(contains_node(P, p.values(args.depth)) for p in pts)
    print(f"sigma_avoid: {args.points} targets, {hit} prefixes left at depth {args.depth}")
    print("  result", P)

    S = star_closure_avoid(point_set_responder([ZERO]), full, depth=24)
    print("star_closure_avoid over the zero point:")
    print("  first branching coordinates", S.A.take(12))
    print("  ground prefix", S.ground.values(40))


if __name__ == "__main__":
    main()
