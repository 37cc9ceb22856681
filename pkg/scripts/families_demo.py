"""Pairwise disjoint stars, their intersection bounds, and a common refinement."""

import argparse

from trimtrees import IncompatibleFamily, common_refinement, disjoint_family, refines, tree
from trimtrees.natsets import EVENS, ODDS, OMEGA, index_class
from trimtrees.star import family_empty_coords, family_pair_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--members", type=int, default=4)
    ap.add_argument("--horizon", type=int, default=512)
    args = ap.parse_args()

    fam = disjoint_family(tree(OMEGA), args.members)
    C = fam[0].origin.members
    for i in range(args.members):
        for j in range(i + 1, args.members):
            b = family_pair_bound(C[i], C[j])
            empties = family_empty_coords(C[j], b, args.horizon)[:6]
            print(f"members {i},{j}: disjoint from {b}, Empty at {empties} ...")

    halves = IncompatibleFamily((tree(EVENS), tree(ODDS)))
    thirds = IncompatibleFamily(tuple(tree(index_class(OMEGA, r, 3)) for r in range(3)))
    R = common_refinement([halves, thirds])
    print(f"common refinement of halves and thirds: {len(R)} members, refines both: "
          f"{refines(R, halves)} {refines(R, thirds)}")
    for m in R:
        print("  ", m.tree)


if __name__ == "__main__":
    main()
