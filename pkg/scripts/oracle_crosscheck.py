"""Compare the main modules with the brute-force oracle on random instances."""

import argparse
import random

from trimtrees import generators as G
from trimtrees import oracle
from trimtrees.star import star_intersect, star_subset
from trimtrees.trees import subset_n, tree_subset


def desc(T):
    return {"tree": T.to_json()}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--window", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng, W = random.Random(args.seed), args.window
    tally = {k: [0, 0] for k in ("subset", "subset_n", "star_subset", "intersect")}

    for _ in range(args.count):
        P, T = G.star_pair(rng)
        tally["subset"][0] += oracle.brute_relation("subset", desc(P), desc(T),
                                                    window=W) == tree_subset(P, T)
        tally["subset"][1] += 1
        n = rng.randint(0, 3)
        try:
            want = oracle.brute_relation("subset_n", desc(P), desc(T), n, window=W)
            tally["subset_n"][0] += want == subset_n(P, T, n)
            tally["subset_n"][1] += 1
        except oracle.OracleError:
            pass
        viol = oracle.brute_relation("star_subset_window", desc(P), desc(T), window=W)
        tally["star_subset"][0] += star_subset(P, T).answer == (not [v for v in viol
                                                                      if v >= W // 2])
        tally["star_subset"][1] += 1
        pat = oracle.brute_relation("intersect_pattern", desc(P), desc(T), window=W)
        upper = pat[W // 2:]
        tally["intersect"][0] += star_intersect(P, T).compatible == (
            None not in upper and "full" in upper)
        tally["intersect"][1] += 1

    for kind, (agree, total) in tally.items():
        print(f"{kind:12s} {agree}/{total} agree")


if __name__ == "__main__":
    main()
