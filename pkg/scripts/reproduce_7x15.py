"""Reproduce the 7x15 node-set verdicts and print the uncontrollable eigenvalues."""

import argparse

import numpy as np

from gridctl import GridSpec, analyze, oracle_check

CASES = ([(1, 2), (4, 1)], [(1, 2), (1, 3)], [(1, 2), (1, 8), (4, 1)], [(1, 1)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verify", action="store_true", help="cross-check each verdict with PBH and Kalman rank")
    args = ap.parse_args()
    g = GridSpec((7, 15))
    for nodes in CASES:
        v = analyze(g, nodes)
        print(f"{nodes}: {'controllable' if v.controllable else 'not controllable'}; shared tuples {sorted(v.common_pairs)}")
        for lam in v.uncontrollable_eigenvalues:
            print(f"    {lam.decimal(17)}  angles/pi {lam.angle_strings()}")
        if args.verify:
            c = oracle_check(v)
            print(f"    oracle {'agrees' if c.agree else 'DISAGREES'} (Kalman rank {c.kalman_rank})")
    closed = sorted(3 - 2 * np.cos(s * np.pi / 7) for s in (1, 3, 5))
    print("closed form for the first set:", [f"{x:.17g}" for x in closed])


if __name__ == "__main__":
    main()
