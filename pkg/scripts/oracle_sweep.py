"""Compare analytic verdicts with the PBH oracle on every grid up to the given size."""

import argparse
import itertools
import time

import numpy as np

from gridctl import GridSpec, analyze
from gridctl.grid import build_grid_laplacian
from gridctl.oracle import numeric_eigensystem, pbh_uncontrollable


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=8, help="largest axis length")
    ap.add_argument("--sets", type=int, default=100, help="random node sets per grid and size")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    total = bad = 0
    for a, b in itertools.combinations_with_replacement(range(1, args.max + 1), 2):
        g = GridSpec((a, b))
        L = build_grid_laplacian(g)
        sp = numeric_eigensystem(L)
        for m in range(1, min(3, g.size) + 1):
            for _ in range(args.sets):
                flat = rng.choice(g.size, m, replace=False)
                v = analyze(g, [g.unflatten(int(f)) for f in flat], with_witnesses=False)
                pbh = sorted(lam for lam, _ in pbh_uncontrollable(L, flat, sp))
                ours = sorted(float(x) for x in v.uncontrollable_eigenvalues)
                total += 1
                if len(pbh) != len(ours) or not np.allclose(pbh, ours, atol=1e-8):
                    bad += 1
                    print(f"disagreement on {g}: {flat} analytic {ours} oracle {pbh}")
    print(f"{total} node sets, {bad} disagreements, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
