"""Brick-inheritance scan over all 2-D grids up to a size; lists every uninherited repeated eigenvalue."""

import argparse

from gridctl.render import scan_text
from gridctl.report import scan_grids, scan_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=10)
    args = ap.parse_args()
    dims = (args.max, args.max)
    rep = scan_report(list(scan_grids(dims)), dims)
    print(scan_text(rep))
    raise SystemExit(3 if rep["violations"] else 0)


if __name__ == "__main__":
    main()
