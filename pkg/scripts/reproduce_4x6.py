"""Repeated eigenvalues of the 4x6 grid, their symmetry profiles and brick attribution."""

from gridctl import GridSpec
from gridctl.report import partition_symbols
from gridctl.spectral import grid_spectrum
from gridctl.symmetry import brick_inheritance_scan, brick_profile, eigenspace_symmetry_profile


def main():
    g = GridSpec((4, 6))
    attributed = {e.value: e.attributed for e in brick_inheritance_scan(g).entries}
    for eb in grid_spectrum(g):
        if eb.multiplicity < 2:
            continue
        dims, prof = brick_profile(g, eb.value)
        full = eigenspace_symmetry_profile(eb)
        print(f"lambda = {eb.value.decimal(12)}  multiplicity {eb.multiplicity}")
        print(f"    brick {dims}: classes {[c.label for c in prof.classes]} rule {prof.rule}")
        print(f"    whole grid: {full.kind} {[c.label for c in full.classes]}")
        print(f"    attributed to brick {attributed[eb.value]}")
    table, _ = partition_symbols(g)
    print("eigenspace symbols per node:")
    for r in range(1, 5):
        print("   ", "  ".join(f"{' '.join(s for s in table[(r, c)] if s.startswith('m')):>9}" for c in range(1, 7)))


if __name__ == "__main__":
    main()
