"""JSON-ready reports for every CLI command.

Reports are plain dicts of str/int/float/bool/list, so ``json.loads(json.dumps(r)) == r``.
Observability mode only swaps the human-facing labels.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from importlib.resources import files
from typing import Iterable, Sequence

import numpy as np

from .analysis import OracleCheck
from .grid import GridSpec, NodeIndex
from .numtheory import odd_prime_powers
from .paths import path_nodeset_uncontrollable
from .simple_grid import GridVerdict, build_partition
from .spectral import SpectralValue, grid_spectrum, is_simple, min_control_set_size
from .symmetry import (
    InheritanceReport,
    SymmetryProfile,
    brick_inheritance_scan,
    brick_profile,
    eigenspace_symmetry_profile,
)

SCHEMA_VERSION = "1.0"

LABELS = {
    "controllability": {"yes": "controllable", "no": "not controllable", "lost": "uncontrollable"},
    "observability": {"yes": "observable", "no": "not observable", "lost": "unobservable"},
}


def grid_block(g: GridSpec) -> dict:
    return {"dims": list(g.dims), "simple": is_simple(g), "multiplicity_bound": min_control_set_size(g)}


def value_block(v: SpectralValue) -> dict:
    return {"angles": v.angle_strings(), "decimal": v.decimal(17), "multiplicity": v.multiplicity}


def profile_block(p: SymmetryProfile) -> dict:
    return {
        "kind": p.kind,
        "classes": [c.label for c in p.classes],
        "rule": p.rule,
        "invariant_axes": [sorted(A) for A in p.invariant_axes],
    }


def oracle_block(c: OracleCheck | None) -> dict | None:
    if c is None:
        return None
    return {
        "agree": c.agree,
        "pbh_eigenvalues": c.pbh_eigenvalues,
        "kalman_rank": c.kalman_rank,
        "expected_rank": c.expected_rank,
        "messages": c.messages,
    }


def analysis_report(
    v: GridVerdict,
    mode: str = "controllability",
    oracle: OracleCheck | None = None,
    witnesses: bool = False,
    seconds: float = 0.0,
    command: str = "analyze",
) -> dict:
    labels = LABELS[mode]
    g = v.grid
    entries = build_partition(g, v.nodes)
    lost = []
    for f in v.findings:
        item = value_block(f.value)
        item["multiplicity"] = len(f.indices)
        item["basis_indices"] = [list(ks) for ks in f.indices]
        item["rank"] = f.rank
        if witnesses and f.witness is not None:
            item["witness"] = [float(x) for x in f.witness]
        lost.append(item)
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "mode": mode,
        "grid": grid_block(g),
        "nodes": [list(i) for i in v.nodes],
        "verdict": {
            "controllable": v.controllable,
            "label": labels["yes"] if v.controllable else labels["no"],
            "method": v.method,
            "reason": v.reason,
        },
        "partition": [
            {"node": list(e.node), "axis_blocking": [list(a) for a in e.axis_blocking], "pairs": sorted(list(p) for p in e.pairs)}
            for e in entries
        ],
        "common_pairs": sorted(list(p) for p in v.common_pairs),
        "uncontrollable_eigenvalues": lost,
        "oracle": oracle_block(oracle),
        "timing": {"seconds": seconds},
    }
    if g.d == 1:
        blocking = path_nodeset_uncontrollable(g.dims[0], [i[0] for i in v.nodes])
        out["path"] = {"blocking": blocking, "modulus": math.gcd(g.dims[0], *(2 * i[0] - 1 for i in v.nodes))}
    return out


def spectrum_report(g: GridSpec, seconds: float = 0.0) -> dict:
    rows = []
    for eb in grid_spectrum(g):
        item = value_block(eb.value)
        item["basis_indices"] = [list(b.indices) for b in eb.basis]
        prof = eigenspace_symmetry_profile(eb)
        item["grid_profile"] = profile_block(prof)
        item["brick"] = None
        if eb.multiplicity > 1:
            bp = brick_profile(g, eb.value)
            if bp is not None:
                item["brick"] = {"dims": list(bp[0]), "profile": profile_block(bp[1])}
        rows.append(item)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "spectrum",
        "grid": grid_block(g),
        "eigenvalues": rows,
        "multiple": [r["decimal"] for r in rows if r["multiplicity"] > 1],
        "timing": {"seconds": seconds},
    }


# --- partition diagram -----------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    description: str


def _row_classes(rows: np.ndarray) -> list[int | None]:
    """Class id per node: proportional nonzero rows share an id; zero rows get None."""
    keys: dict = {}
    out: list[int | None] = []
    for r in rows:
        big = np.abs(r) > 1e-10
        if not big.any():
            out.append(None)
            continue
        # proportional rows share their zero pattern, so the first nonzero entry is a stable pivot
        j = int(np.argmax(big))
        key = tuple(np.round(r / r[j], 9) + 0.0)
        out.append(keys.setdefault(key, len(keys) + 1))
    return out


def partition_symbols(g: GridSpec) -> tuple[dict[NodeIndex, list[str]], list[Symbol]]:
    """Symbols per node.

    Simple eigenvalues: one symbol per (axis, odd prime power q) marking the
    lines ``q | 2 i_l - 1``.  Repeated eigenvalue number ``m``: nodes whose
    component rows over the eigenbasis are proportional share ``m<k>:<c>``;
    ``m<k>:0`` marks nodes where the whole eigenspace vanishes.  For
    multiplicity 2 two nodes can be zeroed together iff they share a symbol.
    """
    table: dict[NodeIndex, list[str]] = {i: [] for i in g.nodes()}
    legend: list[Symbol] = []
    for axis, n in enumerate(g.dims, start=1):
        for q in odd_prime_powers(n):
            name = f"a{axis}q{q}"
            hit = False
            for i in table:
                if (2 * i[axis - 1] - 1) % q == 0:
                    table[i].append(name)
                    hit = True
            if hit:
                legend.append(Symbol(name, "line", f"axis {axis}, q={q}: coordinate i with q | 2i-1"))
    k = 0
    for eb in grid_spectrum(g):
        if eb.multiplicity < 2:
            continue
        k += 1
        rows = eb.matrix()
        classes = _row_classes(rows)
        for node, c in zip(g.nodes(), classes):
            table[node].append(f"m{k}:{'0' if c is None else c}")
        used = sorted({c for c in classes if c is not None})
        desc = f"eigenvalue {eb.value.decimal(12)} (multiplicity {eb.multiplicity}), {len(used)} proportional-row classes"
        legend.append(Symbol(f"m{k}", "eigenspace", desc))
    return table, legend


def partition_report(g: GridSpec, seconds: float = 0.0) -> dict:
    table, legend = partition_symbols(g)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "partition",
        "grid": grid_block(g),
        "symbols": [{"node": list(i), "symbols": s} for i, s in table.items()],
        "legend": [{"symbol": s.name, "kind": s.kind, "description": s.description} for s in legend],
        "timing": {"seconds": seconds},
    }


def suggest_report(g: GridSpec, nodes: Sequence[NodeIndex], v: GridVerdict, mode: str, seconds: float = 0.0) -> dict:
    mu = min_control_set_size(g)
    if is_simple(g):
        why = "simple grid: a corner node has no blocking congruence on any axis"
    else:
        why = f"greedy over nodes, corners first; the largest multiplicity is {mu}, so at least {mu} nodes are needed"
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "suggest",
        "mode": mode,
        "grid": grid_block(g),
        "nodes": [list(i) for i in nodes],
        "justification": why,
        "verdict": {
            "controllable": v.controllable,
            "label": LABELS[mode]["yes"] if v.controllable else LABELS[mode]["no"],
            "method": v.method,
            "reason": v.reason,
        },
        "timing": {"seconds": seconds},
    }


def scan_report(reports: Iterable[InheritanceReport], max_dims: Sequence[int], seconds: float = 0.0) -> dict:
    entries = []
    scanned = 0
    for rep in reports:
        scanned += 1
        for e in rep.entries:
            item = value_block(e.value)
            item.update(
                dims=list(rep.grid.dims),
                multiplicity=e.multiplicity,
                bricks=[{"dims": list(d), "multiplicity": m} for d, m in e.bricks],
                attributed=None if e.attributed is None else list(e.attributed),
                uninherited=e.uninherited,
                formal_sums=e.formal_sums,
                violation=e.violation,
            )
            entries.append(item)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "scan-conjecture",
        "max_dims": list(max_dims),
        "grids_scanned": scanned,
        "multiple_eigenvalues": len(entries),
        "uninherited": sum(e["uninherited"] for e in entries),
        "violations": sum(e["violation"] for e in entries),
        "entries": entries,
        "timing": {"seconds": seconds},
    }


def scan_grids(max_dims: Sequence[int]) -> Iterable[InheritanceReport]:
    for dims in itertools.product(*(range(1, n + 1) for n in max_dims)):
        yield brick_inheritance_scan(GridSpec(dims))


def load_schema() -> dict:
    return json.loads(files("gridctl").joinpath("schema/report.schema.json").read_text())
