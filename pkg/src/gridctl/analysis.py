"""Dispatch between the simple-grid and eigenspace analyses, with oracle cross-checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import SETTINGS
from .grid import GridSpec, NodeIndex, build_grid_laplacian
from .oracle import kalman_rank, numeric_eigensystem, pbh_uncontrollable
from .simple_grid import GridVerdict, simple_grid_controllable, suggest_control_nodes
from .spectral import grid_spectrum, is_simple, min_control_set_size
from .symmetry import eigenspace_loss, nonsimple_grid_controllable


def analyze(g: GridSpec, nodes: Iterable[Sequence[int]], with_witnesses: bool = True) -> GridVerdict:
    if is_simple(g):
        v = simple_grid_controllable(g, nodes, with_witnesses)
        v.multiplicity_bound = 1
        return v
    return nonsimple_grid_controllable(g, nodes, with_witnesses)


def deficiency(g: GridSpec, nodes: Sequence[NodeIndex]) -> int:
    """Dimension of the uncontrollable subspace: sum over eigenspaces of ``mu - rank``."""
    total = 0
    for eb in grid_spectrum(g):
        f = eigenspace_loss(eb, nodes, with_witness=False)
        if f is not None:
            total += eb.multiplicity - f.rank
    return total


def verdict_deficiency(v: GridVerdict) -> int:
    return sum(len(f.indices) - f.rank for f in v.findings)


@dataclass
class OracleCheck:
    agree: bool
    pbh_eigenvalues: list[float] = field(default_factory=list)
    kalman_rank: int | None = None
    expected_rank: int | None = None
    messages: list[str] = field(default_factory=list)


def oracle_check(v: GridVerdict) -> OracleCheck:
    """Compare a verdict with PBH (eigenvalues) and, for small grids, exact Kalman rank."""
    g = v.grid
    L = build_grid_laplacian(g)
    flat = [g.flatten(i) for i in v.nodes]
    sp = numeric_eigensystem(L)
    pbh = sorted(lam for lam, _ in pbh_uncontrollable(L, flat, sp))
    ours = sorted(float(x) for x in v.uncontrollable_eigenvalues)
    check = OracleCheck(True, pbh)
    if len(pbh) != len(ours) or any(abs(a - b) > 1e-8 for a, b in zip(pbh, ours)):
        check.agree = False
        check.messages.append(f"PBH eigenvalues {pbh} differ from analytic {ours}")
    if g.size <= SETTINGS.kalman_max_nodes:
        check.kalman_rank = kalman_rank(L, flat)
        check.expected_rank = g.size - verdict_deficiency(v)
        if check.kalman_rank != check.expected_rank:
            check.agree = False
            check.messages.append(f"Kalman rank {check.kalman_rank} != N - deficiency = {check.expected_rank}")
    return check


def suggest_nodes(g: GridSpec) -> list[NodeIndex]:
    """Greedy controllable node set; the corner for simple grids.

    Candidates are tried corners first, then row-major; each step adds the
    node that leaves the smallest uncontrollable subspace.
    """
    if is_simple(g):
        return suggest_control_nodes(g)
    corners = g.corners()
    seen = set(corners)
    candidates = corners + [i for i in g.nodes() if i not in seen]
    chosen: list[NodeIndex] = []
    current = g.size
    while current:
        best, best_def = None, None
        for c in candidates:
            if c in chosen:
                continue
            dfc = deficiency(g, chosen + [c])
            if best_def is None or dfc < best_def:
                best, best_def = c, dfc
                if dfc == 0:
                    break
        chosen.append(best)
        current = best_def
    return chosen


def multiplicity_lower_bound(g: GridSpec) -> int:
    return min_control_set_size(g)
