"""Controllability of grids from the per-axis path congruences.

For a simple grid every eigenvector is a single Kronecker product, so node
``i`` loses an eigenvalue exactly when one of its path factors vanishes at
``i_l``.  The per-node bookkeeping is a set of d-tuples of odd prime powers
(the partition ``O_alpha``); the grid is controllable iff the tuples shared
by all queried nodes are none.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AnalysisError, NotSimpleGridError, UsageError
from .grid import GridSpec, NodeIndex
from .numtheory import odd_prime_powers
from .paths import path_node_uncontrollable
from .spectral import SpectralValue, TaggedVector, check_witness, is_simple, path_zero_mask

Pair = tuple[int, ...]

# Axis placeholder when n_l has no odd prime-power divisor; it never blocks.
NO_DIVISOR = 1


@dataclass(frozen=True)
class PartitionEntry:
    node: NodeIndex
    axis_blocking: tuple[tuple[int, ...], ...]
    pairs: frozenset[Pair]

    @property
    def controllable(self) -> bool:
        """True iff no simple eigenvalue is lost at this node."""
        return not any(self.axis_blocking)


@dataclass
class Finding:
    """One uncontrollable eigenvalue with the basis tuples involved and a witness."""

    value: SpectralValue
    indices: tuple[tuple[int, ...], ...]
    witness: np.ndarray | None = None
    rank: int = 0


@dataclass
class GridVerdict:
    grid: GridSpec
    nodes: tuple[NodeIndex, ...]
    controllable: bool
    common_pairs: frozenset[Pair] = frozenset()
    findings: list[Finding] = field(default_factory=list)
    method: str = "simple"
    reason: str = ""
    multiplicity_bound: int = 1

    @property
    def uncontrollable_eigenvalues(self) -> list[SpectralValue]:
        return [f.value for f in self.findings]

    @property
    def witnesses(self) -> list[np.ndarray]:
        return [f.witness for f in self.findings if f.witness is not None]


def check_nodes(g: GridSpec, nodes: Iterable[Sequence[int]]) -> tuple[NodeIndex, ...]:
    """Validate, deduplicate and sort a node set."""
    out = tuple(sorted({g.check_node(i) for i in nodes}))
    if not out:
        raise UsageError("node set must be nonempty")
    return out


def grid_node_uncontrollable_simple(g: GridSpec, i: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Per-axis blocking prime powers of node ``i``."""
    i = g.check_node(i)
    return tuple(tuple(path_node_uncontrollable(n, c)) for n, c in zip(g.dims, i))


def axis_choices(n: int) -> tuple[int, ...]:
    return odd_prime_powers(n) or (NO_DIVISOR,)


def node_pairs(g: GridSpec, i: NodeIndex) -> frozenset[Pair]:
    """d-tuples ``(q_1, ..., q_d)`` with some axis ``q_l | 2 i_l - 1``."""
    return frozenset(
        t
        for t in itertools.product(*(axis_choices(n) for n in g.dims))
        if any(q != NO_DIVISOR and (2 * c - 1) % q == 0 for q, c in zip(t, i))
    )


def build_partition(g: GridSpec, nodes: Iterable[Sequence[int]]) -> list[PartitionEntry]:
    return [
        PartitionEntry(i, grid_node_uncontrollable_simple(g, i), node_pairs(g, i))
        for i in check_nodes(g, nodes)
    ]


def common_pairs(entries: Sequence[PartitionEntry]) -> frozenset[Pair]:
    out = entries[0].pairs
    for e in entries[1:]:
        out &= e.pairs
    return out


def node_zero_mask(g: GridSpec, i: NodeIndex) -> np.ndarray:
    """Boolean array over eigen-index tuples (shape ``dims``): true iff the basis vector vanishes at ``i``."""
    mask = np.zeros(g.dims, dtype=bool)
    for axis, (n, c) in enumerate(zip(g.dims, i)):
        shape = [1] * g.d
        shape[axis] = n
        mask |= path_zero_mask(n)[:, c - 1].reshape(shape)
    return mask


def uncontrollable_tuples(g: GridSpec, nodes: Sequence[NodeIndex]) -> list[tuple[int, ...]]:
    """Eigen-index tuples (1-based) whose basis vector vanishes on every node."""
    mask = np.ones(g.dims, dtype=bool)
    for i in nodes:
        mask &= node_zero_mask(g, i)
    return [tuple(int(k) + 1 for k in ks) for ks in np.argwhere(mask)]


def simple_grid_controllable(g: GridSpec, nodes: Iterable[Sequence[int]], with_witnesses: bool = True) -> GridVerdict:
    """Intersection test plus the exact list of uncontrollable eigenvalues and witnesses."""
    if not is_simple(g):
        raise NotSimpleGridError(f"grid {g} has repeated eigenvalues; use symmetry.nonsimple_grid_controllable")
    entries = build_partition(g, nodes)
    nodes = tuple(e.node for e in entries)
    common = common_pairs(entries)
    tuples = uncontrollable_tuples(g, nodes)
    if bool(common) != bool(tuples):
        raise AnalysisError(f"partition intersection and zero-pattern enumeration disagree on {g} from {nodes}")
    verdict = GridVerdict(g, nodes, not tuples, common, method="simple")
    for ks in tuples:
        tv = TaggedVector(g, ks)
        W = None
        if with_witnesses:
            W = tv.vector
            check_witness(g, tv.value, W, nodes)
        verdict.findings.append(Finding(tv.value, (ks,), W))
    verdict.findings.sort(key=lambda f: f.value.numeric)
    verdict.reason = (
        "partition intersection is empty" if verdict.controllable else f"shared partition tuples {sorted(common)}"
    )
    return verdict


def suggest_control_nodes(g: GridSpec) -> list[NodeIndex]:
    """Greedy node set with empty partition intersection, corners tried first."""
    if not is_simple(g):
        raise NotSimpleGridError(f"grid {g} has repeated eigenvalues")
    corners = g.corners()
    candidates = corners + [i for i in g.nodes() if i not in set(corners)]
    remaining = None
    chosen: list[NodeIndex] = []
    while remaining is None or remaining:
        best = min(candidates, key=lambda i: len(node_pairs(g, i) if remaining is None else remaining & node_pairs(g, i)))
        pairs = node_pairs(g, best)
        remaining = pairs if remaining is None else remaining & pairs
        chosen.append(best)
        candidates.remove(best)
    return chosen
