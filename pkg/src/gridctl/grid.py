"""Grid graphs: index arithmetic, Laplacian assembly and axis flips.

Nodes are 1-based multi-indices ``(i_1, ..., i_d)``.  Flat indices are 0-based
row-major, ``flat = sum_l (i_l - 1) * prod_{m > l} n_m``, which is the
ordering produced by ``L_1 (+) L_2 (+) ...`` with ``np.kron``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import SETTINGS
from .errors import CapacityError, InvalidDimensionError, NodeRangeError

NodeIndex = tuple[int, ...]

_INDEX_LIMIT = np.iinfo(np.int64).max


@dataclass(frozen=True)
class GridSpec:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if not dims:
            raise InvalidDimensionError("a grid needs at least one axis")
        if any(n < 1 for n in dims):
            raise InvalidDimensionError(f"axis lengths must be >= 1, got {dims}")
        if math.prod(dims) > _INDEX_LIMIT:
            raise CapacityError(f"node count of {dims} overflows the index range")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def of(cls, *dims: int) -> "GridSpec":
        return cls(tuple(dims))

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for n in reversed(self.dims):
            out.append(acc)
            acc *= n
        return tuple(reversed(out))

    def check_node(self, node: Sequence[int]) -> NodeIndex:
        node = tuple(int(c) for c in node)
        if len(node) != self.d:
            raise NodeRangeError(f"node {node} has {len(node)} coordinates, grid has {self.d} axes")
        for c, n in zip(node, self.dims):
            if not 1 <= c <= n:
                raise NodeRangeError(f"node {node} out of range for dims {self.dims}")
        return node

    def flatten(self, node: Sequence[int]) -> int:
        node = self.check_node(node)
        return sum((c - 1) * s for c, s in zip(node, self.strides))

    def unflatten(self, flat: int) -> NodeIndex:
        if not 0 <= flat < self.size:
            raise NodeRangeError(f"flat index {flat} out of range for {self.size} nodes")
        out = []
        for s in self.strides:
            q, flat = divmod(flat, s)
            out.append(q + 1)
        return tuple(out)

    def nodes(self) -> Iterator[NodeIndex]:
        return itertools.product(*(range(1, n + 1) for n in self.dims))

    def corners(self) -> list[NodeIndex]:
        return sorted(set(itertools.product(*((1, n) for n in self.dims))))

    def label(self) -> str:
        return "x".join(str(n) for n in self.dims)

    def __str__(self) -> str:
        return self.label()


def check_capacity(g: GridSpec, cap: int | None = None) -> None:
    cap = SETTINGS.max_nodes if cap is None else cap
    if g.size > cap:
        raise CapacityError(f"grid {g} has {g.size} nodes, dense cap is {cap}")


def build_path_laplacian(n: int) -> np.ndarray:
    """Tridiagonal Laplacian of the path on ``n`` nodes (diagonal 1, 2, ..., 2, 1)."""
    if n < 1:
        raise InvalidDimensionError(f"path length must be >= 1, got {n}")
    L = np.zeros((n, n), dtype=np.int64)
    if n == 1:
        return L
    idx = np.arange(n - 1)
    L[idx, idx + 1] = -1
    L[idx + 1, idx] = -1
    L[np.arange(n), np.arange(n)] = 2
    L[0, 0] = L[-1, -1] = 1
    return L


def kron_sum(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.kron(A, np.eye(B.shape[0], dtype=A.dtype)) + np.kron(np.eye(A.shape[0], dtype=B.dtype), B)


def build_grid_laplacian(g: GridSpec, cap: int | None = None) -> np.ndarray:
    """Exact integer Laplacian ``L_1 (+) ... (+) L_d`` of the grid."""
    check_capacity(g, cap)
    L = build_path_laplacian(g.dims[0])
    for n in g.dims[1:]:
        L = kron_sum(L, build_path_laplacian(n))
    return L


def grid_edges(g: GridSpec) -> Iterator[tuple[int, int]]:
    """Flat-index pairs of adjacent nodes."""
    for node in g.nodes():
        a = g.flatten(node)
        for axis, n in enumerate(g.dims):
            if node[axis] < n:
                yield a, a + g.strides[axis]


@dataclass(frozen=True)
class FlipOperator:
    """Reversal of one or more axes, stored as an index permutation.

    ``op(v)[flat(i)] == v[flat(i')]`` with ``i'_l = n_l - i_l + 1`` on the
    flipped axes.
    """

    grid: GridSpec
    axes: frozenset[int]
    perm: np.ndarray = field(repr=False, compare=False)

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[0] != self.grid.size:
            raise ValueError(f"vector length {v.shape[0]} does not match grid size {self.grid.size}")
        return v[self.perm]

    def __matmul__(self, other: "FlipOperator") -> "FlipOperator":
        if other.grid != self.grid:
            raise ValueError("cannot compose flips of different grids")
        return FlipOperator(self.grid, self.axes ^ other.axes, other.perm[self.perm])

    def matrix(self) -> np.ndarray:
        P = np.zeros((self.grid.size, self.grid.size), dtype=np.int64)
        P[np.arange(self.grid.size), self.perm] = 1
        return P


def _flip_perm(g: GridSpec, axes: Iterable[int]) -> np.ndarray:
    idx = np.arange(g.size).reshape(g.dims)
    for a in axes:
        idx = np.flip(idx, axis=a - 1)
    return idx.ravel()


def flip_operator(g: GridSpec, axis: int | Iterable[int]) -> FlipOperator:
    """Flip along ``axis`` (1-based); an iterable flips several axes at once."""
    axes = (axis,) if isinstance(axis, (int, np.integer)) else tuple(axis)
    for a in axes:
        if not 1 <= a <= g.d:
            raise NodeRangeError(f"axis {a} out of range 1..{g.d}")
    axes_set = frozenset(int(a) for a in axes)
    return FlipOperator(g, axes_set, _flip_perm(g, sorted(axes_set)))


def apply_laplacian(g: GridSpec, v: np.ndarray) -> np.ndarray:
    """``L v`` without assembling ``L``."""
    x = np.asarray(v).reshape(g.dims)
    out = np.zeros_like(x, dtype=np.result_type(x.dtype, np.float64))
    for axis in range(g.d):
        if g.dims[axis] < 2:
            continue
        diff = np.diff(x, axis=axis)
        lo = [slice(None)] * g.d
        hi = [slice(None)] * g.d
        lo[axis] = slice(None, -1)
        hi[axis] = slice(1, None)
        out[tuple(lo)] -= diff
        out[tuple(hi)] += diff
    return out.ravel()
