"""Number-theoretic controllability tests for paths.

A node ``i`` of ``P_n`` fails for an odd prime power ``q | n`` exactly when
``(n - i) = (i - 1) (mod q)``, i.e. ``q | 2i - 1``.  Blocking moduli are
prime powers, and the combined modulus of a node set is the product of the
largest blocking power of each prime, which equals
``gcd(n, 2 i_1 - 1, ..., 2 i_m - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .config import SETTINGS
from .errors import AnalysisError, NodeRangeError, UsageError
from .grid import build_path_laplacian
from .numtheory import max_prime_power_product, odd_prime_powers
from .spectral import SpectralValue, path_eigenvector


def _check_node(n: int, i: int) -> int:
    if n < 1:
        raise UsageError(f"path length must be >= 1, got {n}")
    if not 1 <= i <= n:
        raise NodeRangeError(f"node {i} out of range 1..{n}")
    return int(i)


def _check_nodeset(n: int, nodes: Iterable[int]) -> list[int]:
    nodes = sorted({_check_node(n, i) for i in nodes})
    if not nodes:
        raise UsageError("node set must be nonempty")
    return nodes


def path_node_uncontrollable(n: int, i: int) -> list[int]:
    """Odd prime powers ``q | n`` with ``(n - i) = (i - 1) mod q``; empty iff controllable from ``i``."""
    i = _check_node(n, i)
    return [q for q in odd_prime_powers(n) if ((n - i) - (i - 1)) % q == 0]


def congruence_chain(n: int, nodes: list[int]) -> list[int]:
    """``2(i_1 - 1) + 1, i_2 - i_1, ..., i_m - i_{m-1}, 2(n - i_m) + 1`` for sorted nodes."""
    gaps = [b - a for a, b in zip(nodes, nodes[1:])]
    return [2 * (nodes[0] - 1) + 1, *gaps, 2 * (n - nodes[-1]) + 1]


def path_nodeset_uncontrollable(n: int, nodes: Iterable[int]) -> list[int]:
    """Odd prime powers ``q | n`` for which every term of the congruence chain vanishes mod ``q``.

    The chain alone (all terms congruent) also admits a common nonzero residue
    when ``p | len(nodes)``, e.g. ``P_9`` from ``{4, 5, 6}``; such sets are
    controllable, so the common residue is required to be zero.
    """
    nodes = _check_nodeset(n, nodes)
    chain = congruence_chain(n, nodes)
    out = []
    for q in odd_prime_powers(n):
        r = chain[0] % q
        if r == 0 and all(t % q == r for t in chain):
            out.append(q)
    return out


def canonical_uncontrollable_set(n: int, q: int) -> tuple[int, ...]:
    """``{l q - (q - 1)/2 : l = 1..n/q}``: every node whose ``2i - 1`` is a multiple of ``q``."""
    if q < 3 or q % 2 == 0:
        raise UsageError(f"modulus must be odd and >= 3, got {q}")
    if n % q:
        raise UsageError(f"{q} does not divide {n}")
    return tuple(l * q - (q - 1) // 2 for l in range(1, n // q + 1))


def block_pattern(W: np.ndarray, Q: int, atol: float = 1e-10) -> bool:
    """True if ``W`` is ``[v, 0, -Pi v, -v, 0, Pi v, v, 0, ...]`` with blocks of length ``(Q - 1)/2``."""
    n = len(W)
    if n % Q:
        return False
    h = (Q - 1) // 2
    v = W[:h]
    period = np.concatenate([v, [0.0], -v[::-1]])
    expected = np.concatenate([(-1) ** b * period for b in range(n // Q)])
    return bool(np.max(np.abs(W - expected), initial=0.0) <= atol)


@dataclass
class PathVerdict:
    n: int
    nodes: tuple[int, ...]
    blocking: list[int]
    modulus: int
    uncontrollable_eigenvalues: list[SpectralValue] = field(default_factory=list)
    eigen_indices: list[int] = field(default_factory=list)
    witnesses: list[np.ndarray] = field(default_factory=list)

    @property
    def controllable(self) -> bool:
        return not self.blocking


def path_uncontrollable_eigenpairs(n: int, nodes: int | Iterable[int]) -> PathVerdict:
    """Uncontrollable eigenvalues and witnesses of ``P_n`` from one node or a node set.

    With combined modulus ``Q`` the uncontrollable eigenvalues are
    ``2 - 2 cos(s pi / Q)`` for odd ``s < Q``; the witness for ``s`` is the
    path eigenvector of index ``k = 1 + s n / Q``.
    """
    nodes = [nodes] if isinstance(nodes, (int, np.integer)) else list(nodes)
    nodes = _check_nodeset(n, nodes)
    blocking = path_nodeset_uncontrollable(n, nodes)
    Q = max_prime_power_product(blocking) if blocking else 1
    assert Q == math.gcd(n, *(2 * i - 1 for i in nodes))
    verdict = PathVerdict(n, tuple(nodes), blocking, Q)
    if Q == 1:
        return verdict
    L = build_path_laplacian(n)
    for s in range(1, Q, 2):
        k = 1 + s * n // Q
        W = path_eigenvector(n, k)
        lam = SpectralValue((Fraction(s, Q),))
        res = np.max(np.abs(L @ W - float(lam) * W))
        if res > SETTINGS.eig_residual_tol * max(1.0, float(lam)):
            raise AnalysisError(f"witness residual {res:.2e} for P_{n}, k={k}")
        if not block_pattern(W, Q):
            raise AnalysisError(f"witness for P_{n}, k={k} does not follow the period-{Q} block pattern")
        verdict.uncontrollable_eigenvalues.append(lam)
        verdict.eigen_indices.append(k)
        verdict.witnesses.append(W)
    return verdict
