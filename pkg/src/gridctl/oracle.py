"""Independent numerical checks: dense eigendecomposition, PBH and Kalman rank.

Nothing here uses the closed forms; the only input is the Laplacian matrix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import SETTINGS
from .errors import CapacityError, OracleError, PrecisionError, UsageError

# Two primes below 2**31 so that products of residues fit in int64.
KALMAN_PRIMES = (2_147_483_647, 2_147_483_629)


@dataclass
class NumericSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: list[np.ndarray]

    def group_values(self) -> list[float]:
        return [float(np.mean(self.eigenvalues[g])) for g in self.groups]


def _group_sorted(values: np.ndarray) -> list[np.ndarray]:
    tol = SETTINGS.group_tol
    gap = SETTINGS.gap_factor * tol
    groups = [[0]] if len(values) else []
    for j in range(1, len(values)):
        diff = values[j] - values[groups[-1][0]]
        if diff <= tol:
            groups[-1].append(j)
        elif values[j] - values[j - 1] <= gap:
            raise PrecisionError(f"oracle eigenvalues {values[j - 1]!r} and {values[j]!r} are too close to group")
        else:
            groups.append([j])
    return [np.array(g) for g in groups]


def numeric_eigensystem(L: np.ndarray, cap: int | None = None) -> NumericSpectrum:
    L = np.asarray(L, dtype=float)
    N = L.shape[0]
    if N > (SETTINGS.max_nodes if cap is None else cap):
        raise CapacityError(f"oracle is limited to {SETTINGS.max_nodes} nodes, got {N}")
    try:
        lam, V = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"eigendecomposition failed: {exc}") from exc
    scale = max(1.0, float(np.max(np.sum(np.abs(L), axis=1), initial=0.0)))
    res = np.max(np.abs(L @ V - V * lam), initial=0.0)
    orth = np.max(np.abs(V.T @ V - np.eye(N)), initial=0.0)
    if res > 1e-9 * scale or orth > 1e-9:
        raise OracleError(f"eigendecomposition failed its checks: residual {res:.2e}, orthogonality {orth:.2e}")
    return NumericSpectrum(lam, V, _group_sorted(lam))


def pbh_uncontrollable(
    L: np.ndarray, nodes: Sequence[int], spectrum: NumericSpectrum | None = None
) -> list[tuple[float, np.ndarray]]:
    """Eigenvalues with an eigenvector vanishing on the (0-based) rows ``nodes``.

    For each eigenspace ``U`` the smallest right singular vector of
    ``U[nodes]`` gives the candidate ``w = U x``; the eigenvalue counts as
    uncontrollable when ``max |w[nodes]| <= tau ||w||_inf``.
    """
    nodes = sorted(set(int(i) for i in nodes))
    if not nodes:
        raise UsageError("node set must be nonempty")
    sp = numeric_eigensystem(L) if spectrum is None else spectrum
    tau = SETTINGS.pbh_tau
    out = []
    for grp in sp.groups:
        U = sp.eigenvectors[:, grp]
        _, _, Vt = np.linalg.svd(U[nodes], full_matrices=True)
        w = U @ Vt[-1]
        w = w / np.max(np.abs(w))
        if np.max(np.abs(w[nodes])) <= tau:
            out.append((float(np.mean(sp.eigenvalues[grp])), w))
    return out


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    A = np.array(M % p, dtype=np.int64)
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(A[rank:, c])[0]
        if len(nz) == 0:
            continue
        r = rank + nz[0]
        A[[rank, r]] = A[[r, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank] = (A[rank] * inv) % p
        f = A[:, c].copy()
        f[rank] = 0
        A = (A - np.outer(f, A[rank]) % p) % p
        rank += 1
    return rank


def _krylov_mod_p(L: np.ndarray, nodes: Sequence[int], p: int) -> np.ndarray:
    N = L.shape[0]
    # L keeps its small signed entries; reducing it mod p would overflow L @ X.
    Lp = np.asarray(L, dtype=np.int64)
    X = np.zeros((N, len(nodes)), dtype=np.int64)
    X[nodes, np.arange(len(nodes))] = 1
    blocks = [X]
    for _ in range(N - 1):
        X = (Lp @ X) % p
        blocks.append(X)
    return np.hstack(blocks)


def kalman_rank(L: np.ndarray, nodes: Sequence[int], method: str = "exact") -> int:
    """Rank of ``[B, L B, ..., L^{N-1} B]`` for the 0-based input rows ``nodes``.

    ``method="exact"`` works over GF(p) for two large primes and takes the
    larger rank (rank mod p never exceeds the rational rank, and equals it for
    all but finitely many p).  ``method="svd"`` is the floating-point
    variant with threshold ``1e-8 sigma_max`` on column-normalised blocks.
    """
    L = np.asarray(L)
    N = L.shape[0]
    nodes = sorted(set(int(i) for i in nodes))
    if not nodes:
        raise UsageError("node set must be nonempty")
    if N > SETTINGS.max_nodes:
        raise CapacityError(f"Kalman rank is limited to {SETTINGS.max_nodes} nodes")
    if method == "exact":
        if not np.issubdtype(L.dtype, np.integer):
            raise UsageError("exact Kalman rank needs an integer matrix")
        return max(_rank_mod_p(_krylov_mod_p(L, nodes, p), p) for p in KALMAN_PRIMES)
    if method == "svd":
        if N > SETTINGS.kalman_max_nodes:
            warnings.warn(f"floating Kalman rank is badly conditioned for N={N} > {SETTINGS.kalman_max_nodes}")
        Lf = L.astype(float)
        X = np.zeros((N, len(nodes)))
        X[nodes, np.arange(len(nodes))] = 1.0
        blocks = [X]
        for _ in range(N - 1):
            X = Lf @ X
            X = X / max(1.0, float(np.max(np.abs(X))))
            blocks.append(X)
        sv = np.linalg.svd(np.hstack(blocks), compute_uv=False)
        return int(np.sum(sv > SETTINGS.kalman_rel_tol * sv[0]))
    raise UsageError(f"unknown Kalman method {method!r}")


def pbh_batch(spectrum: NumericSpectrum, node_sets: np.ndarray) -> np.ndarray:
    """PBH for many equal-size node sets at once.

    ``node_sets`` is an integer array ``(P, m)`` of 0-based rows.  Returns a
    boolean array ``(P, G)``: entry ``[p, g]`` is true iff eigenspace ``g``
    has a vector vanishing on set ``p`` (same criterion as :func:`pbh_uncontrollable`).
    """
    node_sets = np.asarray(node_sets, dtype=np.intp)
    out = np.zeros((node_sets.shape[0], len(spectrum.groups)), dtype=bool)
    for gi, grp in enumerate(spectrum.groups):
        U = spectrum.eigenvectors[:, grp]
        _, _, Vt = np.linalg.svd(U[node_sets], full_matrices=True)
        W = Vt[:, -1, :] @ U.T
        W /= np.max(np.abs(W), axis=1, keepdims=True)
        out[:, gi] = np.max(np.abs(np.take_along_axis(W, node_sets, axis=1)), axis=1) <= SETTINGS.pbh_tau
    return out
