"""Closed-form path eigenpairs and their composition into grid spectra.

Path eigenpairs (k = 1..n):

    lambda_k = 2 - 2 cos((k-1) pi / n)
    (v_k)_j  = cos((2j-1)(k-1) pi / (2n))

A component is exactly zero iff ``(2j-1)(k-1) = n (mod 2n)``; that test is
integer arithmetic, so zeros are placed exactly rather than left as 1e-17
cosine residue.  Grid eigenvalues are sums over axes and are grouped
numerically at ``SETTINGS.precision_digits`` digits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .config import MP, SETTINGS
from .errors import AnalysisError, InvalidDimensionError, PrecisionError
from .grid import GridSpec, NodeIndex, apply_laplacian


# --- paths -----------------------------------------------------------------


@lru_cache(maxsize=None)
def angle_value(angle: Fraction):
    """``2 - 2 cos(angle * pi)`` at working precision."""
    return 2 - 2 * MP.cos(MP.pi * MP.mpf(angle.numerator) / angle.denominator)


def path_eigenvalue(n: int, k: int):
    return angle_value(Fraction(k - 1, n))


def path_component_is_zero(n: int, k: int, j: int) -> bool:
    return ((2 * j - 1) * (k - 1) - n) % (2 * n) == 0


@lru_cache(maxsize=None)
def path_zero_mask(n: int) -> np.ndarray:
    """Boolean ``(n, n)`` array, ``[k-1, j-1]`` true iff ``(v_k)_j == 0``."""
    m = np.arange(n)[:, None]
    j = np.arange(1, n + 1)[None, :]
    return ((2 * j - 1) * m - n) % (2 * n) == 0


@lru_cache(maxsize=None)
def _path_vector(n: int, k: int) -> np.ndarray:
    j = np.arange(1, n + 1)
    v = np.cos((2 * j - 1) * (k - 1) * np.pi / (2 * n))
    v[path_zero_mask(n)[k - 1]] = 0.0
    v /= np.max(np.abs(v))
    v.setflags(write=False)
    return v


def path_eigenvector(n: int, k: int) -> np.ndarray:
    """Eigenvector ``v_k`` of ``L_n``: first component positive, unit inf-norm."""
    if n < 1:
        raise InvalidDimensionError(f"path length must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise InvalidDimensionError(f"eigen-index {k} out of range 1..{n}")
    return _path_vector(n, k)


@lru_cache(maxsize=None)
def path_first_component(n: int, k: int):
    """``(v_k)_1`` under the unit inf-norm normalisation, at working precision."""
    comps = [MP.cos((2 * j - 1) * (k - 1) * MP.pi / (2 * n)) for j in range(1, n + 1)]
    return comps[0] / max(abs(c) for c in comps)


def path_symmetry_sign(k: int) -> int:
    """+1 if ``v_k = Pi v_k`` (k odd), -1 if ``v_k = -Pi v_k`` (k even)."""
    return 1 if k % 2 == 1 else -1


@dataclass(frozen=True)
class PathEigenpair:
    n: int
    k: int

    @property
    def angle(self) -> Fraction:
        """``(k-1)/n`` in units of pi."""
        return Fraction(self.k - 1, self.n)

    @property
    def value(self):
        return path_eigenvalue(self.n, self.k)

    @property
    def vector(self) -> np.ndarray:
        return path_eigenvector(self.n, self.k)

    @property
    def sign(self) -> int:
        return path_symmetry_sign(self.k)


def path_eigensystem(n: int) -> list[PathEigenpair]:
    if n < 1:
        raise InvalidDimensionError(f"path length must be >= 1, got {n}")
    return [PathEigenpair(n, k) for k in range(1, n + 1)]


# --- grid eigenvalues ------------------------------------------------------


def _fmt_angle(a: Fraction) -> str:
    return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)


@dataclass(frozen=True)
class SpectralValue:
    """A grid eigenvalue: per-axis angles (units of pi) and their cosine sum.

    ``numeric`` is computed from the sorted angle multiset, so two values with
    the same multiset are bitwise equal.
    """

    angles: tuple[Fraction, ...]
    multiplicity: int = 1

    @cached_property
    def canonical(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.angles))

    @cached_property
    def numeric(self):
        return _multiset_value(self.canonical)

    def __float__(self) -> float:
        return float(self.numeric)

    def decimal(self, digits: int = 17) -> str:
        return MP.nstr(self.numeric, digits, min_fixed=-10**9, max_fixed=10**9)

    def angle_strings(self) -> list[str]:
        return [_fmt_angle(a) for a in self.angles]

    def __str__(self) -> str:
        return f"{self.decimal(12)} [{', '.join(self.angle_strings())}]"


@lru_cache(maxsize=None)
def _multiset_value(canonical: tuple[Fraction, ...]):
    total = MP.mpf(0)
    for a in canonical:
        total += angle_value(a)
    return total


def tuple_angles(g: GridSpec, ks: Sequence[int]) -> tuple[Fraction, ...]:
    return tuple(Fraction(k - 1, n) for k, n in zip(ks, g.dims))


@dataclass(frozen=True)
class TaggedVector:
    """Kronecker basis eigenvector ``v_{k_1} (x) ... (x) v_{k_d}`` of a grid."""

    grid: GridSpec
    indices: tuple[int, ...]

    @property
    def angles(self) -> tuple[Fraction, ...]:
        return tuple_angles(self.grid, self.indices)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(path_symmetry_sign(k) for k in self.indices)

    @cached_property
    def vector(self) -> np.ndarray:
        v = np.ones(1)
        for n, k in zip(self.grid.dims, self.indices):
            v = np.kron(v, path_eigenvector(n, k))
        return v

    @property
    def value(self) -> SpectralValue:
        return SpectralValue(self.angles)

    def component_is_zero(self, node: NodeIndex) -> bool:
        return any(path_component_is_zero(n, k, j) for n, k, j in zip(self.grid.dims, self.indices, node))

    def factors(self) -> list[np.ndarray]:
        return [path_eigenvector(n, k) for n, k in zip(self.grid.dims, self.indices)]


@dataclass(frozen=True)
class EigenBasis:
    value: SpectralValue
    basis: tuple[TaggedVector, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)

    @property
    def grid(self) -> GridSpec:
        return self.basis[0].grid

    def matrix(self) -> np.ndarray:
        """Basis vectors as columns, ``(N, mu)``."""
        return np.column_stack([b.vector for b in self.basis])


def _group_tolerances() -> tuple[float, float, object]:
    spread = MP.mpf(10) ** (-(SETTINGS.precision_digits - 10))
    return SETTINGS.group_tol, SETTINGS.gap_factor * SETTINGS.group_tol, spread


def group_values(items: list, key) -> list[list]:
    """Group items whose ``key`` (mp numbers) coincide; guard ambiguous cases.

    Raises :class:`PrecisionError` when two groups are closer than the gap
    guard or when a group spreads wider than the working precision can
    attribute to rounding.
    """
    tol, gap, spread = _group_tolerances()
    items = sorted(items, key=key)
    groups: list[list] = []
    for it in items:
        if groups and key(it) - key(groups[-1][0]) <= tol:
            groups[-1].append(it)
        else:
            if groups and key(it) - key(groups[-1][-1]) <= gap:
                raise PrecisionError(
                    f"eigenvalues {MP.nstr(key(groups[-1][-1]), 20)} and {MP.nstr(key(it), 20)} "
                    "are too close to group safely; raise GRIDCTL_PRECISION_DIGITS"
                )
            groups.append([it])
    for grp in groups:
        if key(grp[-1]) - key(grp[0]) > spread:
            raise PrecisionError(
                f"near-coincident eigenvalues around {MP.nstr(key(grp[0]), 20)} differ by "
                f"{MP.nstr(key(grp[-1]) - key(grp[0]), 5)}; raise GRIDCTL_PRECISION_DIGITS"
            )
    return groups


@lru_cache(maxsize=256)
def _grid_spectrum(dims: tuple[int, ...], digits: int) -> tuple[EigenBasis, ...]:
    g = GridSpec(dims)
    entries = []
    for ks in itertools.product(*(range(1, n + 1) for n in dims)):
        sv = SpectralValue(tuple_angles(g, ks))
        entries.append((sv.numeric, ks))
    out = []
    for grp in group_values(entries, key=lambda e: e[0]):
        ks_sorted = sorted(e[1] for e in grp)
        basis = tuple(TaggedVector(g, ks) for ks in ks_sorted)
        value = SpectralValue(basis[0].angles, multiplicity=len(basis))
        out.append(EigenBasis(value, basis))
    return tuple(out)


def grid_spectrum(g: GridSpec) -> tuple[EigenBasis, ...]:
    """All grid eigenvalues, ascending, each with its Kronecker eigenbasis."""
    return _grid_spectrum(g.dims, SETTINGS.precision_digits)


def is_simple(g: GridSpec) -> bool:
    return all(eb.multiplicity == 1 for eb in grid_spectrum(g))


def min_control_set_size(g: GridSpec) -> int:
    """Largest eigenvalue multiplicity: no node set smaller than this is controllable."""
    return max(eb.multiplicity for eb in grid_spectrum(g))


def find_eigenbasis(g: GridSpec, value) -> EigenBasis:
    """The eigenspace whose eigenvalue is within the grouping tolerance of ``value``."""
    x = MP.mpf(value.numeric if isinstance(value, SpectralValue) else value)
    for eb in grid_spectrum(g):
        if abs(eb.value.numeric - x) <= SETTINGS.group_tol:
            return eb
    raise KeyError(f"{MP.nstr(x, 17)} is not an eigenvalue of grid {g}")


def check_witness(g: GridSpec, value, W: np.ndarray, zero_at: Sequence[NodeIndex] = ()) -> None:
    """Raise :class:`AnalysisError` unless ``W`` is an eigenvector vanishing on ``zero_at``."""
    lam = float(value)
    res = np.max(np.abs(apply_laplacian(g, W) - lam * W))
    if res > SETTINGS.eig_residual_tol:
        raise AnalysisError(f"witness eigen-residual {res:.2e} at lambda={lam:.12g} on grid {g}")
    if np.max(np.abs(W)) < 0.5:
        raise AnalysisError("witness is not normalised to unit inf-norm")
    for node in zero_at:
        c = abs(W[g.flatten(node)])
        if c > SETTINGS.zero_tol:
            raise AnalysisError(f"witness component {c:.2e} at claimed zero {list(node)}")
