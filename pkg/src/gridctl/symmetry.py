"""Repeated grid eigenvalues: bricks, flip symmetries and polynomial zero tests.

A repeated eigenvalue has an eigenspace spanned by several Kronecker basis
vectors.  Whether some vector in it vanishes on a node set is a rank question
on the matrix of basis components at those nodes.  Components are written as
``prod_l p_{i_l}(lambda_l) (v_l)_1`` with the path component polynomials
``p_r`` and evaluated at working precision.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .config import MP, SETTINGS
from .errors import AnalysisError, ArityError, InvalidDimensionError, PrecisionError, UsageError
from .grid import GridSpec, NodeIndex, apply_laplacian, flip_operator
from .numtheory import is_prime
from .simple_grid import Finding, GridVerdict, build_partition, common_pairs
from .spectral import (
    EigenBasis,
    SpectralValue,
    TaggedVector,
    angle_value,
    check_witness,
    grid_spectrum,
    min_control_set_size,
    path_component_is_zero,
    path_first_component,
)

# --- bricks ----------------------------------------------------------------


@dataclass(frozen=True)
class BrickPartition:
    grid: GridSpec
    base: GridSpec
    counts: tuple[int, ...]

    def bricks(self) -> list[tuple[int, ...]]:
        """Brick indices, 1-based, row-major."""
        return list(itertools.product(*(range(1, c + 1) for c in self.counts)))

    def locate(self, node: Sequence[int]) -> tuple[tuple[int, ...], NodeIndex]:
        """``(brick index, node index inside the brick)``."""
        node = self.grid.check_node(node)
        brick, local = [], []
        for c, n in zip(node, self.base.dims):
            q, r = divmod(c - 1, n)
            brick.append(q + 1)
            local.append(r + 1)
        return tuple(brick), tuple(local)

    def node(self, brick: Sequence[int], local: Sequence[int]) -> NodeIndex:
        return tuple((b - 1) * n + i for b, n, i in zip(brick, self.base.dims, local))


def brick_partition(g: GridSpec, base: GridSpec) -> BrickPartition:
    if base.d != g.d:
        raise InvalidDimensionError(f"brick {base} and grid {g} have different axis counts")
    if any(n % b for n, b in zip(g.dims, base.dims)):
        raise InvalidDimensionError(f"brick {base} does not tile grid {g}")
    return BrickPartition(g, base, tuple(n // b for n, b in zip(g.dims, base.dims)))


def predict_brick_subvectors(bp: BrickPartition, v0: np.ndarray, value=None) -> np.ndarray:
    """Tile ``v0`` over the grid, flipping it along every axis whose brick index is even.

    ``v0`` must be an eigenvector of the brick; its eigenvalue is taken from
    ``value`` or from the Rayleigh quotient.  The result is checked to be an
    eigenvector of the whole grid at the same eigenvalue.
    """
    v0 = np.asarray(v0, dtype=float)
    if v0.shape != (bp.base.size,):
        raise UsageError(f"brick vector has length {v0.shape}, expected {bp.base.size}")
    Lv = apply_laplacian(bp.base, v0)
    lam = float(value) if value is not None else float(v0 @ Lv / (v0 @ v0))
    scale = max(1.0, float(np.max(np.abs(v0))))
    if np.max(np.abs(Lv - lam * v0)) > SETTINGS.eig_residual_tol * scale:
        raise AnalysisError("brick vector is not an eigenvector of the brick Laplacian")
    block = v0.reshape(bp.base.dims)
    out = np.empty(bp.grid.dims)
    for b in bp.bricks():
        sub = block
        for axis, idx in enumerate(b):
            if (idx - 1) % 2:
                sub = np.flip(sub, axis=axis)
        sl = tuple(slice((i - 1) * n, i * n) for i, n in zip(b, bp.base.dims))
        out[sl] = sub
    w = out.ravel()
    if np.max(np.abs(apply_laplacian(bp.grid, w) - lam * w)) > SETTINGS.eig_residual_tol * scale:
        raise AnalysisError("tiled brick vector is not an eigenvector of the grid")
    return w


# --- symmetry classes ------------------------------------------------------


@dataclass(frozen=True)
class SymmetryClass:
    signs: tuple[int, ...]

    @property
    def label(self) -> str:
        return "S" + "".join("+" if s > 0 else "-" for s in self.signs)

    def __str__(self) -> str:
        return self.label


def classify_symmetry(u: TaggedVector, check: bool = True) -> SymmetryClass:
    """Sign pattern of ``u`` under single-axis flips (+ iff the axis eigen-index is odd)."""
    if not isinstance(u, TaggedVector):
        raise UsageError("classify_symmetry needs a tagged Kronecker basis vector")
    cls = SymmetryClass(u.signs)
    if check:
        v = u.vector
        for axis, s in enumerate(cls.signs, start=1):
            if np.max(np.abs(flip_operator(u.grid, axis)(v) - s * v)) > 1e-10:
                raise AnalysisError(f"flip along axis {axis} does not give sign {s} for {u.indices}")
    return cls


@dataclass(frozen=True)
class SymmetryProfile:
    """Which flip compositions preserve ``|v|`` for every ``v`` in an eigenspace.

    ``invariant_axes`` lists the axis sets ``A`` whose joint flip maps the
    eigenspace to plus or minus itself.  For d = 2 with two classes the single
    entry is ``{1}`` (rule a), ``{2}`` (rule b) or ``{1, 2}`` (rule c).
    """

    kind: str
    classes: tuple[SymmetryClass, ...]
    invariant_axes: tuple[frozenset[int], ...]
    rule: str | None = None

    def identities(self, g: GridSpec) -> list[str]:
        out = []
        for A in self.invariant_axes:
            lhs = ",".join(f"i{l}" for l in range(1, g.d + 1))
            rhs = ",".join(f"{n + 1}-i{l}" if l in A else f"i{l}" for l, n in enumerate(g.dims, start=1))
            out.append(f"|v[{lhs}]| = |v[{rhs}]|")
        return out


_RULES = {frozenset({1}): "a", frozenset({2}): "b", frozenset({1, 2}): "c"}


def eigenspace_symmetry_profile(eb: EigenBasis) -> SymmetryProfile:
    classes = tuple(sorted({SymmetryClass(b.signs) for b in eb.basis}, key=lambda c: tuple(-s for s in c.signs)))
    d = len(classes[0].signs)
    invariant = []
    for r in range(1, d + 1):
        for A in itertools.combinations(range(1, d + 1), r):
            if len({math.prod(c.signs[a - 1] for a in A) for c in classes}) == 1:
                invariant.append(frozenset(A))
    if len(classes) == 1:
        return SymmetryProfile("single-class", classes, tuple(invariant))
    if not invariant:
        return SymmetryProfile("no-symmetry", classes, ())
    if len(classes) == 2:
        rule = _RULES.get(invariant[0]) if d == 2 else None
        return SymmetryProfile("two-class", classes, tuple(invariant), rule)
    return SymmetryProfile("multi-class", classes, tuple(invariant))


def central_line_zeros(g: GridSpec, cls: SymmetryClass) -> list[NodeIndex]:
    """Nodes on a central line of an odd axis with sign -, where every vector of the class vanishes."""
    if len(cls.signs) != g.d:
        raise UsageError(f"class {cls} does not match a {g.d}-axis grid")
    centers = {axis: (n + 1) // 2 for axis, (n, s) in enumerate(zip(g.dims, cls.signs)) if n % 2 and s < 0}
    return [i for i in g.nodes() if any(i[a] == c for a, c in centers.items())]


# --- component polynomials ------------------------------------------------


@dataclass(frozen=True)
class ComponentPolynomial:
    """``p_r(s)`` with integer coefficients, ascending powers of ``s``."""

    r: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, s):
        """Evaluate by the three-term recursion, which stays well conditioned for large ``r``."""
        return _evaluate_recursion(self.r, s)


def _evaluate_recursion(r: int, s):
    if r == 1:
        return 1 + 0 * s
    prev, cur = 1 + 0 * s, 1 - s
    for _ in range(r - 2):
        prev, cur = cur, (2 - s) * cur - prev
    return cur


@lru_cache(maxsize=None)
def component_polynomial(r: int) -> ComponentPolynomial:
    if r < 1:
        raise UsageError(f"polynomial index must be >= 1, got {r}")
    prev, cur = (), (1,)
    if r >= 2:
        prev, cur = cur, (1, -1)
    for _ in range(r - 2):
        shifted = (0,) + cur
        nxt = [0] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j] += 2 * c
        for j, c in enumerate(shifted):
            nxt[j] -= c
        for j, c in enumerate(prev):
            nxt[j] -= c
        prev, cur = cur, tuple(nxt)
    return ComponentPolynomial(r, cur)


def nonvanishing_guard(n: int, lam) -> bool:
    """Check ``|p_r(lam)| > 1e-10`` for ``r = 1 .. (n-1)/2`` on a prime path length."""
    if not is_prime(n) or n == 2:
        raise UsageError(f"guard applies to odd prime path lengths, got {n}")
    s = MP.mpf(lam.numeric if isinstance(lam, SpectralValue) else lam)
    for r in range(1, (n - 1) // 2 + 1):
        if abs(component_polynomial(r)(s)) <= 1e-10:
            raise PrecisionError(f"p_{r}({MP.nstr(s, 17)}) vanished numerically on prime path {n}")
    return True


@lru_cache(maxsize=None)
def path_component_values(n: int, k: int, digits: int) -> tuple:
    """``p_r(lambda_k) (v_k)_1`` for r = 1..n at working precision, exact zeros snapped."""
    s = angle_value(Fraction(k - 1, n))
    first = path_first_component(n, k)
    out = []
    prev, cur = MP.mpf(0), MP.mpf(1)
    for r in range(1, n + 1):
        if r == 2:
            prev, cur = cur, 1 - s
        elif r > 2:
            prev, cur = cur, (2 - s) * cur - prev
        val = cur * first
        if path_component_is_zero(n, k, r):
            if abs(val) > 1e-15:
                raise AnalysisError(f"component polynomial p_{r} misses the zero of v_{k} on P_{n}")
            val = MP.mpf(0)
        out.append(val)
    return tuple(out)


def component_row(tv: TaggedVector, node: NodeIndex):
    val = MP.mpf(1)
    for n, k, i in zip(tv.grid.dims, tv.indices, node):
        val *= path_component_values(n, k, SETTINGS.precision_digits)[i - 1]
    return val


def component_matrix(eb: EigenBasis, nodes: Sequence[NodeIndex]) -> list[list]:
    """Rows are nodes, columns are basis vectors."""
    return [[component_row(b, i) for b in eb.basis] for i in nodes]


# --- rank and null vectors -------------------------------------------------


def _mp_null_space(M: list[list]) -> list[list]:
    """Null space basis of a row list by Gaussian elimination with row scaling."""
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    thresh = SETTINGS.det_rel_tol
    for r in rows:
        scale = max((abs(x) for x in r), default=0)
        if scale:
            r[:] = [x / scale for x in r]
    pivots = []
    row = 0
    for col in range(ncols):
        best = max(range(row, len(rows)), key=lambda i: abs(rows[i][col]), default=None)
        if best is None or abs(rows[best][col]) <= thresh:
            continue
        rows[row], rows[best] = rows[best], rows[row]
        piv = rows[row][col]
        rows[row] = [x / piv for x in rows[row]]
        for i in range(len(rows)):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
        if row == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [MP.mpf(0)] * ncols
        vec[fc] = MP.mpf(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def _float_rank_decision(B: np.ndarray) -> bool | None:
    """True if full column rank, False if clearly deficient, None if ambiguous."""
    m, mu = B.shape
    if m < mu:
        return False
    sv = np.linalg.svd(B, compute_uv=False)
    if sv[0] == 0:
        return False
    ratio = sv[-1] / sv[0]
    if ratio > 1e-6:
        return True
    return None


def _witness_from_alpha(eb: EigenBasis, alpha: Sequence) -> np.ndarray:
    a = np.array([float(x) for x in alpha])
    W = eb.matrix() @ a
    W /= np.max(np.abs(W))
    return W


@dataclass
class ZeroTestResult:
    zero: bool
    det: object
    alpha: np.ndarray | None = None
    witness: np.ndarray | None = None


def simultaneous_zero_test(eb: EigenBasis, nodes: Sequence[Sequence[int]]) -> ZeroTestResult:
    """Does some vector of the eigenspace vanish on exactly ``mu`` given nodes?"""
    g = eb.grid
    nodes = [g.check_node(i) for i in nodes]
    if len(set(nodes)) != eb.multiplicity:
        raise ArityError(
            f"need {eb.multiplicity} distinct nodes for a multiplicity-{eb.multiplicity} eigenvalue, got {len(set(nodes))}; "
            "fewer nodes than the multiplicity can never control it"
        )
    M = component_matrix(eb, nodes)
    if len(M) == 2:
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    else:
        det = MP.det(MP.matrix(M))
    norms = math.prod(max(abs(x) for x in row) for row in M)
    zero = abs(det) <= SETTINGS.det_rel_tol * norms
    null = _mp_null_space(M)
    if zero != bool(null):
        raise AnalysisError(f"determinant and elimination disagree for {eb.value} at {nodes}")
    if not zero:
        return ZeroTestResult(False, det)
    alpha = np.array([float(x) for x in null[0]])
    alpha /= np.max(np.abs(alpha))
    W = _witness_from_alpha(eb, null[0])
    check_witness(g, eb.value, W, nodes)
    return ZeroTestResult(True, det, alpha, W)


def eigenspace_loss(eb: EigenBasis, nodes: Sequence[NodeIndex], with_witness: bool = True) -> Finding | None:
    """Finding if some nonzero vector of ``eb`` vanishes on every node, else None."""
    g = eb.grid
    if eb.multiplicity == 1:
        tv = eb.basis[0]
        if all(tv.component_is_zero(i) for i in nodes):
            W = tv.vector if with_witness else None
            if W is not None:
                check_witness(g, eb.value, W, nodes)
            return Finding(eb.value, (tv.indices,), W, rank=0)
        return None
    flat = [g.flatten(i) for i in nodes]
    B = eb.matrix()[flat]
    decision = _float_rank_decision(B)
    if decision is True:
        return None
    null = _mp_null_space(component_matrix(eb, nodes))
    if not null:
        if decision is False:
            raise AnalysisError(f"float and working-precision rank disagree for {eb.value} at {list(nodes)}")
        return None
    rank = eb.multiplicity - len(null)
    W = None
    if with_witness:
        W = _witness_from_alpha(eb, null[0])
        check_witness(g, eb.value, W, nodes)
    return Finding(eb.value, tuple(b.indices for b in eb.basis), W, rank=rank)


def nonsimple_grid_controllable(g: GridSpec, nodes: Iterable[Sequence[int]], with_witnesses: bool = True) -> GridVerdict:
    """Full verdict for any grid: every eigenspace is tested for a vector vanishing on the nodes."""
    entries = build_partition(g, nodes)
    nodes = tuple(e.node for e in entries)
    mu_star = min_control_set_size(g)
    verdict = GridVerdict(g, nodes, True, common_pairs(entries), method="eigenspace-rank", multiplicity_bound=mu_star)
    for eb in grid_spectrum(g):
        f = eigenspace_loss(eb, nodes, with_witnesses)
        if f is not None:
            verdict.findings.append(f)
    verdict.controllable = not verdict.findings
    if len(nodes) < mu_star:
        if verdict.controllable:
            raise AnalysisError(f"{len(nodes)} nodes control {g} despite multiplicity {mu_star}")
        verdict.method = "multiplicity-bound"
        verdict.reason = f"multiplicity bound: an eigenvalue of multiplicity {mu_star} needs at least {mu_star} nodes"
    elif verdict.controllable:
        verdict.reason = "no eigenspace has a vector vanishing on all nodes"
    else:
        verdict.reason = f"{len(verdict.findings)} eigenspace(s) contain a vector vanishing on all nodes"
    return verdict


# --- brick inheritance -----------------------------------------------------


def proper_bricks(g: GridSpec) -> list[GridSpec]:
    divs = [[b for b in range(1, n + 1) if n % b == 0] for n in g.dims]
    return [GridSpec(t) for t in itertools.product(*divs) if t != g.dims]


def _find_in(b: GridSpec, value: SpectralValue) -> EigenBasis | None:
    for eb in grid_spectrum(b):
        if abs(eb.value.numeric - value.numeric) <= SETTINGS.group_tol:
            return eb
    return None


def signed_cosine_sum(angles: Sequence[Fraction]) -> frozenset:
    """Reduced formal sum of ``cos(a pi)`` terms over the axes.

    ``cos(a pi) = -cos((1-a) pi)`` folds every angle into ``[0, 1/2)`` with a
    sign, ``cos(pi/2) = 0`` drops out, and opposite terms cancel.
    """
    c: Counter = Counter()
    for a in angles:
        if a < Fraction(1, 2):
            c[a] += 1
        elif a > Fraction(1, 2):
            c[1 - a] -= 1
    return frozenset((a, m) for a, m in c.items() if m)


@dataclass
class InheritanceEntry:
    value: SpectralValue
    multiplicity: int
    bricks: list[tuple[tuple[int, ...], int]]
    attributed: tuple[int, ...] | None
    formal_sums: int

    @property
    def uninherited(self) -> bool:
        return not self.bricks

    @property
    def violation(self) -> bool:
        """Uninherited and not explained by a coincidence of the formal cosine sums."""
        return self.uninherited and self.formal_sums > 1


@dataclass
class InheritanceReport:
    grid: GridSpec
    entries: list[InheritanceEntry] = field(default_factory=list)

    @property
    def violations(self) -> list[InheritanceEntry]:
        return [e for e in self.entries if e.violation]

    @property
    def uninherited(self) -> list[InheritanceEntry]:
        return [e for e in self.entries if e.uninherited]


def brick_inheritance_scan(g: GridSpec) -> InheritanceReport:
    """For each repeated eigenvalue, the proper bricks that already carry it.

    Attribution prefers the smallest brick (then lexicographic) in which the
    eigenvalue has the same multiplicity as in ``g``, falling back to the
    bricks of highest multiplicity.
    """
    report = InheritanceReport(g)
    bricks = proper_bricks(g)
    for eb in grid_spectrum(g):
        if eb.multiplicity < 2:
            continue
        hits = []
        for b in bricks:
            found = _find_in(b, eb.value)
            if found is not None:
                hits.append((b.dims, found.multiplicity))
        attributed = None
        if hits:
            top = max(m for _, m in hits)
            target = eb.multiplicity if any(m == eb.multiplicity for _, m in hits) else top
            attributed = min((dims for dims, m in hits if m == target), key=lambda t: (math.prod(t), t))
        sums = {signed_cosine_sum(b.angles) for b in eb.basis}
        report.entries.append(InheritanceEntry(eb.value, eb.multiplicity, hits, attributed, len(sums)))
    return report


def brick_profile(g: GridSpec, value: SpectralValue) -> tuple[tuple[int, ...], SymmetryProfile] | None:
    """Symmetry profile of the eigenvalue in the brick it is attributed to."""
    for e in brick_inheritance_scan(g).entries:
        if abs(e.value.numeric - value.numeric) <= SETTINGS.group_tol and e.attributed is not None:
            eb = _find_in(GridSpec(e.attributed), value)
            return e.attributed, eigenspace_symmetry_profile(eb)
    return None
