"""Numerical policy shared by every module.

One tolerance policy is used across the analytic and oracle routes so that
their verdicts are comparable.  Working precision for the analytic route is
read once from ``GRIDCTL_PRECISION_DIGITS`` (default 30).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import mpmath

from .errors import UsageError

MIN_PRECISION_DIGITS = 30


@dataclass(frozen=True)
class Settings:
    precision_digits: int = 30
    # eigenvalue grouping, analytic and oracle alike
    group_tol: float = 1e-9
    gap_factor: float = 10.0
    # dense routes only
    max_nodes: int = 4096
    kalman_max_nodes: int = 200
    # residual bounds
    eig_residual_tol: float = 1e-10
    zero_tol: float = 1e-10
    # PBH oracle: |v_i| <= pbh_tau * ||v||_inf counts as zero
    pbh_tau: float = 1e-8
    kalman_rel_tol: float = 1e-8
    # determinant zero test: |det| <= det_rel_tol * prod(row inf-norms)
    det_rel_tol: float = 1e-20


def _digits_from_env() -> int:
    raw = os.environ.get("GRIDCTL_PRECISION_DIGITS", "30")
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"GRIDCTL_PRECISION_DIGITS must be an integer, got {raw!r}") from None
    if digits < MIN_PRECISION_DIGITS:
        raise UsageError(
            f"GRIDCTL_PRECISION_DIGITS={digits} is below the supported minimum {MIN_PRECISION_DIGITS}"
        )
    return digits


SETTINGS = Settings(precision_digits=_digits_from_env())

# Private mpmath context so callers' global mp.dps is never touched.
MP = mpmath.MPContext()
MP.dps = SETTINGS.precision_digits
