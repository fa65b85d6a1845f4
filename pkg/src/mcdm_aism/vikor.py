"""Group utility and individual regret, in paired best/worst form.

``S+`` is the weighted Manhattan distance to the best value of every
criterion and ``S-`` the distance to the worst; ``R+``/``R-`` are the
corresponding weighted Chebyshev distances. With weights summing to one
``S+ + S- = 1`` for every alternative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, RangeError, ShapeError
from .model import CriterionSpec, Direction, NormalizedMatrix, WeightVector


@dataclass(frozen=True)
class RangeSpec:
    best: np.ndarray
    worst: np.ndarray


@dataclass(frozen=True)
class UtilityRegretTable:
    alternatives: tuple[str, ...]
    s_plus: np.ndarray
    s_minus: np.ndarray
    r_plus: np.ndarray
    r_minus: np.ndarray


def best_worst(n: NormalizedMatrix, dirs: Sequence[CriterionSpec] | None = None) -> RangeSpec:
    dirs = n.criteria if dirs is None else dirs
    if len(dirs) != n.values.shape[1]:
        raise ShapeError(f"{len(dirs)} criterion directions for {n.values.shape[1]} columns")
    benefit = np.array([c.direction is Direction.BENEFIT for c in dirs])
    hi, lo = n.values.max(axis=0), n.values.min(axis=0)
    return RangeSpec(np.where(benefit, hi, lo), np.where(benefit, lo, hi))


def regret_gaps(n: NormalizedMatrix, rng: RangeSpec) -> np.ndarray:
    """Relative distance ``g_ij`` of each value from its column's best, in [0, 1].

    Columns with no spread (best == worst) get ``g = 0``.
    """
    span = rng.best - rng.worst
    flat = span == 0
    safe = np.where(flat, 1.0, span)
    g = (rng.best - n.values) / safe
    g[:, flat] = 0.0
    return g


def utility_regret(n: NormalizedMatrix, w: WeightVector, rng: RangeSpec) -> UtilityRegretTable:
    m = n.values.shape[1]
    if len(w) != m or rng.best.shape != (m,):
        raise ShapeError("weights, range and matrix disagree on the number of criteria")
    if np.all(rng.best == rng.worst):
        raise DegenerateError("every criterion has best == worst; utility and regret are undefined")
    g = regret_gaps(n, rng)
    wg = w.weights * g
    wgood = w.weights * (1.0 - g)
    return UtilityRegretTable(
        n.alternatives,
        s_plus=wg.sum(axis=1),
        s_minus=wgood.sum(axis=1),
        r_plus=wg.max(axis=1),
        r_minus=wgood.max(axis=1),
    )


def classic_q(table: UtilityRegretTable, k: float = 0.5) -> np.ndarray:
    """Standard VIKOR compromise index; smaller is better."""
    if not 0.0 <= k <= 1.0:
        raise RangeError(f"k={k} is outside [0, 1]")
    s, r = table.s_plus, table.r_plus
    s_span, r_span = s.max() - s.min(), r.max() - r.min()
    if s_span == 0:
        raise DegenerateError("group utility S+ is flat across alternatives")
    if r_span == 0:
        raise DegenerateError("individual regret R+ is flat across alternatives")
    return k * (s - s.min()) / s_span + (1 - k) * (r - r.min()) / r_span
