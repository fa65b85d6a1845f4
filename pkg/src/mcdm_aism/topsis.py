"""Ideal solutions and Euclidean separations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ShapeError
from .model import CriterionSpec, Direction, WeightedMatrix


@dataclass(frozen=True)
class IdealPair:
    positive: np.ndarray
    negative: np.ndarray


@dataclass(frozen=True)
class SeparationTable:
    alternatives: tuple[str, ...]
    d_plus: np.ndarray
    d_minus: np.ndarray


def _benefit_mask(dirs: Sequence[CriterionSpec], m: int) -> np.ndarray:
    if len(dirs) != m:
        raise ShapeError(f"{len(dirs)} criterion directions for {m} columns")
    return np.array([c.direction is Direction.BENEFIT for c in dirs])


def ideal_solutions(t: WeightedMatrix, dirs: Sequence[CriterionSpec] | None = None) -> IdealPair:
    """Column max/min per criterion, swapped for cost criteria."""
    dirs = t.criteria if dirs is None else dirs
    benefit = _benefit_mask(dirs, t.values.shape[1])
    hi, lo = t.values.max(axis=0), t.values.min(axis=0)
    return IdealPair(np.where(benefit, hi, lo), np.where(benefit, lo, hi))


def separations(t: WeightedMatrix, ideal: IdealPair) -> SeparationTable:
    if ideal.positive.shape != (t.values.shape[1],):
        raise ShapeError("ideal point length does not match the number of criteria")
    d_plus = np.sqrt(np.sum((t.values - ideal.positive) ** 2, axis=1))
    d_minus = np.sqrt(np.sum((t.values - ideal.negative) ** 2, axis=1))
    return SeparationTable(t.alternatives, d_plus, d_minus)
