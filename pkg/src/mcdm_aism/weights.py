"""Entropy weighting of criteria."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, RangeError
from .model import CriterionSpec, NormalizedMatrix, WeightVector


@dataclass(frozen=True)
class EntropyReport:
    criteria: tuple[CriterionSpec, ...]
    rho: np.ndarray
    entropy: np.ndarray
    variation: np.ndarray
    weights: WeightVector

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["criterion", "entropy", "variation", "weight_percent"])
        for c, e, d, w in zip(self.criteria, self.entropy, self.variation, self.weights.weights):
            writer.writerow([c.id, f"{e + 0.0:.6f}", f"{d + 0.0:.6f}", f"{100 * w + 0.0:.3f}"])
        return out.getvalue()

    def to_text(self) -> str:
        width = max([len("criterion")] + [len(c.label) for c in self.criteria])
        lines = [f"{'criterion':<{width}}  weight %"]
        for c, w in zip(self.criteria, self.weights.weights):
            lines.append(f"{c.label:<{width}}  {100 * w + 0.0:8.3f}")
        return "\n".join(lines) + "\n"


def entropy_weights(n: NormalizedMatrix) -> EntropyReport:
    """Objective criterion weights from the Shannon entropy of each column.

    Columns whose proportions are spread evenly over the alternatives carry
    little information and get small weight. ``0 * ln 0`` is taken as 0 and
    an all-zero column is treated as maximal entropy.
    """
    r = n.values
    rows, m = r.shape
    if rows < 2:
        raise DegenerateError("entropy weighting needs at least two alternatives")
    if np.any(r < 0):
        raise RangeError("entropy weighting needs nonnegative normalized values")

    sums = r.sum(axis=0)
    positive = sums > 0
    rho = np.zeros_like(r)
    rho[:, positive] = r[:, positive] / sums[positive]

    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(rho > 0, rho * np.log(rho), 0.0)
    entropy = np.where(positive, -plogp.sum(axis=0) / np.log(rows), 1.0)
    # constant columns are exactly maximal; the log sum drifts by an ulp
    entropy[np.ptp(r, axis=0) == 0] = 1.0
    entropy = np.clip(entropy, 0.0, 1.0)
    variation = 1.0 - entropy

    total = variation.sum()
    if total > 0:
        w = variation / total
    else:
        w = np.full(m, 1.0 / m)
    return EntropyReport(n.criteria, rho, entropy, variation, WeightVector(w))
