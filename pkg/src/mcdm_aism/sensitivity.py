"""Sweeps of the allocation coefficient ``k`` and rank-stability summaries."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotFoundError, ParseError, RangeError
from .fusion import SDRTable, badness_scores, rank_by_q

DEFAULT_GRID = "0:1:0.05"


@dataclass(frozen=True)
class RankTrajectory:
    alternatives: tuple[str, ...]
    grid: tuple[float, ...]
    ranks: np.ndarray  # (len(grid), n)
    q: np.ndarray  # (len(grid), n)
    a: np.ndarray
    b: np.ndarray

    def to_csv(self) -> str:
        """Long format: one ``k, alternative, q, rank`` row per grid point and alternative."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["k", "alternative", "q", "rank"])
        for g, k in enumerate(self.grid):
            for i, alt in enumerate(self.alternatives):
                writer.writerow([f"{k:.6f}", alt, f"{self.q[g, i] + 0.0:.6f}", int(self.ranks[g, i])])
        return out.getvalue()


def parse_grid(spec: str) -> list[float]:
    """Expand ``start:stop:step`` into an inclusive list of k values."""
    try:
        start, stop, step = (float(p) for p in spec.split(":"))
    except ValueError:
        raise ParseError(f"k grid {spec!r} is not of the form start:stop:step") from None
    if step <= 0 or stop < start:
        raise RangeError(f"k grid {spec!r} needs step > 0 and stop >= start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def sweep_k(sdr: SDRTable, grid: Sequence[float]) -> RankTrajectory:
    grid = tuple(float(k) for k in grid)
    if not grid:
        raise RangeError("k grid is empty")
    bad = [k for k in grid if not 0.0 <= k <= 1.0]
    if bad:
        raise RangeError(f"k values outside [0, 1]: {bad}")
    a, b = badness_scores(sdr)
    plus = np.asarray(sdr.sdr_plus)
    q = np.array([(1 - k) * a + k * b for k in grid])
    ranks = np.array([rank_by_q(row, plus, sdr.alternatives)[0] for row in q])
    return RankTrajectory(tuple(sdr.alternatives), grid, ranks, q, a, b)


def max_rank_shift(t: RankTrajectory, reference_k: float = 0.5) -> dict[str, int]:
    """Largest absolute rank change of each alternative relative to ``reference_k``."""
    matches = [g for g, k in enumerate(t.grid) if abs(k - reference_k) <= 1e-9]
    if not matches:
        raise NotFoundError(f"reference k={reference_k} is not on the grid")
    ref = t.ranks[matches[0]]
    shift = np.abs(t.ranks - ref).max(axis=0)
    return {alt: int(s) for alt, s in zip(t.alternatives, shift)}
