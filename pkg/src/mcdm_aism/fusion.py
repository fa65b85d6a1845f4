"""Fusion of TOPSIS and VIKOR metrics into a single compromise ranking."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DuplicateIdError, EmptyInputError, ParseError, RangeError, ShapeError
from .model import WeightVector, data_rows, parse_number, apply_weights, normalize, DecisionMatrix
from .topsis import SeparationTable, ideal_solutions, separations
from .vikor import UtilityRegretTable, best_worst, utility_regret

METRIC_COLUMNS = ("d_plus", "d_minus", "s_plus", "s_minus", "r_plus", "r_minus")
TIE_TOL = 1e-12


@dataclass(frozen=True)
class MetricTable:
    """Per-alternative TOPSIS separations and VIKOR utility/regret values."""

    alternatives: tuple[str, ...]
    d_plus: np.ndarray
    d_minus: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray
    r_plus: np.ndarray
    r_minus: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        n = len(self.alternatives)
        if n == 0:
            raise EmptyInputError("metric table has no alternatives")
        if len(set(self.alternatives)) != n:
            raise DuplicateIdError("metric table has duplicate alternative ids")
        for name in METRIC_COLUMNS:
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ShapeError(f"{name} has shape {arr.shape}, expected ({n},)")
            if not np.all(np.isfinite(arr)):
                raise RangeError(f"{name} contains non-finite values")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_tables(cls, sep: SeparationTable, ur: UtilityRegretTable) -> "MetricTable":
        if tuple(sep.alternatives) != tuple(ur.alternatives):
            raise ShapeError("separation and utility/regret tables list different alternatives")
        return cls(sep.alternatives, sep.d_plus, sep.d_minus, ur.s_plus, ur.s_minus, ur.r_plus, ur.r_minus)

    @property
    def separations(self) -> SeparationTable:
        return SeparationTable(self.alternatives, self.d_plus, self.d_minus)

    @property
    def utility_regret(self) -> UtilityRegretTable:
        return UtilityRegretTable(self.alternatives, self.s_plus, self.s_minus, self.r_plus, self.r_minus)

    def to_csv(self) -> str:
        sdr = sdr_means(self.separations, self.utility_regret)
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["alternative", *METRIC_COLUMNS, "sdr_plus", "sdr_minus"])
        for i, alt in enumerate(self.alternatives):
            vals = [getattr(self, c)[i] for c in METRIC_COLUMNS] + [sdr.sdr_plus[i], sdr.sdr_minus[i]]
            writer.writerow([alt] + [f"{v + 0.0:.6f}" for v in vals])
        return out.getvalue()


def parse_metric_table(csv_text: str) -> MetricTable:
    """Read ``alternative`` plus the six metric columns; extra columns are ignored."""
    lines = data_rows(csv_text)
    try:
        header_line, header = next(lines)
    except StopIteration:
        raise EmptyInputError("no header row") from None
    header = [h.strip().lower() for h in header]
    missing = [c for c in ("alternative", *METRIC_COLUMNS) if c not in header]
    if missing:
        raise ParseError(f"line {header_line}: metric table lacks columns {missing}")
    index = {c: header.index(c) for c in ("alternative", *METRIC_COLUMNS)}
    alts, cols = [], {c: [] for c in METRIC_COLUMNS}
    for lineno, row in lines:
        if len(row) != len(header):
            raise ParseError(f"line {lineno}: row has {len(row)} fields, expected {len(header)}")
        alt = row[index["alternative"]].strip()
        if alt in alts:
            raise DuplicateIdError(f"line {lineno}: duplicate alternative id {alt!r}")
        alts.append(alt)
        for c in METRIC_COLUMNS:
            cols[c].append(parse_number(row[index[c]], lineno, c))
    if not alts:
        raise EmptyInputError("metric table has a header but no rows")
    return MetricTable(tuple(alts), **cols)


def metrics_from_matrix(m: DecisionMatrix, w: WeightVector) -> MetricTable:
    """Run normalization, TOPSIS and VIKOR on a raw decision matrix."""
    n = normalize(m)
    t = apply_weights(n, w)
    sep = separations(t, ideal_solutions(t))
    ur = utility_regret(n, w, best_worst(n))
    return MetricTable.from_tables(sep, ur)


@dataclass(frozen=True)
class SDRTable:
    alternatives: tuple[str, ...]
    sdr_plus: np.ndarray
    sdr_minus: np.ndarray


def sdr_means(sep: SeparationTable, ur: UtilityRegretTable) -> SDRTable:
    """Arithmetic means of (S, D, R) toward the positive and negative ideals."""
    if tuple(sep.alternatives) != tuple(ur.alternatives):
        raise ShapeError("separation and utility/regret tables list different alternatives")
    plus = (ur.s_plus + sep.d_plus + ur.r_plus) / 3.0
    minus = (ur.s_minus + sep.d_minus + ur.r_minus) / 3.0
    return SDRTable(tuple(sep.alternatives), plus, minus)


@dataclass(frozen=True)
class FusionTable:
    alternatives: tuple[str, ...]
    sdr_plus: np.ndarray
    sdr_minus: np.ndarray
    a: np.ndarray
    b: np.ndarray
    q: np.ndarray
    rank: np.ndarray
    tied: np.ndarray
    k: float

    def order(self) -> list[int]:
        """Alternative indices sorted by rank."""
        return [int(i) for i in np.argsort(self.rank, kind="stable")]

    def ranked_ids(self) -> list[str]:
        return [self.alternatives[i] for i in self.order()]


def badness_scores(sdr: SDRTable) -> tuple[np.ndarray, np.ndarray]:
    """Min-max scaled SDR+ (``a``) and reversed SDR- (``b``); 0 is best, 1 worst."""
    plus, minus = np.asarray(sdr.sdr_plus), np.asarray(sdr.sdr_minus)
    plus_span = plus.max() - plus.min()
    minus_span = minus.max() - minus.min()
    if plus_span == 0:
        raise DegenerateError("SDR+ is flat across alternatives")
    if minus_span == 0:
        raise DegenerateError("SDR- is flat across alternatives")
    a = (plus - plus.min()) / plus_span
    b = (minus.max() - minus) / minus_span
    return a, b


def rank_by_q(q: np.ndarray, sdr_plus: np.ndarray, alternatives) -> tuple[np.ndarray, np.ndarray]:
    """Ranks ascending in ``q``; ties fall back to SDR+ then id. Returns (rank, tied)."""
    order = sorted(range(len(q)), key=lambda i: (q[i], sdr_plus[i], alternatives[i]))
    rank = np.empty(len(q), dtype=int)
    for pos, i in enumerate(order):
        rank[i] = pos + 1
    diff = np.abs(q[:, None] - q[None, :]) <= TIE_TOL
    np.fill_diagonal(diff, False)
    return rank, diff.any(axis=1)


def compromise(sdr: SDRTable, k: float = 0.5) -> FusionTable:
    if not 0.0 <= k <= 1.0:
        raise RangeError(f"k={k} is outside [0, 1]")
    a, b = badness_scores(sdr)
    q = (1 - k) * a + k * b
    rank, tied = rank_by_q(q, np.asarray(sdr.sdr_plus), sdr.alternatives)
    return FusionTable(tuple(sdr.alternatives), np.asarray(sdr.sdr_plus), np.asarray(sdr.sdr_minus),
                       a, b, q, rank, tied, float(k))


def rank_report(table: FusionTable, fmt: str = "csv") -> str:
    """Ranking rows sorted by rank, as CSV or aligned text. Ties are marked."""
    rows = [
        (int(table.rank[i]), table.alternatives[i], table.a[i], table.b[i], table.q[i], bool(table.tied[i]))
        for i in table.order()
    ]
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["rank", "alternative", "a", "b", "q", "tie"])
        for r, alt, a, b, q, tie in rows:
            writer.writerow([r, alt, f"{a + 0.0:.6f}", f"{b + 0.0:.6f}", f"{q + 0.0:.6f}", "yes" if tie else ""])
        return out.getvalue()
    if fmt == "text":
        width = max(len("alternative"), *(len(r[1]) for r in rows))
        lines = [f"{'rank':>4}  {'alternative':<{width}}  {'a':>8}  {'b':>8}  {'Q':>8}"]
        for r, alt, a, b, q, tie in rows:
            mark = "  (tie)" if tie else ""
            lines.append(f"{r:>4}  {alt:<{width}}  {a + 0.0:8.4f}  {b + 0.0:8.4f}  {q + 0.0:8.6f}{mark}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
