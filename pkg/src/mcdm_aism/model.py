"""Decision matrix types, CSV ingestion, normalization and weighting."""

from __future__ import annotations

import csv
import enum
import io
import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DuplicateIdError, EmptyInputError, ParseError, RangeError, ShapeError

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class Direction(enum.Enum):
    BENEFIT = "benefit"
    COST = "cost"


@dataclass(frozen=True)
class CriterionSpec:
    id: str
    label: str = ""
    direction: Direction = Direction.BENEFIT

    def __post_init__(self):
        if not isinstance(self.direction, Direction):
            raise TypeError(f"direction must be a Direction, got {self.direction!r}")
        if not self.label:
            object.__setattr__(self, "label", self.id)


def _frozen(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise ShapeError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_unique(ids: Sequence[str], what: str) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise DuplicateIdError(f"duplicate {what} id {i!r}")
        seen.add(i)


@dataclass(frozen=True)
class DecisionMatrix:
    """Alternatives x criteria score grid.

    ``values[i, j]`` is the score of alternative ``i`` on criterion ``j``.
    The array is stored read-only.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        values = _frozen(self.values, 2)
        object.__setattr__(self, "values", values)
        n, m = len(self.alternatives), len(self.criteria)
        if n < 1 or m < 1:
            raise EmptyInputError("a decision matrix needs at least one alternative and one criterion")
        if values.shape != (n, m):
            raise ShapeError(f"values have shape {values.shape}, expected ({n}, {m})")
        if not np.all(np.isfinite(values)):
            raise RangeError("decision matrix contains non-finite values")
        _check_unique(self.alternatives, "alternative")
        _check_unique([c.id for c in self.criteria], "criterion")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def criterion_ids(self) -> list[str]:
        return [c.id for c in self.criteria]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["alternative"] + [f"{c.id}:{c.direction.value}" for c in self.criteria])
        for alt, row in zip(self.alternatives, self.values):
            writer.writerow([alt] + [_fmt(v) for v in row])
        return out.getvalue()


@dataclass(frozen=True)
class WeightVector:
    weights: np.ndarray

    def __post_init__(self):
        w = _frozen(self.weights, 1)
        if w.size == 0:
            raise EmptyInputError("weight vector is empty")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise RangeError("weights must be finite and nonnegative")
        if abs(w.sum() - 1.0) > 1e-9:
            raise RangeError(f"weights sum to {w.sum():.12g}, expected 1")
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.weights.size

    @classmethod
    def uniform(cls, m: int) -> "WeightVector":
        return cls(np.full(m, 1.0 / m))


@dataclass(frozen=True)
class NormalizedMatrix:
    """Column-wise vector-normalized scores ``r_ij``."""

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, 2))
        if self.values.shape != (len(self.alternatives), len(self.criteria)):
            raise ShapeError("normalized values do not match the labels")


@dataclass(frozen=True)
class WeightedMatrix:
    """Normalized scores scaled by the criterion weights, ``t_ij = r_ij * w_j``."""

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, 2))
        if self.values.shape != (len(self.alternatives), len(self.criteria)):
            raise ShapeError("weighted values do not match the labels")


def _fmt(v: float) -> str:
    return f"{v + 0.0:.6f}"


def parse_number(cell: str, line: int, column: str) -> float:
    text = cell.strip()
    if not _NUMBER.fullmatch(text):
        raise ParseError(f"line {line}, column {column!r}: {cell!r} is not a number")
    value = float(text)
    if not math.isfinite(value):
        raise ParseError(f"line {line}, column {column!r}: {cell!r} is not finite")
    return value


def data_rows(text: str):
    """Yield (line number, row) pairs, skipping blanks and '#' comments."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        yield lineno, next(csv.reader([raw]))


def parse_criterion_header(cell: str) -> CriterionSpec:
    cid, sep, direction = cell.strip().rpartition(":")
    if not sep or not cid:
        raise ParseError(f"criterion header {cell!r} lacks a ':benefit' or ':cost' suffix")
    try:
        d = Direction(direction.strip().lower())
    except ValueError:
        raise ParseError(f"criterion header {cell!r}: unknown direction {direction!r}") from None
    return CriterionSpec(id=cid.strip(), direction=d)


def parse_decision_matrix(csv_text: str) -> DecisionMatrix:
    """Parse a decision matrix from CSV text.

    The header is ``alternative,<id>:benefit|cost,...`` and each following
    row holds an alternative id and one number per criterion.
    """
    lines = data_rows(csv_text)
    try:
        header_line, header = next(lines)
    except StopIteration:
        raise EmptyInputError("no header row") from None
    if not header or header[0].strip().lower() != "alternative":
        raise ParseError(f"line {header_line}: header must start with 'alternative'")
    criteria = [parse_criterion_header(c) for c in header[1:]]
    if not criteria:
        raise ParseError(f"line {header_line}: header names no criteria")
    _check_unique([c.id for c in criteria], "criterion")

    alternatives, rows = [], []
    for lineno, row in lines:
        if len(row) != len(criteria) + 1:
            raise ParseError(
                f"line {lineno}: row has {len(row) - 1} values, expected {len(criteria)}"
            )
        alt = row[0].strip()
        if alt in alternatives:
            raise DuplicateIdError(f"line {lineno}: duplicate alternative id {alt!r}")
        alternatives.append(alt)
        rows.append([parse_number(c, lineno, crit.id) for c, crit in zip(row[1:], criteria)])
    if not rows:
        raise EmptyInputError("decision matrix has a header but no rows")
    return DecisionMatrix(tuple(alternatives), tuple(criteria), np.array(rows))


def aggregate_questionnaires(sheets: Sequence[DecisionMatrix]) -> DecisionMatrix:
    """Cell-wise mean of per-expert score sheets on the 1-5 scale."""
    if not sheets:
        raise EmptyInputError("no questionnaire sheets given")
    first = sheets[0]
    for k, sheet in enumerate(sheets):
        if sheet.alternatives != first.alternatives or sheet.criteria != first.criteria:
            raise ShapeError(f"sheet {k} does not share the alternatives/criteria of sheet 0")
        bad = np.argwhere((sheet.values < 1) | (sheet.values > 5))
        if bad.size:
            i, j = bad[0]
            raise RangeError(
                f"sheet {k}: score {sheet.values[i, j]} for "
                f"({sheet.alternatives[i]}, {sheet.criteria[j].id}) is outside [1, 5]"
            )
    mean = np.mean(np.stack([s.values for s in sheets]), axis=0)
    return DecisionMatrix(first.alternatives, first.criteria, mean)


def normalize(m: DecisionMatrix) -> NormalizedMatrix:
    """Divide each column by its Euclidean norm; all-zero columns stay zero."""
    norms = np.sqrt(np.sum(m.values**2, axis=0))
    safe = np.where(norms > 0, norms, 1.0)
    return NormalizedMatrix(m.alternatives, m.criteria, m.values / safe)


def apply_weights(n: NormalizedMatrix, w: WeightVector) -> WeightedMatrix:
    if len(w) != len(n.criteria):
        raise ShapeError(f"{len(w)} weights for {len(n.criteria)} criteria")
    return WeightedMatrix(n.alternatives, n.criteria, n.values * w.weights)
