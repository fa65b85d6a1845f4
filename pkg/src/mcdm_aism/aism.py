"""Adversarial interpretive structural modeling (AISM).

Alternatives are compared by weak Pareto dominance over a small profile of
metrics. ``A[x, y] = 1`` means ``y`` is at least as good as ``x`` on every
column, so edges point from the dominated node toward the dominating one.
From there the usual ISM chain applies: reflexive-transitive closure, point
reduction of strong components, transitive reduction (the skeleton), and
two opposing level extractions. UP puts the best nodes on top, DOWN puts
the worst nodes at the bottom.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import CycleError, InternalError, ParseError, RangeError, ShapeError
from .fusion import FusionTable, MetricTable, SDRTable


class Sense(enum.Enum):
    SMALLER_BETTER = "smaller"
    LARGER_BETTER = "larger"


class Mode(enum.Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True, eq=False)
class BooleanSquareMatrix:
    bits: np.ndarray

    def __post_init__(self):
        arr = np.array(self.bits)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeError(f"boolean matrix must be square, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise RangeError("boolean matrix entries must be 0 or 1")
        arr = arr.astype(bool)
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @property
    def order(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BooleanSquareMatrix):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.order, self.bits.tobytes()))

    def __repr__(self):
        return f"BooleanSquareMatrix(order={self.order}, edges={int(self.bits.sum())})"

    @classmethod
    def identity(cls, n: int) -> "BooleanSquareMatrix":
        return cls(np.eye(n, dtype=bool))

    def to_csv(self) -> str:
        return "".join(",".join("1" if b else "0" for b in row) + "\n" for row in self.bits)

    @classmethod
    def from_csv(cls, text: str) -> "BooleanSquareMatrix":
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rows.append([int(c) for c in line.split(",")])
            except ValueError:
                raise ParseError(f"line {lineno}: expected comma-separated 0/1 values") from None
        if any(len(r) != len(rows) for r in rows):
            raise ParseError(f"boolean matrix is not square ({len(rows)} rows)")
        return cls(np.array(rows, dtype=int).reshape(len(rows), len(rows)))


@dataclass(frozen=True)
class CriteriaProfile:
    alternatives: tuple[str, ...]
    columns: tuple[tuple[str, Sense], ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "columns", tuple((str(n), Sense(s)) for n, s in self.columns))
        vals = np.array(self.values, dtype=float).reshape(len(self.alternatives), len(self.columns))
        if not np.all(np.isfinite(vals)):
            raise RangeError("profile values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class HierarchyResult:
    """Everything one AISM pass produces.

    Level lists hold alternative ids. ``up_levels[0]`` is the top (best)
    level; ``down_levels[0]`` is the bottom (worst) level. ``scc_map`` maps
    each alternative to its merged-group index, ``labels`` maps a group
    index back to its members, and ``skeleton`` is indexed by group.
    """

    alternatives: tuple[str, ...]
    adjacency: BooleanSquareMatrix
    reachable: BooleanSquareMatrix
    up_levels: list[list[str]]
    down_levels: list[list[str]]
    scc_map: dict[str, int]
    skeleton: BooleanSquareMatrix
    labels: dict[int, list[str]]
    general_skeleton: BooleanSquareMatrix = field(repr=False)

    @property
    def multiplicative(self) -> BooleanSquareMatrix:
        return multiplicative_adjacency(self.adjacency)

    def levels(self, mode: Mode | str) -> list[list[str]]:
        return self.up_levels if Mode(mode) is Mode.UP else self.down_levels


PROFILES = ("sixmetric", "sdr", "q")


def six_metric_profile(metrics: MetricTable) -> CriteriaProfile:
    """Distances to the positive ideal are smaller-better, to the negative larger-better."""
    small, large = Sense.SMALLER_BETTER, Sense.LARGER_BETTER
    cols = (("s_plus", small), ("d_plus", small), ("r_plus", small),
            ("s_minus", large), ("d_minus", large), ("r_minus", large))
    values = np.column_stack([getattr(metrics, c) for c, _ in cols])
    return CriteriaProfile(metrics.alternatives, cols, values)


def sdr_profile(sdr: SDRTable) -> CriteriaProfile:
    cols = (("sdr_plus", Sense.SMALLER_BETTER), ("sdr_minus", Sense.LARGER_BETTER))
    return CriteriaProfile(sdr.alternatives, cols, np.column_stack([sdr.sdr_plus, sdr.sdr_minus]))


def q_profile(table: FusionTable) -> CriteriaProfile:
    return CriteriaProfile(table.alternatives, (("q", Sense.SMALLER_BETTER),), table.q[:, None])


def dominance_adjacency(profile: CriteriaProfile, eps: float = 0.0) -> BooleanSquareMatrix:
    """``A[x, y] = 1`` iff ``x != y`` and ``y`` weakly dominates ``x`` on every column.

    ``eps`` widens each comparison by an absolute slack for noisy data.
    """
    if eps < 0:
        raise RangeError("dominance tolerance must be nonnegative")
    v = profile.values
    n = v.shape[0]
    dom = np.ones((n, n), dtype=bool)
    for j, (_, sense) in enumerate(profile.columns):
        x = v[:, j][:, None]
        y = v[:, j][None, :]
        dom &= (y <= x + eps) if sense is Sense.SMALLER_BETTER else (y >= x - eps)
    np.fill_diagonal(dom, False)
    return BooleanSquareMatrix(dom)


def multiplicative_adjacency(a: BooleanSquareMatrix) -> BooleanSquareMatrix:
    return BooleanSquareMatrix(a.bits | np.eye(a.order, dtype=bool))


def _bool_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (x.astype(np.int64) @ y.astype(np.int64)) > 0


def reachability(a: BooleanSquareMatrix) -> BooleanSquareMatrix:
    """Reflexive-transitive closure by repeated Boolean squaring of ``A | I``."""
    b = multiplicative_adjacency(a).bits
    # at most ceil(log2(n)) squarings reach the fixed point
    for _ in range(max(1, a.order).bit_length() + 1):
        nxt = _bool_product(b, b)
        if np.array_equal(nxt, b):
            return BooleanSquareMatrix(b)
        b = nxt
    raise InternalError("Boolean closure did not reach a fixed point")


def condense(r: BooleanSquareMatrix) -> tuple[BooleanSquareMatrix, list[int]]:
    """Merge mutually reachable nodes of a closure.

    Returns the closure over merged nodes and, for each original node, the
    index of its group. Groups are numbered by their first member.
    """
    mutual = r.bits & r.bits.T
    group = [-1] * r.order
    reps = []
    for i in range(r.order):
        if group[i] >= 0:
            continue
        gid = len(reps)
        reps.append(i)
        for j in np.flatnonzero(mutual[i]):
            group[j] = gid
        group[i] = gid
    rep_idx = np.array(reps, dtype=int)
    merged = r.bits[np.ix_(rep_idx, rep_idx)] if reps else np.zeros((0, 0), dtype=bool)
    return BooleanSquareMatrix(merged), group


def skeleton(r_prime: BooleanSquareMatrix) -> BooleanSquareMatrix:
    """Transitive reduction ``R' - (R' - I)^2 - I`` of an acyclic closure.

    Subtraction is Boolean: an entry survives only if it is 1 on the left
    and 0 in every subtracted term.
    """
    r = r_prime.bits
    eye = np.eye(r_prime.order, dtype=bool)
    strict = r & ~eye
    if np.any(strict & strict.T):
        raise CycleError("skeleton needs an acyclic closure; condense strong components first")
    return BooleanSquareMatrix(strict & ~_bool_product(strict, strict))


def groups_from_map(scc_map: Sequence[int]) -> list[list[int]]:
    groups: list[list[int]] = [[] for _ in range(max(scc_map, default=-1) + 1)]
    for node, g in enumerate(scc_map):
        groups[g].append(node)
    return groups


def expand_cycles(s: BooleanSquareMatrix, scc_map: Sequence[int]) -> BooleanSquareMatrix:
    """Lift a merged-node skeleton back to the original nodes.

    Each group of two or more members becomes a directed ring through its
    members in input order, which is the smallest edge set keeping them
    strongly connected. Edges between groups attach to first members.
    """
    groups = groups_from_map(scc_map)
    if len(groups) != s.order:
        raise ShapeError(f"skeleton has order {s.order} but the map names {len(groups)} groups")
    out = np.zeros((len(scc_map), len(scc_map)), dtype=bool)
    for gi, gj in zip(*np.nonzero(s.bits)):
        out[groups[gi][0], groups[gj][0]] = True
    for members in groups:
        if len(members) > 1:
            for x, y in zip(members, members[1:] + members[:1]):
                out[x, y] = True
    return BooleanSquareMatrix(out)


def extract_levels(r: BooleanSquareMatrix, mode: Mode | str) -> list[list[int]]:
    """Peel a closure into level sets of node indices.

    UP keeps nodes whose reachable set lies inside their antecedent set
    (results first, listed from the top). DOWN keeps nodes whose antecedent
    set lies inside their reachable set (causes first, listed from the
    bottom). Sets are computed over the nodes still remaining.
    """
    mode = Mode(mode)
    bits = r.bits
    remaining = list(range(r.order))
    levels = []
    while remaining:
        idx = np.array(remaining)
        sub = bits[np.ix_(idx, idx)]
        reach, ante = sub, sub.T
        common = reach & ante
        own = reach if mode is Mode.UP else ante
        chosen = np.all(common == own, axis=1)
        if not chosen.any():
            raise InternalError("level extraction made no progress")
        levels.append([int(i) for i in idx[chosen]])
        remaining = [int(i) for i in idx[~chosen]]
    return levels


def analyze(profile: CriteriaProfile, eps: float = 0.0) -> HierarchyResult:
    """Run the full AISM chain on a profile."""
    alts = profile.alternatives
    a = dominance_adjacency(profile, eps)
    r = reachability(a)
    r_prime, scc_map = condense(r)
    s_prime = skeleton(r_prime)
    groups = groups_from_map(scc_map)

    def expand(levels):
        return [[alts[m] for g in level for m in groups[g]] for level in levels]

    def in_input_order(levels):
        order = {alt: i for i, alt in enumerate(alts)}
        return [sorted(level, key=order.__getitem__) for level in levels]

    return HierarchyResult(
        alternatives=alts,
        adjacency=a,
        reachable=r,
        up_levels=in_input_order(expand(extract_levels(r_prime, Mode.UP))),
        down_levels=in_input_order(expand(extract_levels(r_prime, Mode.DOWN))),
        scc_map={alts[i]: g for i, g in enumerate(scc_map)},
        skeleton=s_prime,
        labels={g: [alts[m] for m in members] for g, members in enumerate(groups)},
        general_skeleton=expand_cycles(s_prime, scc_map),
    )


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(h: HierarchyResult, mode: Mode | str, labels: Mapping[str, str] | None = None,
           name: str = "aism") -> str:
    """Render one extraction as a Graphviz digraph.

    Each level becomes a ``rank = same`` block. Edges run from dominated to
    dominating nodes and the layout is bottom-to-top, so better nodes sit
    higher in both UP and DOWN drawings. Merged groups are a single node
    with a comma-joined label.
    """
    mode = Mode(mode)
    labels = labels or {}
    groups = {g: members for g, members in sorted(h.labels.items())}
    index = {alt: i for i, alt in enumerate(h.alternatives)}

    lines = [f"digraph {_quote(f'{name}_{mode.value}')} {{", "  rankdir=BT;", "  node [shape=box];"]
    levels = h.levels(mode)
    for depth, level in enumerate(levels, start=1):
        where = "top" if mode is Mode.UP else "bottom"
        lines.append(f"  // level {depth} from the {where}")
        seen = []
        for alt in level:
            g = h.scc_map[alt]
            if g not in seen:
                seen.append(g)
        nodes = " ".join(
            f"g{g} [label={_quote(', '.join(labels.get(m, m) for m in groups[g]))}];" for g in seen
        )
        lines.append(f"  {{ rank = same; {nodes} }}")

    edges = set()
    gs = h.general_skeleton.bits
    for x, y in zip(*np.nonzero(gs)):
        gx, gy = h.scc_map[h.alternatives[x]], h.scc_map[h.alternatives[y]]
        if gx != gy:
            edges.add((gx, gy))
    for gx, gy in sorted(edges, key=lambda e: (index[groups[e[0]][0]], index[groups[e[1]][0]])):
        lines.append(f"  g{gx} -> g{gy};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_levels(levels: list[list[str]], mode: Mode | str) -> str:
    mode = Mode(mode)
    head = "UP levels (top first)" if mode is Mode.UP else "DOWN levels (bottom first)"
    body = [f"  {i}: {{{', '.join(level)}}}" for i, level in enumerate(levels, start=1)]
    return "\n".join([head, *body]) + "\n"
