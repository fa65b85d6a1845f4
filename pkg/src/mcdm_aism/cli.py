"""``mcdm`` command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import contextlib
import difflib
import logging
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .aism import PROFILES, HierarchyResult, Mode, analyze, format_levels, q_profile, sdr_profile, six_metric_profile, to_dot
from .errors import InternalError, MCDMError, ParseError, RangeError
from .fusion import FusionTable, MetricTable, compromise, metrics_from_matrix, parse_metric_table, rank_report, sdr_means
from .model import DecisionMatrix, WeightVector, aggregate_questionnaires, data_rows, normalize, parse_decision_matrix, parse_number
from .sensitivity import DEFAULT_GRID, max_rank_shift, parse_grid, sweep_k
from .weights import EntropyReport, entropy_weights

log = logging.getLogger("mcdm")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
BUNDLED_PREFIX = "bundled:"
DEFAULT_METRICS = BUNDLED_PREFIX + "airline_metrics.csv"
WEIGHT_SUM_SLACK = 0.01
COMMANDS = ("weights", "rank", "aism", "sensitivity", "pipeline")


class UsageError(Exception):
    pass


class StageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@contextlib.contextmanager
def stage(name: str):
    try:
        yield
    except (MCDMError, OSError) as exc:
        raise StageError(name, exc) from exc


def resolve(path: str) -> Path:
    if path.startswith(BUNDLED_PREFIX):
        return Path(str(resources.files("mcdm_aism") / "data" / path[len(BUNDLED_PREFIX):]))
    return Path(path)


def read_text(path: str) -> str:
    p = resolve(path)
    try:
        return p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"input file not found: {p}") from None
    except OSError as exc:
        raise OSError(f"cannot read {p}: {exc.strerror or exc}") from None


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...] = ()
    questionnaires: tuple[str, ...] = ()
    metrics: str | None = None
    weights: str = "entropy"
    k: float = 0.5
    dominance_eps: float = 0.0
    out_dir: str | None = None
    profiles: tuple[str, ...] = PROFILES
    k_grid: str = DEFAULT_GRID
    reference_k: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.k <= 1.0:
            raise UsageError(f"--k must lie in [0, 1], got {self.k}")
        if not 0.0 <= self.reference_k <= 1.0:
            raise UsageError(f"--reference must lie in [0, 1], got {self.reference_k}")
        if self.dominance_eps < 0:
            raise UsageError(f"--dominance-eps must be nonnegative, got {self.dominance_eps}")
        if sum(bool(x) for x in (self.inputs, self.questionnaires, self.metrics)) > 1:
            raise UsageError("give only one of --input, --questionnaires, --metrics")
        for p in (*self.inputs, *self.questionnaires, self.metrics, self.out_dir, self.weights):
            if p is not None and not str(p).strip():
                raise UsageError("paths must be nonempty")
        unknown = [p for p in self.profiles if p not in PROFILES]
        if unknown:
            raise UsageError(f"unknown AISM profiles {unknown}")

    @property
    def has_raw_scores(self) -> bool:
        return bool(self.inputs or self.questionnaires)


def load_matrix(cfg: RunConfig) -> DecisionMatrix:
    if cfg.questionnaires:
        sheets = [parse_decision_matrix(read_text(p)) for p in cfg.questionnaires]
        return aggregate_questionnaires(sheets)
    return parse_decision_matrix(read_text(cfg.inputs[0]))


def load_weight_file(path: str, matrix: DecisionMatrix) -> WeightVector:
    """Read ``criterion,weight`` rows; a sum within 1% of one is renormalized."""
    rows = data_rows(read_text(path))
    try:
        _, header = next(rows)
    except StopIteration:
        raise ParseError(f"{path}: weight file is empty") from None
    if [h.strip().lower() for h in header] != ["criterion", "weight"]:
        raise ParseError(f"{path}: header must be 'criterion,weight'")
    given = {}
    for lineno, row in rows:
        if len(row) != 2:
            raise ParseError(f"{path}: line {lineno}: expected 2 fields")
        given[row[0].strip()] = parse_number(row[1], lineno, "weight")
    ids = matrix.criterion_ids
    missing = [c for c in ids if c not in given]
    extra = [c for c in given if c not in ids]
    if missing or extra:
        raise ParseError(f"{path}: weights missing for {missing}, unknown criteria {extra}")
    w = np.array([given[c] for c in ids])
    if np.any(w < 0):
        raise RangeError(f"{path}: weights must be nonnegative")
    total = w.sum()
    if abs(total - 1.0) > WEIGHT_SUM_SLACK:
        raise RangeError(f"{path}: weights sum to {total:.6g}; must be within {WEIGHT_SUM_SLACK} of 1")
    if abs(total - 1.0) > 1e-9:
        log.warning("weights in %s sum to %.6g; renormalized to 1", path, total)
    return WeightVector(w / total)


@dataclass
class Results:
    metrics: MetricTable
    fusion: FusionTable
    entropy: EntropyReport | None = None
    hierarchies: dict[str, HierarchyResult] = field(default_factory=dict)


def compute_metrics(cfg: RunConfig) -> tuple[MetricTable, EntropyReport | None]:
    if not cfg.has_raw_scores:
        if cfg.weights != "entropy":
            log.warning("--weights is ignored when starting from a metric table")
        with stage("ingest"):
            return parse_metric_table(read_text(cfg.metrics or DEFAULT_METRICS)), None
    with stage("ingest"):
        matrix = load_matrix(cfg)
    report = None
    with stage("weights"):
        if cfg.weights == "entropy":
            report = entropy_weights(normalize(matrix))
            w = report.weights
        else:
            w = load_weight_file(cfg.weights, matrix)
    with stage("topsis-vikor"):
        return metrics_from_matrix(matrix, w), report


def evaluate(cfg: RunConfig, profiles: Sequence[str] = ()) -> Results:
    metrics, report = compute_metrics(cfg)
    with stage("fusion"):
        sdr = sdr_means(metrics.separations, metrics.utility_regret)
        table = compromise(sdr, cfg.k)
    res = Results(metrics, table, report)
    for name in profiles:
        with stage(f"aism[{name}]"):
            profile = {
                "sixmetric": lambda: six_metric_profile(metrics),
                "sdr": lambda: sdr_profile(sdr),
                "q": lambda: q_profile(table),
            }[name]()
            res.hierarchies[name] = analyze(profile, cfg.dominance_eps)
    return res


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def dump_matrices(h: HierarchyResult, directory: Path) -> None:
    write(directory / "A.csv", h.adjacency.to_csv())
    write(directory / "B.csv", h.multiplicative.to_csv())
    write(directory / "R.csv", h.reachable.to_csv())
    write(directory / "S.csv", h.general_skeleton.to_csv())


def run_pipeline(cfg: RunConfig) -> int:
    """Run every stage and write all artifacts under ``cfg.out_dir``."""
    if not cfg.out_dir:
        raise UsageError("pipeline needs --out")
    out = Path(cfg.out_dir)
    res = evaluate(cfg, cfg.profiles)
    if res.entropy is not None:
        write(out / "weights.csv", res.entropy.to_csv())
    else:
        log.info("started from a metric table; no weights report written")
    write(out / "metrics.csv", res.metrics.to_csv())
    write(out / "ranking.csv", rank_report(res.fusion, "csv"))
    for name, h in res.hierarchies.items():
        dump_matrices(h, out / "aism" / name)
        for mode in Mode:
            write(out / "aism" / name / f"{mode.value}.dot", to_dot(h, mode, name=name))
        write(out / "aism" / name / "levels.txt",
              format_levels(h.up_levels, Mode.UP) + format_levels(h.down_levels, Mode.DOWN))
    with stage("sensitivity"):
        sdr = sdr_means(res.metrics.separations, res.metrics.utility_regret)
        traj = sweep_k(sdr, parse_grid(cfg.k_grid))
        shifts = max_rank_shift(traj, cfg.reference_k)
    write(out / "sweep.csv", traj.to_csv())
    print(rank_report(res.fusion, "text"), end="")
    print(f"max rank shift over k grid vs k={cfg.reference_k}: {max(shifts.values())}")
    print(f"artifacts written to {out}")
    return EXIT_OK


class Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with status 1 and suggests close subcommands."""

    def error(self, message):
        hint = ""
        if "invalid choice" in message:
            bad = message.split("invalid choice: ", 1)[1].split("'")[1]
            close = difflib.get_close_matches(bad, COMMANDS, n=1)
            if close:
                hint = f"\ndid you mean '{close[0]}'?"
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}{hint}\n")


def _add_inputs(p: argparse.ArgumentParser, weights: bool = True) -> None:
    g = p.add_argument_group("input (default: bundled airline metric table)")
    g.add_argument("--input", metavar="CSV", help="decision matrix CSV (alternative,<id>:benefit|cost,...)")
    g.add_argument("--questionnaires", nargs="+", metavar="CSV",
                   help="one 1-5 score sheet per expert; averaged cell-wise")
    g.add_argument("--metrics", metavar="CSV",
                   help="precomputed metric table (alternative,d_plus,d_minus,s_plus,s_minus,r_plus,r_minus)")
    if weights:
        p.add_argument("--weights", default="entropy", metavar="entropy|FILE",
                       help="entropy weighting or a criterion,weight CSV (default: entropy)")


def _add_k(p):
    p.add_argument("--k", type=float, default=0.5, help="allocation coefficient in [0, 1] (default: 0.5)")


def _add_eps(p):
    p.add_argument("--dominance-eps", type=float, default=0.0,
                   help="absolute slack for dominance comparisons (default: 0)")


def _add_grid(p):
    p.add_argument("--k-grid", default=DEFAULT_GRID, metavar="START:STOP:STEP",
                   help=f"k values to sweep, inclusive (default: {DEFAULT_GRID})")
    p.add_argument("--reference", type=float, default=0.5, help="reference k for rank shifts (default: 0.5)")


def build_parser() -> Parser:
    parser = Parser(prog="mcdm", description="TOPSIS-VIKOR compromise ranking with AISM hierarchies.")
    parser.add_argument("--version", action="version", version=f"mcdm {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}", parser_class=Parser)

    p = sub.add_parser("weights", help="entropy weights of the criteria")
    _add_inputs(p, weights=False)
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    p = sub.add_parser("rank", help="compromise ranking (metrics.csv, ranking.csv)")
    _add_inputs(p)
    _add_k(p)
    p.add_argument("--out", metavar="DIR", help="directory for metrics.csv and ranking.csv")

    p = sub.add_parser("aism", help="AISM hierarchy for one metric profile")
    _add_inputs(p)
    _add_k(p)
    _add_eps(p)
    p.add_argument("--profile", choices=PROFILES, default="q")
    p.add_argument("--mode", choices=("up", "down", "both"), default="both")
    p.add_argument("--dot", metavar="FILE", help="write DOT here; with --mode both, .up/.down are inserted")
    p.add_argument("--matrices", metavar="DIR", help="dump A, B, R, S as 0/1 CSV")

    p = sub.add_parser("sensitivity", help="sweep k and report rank stability")
    _add_inputs(p)
    _add_grid(p)
    p.add_argument("--out", metavar="FILE", help="long-form CSV (k, alternative, q, rank)")

    p = sub.add_parser("pipeline", help="run every stage and write all artifacts")
    _add_inputs(p)
    _add_k(p)
    _add_eps(p)
    _add_grid(p)
    p.add_argument("--out", metavar="DIR", required=True)
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        inputs=(args.input,) if args.input else (),
        questionnaires=tuple(args.questionnaires or ()),
        metrics=args.metrics,
        weights=getattr(args, "weights", "entropy"),
        k=getattr(args, "k", 0.5),
        dominance_eps=getattr(args, "dominance_eps", 0.0),
        out_dir=getattr(args, "out", None),
        k_grid=getattr(args, "k_grid", DEFAULT_GRID),
        reference_k=getattr(args, "reference", 0.5),
    )


def _dot_targets(path: str, mode: str) -> list[tuple[Mode, Path]]:
    if mode != "both":
        return [(Mode(mode), Path(path))]
    p = Path(path)
    return [(m, p.with_name(f"{p.stem}.{m.value}{p.suffix or '.dot'}")) for m in Mode]


def cmd_weights(args, cfg: RunConfig) -> int:
    if not cfg.has_raw_scores:
        raise UsageError("weights needs --input or --questionnaires")
    with stage("ingest"):
        matrix = load_matrix(cfg)
    with stage("weights"):
        report = entropy_weights(normalize(matrix))
    text = report.to_csv() if args.format == "csv" else report.to_text()
    if args.out:
        write(Path(args.out), text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_rank(args, cfg: RunConfig) -> int:
    res = evaluate(cfg)
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        write(out / "metrics.csv", res.metrics.to_csv())
        write(out / "ranking.csv", rank_report(res.fusion, "csv"))
    print(rank_report(res.fusion, "text"), end="")
    return EXIT_OK


def cmd_aism(args, cfg: RunConfig) -> int:
    res = evaluate(cfg, [args.profile])
    h = res.hierarchies[args.profile]
    modes = list(Mode) if args.mode == "both" else [Mode(args.mode)]
    for m in modes:
        print(format_levels(h.levels(m), m), end="")
    if args.dot:
        for m, path in _dot_targets(args.dot, args.mode):
            write(path, to_dot(h, m, name=args.profile))
    if args.matrices:
        dump_matrices(h, Path(args.matrices))
    return EXIT_OK


def cmd_sensitivity(args, cfg: RunConfig) -> int:
    metrics, _ = compute_metrics(cfg)
    with stage("sensitivity"):
        sdr = sdr_means(metrics.separations, metrics.utility_regret)
        traj = sweep_k(sdr, parse_grid(cfg.k_grid))
        shifts = max_rank_shift(traj, cfg.reference_k)
    if args.out:
        write(Path(args.out), traj.to_csv())
    width = max(len(a) for a in shifts)
    print(f"{'alternative':<{width}}  max rank shift vs k={cfg.reference_k}")
    for alt, s in shifts.items():
        print(f"{alt:<{width}}  {s}")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="mcdm: %(levelname)s: %(message)s")
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    handlers = {
        "weights": cmd_weights,
        "rank": cmd_rank,
        "aism": cmd_aism,
        "sensitivity": cmd_sensitivity,
        "pipeline": lambda a, c: run_pipeline(c),
    }
    try:
        cfg = config_from_args(args)
        return handlers[args.command](args, cfg)
    except UsageError as exc:
        print(f"mcdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StageError as exc:
        internal = isinstance(exc.cause, InternalError)
        print(f"mcdm: {'internal ' if internal else ''}error in stage {exc}", file=sys.stderr)
        return EXIT_INTERNAL if internal else EXIT_DATA
    except (MCDMError, OSError) as exc:
        print(f"mcdm: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"mcdm: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
