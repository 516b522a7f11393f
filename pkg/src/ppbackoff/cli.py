"""Command-line driver: extract, train, predict, evaluate, baseline, distance-stats.

Splitting is derived, not stored: ``train`` and ``evaluate`` given the
same tuple file, seed, and fractions reconstruct the identical split, so
a model trained on the train portion is scored on exactly the held-out
portion without intermediate files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus, counts, evaluation
from .estimator import estimate_pp1, estimate_pp2, estimate_pp3
from .trees import ParseError, read_treebank

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class DataError(Exception):
    """Input problem attributable to a file: reported with its path."""


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as err:
        raise DataError(f"{path}: {err.strerror or err}") from None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise DataError(f"{path}: {err}") from None


def _write_output(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.write(data.decode("utf-8"))
        return
    try:
        Path(path).write_bytes(data)
    except OSError as err:
        raise DataError(f"{path}: {err.strerror or err}") from None


def _load_records(path: str) -> list[corpus.TupleRecord]:
    try:
        return corpus.read_tuple_file(_read_bytes(path))
    except corpus.TupleFileError as err:
        raise DataError(f"{path}: {err}") from None


def _load_model(path: str) -> counts.FrequencyDatabase:
    try:
        return counts.load_model(_read_bytes(path))
    except counts.ModelFormatError as err:
        raise DataError(f"{path}: {err}") from None


def _split_spec(args) -> evaluation.SplitSpec | None:
    if args.seed is None:
        return None
    fractions = {
        1: args.test_fraction_pp1,
        2: args.test_fraction_pp2,
        3: args.test_fraction_pp3,
    }
    try:
        return evaluation.SplitSpec(fractions=fractions, seed=args.seed)
    except ValueError as err:
        raise _UsageError(str(err)) from None


def _add_split_flags(parser) -> None:
    parser.add_argument("--seed", type=int, default=None,
                        help="derive a train/test split with this seed (default: no split)")
    parser.add_argument("--test-fraction-pp1", type=float, default=0.05, metavar="F")
    parser.add_argument("--test-fraction-pp2", type=float, default=0.10, metavar="F")
    parser.add_argument("--test-fraction-pp3", type=float, default=0.10, metavar="F")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppbackoff",
                     description="Train and apply backed-off PP attachment estimators.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("extract", help="treebank -> tuple file")
    p.add_argument("--input", required=True, help="bracketed treebank, one tree per blank-line block")
    p.add_argument("--output", default=None, help="tuple file to write (default: stdout)")
    p.add_argument("--normalization", choices=corpus.NORMALIZATIONS, default="lower")

    p = sub.add_parser("train", help="tuple file -> model file")
    p.add_argument("--input", required=True, help="tuple file")
    p.add_argument("--output", default=None, help="model file to write (default: stdout)")
    p.add_argument("--normalization", choices=corpus.NORMALIZATIONS, default="lower")
    _add_split_flags(p)

    p = sub.add_parser("predict", help="model + query tuples -> decisions")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True,
                   help="query file: tuple-file lines without the config column")
    p.add_argument("--output", default=None)

    p = sub.add_parser("evaluate", help="model + test tuples -> accuracy report")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True, help="tuple file with the test records")
    p.add_argument("--output", default=None,
                   help="write machine-readable level rows here (text table goes to stdout)")
    _add_split_flags(p)

    p = sub.add_parser("baseline", help="tuple file -> chance and most-frequent baselines")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    _add_split_flags(p)

    p = sub.add_parser("distance-stats", help="tuple file -> attachment-by-distance table")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)

    return parser


def _testsets(records):
    """Interpret a record list as nested test sets (full file = test1)."""
    test1 = list(records)
    test2 = [r for r in records if r.kind >= 2]
    test3 = [r for r in records if r.kind == 3]
    return test1, test2, test3


def _cmd_extract(args) -> int:
    text = _read_text(args.input)
    try:
        trees = read_treebank(text)
    except ParseError as err:
        raise DataError(f"{args.input}: {err}") from None
    records = corpus.extract_tuples(trees, normalization=args.normalization)
    _write_output(args.output, corpus.write_tuple_file(records))
    return EXIT_OK


def _cmd_train(args) -> int:
    records = _load_records(args.input)
    spec = _split_spec(args)
    if spec is not None:
        records = evaluation.stratified_split(records, spec).train
    try:
        db = counts.build_database(records, normalization=args.normalization)
    except ValueError as err:
        raise DataError(f"{args.input}: {err}") from None
    _write_output(args.output, counts.save_model(db))
    return EXIT_OK


def _parse_query_line(line: str, number: int):
    fields = line.split("\t")
    if len(fields) != 10:
        raise DataError(f"query line {number}: expected 10 tab-separated fields, found {len(fields)}")
    _, kind_text, v, n1, p1, n2, p2, n3, p3, _ = fields
    try:
        kind = int(kind_text)
    except ValueError:
        raise DataError(f"query line {number}: kind must be an integer") from None
    needed = {1: (v, n1, p1), 2: (v, n1, p1, n2, p2), 3: (v, n1, p1, n2, p2, n3, p3)}.get(kind)
    if needed is None:
        raise DataError(f"query line {number}: kind must be 1, 2, or 3")
    if any(not w for w in needed):
        raise DataError(f"query line {number}: missing head word for kind {kind}")
    return kind, needed


def _cmd_predict(args) -> int:
    db = _load_model(args.model)
    estimators = {1: estimate_pp1, 2: estimate_pp2, 3: estimate_pp3}
    out_lines = []
    for number, line in enumerate(_read_text(args.input).splitlines(), start=1):
        if not line.strip():
            continue
        kind, words = _parse_query_line(line, number)
        decision = estimators[kind](db, *words)
        probability = decision.distribution[decision.config]
        out_lines.append(f"{decision.config}\tlevel={decision.backoff_level}\t{probability:.3f}")
    _write_output(args.output, ("".join(l + "\n" for l in out_lines)).encode("utf-8"))
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    db = _load_model(args.model)
    records = _load_records(args.input)
    spec = _split_spec(args)
    if spec is not None:
        split = evaluation.stratified_split(records, spec)
        test1, test2, test3 = split.test1, split.test2, split.test3
    else:
        test1, test2, test3 = _testsets(records)
    report = evaluation.evaluate(db, test1, test2, test3)
    sys.stdout.write(report.render_text())
    if args.output is not None:
        _write_output(args.output, report.machine_rows().encode("utf-8"))
    return EXIT_OK


def _cmd_baseline(args) -> int:
    records = _load_records(args.input)
    spec = _split_spec(args)
    if spec is not None:
        split = evaluation.stratified_split(records, spec)
        train, testsets = split.train, (split.test1, split.test2, split.test3)
    else:
        train, testsets = records, _testsets(records)
    accuracies = evaluation.baseline_most_frequent(train, testsets)
    lines = ["kind\ttest-items\tmost-frequent\tchance"]
    for kind, items in zip((1, 2, 3), testsets):
        mf = accuracies[kind]
        mf_text = f"{mf * 100:.1f}%" if mf is not None else "-"
        lines.append(
            f"{kind}\t{len(items)}\t{mf_text}\t{evaluation.baseline_chance(kind) * 100:.2f}%"
        )
    _write_output(args.output, ("".join(l + "\n" for l in lines)).encode("utf-8"))
    return EXIT_OK


def _cmd_distance_stats(args) -> int:
    records = _load_records(args.input)
    table = evaluation.distance_analysis(records)
    _write_output(args.output, table.render_text().encode("utf-8"))
    return EXIT_OK


_COMMANDS = {
    "extract": _cmd_extract,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "evaluate": _cmd_evaluate,
    "baseline": _cmd_baseline,
    "distance-stats": _cmd_distance_stats,
}


def run(argv: list[str]) -> int:
    """Entry point used by tests; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("a command is required")
        return _COMMANDS[args.command](args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except DataError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:  # pragma: no cover
    sys.exit(run(sys.argv[1:]))
