"""Nested stratified splits, accuracy reports, baselines, distance tables.

The three test sets are nested: every 3-PP test item is also a 2-PP test
item (for its first two PPs) and a 1-PP test item (for its first PP), so
that no statistic consulted when resolving a deeper test case was ever
trained on that case's shallower projection.
"""

from __future__ import annotations

import logging
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .configurations import Site, config_codes, first_pp_code, leading_pair_code
from .corpus import TupleRecord
from .counts import FrequencyDatabase
from .estimator import AttachmentDecision, BackoffLevel, estimate_pp1, estimate_pp2, estimate_pp3

log = logging.getLogger(__name__)

DEFAULT_FRACTIONS = {1: 0.05, 2: 0.10, 3: 0.10}


def percent_tenths(correct: int, total: int) -> int:
    """Percentage in exact tenths, truncated: (855, 1014) -> 843."""
    if total <= 0:
        raise ValueError("undefined percentage: zero total")
    return correct * 1000 // total


def format_percent(correct: int, total: int) -> str:
    tenths = percent_tenths(correct, total)
    return f"{tenths // 10}.{tenths % 10}"


# -- splitting ----------------------------------------------------------------


@dataclass(frozen=True)
class SplitSpec:
    """Test fractions per PP count plus the sampling seed.

    Strata are the gold configuration codes: each stratum contributes its
    rounded share of test items, so per-configuration proportions in the
    test sets match the data to within one item per stratum.
    """

    fractions: Mapping[int, float] = field(default_factory=lambda: dict(DEFAULT_FRACTIONS))
    seed: int = 0

    def __post_init__(self):
        for kind, fraction in self.fractions.items():
            if not 0.0 < fraction < 1.0:
                raise ValueError(f"fraction for kind {kind} must be in (0, 1)")


class Split(NamedTuple):
    train: list[TupleRecord]
    test1: list[TupleRecord]
    test2: list[TupleRecord]
    test3: list[TupleRecord]


def _sample_stratum(ids: list[str], fraction: float, seed: int, kind: int, config: int) -> set[str]:
    size = int(len(ids) * fraction + 0.5)
    if size == 0:
        if ids:
            log.warning(
                "stratum kind=%d config=%d has %d record(s); too small to test",
                kind, config, len(ids),
            )
        return set()
    rng = random.Random(f"{seed}/{kind}/{config}")
    return set(rng.sample(sorted(ids), size))


def stratified_split(records: Sequence[TupleRecord], spec: SplitSpec) -> Split:
    """Deterministic nested stratified split.

    Returns (train, test1, test2, test3) with test3 a subset of test2 a
    subset of test1: the 2-PP and 3-PP test records re-appear in test1
    (and test3 in test2) as their shallower attachment problems, and
    nothing in any test set is in train.
    """
    ids_by_stratum: dict[tuple[int, int], list[str]] = defaultdict(list)
    for record in records:
        ids_by_stratum[(record.kind, record.config)].append(record.id)

    sampled: dict[int, set[str]] = {1: set(), 2: set(), 3: set()}
    for (kind, config), ids in ids_by_stratum.items():
        fraction = spec.fractions.get(kind, DEFAULT_FRACTIONS[kind])
        sampled[kind] |= _sample_stratum(ids, fraction, spec.seed, kind, config)

    test3_ids = sampled[3]
    test2_ids = sampled[2] | test3_ids
    test1_ids = sampled[1] | test2_ids
    train = [r for r in records if r.id not in test1_ids]
    test1 = [r for r in records if r.id in test1_ids]
    test2 = [r for r in records if r.id in test2_ids]
    test3 = [r for r in records if r.id in test3_ids]
    return Split(train, test1, test2, test3)


# -- gold projections ---------------------------------------------------------


def gold_kind1(record: TupleRecord) -> int:
    """The record's first-PP attachment: 1 = verb, 2 = noun."""
    return first_pp_code(record.kind, record.config)


def gold_kind2(record: TupleRecord) -> int:
    """The 2-PP configuration of the record's first two PPs."""
    if record.kind < 2:
        raise ValueError(f"record {record.id!r} has fewer than 2 PPs")
    if record.kind == 2:
        return record.config
    return leading_pair_code(record.config)


# -- scoring ------------------------------------------------------------------

_LEVEL_ORDER = {
    1: (BackoffLevel.NO_BACKOFF, BackoffLevel.BACKOFF_1, BackoffLevel.BACKOFF_2, BackoffLevel.DEFAULT),
    2: (BackoffLevel.NO_BACKOFF, BackoffLevel.BACKOFF_1, BackoffLevel.BACKOFF_2, BackoffLevel.COMPETITIVE),
    3: (BackoffLevel.NO_BACKOFF, BackoffLevel.BACKOFF_1, BackoffLevel.BACKOFF_2, BackoffLevel.COMPETITIVE),
}
_LEVEL_LABELS = {
    BackoffLevel.NO_BACKOFF: "No back-off",
    BackoffLevel.BACKOFF_1: "Back-off 1",
    BackoffLevel.BACKOFF_2: "Back-off 2",
    BackoffLevel.COMPETITIVE: "Competitive",
    BackoffLevel.DEFAULT: "Default",
}


@dataclass(frozen=True)
class LevelRow:
    total: int = 0
    correct: int = 0


@dataclass(frozen=True)
class KindReport:
    """Per-back-off-level tallies for one PP count."""

    kind: int
    rows: Mapping[BackoffLevel, LevelRow]
    most_frequent_config: int | None = None
    most_frequent_count: int = 0
    train_total: int = 0
    baseline_most_frequent: float | None = None

    @property
    def total(self) -> int:
        return sum(r.total for r in self.rows.values())

    @property
    def correct(self) -> int:
        return sum(r.correct for r in self.rows.values())

    @property
    def accuracy(self) -> float | None:
        return self.correct / self.total if self.total else None

    @property
    def baseline_chance(self) -> float:
        return baseline_chance(self.kind)


@dataclass(frozen=True)
class EvalReport:
    kinds: Mapping[int, KindReport]

    @classmethod
    def from_rows(cls, rows_by_kind: Mapping[int, Mapping[BackoffLevel, tuple[int, int]]]) -> "EvalReport":
        kinds = {
            kind: KindReport(kind, {lvl: LevelRow(*pair) for lvl, pair in rows.items()})
            for kind, rows in rows_by_kind.items()
        }
        return cls(kinds)

    def machine_rows(self) -> str:
        """One ``level<TAB>kind<TAB>total<TAB>correct`` line per level row."""
        lines = []
        for kind in sorted(self.kinds):
            report = self.kinds[kind]
            for level in _LEVEL_ORDER[kind]:
                row = report.rows.get(level, LevelRow())
                lines.append(f"{level}\t{kind}\t{row.total}\t{row.correct}")
        return "".join(line + "\n" for line in lines)

    def render_text(self) -> str:
        """Plain-text accuracy table: level rows, totals, percent, baselines."""
        kinds = sorted(self.kinds)
        headers = [f"PP{k}" for k in kinds]
        width = 18
        lines = ["".join(["            "] + [h.center(width) for h in headers])]
        lines.append("".join(["            "] + ["Total  Correct".center(width) for _ in kinds]))
        all_levels = (
            BackoffLevel.NO_BACKOFF, BackoffLevel.BACKOFF_1, BackoffLevel.BACKOFF_2,
            BackoffLevel.COMPETITIVE, BackoffLevel.DEFAULT,
        )
        def cell(text_left: str, text_right: str) -> str:
            return f"{text_left:>8} {text_right:>8} "
        for level in all_levels:
            if not any(level in _LEVEL_ORDER[k] for k in kinds):
                continue
            row_cells = []
            for kind in kinds:
                if level not in _LEVEL_ORDER[kind]:
                    row_cells.append(cell("NA", "NA"))
                else:
                    row = self.kinds[kind].rows.get(level, LevelRow())
                    row_cells.append(cell(str(row.total), str(row.correct)))
            lines.append(f"{_LEVEL_LABELS[level]:<12}" + "".join(row_cells))
        lines.append(
            "Total       "
            + "".join(cell(str(self.kinds[k].total), str(self.kinds[k].correct)) for k in kinds)
        )
        percents = []
        for kind in kinds:
            report = self.kinds[kind]
            text = format_percent(report.correct, report.total) + "%" if report.total else "-"
            percents.append(text.center(width))
        lines.append("Percent     " + "".join(percents))
        baselines = []
        for kind in kinds:
            report = self.kinds[kind]
            if report.baseline_most_frequent is None:
                baselines.append("-".center(width))
            else:
                baselines.append(f"{report.baseline_most_frequent * 100:.1f}%".center(width))
        lines.append("Most-freq   " + "".join(baselines))
        lines.append(
            "Chance      "
            + "".join(f"{baseline_chance(k) * 100:.1f}%".center(width) for k in kinds)
        )
        return "".join(line.rstrip() + "\n" for line in lines)


def _decide(db: FrequencyDatabase, kind: int, record: TupleRecord) -> AttachmentDecision:
    if kind == 1:
        return estimate_pp1(db, record.v, record.n1, record.p1)
    if kind == 2:
        return estimate_pp2(db, record.v, record.n1, record.p1, record.n2, record.p2)
    return estimate_pp3(
        db, record.v, record.n1, record.p1, record.n2, record.p2, record.n3, record.p3
    )


def _gold(kind: int, record: TupleRecord) -> int:
    if kind == 1:
        return gold_kind1(record)
    if kind == 2:
        return gold_kind2(record)
    return record.config


def evaluate(
    db: FrequencyDatabase,
    test1: Sequence[TupleRecord],
    test2: Sequence[TupleRecord] = (),
    test3: Sequence[TupleRecord] = (),
) -> EvalReport:
    """Score the estimators on nested test sets, tallying by back-off level.

    test1 may contain records of any PP count (scored on their first PP);
    test2 needs at least two PPs per record, test3 exactly three.  The
    most-frequent baseline is read off the database's training counts.
    """
    kinds = {}
    for kind, items in ((1, test1), (2, test2), (3, test3)):
        rows = {level: [0, 0] for level in _LEVEL_ORDER[kind]}
        predictions = []
        for record in items:
            if record.kind < kind:
                raise ValueError(f"record {record.id!r} has too few PPs for the kind-{kind} test set")
            decision = _decide(db, kind, record)
            gold = _gold(kind, record)
            row = rows[decision.backoff_level]
            row[0] += 1
            row[1] += int(decision.config == gold)
            predictions.append(gold)
        train_counts = db.training_config_counts(kind)
        mf_config = max(train_counts, key=lambda c: (train_counts[c], -c)) if train_counts else None
        mf_accuracy = None
        if mf_config is not None and predictions:
            mf_accuracy = sum(g == mf_config for g in predictions) / len(predictions)
        kinds[kind] = KindReport(
            kind=kind,
            rows={level: LevelRow(*pair) for level, pair in rows.items()},
            most_frequent_config=mf_config,
            most_frequent_count=train_counts.get(mf_config, 0) if mf_config is not None else 0,
            train_total=sum(train_counts.values()),
            baseline_most_frequent=mf_accuracy,
        )
    return EvalReport(kinds)


# -- baselines ----------------------------------------------------------------


def baseline_chance(kind: int) -> float:
    """Accuracy of guessing uniformly among the kind's configurations."""
    return 1.0 / len(config_codes(kind))


def _training_events(records: Iterable[TupleRecord], kind: int) -> Counter:
    counts: Counter = Counter()
    for record in records:
        if kind == 1:
            counts[gold_kind1(record)] += 1
        elif record.kind == kind:
            counts[record.config] += 1
    return counts


def baseline_most_frequent(
    train: Sequence[TupleRecord],
    testsets: tuple[Sequence[TupleRecord], Sequence[TupleRecord], Sequence[TupleRecord]],
) -> dict[int, float | None]:
    """Accuracy of always predicting the training-set majority configuration.

    For the 1-PP baseline every training record contributes its first-PP
    attachment; the 2- and 3-PP baselines use only records of that kind.
    """
    accuracies: dict[int, float | None] = {}
    for kind, items in zip((1, 2, 3), testsets):
        counts = _training_events(train, kind)
        if not counts or not items:
            accuracies[kind] = None
            continue
        majority = max(counts, key=lambda c: (counts[c], -c))
        golds = [_gold(kind, record) for record in items]
        accuracies[kind] = sum(g == majority for g in golds) / len(golds)
    return accuracies


# -- distance analysis --------------------------------------------------------


@dataclass(frozen=True)
class DistanceCell:
    """One (preposition, distance) bucket scored by its own majority vote."""

    count: int
    low: int

    @property
    def high(self) -> int:
        return self.count - self.low

    @property
    def correct(self) -> int:
        return max(self.low, self.high)

    @property
    def accuracy(self) -> float:
        return self.correct / self.count


@dataclass(frozen=True)
class DistanceTable:
    """Noun- vs verb-attachment trends by preposition position.

    ``cells`` maps (preposition, distance) to its bucket; the per-distance
    rows aggregate counts, majority-vote correctness, and the proportion
    of low (noun) attachments.
    """

    cells: Mapping[tuple[str, int], DistanceCell]

    def distances(self) -> tuple[int, ...]:
        return tuple(sorted({d for _, d in self.cells}))

    def distance_row(self, distance: int) -> tuple[int, int, int]:
        """(count, majority-correct, low) summed over the distance's cells."""
        picked = [cell for (_, d), cell in self.cells.items() if d == distance]
        return (
            sum(c.count for c in picked),
            sum(c.correct for c in picked),
            sum(c.low for c in picked),
        )

    def render_text(self) -> str:
        distances = self.distances()
        header = "        " + "".join(f"{f'{d} PP':>9}" for d in distances) + f"{'Total':>9}"
        rows = [self.distance_row(d) for d in distances]
        total = tuple(sum(col) for col in zip(*rows)) if rows else (0, 0, 0)
        def line(label, values):
            return f"{label:<8}" + "".join(f"{v:>9}" for v in values)
        lines = [
            header,
            line("Count", [r[0] for r in rows] + [total[0]]),
            line("Correct", [r[1] for r in rows] + [total[1]]),
            line(
                "%",
                [format_percent(r[1], r[0]) if r[0] else "-" for r in rows]
                + [format_percent(total[1], total[0]) if total[0] else "-"],
            ),
            "",
            line("Count", [r[0] for r in rows] + [total[0]]),
            line("Low", [r[2] for r in rows] + [total[2]]),
            line(
                "% Low",
                [format_percent(r[2], r[0]) if r[0] else "-" for r in rows]
                + [format_percent(total[2], total[0]) if total[0] else "-"],
            ),
        ]
        return "".join(l.rstrip() + "\n" for l in lines)


def distance_analysis(records: Iterable[TupleRecord]) -> DistanceTable:
    """Majority-vote attachment accuracy conditioned on (preposition, distance).

    Every preposition occurrence is one event: its ordinal position is the
    distance, and it counts as low when it attaches to any noun.  The
    majority prediction is evaluated on the same data, so this is a
    training-set diagnostic, not a held-out score.
    """
    counts: Counter = Counter()
    lows: Counter = Counter()
    for record in records:
        preps = [record.p1, record.p2, record.p3][: record.kind]
        for distance, (prep, site) in enumerate(zip(preps, record.sites), start=1):
            counts[(prep, distance)] += 1
            lows[(prep, distance)] += int(site is not Site.VERB)
    cells = {key: DistanceCell(counts[key], lows[key]) for key in counts}
    return DistanceTable(cells)
