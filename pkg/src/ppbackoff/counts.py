"""Frequency databases over head-word tuples, and their on-disk model format.

The database keys events by a pattern mask: the subset of word slots a
query supplies.  Prepositions are always present; at most two of the
remaining slots may be dropped, which yields exactly the masks the
backed-off estimation cascades consult.  Only full-tuple counts are
persisted; every sub-mask table is a projection and is rebuilt on load.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .configurations import SITES_BY_CODE, first_pp_code
from .corpus import NORMALIZATIONS, TupleRecord, validate_record, write_tuple_file

MODEL_FILE_HEADER = "ppbackoff-model v1"

Mask = tuple[str, ...]
Words = tuple[str, ...]

KIND_SLOTS: dict[int, Mask] = {
    1: ("v", "n1", "p1"),
    2: ("v", "n1", "p1", "n2", "p2"),
    3: ("v", "n1", "p1", "n2", "p2", "n3", "p3"),
}
_DROPPABLE: dict[int, Mask] = {
    1: ("v", "n1"),
    2: ("v", "n1", "n2"),
    3: ("v", "n1", "n2", "n3"),
}

# The reference four-head-word table: kind-1 events whose final noun (the
# object of the preposition) is known.  Here every slot may be dropped
# except the preposition itself.
QUAD_SLOTS: Mask = ("v", "n1", "p", "n2")
_QUAD_DROPPABLE: Mask = ("v", "n1", "n2")


def _mask_levels(slots: Mask, droppable: Mask, max_drop: int) -> tuple[tuple[Mask, ...], ...]:
    levels = []
    for n_drop in range(max_drop + 1):
        group = []
        for dropped in itertools.combinations(droppable, n_drop):
            group.append(tuple(s for s in slots if s not in dropped))
        levels.append(tuple(group))
    return tuple(levels)


#: Masks grouped by number of dropped slots; the cascade walks these groups.
MASK_LEVELS: dict[int, tuple[tuple[Mask, ...], ...]] = {
    kind: _mask_levels(KIND_SLOTS[kind], _DROPPABLE[kind], 2) for kind in KIND_SLOTS
}
LEGAL_MASKS: dict[int, tuple[Mask, ...]] = {
    kind: tuple(m for group in levels for m in group) for kind, levels in MASK_LEVELS.items()
}
FULL_MASK: dict[int, Mask] = {kind: KIND_SLOTS[kind] for kind in KIND_SLOTS}

QUAD_MASK_LEVELS: tuple[tuple[Mask, ...], ...] = _mask_levels(QUAD_SLOTS, _QUAD_DROPPABLE, 3)
QUAD_MASKS: tuple[Mask, ...] = tuple(m for group in QUAD_MASK_LEVELS for m in group)


class ModelFormatError(ValueError):
    """Malformed model file; ``line`` is the one-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class EvidenceQuery:
    """Counts behind one (mask, words) key; absent keys are all zeros."""

    total: int = 0
    by_config: Mapping[int, int] = field(default_factory=dict)

    def count(self, config: int) -> int:
        return self.by_config.get(config, 0)


_EMPTY = EvidenceQuery()

# (kind, words) -> Counter(config -> count); kind-1 events split by whether
# the final noun is known, since only those feed the quad table.
_Store = dict[Words, Counter]


class FrequencyDatabase:
    """Immutable count tables for 1-, 2-, and 3-PP attachment events.

    Build with :func:`build_database`; once built, the database only
    answers queries and is safe to share between threads.
    """

    def __init__(
        self,
        normalization: str,
        fingerprint: str,
        kind1_plain: _Store,
        kind1_final: _Store,
        kind2: _Store,
        kind3: _Store,
    ):
        if normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization policy {normalization!r}")
        self.normalization = normalization
        self.fingerprint = fingerprint
        self._stores = {1: kind1_plain, "1fn": kind1_final, 2: kind2, 3: kind3}
        self._tables: dict[tuple[int, Mask], dict[Words, EvidenceQuery]] = {}
        self._quad_tables: dict[Mask, dict[Words, EvidenceQuery]] = {}
        self._rebuild()

    # -- construction ------------------------------------------------------

    def _full_events(self, kind: int):
        """(words, config, count) for every full tuple of ``kind``.

        Kind-1 events include the first-PP projection of every kind-2 and
        kind-3 tuple: those are structurally attested single-PP attachments
        and are what makes the competitive estimates informative.
        """
        for words, configs in self._stores[kind].items():
            for config, n in configs.items():
                yield words, config, n
        if kind == 1:
            for words, configs in self._stores["1fn"].items():
                for config, n in configs.items():
                    yield words[:3], config, n
            for source in (2, 3):
                for words, configs in self._stores[source].items():
                    for config, n in configs.items():
                        yield words[:3], first_pp_code(source, config), n

    @staticmethod
    def _project(mask: Mask, slots: Mask, words: Words) -> Words:
        index = {slot: i for i, slot in enumerate(slots)}
        return tuple(words[index[s]] for s in mask)

    def _rebuild(self) -> None:
        for kind, slots in KIND_SLOTS.items():
            events = list(self._full_events(kind))
            for mask in LEGAL_MASKS[kind]:
                table: dict[Words, Counter] = {}
                for words, config, n in events:
                    key = self._project(mask, slots, words)
                    table.setdefault(key, Counter())[config] += n
                self._tables[(kind, mask)] = {
                    key: EvidenceQuery(sum(c.values()), dict(c)) for key, c in table.items()
                }
        for mask in QUAD_MASKS:
            table = {}
            for words, configs in self._stores["1fn"].items():
                key = self._project(mask, QUAD_SLOTS, words)
                bucket = table.setdefault(key, Counter())
                for config, n in configs.items():
                    bucket[config] += n
            self._quad_tables[mask] = {
                key: EvidenceQuery(sum(c.values()), dict(c)) for key, c in table.items()
            }

    # -- queries -----------------------------------------------------------

    def query(self, kind: int, mask: Mask, words: Sequence[str]) -> EvidenceQuery:
        """Counts for ``words`` under ``mask``; absent keys give zeros."""
        mask = tuple(mask)
        if (kind, mask) not in self._tables:
            raise ValueError(f"illegal mask {mask} for kind {kind}")
        if len(words) != len(mask):
            raise ValueError(f"mask {mask} needs {len(mask)} words, got {len(words)}")
        return self._tables[(kind, mask)].get(tuple(words), _EMPTY)

    def count(self, kind: int, mask: Mask, words: Sequence[str], config: int) -> int:
        return self.query(kind, mask, words).count(config)

    def total(self, kind: int, mask: Mask, words: Sequence[str]) -> int:
        return self.query(kind, mask, words).total

    def quad_query(self, mask: Mask, words: Sequence[str]) -> EvidenceQuery:
        mask = tuple(mask)
        if mask not in self._quad_tables:
            raise ValueError(f"illegal four-slot mask {mask}")
        if len(words) != len(mask):
            raise ValueError(f"mask {mask} needs {len(mask)} words, got {len(words)}")
        return self._quad_tables[mask].get(tuple(words), _EMPTY)

    def quad_count(self, mask: Mask, words: Sequence[str], config: int) -> int:
        return self.quad_query(mask, words).count(config)

    def quad_total(self, mask: Mask, words: Sequence[str]) -> int:
        return self.quad_query(mask, words).total

    def training_config_counts(self, kind: int) -> dict[int, int]:
        """Per-configuration totals of the training events for ``kind``."""
        totals: Counter = Counter()
        for _, config, n in self._full_events(kind):
            totals[config] += n
        return dict(totals)

    # -- integrity ---------------------------------------------------------

    def validate(self) -> None:
        """Check projection consistency of every derived table."""
        for kind, slots in KIND_SLOTS.items():
            events = list(self._full_events(kind))
            for mask in LEGAL_MASKS[kind]:
                expected: dict[Words, Counter] = {}
                for words, config, n in events:
                    key = self._project(mask, slots, words)
                    expected.setdefault(key, Counter())[config] += n
                table = self._tables[(kind, mask)]
                if set(table) != set(expected):
                    raise ValueError(f"inconsistent projection for kind {kind} mask {mask}")
                for key, query in table.items():
                    if query.total != sum(query.by_config.values()):
                        raise ValueError(f"total mismatch for kind {kind} mask {mask}")
                    if +Counter(query.by_config) != +expected[key]:
                        raise ValueError(f"count mismatch for kind {kind} mask {mask}")
                    if any(n < 0 for n in query.by_config.values()):
                        raise ValueError("negative count")


def build_database(records: Iterable[TupleRecord], normalization: str = "lower") -> FrequencyDatabase:
    """Count every record's full tuple (plus kind-1 projections) into a database."""
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization policy {normalization!r}")
    records = list(records)
    stores: dict = {1: {}, "1fn": {}, 2: {}, 3: {}}
    for record in records:
        validate_record(record)
        words = record.head_words()
        if normalization == "lower" and any(w != w.lower() for w in words):
            raise ValueError(
                f"record {record.id!r} is not lowercase; mixed normalization policies"
            )
        if record.kind == 1 and record.final_noun is not None:
            if normalization == "lower" and record.final_noun != record.final_noun.lower():
                raise ValueError(
                    f"record {record.id!r} is not lowercase; mixed normalization policies"
                )
            key: Words = words + (record.final_noun,)
            stores["1fn"].setdefault(key, Counter())[record.config] += 1
        else:
            stores[record.kind].setdefault(words, Counter())[record.config] += 1
    fingerprint = hashlib.sha256(
        write_tuple_file(sorted(records, key=lambda r: r.id))
    ).hexdigest()
    return FrequencyDatabase(normalization, fingerprint, stores[1], stores["1fn"], stores[2], stores[3])


# -- persistence -------------------------------------------------------------


def save_model(db: FrequencyDatabase) -> bytes:
    """Serialize the database; output is byte-reproducible for equal inputs.

    Only full tuples are written, one line per (tuple, config): kind-1
    lines carry 6 fields, or 7 when the final noun is known; kind-2 lines
    8; kind-3 lines 10.  A checksum over the tuple lines guards the body.
    """
    lines = []
    for kind_key, kind_label in ((1, 1), ("1fn", 1), (2, 2), (3, 3)):
        for words, configs in db._stores[kind_key].items():
            for config in sorted(configs):
                fields = [str(kind_label), str(config), *words, str(configs[config])]
                lines.append("\t".join(fields))
    lines.sort()
    body = "".join(line + "\n" for line in lines)
    checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
    header = (
        f"{MODEL_FILE_HEADER}\n"
        f"normalization={db.normalization}\n"
        f"fingerprint={db.fingerprint}\n"
        f"checksum={checksum}\n"
    )
    return (header + body).encode("utf-8")


_LINE_SHAPES = {6: (1, 3, False), 7: (1, 4, True), 8: (2, 5, False), 10: (3, 7, False)}


def load_model(data: bytes) -> FrequencyDatabase:
    """Parse a model file and rebuild every derived table."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise ModelFormatError(f"not valid UTF-8: {err}", 1) from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MODEL_FILE_HEADER:
        raise ModelFormatError(f"expected header {MODEL_FILE_HEADER!r}", 1)
    headers = {}
    for offset, key in ((1, "normalization"), (2, "fingerprint"), (3, "checksum")):
        if len(lines) <= offset or not lines[offset].startswith(key + "="):
            raise ModelFormatError(f"expected '{key}=...'", offset + 1)
        headers[key] = lines[offset].split("=", 1)[1]
    if headers["normalization"] not in NORMALIZATIONS:
        raise ModelFormatError(f"unknown normalization {headers['normalization']!r}", 2)

    stores: dict = {1: {}, "1fn": {}, 2: {}, 3: {}}
    for number, line in enumerate(lines[4:], start=5):
        fields = line.split("\t")
        shape = _LINE_SHAPES.get(len(fields))
        if shape is None:
            raise ModelFormatError(f"unexpected field count {len(fields)}", number)
        kind, n_words, has_final = shape
        try:
            line_kind = int(fields[0])
            config = int(fields[1])
            count = int(fields[-1])
        except ValueError:
            raise ModelFormatError("kind, config, and count must be integers", number) from None
        if line_kind != kind:
            raise ModelFormatError(
                f"kind {line_kind} does not match a {len(fields)}-field line", number
            )
        if config not in SITES_BY_CODE[kind]:
            raise ModelFormatError(f"config {config} out of range for kind {kind}", number)
        if count < 0:
            raise ModelFormatError(f"negative count {count}", number)
        words = tuple(fields[2:-1])
        if any(not w for w in words):
            raise ModelFormatError("empty word field", number)
        if count == 0:
            continue
        store = stores["1fn"] if has_final else stores[kind]
        store.setdefault(words, Counter())[config] += count

    body = "".join(line + "\n" for line in lines[4:])
    checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
    if checksum != headers["checksum"]:
        raise ModelFormatError("checksum failure: model body was altered", 4)

    db = FrequencyDatabase(
        headers["normalization"], headers["fingerprint"],
        stores[1], stores["1fn"], stores[2], stores[3],
    )
    db.validate()
    return db
