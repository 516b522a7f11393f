"""Published corpus-count and accuracy-table fixtures used across tests."""

from ppbackoff.estimator import BackoffLevel

# Per-configuration training counts of the three study corpora.
KIND1_COUNTS = {1: 7740, 2: 12223}
KIND2_COUNTS = {1: 535, 2: 1160, 3: 1394, 4: 1055, 5: 539}
KIND3_COUNTS = {
    1: 15, 2: 86, 3: 63, 4: 168, 5: 81, 6: 31, 7: 47,
    8: 142, 9: 47, 10: 34, 11: 80, 12: 20, 13: 21, 14: 72,
}
CORPUS_TOTALS = {1: 19963, 2: 4683, 3: 907}

# Held-out accuracy table: per back-off level (total, correct) per PP count.
TABLE_ROWS = {
    1: {
        BackoffLevel.NO_BACKOFF: (300, 285),
        BackoffLevel.BACKOFF_1: (614, 510),
        BackoffLevel.BACKOFF_2: (100, 60),
    },
    2: {
        BackoffLevel.NO_BACKOFF: (36, 35),
        BackoffLevel.BACKOFF_1: (61, 54),
        BackoffLevel.BACKOFF_2: (232, 161),
        BackoffLevel.COMPETITIVE: (135, 73),
    },
    3: {
        BackoffLevel.NO_BACKOFF: (1, 1),
        BackoffLevel.BACKOFF_1: (1, 1),
        BackoffLevel.BACKOFF_2: (3, 3),
        BackoffLevel.COMPETITIVE: (89, 36),
    },
}
TABLE_TOTALS = {1: (1014, 855), 2: (464, 323), 3: (94, 41)}

# Attachment-by-distance fixture: per distance (events, majority-correct, low).
DISTANCE_ROWS = {1: (20299, 15173, 12223), 2: (4711, 3525, 3063), 3: (939, 755, 706)}


def load_published_counts():
    """The per-configuration count tables, validated against their totals."""
    tables = {1: KIND1_COUNTS, 2: KIND2_COUNTS, 3: KIND3_COUNTS}
    expected_sizes = {1: 2, 2: 5, 3: 14}
    for kind, table in tables.items():
        if len(table) != expected_sizes[kind]:
            raise ValueError(f"kind {kind}: expected {expected_sizes[kind]} configurations")
        if sorted(table) != list(range(1, expected_sizes[kind] + 1)):
            raise ValueError(f"kind {kind}: configuration codes must be 1..{expected_sizes[kind]}")
        if sum(table.values()) != CORPUS_TOTALS[kind]:
            raise ValueError(
                f"kind {kind}: counts sum to {sum(table.values())}, expected {CORPUS_TOTALS[kind]}"
            )
    return tables
