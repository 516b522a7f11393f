"""Backed-off and competitive estimation of PP attachment configurations.

All estimators share one scheme: estimate each candidate configuration's
probability from the most specific tuple with a non-zero total, backing
off to pooled shorter tuples (always keeping every preposition) when the
counts are zero.  Single-PP queries fall back to a noun-attachment
default; multi-PP queries instead fall back to a competitive estimate
that re-uses the much denser single-PP statistics to pick an attachment
site for each remaining preposition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .configurations import (
    Site,
    config_codes,
    extension_code,
    p3_candidate_sites,
    sites_for,
)
from .counts import (
    FULL_MASK,
    KIND_SLOTS,
    MASK_LEVELS,
    QUAD_MASK_LEVELS,
    QUAD_SLOTS,
    FrequencyDatabase,
)


class BackoffLevel(enum.Enum):
    """How far the cascade had to back off before finding evidence."""

    NO_BACKOFF = 0
    BACKOFF_1 = 1
    BACKOFF_2 = 2
    BACKOFF_3 = 3  # reached only by the reference four-head-word estimator
    COMPETITIVE = "competitive"
    DEFAULT = "default"

    def __str__(self) -> str:
        return str(self.value)


_NUMERIC_LEVELS = (
    BackoffLevel.NO_BACKOFF,
    BackoffLevel.BACKOFF_1,
    BackoffLevel.BACKOFF_2,
    BackoffLevel.BACKOFF_3,
)


@dataclass(frozen=True)
class AttachmentDecision:
    """The chosen configuration plus the estimate that produced it.

    ``distribution`` maps every candidate configuration to its estimated
    probability; ``evidence`` records the integer numerators and the
    denominator behind the estimate, with ``support`` the count backing
    the chosen configuration (used as tie-break strength downstream).
    """

    kind: int
    config: int
    distribution: Mapping[int, float]
    backoff_level: BackoffLevel
    evidence: Mapping[str, object]

    @property
    def support(self) -> int:
        return int(self.evidence.get("support", 0))  # type: ignore[arg-type]


def _argmax_config(kind: int, scores: Mapping[int, float]) -> int:
    """Highest-probability configuration; ties go to the lowest attachment.

    Among tied candidates the winner is the one whose site tuple is
    lexicographically latest under V < N1 < N2 < N3, i.e. the most
    noun-attached reading (for one PP this is the noun default).
    """
    return max(scores, key=lambda c: (scores[c], sites_for(kind, c)))


def _decide(kind: int, nums: dict[int, int], denominator: int, level: BackoffLevel) -> AttachmentDecision:
    distribution = {c: nums[c] / denominator for c in nums}
    config = _argmax_config(kind, distribution)
    evidence = {
        "numerators": dict(nums),
        "denominator": denominator,
        "support": nums[config],
    }
    return AttachmentDecision(kind, config, distribution, level, evidence)


def _cascade(kind: int, level_groups, lookup) -> AttachmentDecision | None:
    """Walk mask groups from most to least specific; None if all are empty."""
    candidates = config_codes(kind)
    for depth, masks in enumerate(level_groups):
        nums = {c: 0 for c in candidates}
        denominator = 0
        for mask in masks:
            evidence = lookup(mask)
            denominator += evidence.total
            for c in candidates:
                nums[c] += evidence.count(c)
        if denominator > 0:
            return _decide(kind, nums, denominator, _NUMERIC_LEVELS[depth])
    return None


def _kind_lookup(db: FrequencyDatabase, kind: int, words: dict[str, str]):
    def lookup(mask):
        return db.query(kind, mask, tuple(words[s] for s in mask))

    return lookup


def _noun_default(kind: int) -> AttachmentDecision:
    distribution = {c: 0.0 for c in config_codes(kind)}
    distribution[2] = 1.0
    evidence = {"numerators": {c: 0 for c in distribution}, "denominator": 0, "support": 0}
    return AttachmentDecision(kind, 2, distribution, BackoffLevel.DEFAULT, evidence)


def estimate_pp1(db: FrequencyDatabase, v: str, n1: str, p1: str) -> AttachmentDecision:
    """Single-PP attachment: verb (1) vs direct object (2).

    Cascade: the full (v, n1, p1) triple; else the (v, p1) and (n1, p1)
    pairs pooled; else the preposition alone; else attach to the noun.
    """
    words = dict(zip(KIND_SLOTS[1], (v, n1, p1)))
    decision = _cascade(1, MASK_LEVELS[1], _kind_lookup(db, 1, words))
    return decision if decision is not None else _noun_default(1)


def estimate_cb4(db: FrequencyDatabase, v: str, n1: str, p: str, n2: str) -> AttachmentDecision:
    """Reference single-PP estimator over four head words.

    Uses the parallel table keyed by (v, n1, p, n2) where n2 is the
    preposition's object: the full quadruple, else the three triples
    containing p, else the three pairs, else p alone, else the noun
    default.  Kept as an independent baseline; the production path is
    :func:`estimate_pp1`.
    """
    words = dict(zip(QUAD_SLOTS, (v, n1, p, n2)))

    def lookup(mask):
        return db.quad_query(mask, tuple(words[s] for s in mask))

    decision = _cascade(1, QUAD_MASK_LEVELS, lookup)
    return decision if decision is not None else _noun_default(1)


def estimate_pp2(db: FrequencyDatabase, v: str, n1: str, p1: str, n2: str, p2: str) -> AttachmentDecision:
    """Two-PP attachment over the five candidate configurations.

    Cascade: the full 5-slot tuple; else the three 4-slot masks pooled;
    else the three 3-slot masks pooled (both prepositions always kept);
    else the competitive estimate built from single-PP preferences.
    """
    words = dict(zip(KIND_SLOTS[2], (v, n1, p1, n2, p2)))
    decision = _cascade(2, MASK_LEVELS[2], _kind_lookup(db, 2, words))
    return decision if decision is not None else competitive_pp2(db, v, n1, p1, n2, p2)


def find_best_configuration(
    first_pp: int, n2_pref: int, n1_pref: int, n2_support: int, n1_support: int
) -> int:
    """Combine single-PP preferences into a 2-PP configuration code.

    ``first_pp`` fixes p1's attachment; ``n2_pref``/``n1_pref`` say
    whether p2 prefers the verb (1) or the given noun (2), with
    ``*_support`` the observation counts behind those preferences.  When
    both nouns attract p2, the better-supported one wins; an exact tie
    keeps the lower noun's chain reading (code 3).
    """
    if first_pp == 1:
        return 1 if n2_pref == 1 else 4
    if n2_pref == 1:
        return 2
    if n1_pref == 1:
        return 3
    return 5 if n2_support < n1_support else 3


def competitive_pp2(db: FrequencyDatabase, v: str, n1: str, p1: str, n2: str, p2: str) -> AttachmentDecision:
    """Resolve two PPs by competing single-PP preferences.

    p1's attachment comes from its own single-PP estimate; p2's comes
    from pitting its preference w.r.t. n2 against its preference w.r.t.
    n1, each queried as an ordinary single-PP problem.
    """
    first = estimate_pp1(db, v, n1, p1)
    versus_n2 = estimate_pp1(db, v, n2, p2)
    versus_n1 = estimate_pp1(db, v, n1, p2)
    config = find_best_configuration(
        first.config, versus_n2.config, versus_n1.config,
        versus_n2.support, versus_n1.support,
    )
    distribution = {c: 0.0 for c in config_codes(2)}
    distribution[config] = 1.0
    evidence = {
        "first_pp": first.config,
        "n2_pref": versus_n2.config,
        "n1_pref": versus_n1.config,
        "n2_support": versus_n2.support,
        "n1_support": versus_n1.support,
        "support": 0,
    }
    return AttachmentDecision(2, config, distribution, BackoffLevel.COMPETITIVE, evidence)


def estimate_pp3(
    db: FrequencyDatabase, v: str, n1: str, p1: str, n2: str, p2: str, n3: str, p3: str
) -> AttachmentDecision:
    """Three-PP attachment over the fourteen candidate configurations.

    Cascade: the full 7-slot tuple; else the four 6-slot masks pooled;
    else the six 5-slot masks pooled (all three prepositions always
    kept); else the competitive estimate.
    """
    words = dict(zip(KIND_SLOTS[3], (v, n1, p1, n2, p2, n3, p3)))
    decision = _cascade(3, MASK_LEVELS[3], _kind_lookup(db, 3, words))
    if decision is not None:
        return decision
    return competitive_pp3(db, v, n1, p1, n2, p2, n3, p3)


def competitive_pp3(
    db: FrequencyDatabase, v: str, n1: str, p1: str, n2: str, p2: str, n3: str, p3: str
) -> AttachmentDecision:
    """Resolve three PPs by fixing the first two, then placing the third.

    The first two PPs get their own 2-PP estimate; p3 may then attach to
    the verb or to any noun still on the right frontier.  Each frontier
    noun's single-PP preference is consulted: if none attracts p3 it goes
    to the verb, otherwise the noun with the strongest supporting count
    wins, ties falling to the most recent noun.
    """
    pair = estimate_pp2(db, v, n1, p1, n2, p2)
    noun_words = {Site.N1: n1, Site.N2: n2, Site.N3: n3}
    prefs: dict[Site, AttachmentDecision] = {}
    for site in p3_candidate_sites(pair.config):
        if site is not Site.VERB:
            prefs[site] = estimate_pp1(db, v, noun_words[site], p3)
    attracted = [site for site, pref in prefs.items() if pref.config == 2]
    if attracted:
        site = max(attracted, key=lambda s: (prefs[s].support, s.value))
    else:
        site = Site.VERB
    config = extension_code(pair.config, site)
    distribution = {c: 0.0 for c in config_codes(3)}
    distribution[config] = 1.0
    evidence = {
        "leading_pair": pair.config,
        "p3_site": str(site),
        "site_prefs": {str(s): prefs[s].config for s in prefs},
        "site_supports": {str(s): prefs[s].support for s in prefs},
        "support": 0,
    }
    return AttachmentDecision(3, config, distribution, BackoffLevel.COMPETITIVE, evidence)
