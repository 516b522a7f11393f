"""Attachment-site taxonomy for verb phrases carrying one to three PPs.

Every preposition in a ``[V NP PP ...]`` sequence attaches either to the
verb or to one of the noun heads already built: ``n1`` is the direct
object, ``n2`` the object of the first preposition, ``n3`` the object of
the second.  Because attachments may not cross, each preposition can only
target a node on the right frontier of the partial structure, which
limits the bracketings to 2 configurations for one PP, 5 for two, and 14
for three.  The numeric configuration codes below follow the standard
corpus-annotation tables for these structures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Site(enum.IntEnum):
    """Where a preposition attaches; ``Nk`` is the k-th noun head."""

    VERB = 0
    N1 = 1
    N2 = 2
    N3 = 3

    def __str__(self) -> str:
        return "V" if self is Site.VERB else self.name


_V, _N1, _N2, _N3 = Site.VERB, Site.N1, Site.N2, Site.N3

#: Configuration code -> attachment site per preposition, by PP count.
SITES_BY_CODE: dict[int, dict[int, tuple[Site, ...]]] = {
    1: {
        1: (_V,),
        2: (_N1,),
    },
    2: {
        1: (_V, _V),
        2: (_N1, _V),
        3: (_N1, _N2),
        4: (_V, _N2),
        5: (_N1, _N1),
    },
    3: {
        1: (_V, _V, _V),
        2: (_V, _V, _N3),
        3: (_N1, _V, _V),
        4: (_N1, _V, _N3),
        5: (_N1, _N2, _V),
        6: (_N1, _N2, _N1),
        7: (_N1, _N2, _N2),
        8: (_N1, _N2, _N3),
        9: (_V, _N2, _V),
        10: (_V, _N2, _N2),
        11: (_V, _N2, _N3),
        12: (_N1, _N1, _V),
        13: (_N1, _N1, _N1),
        14: (_N1, _N1, _N3),
    },
}

CODE_BY_SITES: dict[int, dict[tuple[Site, ...], int]] = {
    kind: {sites: code for code, sites in table.items()}
    for kind, table in SITES_BY_CODE.items()
}

KINDS = (1, 2, 3)
CONFIG_COUNTS = {kind: len(table) for kind, table in SITES_BY_CODE.items()}


@dataclass(frozen=True)
class Configuration:
    kind: int
    code: int
    sites: tuple[Site, ...]


def sites_for(kind: int, code: int) -> tuple[Site, ...]:
    try:
        return SITES_BY_CODE[kind][code]
    except KeyError:
        raise ValueError(f"no configuration {code} for {kind} PP(s)") from None


def config_code(kind: int, sites: tuple[Site, ...]) -> int:
    try:
        return CODE_BY_SITES[kind][tuple(sites)]
    except KeyError:
        raise ValueError(f"no {kind}-PP configuration with sites {sites}") from None


def config_codes(kind: int) -> tuple[int, ...]:
    return tuple(sorted(SITES_BY_CODE[kind]))


def legal_next_sites(prefix: tuple[Site, ...]) -> tuple[Site, ...]:
    """Sites available to the next preposition after attaching ``prefix``.

    Simulates the right frontier: attaching to the verb buries every noun
    built so far, attaching to noun ``j`` buries the nouns to its right,
    and each attachment exposes the new preposition's object noun.
    """
    nouns = [1]
    next_noun = 2
    for site in prefix:
        if site is Site.VERB:
            nouns = [next_noun]
        else:
            nouns = [j for j in nouns if j <= site.value] + [next_noun]
        next_noun += 1
    return (Site.VERB,) + tuple(Site(j) for j in nouns)


def enumerate_site_tuples(kind: int) -> list[tuple[Site, ...]]:
    """All non-crossing site assignments for ``kind`` prepositions (DFS order)."""
    results: list[tuple[Site, ...]] = []

    def grow(prefix: tuple[Site, ...]) -> None:
        if len(prefix) == kind:
            results.append(prefix)
            return
        for site in legal_next_sites(prefix):
            grow(prefix + (site,))

    grow(())
    return results


def enumerate_configurations(kind: int) -> tuple[Configuration, ...]:
    """The full taxonomy for ``kind`` PPs, in canonical code order.

    The set of configurations is generated by the right-frontier walk and
    cross-checked against the published code tables; a mismatch means the
    tables are internally inconsistent and raises.
    """
    generated = set(enumerate_site_tuples(kind))
    table = SITES_BY_CODE[kind]
    if generated != set(table.values()):
        raise RuntimeError(f"configuration table for {kind} PP(s) is inconsistent")
    return tuple(Configuration(kind, code, table[code]) for code in sorted(table))


def first_pp_code(kind: int, code: int) -> int:
    """Project a configuration onto its first PP: 1 = verb, 2 = noun."""
    return 1 if sites_for(kind, code)[0] is Site.VERB else 2


def leading_pair_code(code3: int) -> int:
    """Project a 3-PP configuration onto the 2-PP code of its first two PPs."""
    return config_code(2, sites_for(3, code3)[:2])


def p3_candidate_sites(code5: int) -> tuple[Site, ...]:
    """Legal attachment sites for a third preposition, given the 2-PP code."""
    return legal_next_sites(sites_for(2, code5))


def extension_code(code5: int, site: Site) -> int:
    """The 3-PP code obtained by attaching the third preposition at ``site``."""
    return config_code(3, sites_for(2, code5) + (site,))
