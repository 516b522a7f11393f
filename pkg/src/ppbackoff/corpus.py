"""Extract head-word tuples from bracketed trees and read/write tuple files.

A verb phrase whose shape is one of the recognized 2/5/14 bracketing
configurations yields one :class:`TupleRecord` holding the verb, the noun
and preposition heads, and the gold configuration code.  Head finding is
deliberately simple: the verb is the first verb-tagged leaf of the VP,
the head of an NP is its rightmost noun-tagged leaf, and the head of a PP
is its first preposition-tagged leaf.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable

from .configurations import Site, CODE_BY_SITES, SITES_BY_CODE, sites_for
from .trees import Tree

TUPLE_FILE_HEADER = "ppbackoff-tuples v1"
NORMALIZATIONS = ("lower", "none")

_PREP_TAGS = {"P", "IN", "TO"}
_WORD_BAD = re.compile(r"[\t\n]")


class TupleFileError(ValueError):
    """Malformed tuple file; ``line`` is the one-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class TupleRecord:
    """One attachment instance: heads of a VP with 1, 2, or 3 PPs.

    ``n2`` is the object of ``p1`` and ``n3`` the object of ``p2``;
    ``final_noun`` is the object of the last PP and is consulted only by
    the reference four-head-word estimator.
    """

    id: str
    kind: int
    config: int
    v: str
    n1: str
    p1: str
    n2: str | None = None
    p2: str | None = None
    n3: str | None = None
    p3: str | None = None
    final_noun: str | None = None

    @property
    def sites(self) -> tuple[Site, ...]:
        return sites_for(self.kind, self.config)

    def head_words(self) -> tuple[str, ...]:
        """The slot words in order, e.g. ``(v, n1, p1, n2, p2)`` for kind 2."""
        words = [self.v, self.n1, self.p1]
        if self.kind >= 2:
            words += [self.n2, self.p2]
        if self.kind == 3:
            words += [self.n3, self.p3]
        return tuple(words)  # type: ignore[arg-type]


def validate_record(record: TupleRecord) -> None:
    """Raise ``ValueError`` unless the record satisfies its invariants."""
    if record.kind not in SITES_BY_CODE:
        raise ValueError(f"record {record.id!r}: kind must be 1, 2, or 3")
    if record.config not in SITES_BY_CODE[record.kind]:
        raise ValueError(
            f"record {record.id!r}: config {record.config} out of range "
            f"for kind {record.kind}"
        )
    required = ["v", "n1", "p1"]
    if record.kind >= 2:
        required += ["n2", "p2"]
    if record.kind == 3:
        required += ["n3", "p3"]
    forbidden = {"n2", "p2", "n3", "p3"} - set(required)
    for name in required:
        word = getattr(record, name)
        if not word or _WORD_BAD.search(word):
            raise ValueError(f"record {record.id!r}: bad word in slot {name}: {word!r}")
    for name in sorted(forbidden):
        if getattr(record, name) is not None:
            raise ValueError(
                f"record {record.id!r}: slot {name} must be unset for kind {record.kind}"
            )
    if not record.id or _WORD_BAD.search(record.id):
        raise ValueError(f"bad record id {record.id!r}")
    fn = record.final_noun
    if fn is not None and (not fn or _WORD_BAD.search(fn)):
        raise ValueError(f"record {record.id!r}: bad final noun {fn!r}")


@dataclass(frozen=True)
class VPClassification:
    """Result of matching a VP against the configuration taxonomy."""

    kind: int
    config: int
    v: str
    n1: str
    p1: str
    n2: str | None = None
    p2: str | None = None
    n3: str | None = None
    p3: str | None = None
    final_noun: str | None = None


def _is_noun_leaf(node: Tree) -> bool:
    return node.is_leaf and node.label.startswith("N")


def _is_verb_leaf(node: Tree) -> bool:
    return node.is_leaf and node.label.startswith("V")


def _is_prep_leaf(node: Tree) -> bool:
    return node.is_leaf and node.label in _PREP_TAGS


def _analyze_np(np_node: Tree) -> tuple[str, list[Tree]] | None:
    """Split an NP into (head noun, adjoined PPs); None if out of scope.

    The base is leaf material or a single leaf-only nested NP; adjoined
    PPs must follow it.  A nested NP that itself contains structure (the
    left-recursive stacked-adjunction shape) is rejected.
    """
    base_leaves: list[Tree] = []
    adjuncts: list[Tree] = []
    for child in np_node.children:
        if child.is_leaf:
            if adjuncts:
                return None
            base_leaves.append(child)
        elif child.label == "PP":
            adjuncts.append(child)
        elif child.label == "NP":
            if adjuncts or base_leaves or not all(c.is_leaf for c in child.children):
                return None
            base_leaves.extend(child.children)
        else:
            return None
    head = None
    for leaf in base_leaves:
        if _is_noun_leaf(leaf):
            head = leaf.token
    if head is None:
        return None
    return head, adjuncts


def _analyze_pp(pp_node: Tree) -> tuple[str, Tree] | None:
    """Split a PP into (preposition head, object NP); None if out of scope."""
    prep = None
    object_np = None
    for i, child in enumerate(pp_node.children):
        if child.is_leaf:
            if object_np is not None:
                return None
            if prep is None and _is_prep_leaf(child):
                prep = child.token
        elif child.label == "NP":
            if object_np is not None or i != len(pp_node.children) - 1:
                return None
            object_np = child
        else:
            return None
    if prep is None or object_np is None:
        return None
    return prep, object_np


def classify_vp(vp: Tree) -> VPClassification | None:
    """Match a VP against the 2/5/14 bracketing shapes and extract heads.

    Returns None for any shape outside the taxonomy: no object NP, no PPs,
    more than three PPs, left-recursive NP stacks, or unexpected
    constituents anywhere in the pattern.
    """
    if vp.is_leaf or vp.label != "VP" or len(vp.children) < 2:
        return None
    verb_leaf = vp.children[0]
    object_np = vp.children[1]
    if not _is_verb_leaf(verb_leaf) or object_np.is_leaf or object_np.label != "NP":
        return None
    vp_pps = list(vp.children[2:])
    if any(pp.is_leaf or pp.label != "PP" for pp in vp_pps):
        return None

    nouns: dict[int, str] = {}
    preps: list[tuple[str, Site]] = []

    def walk_np(np_node: Tree, index: int) -> bool:
        analysis = _analyze_np(np_node)
        if analysis is None:
            return False
        head, adjuncts = analysis
        nouns[index] = head
        if adjuncts and index > 3:
            return False
        return all(walk_pp(pp, Site(index)) for pp in adjuncts)

    def walk_pp(pp_node: Tree, host: Site) -> bool:
        analysis = _analyze_pp(pp_node)
        if analysis is None or len(preps) >= 3:
            return False
        prep, obj = analysis
        preps.append((prep, host))
        return walk_np(obj, len(preps) + 1)

    if not walk_np(object_np, 1):
        return None
    for pp in vp_pps:
        if not walk_pp(pp, Site.VERB):
            return None

    kind = len(preps)
    if kind == 0:
        return None
    sites = tuple(site for _, site in preps)
    code = CODE_BY_SITES[kind].get(sites)
    if code is None:
        return None
    words = [nouns.get(i) for i in range(1, kind + 2)]
    return VPClassification(
        kind=kind,
        config=code,
        v=verb_leaf.token,  # type: ignore[arg-type]
        n1=words[0],  # type: ignore[arg-type]
        p1=preps[0][0],
        n2=words[1] if kind >= 2 else None,
        p2=preps[1][0] if kind >= 2 else None,
        n3=words[2] if kind == 3 else None,
        p3=preps[2][0] if kind == 3 else None,
        final_noun=words[kind],
    )


def _normalize_word(word: str | None, normalization: str) -> str | None:
    if word is None or normalization == "none":
        return word
    return word.lower()


def extract_tuples(trees: Iterable[Tree], normalization: str = "lower") -> list[TupleRecord]:
    """Classify every VP in every tree and emit one record per match.

    Record ids are ``t<treeIndex>.v<matchIndex>``, both zero-based, so the
    output is a pure, reproducible function of the input stream.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization policy {normalization!r}")
    records = []
    for t_index, tree in enumerate(trees):
        v_index = 0
        for node in tree.subtrees():
            if node.is_leaf or node.label != "VP":
                continue
            match = classify_vp(node)
            if match is None:
                continue
            records.append(
                TupleRecord(
                    id=f"t{t_index}.v{v_index}",
                    kind=match.kind,
                    config=match.config,
                    v=_normalize_word(match.v, normalization),
                    n1=_normalize_word(match.n1, normalization),
                    p1=_normalize_word(match.p1, normalization),
                    n2=_normalize_word(match.n2, normalization),
                    p2=_normalize_word(match.p2, normalization),
                    n3=_normalize_word(match.n3, normalization),
                    p3=_normalize_word(match.p3, normalization),
                    final_noun=_normalize_word(match.final_noun, normalization),
                )
            )
            v_index += 1
    return records


_COLUMNS = ("id", "kind", "config", "v", "n1", "p1", "n2", "p2", "n3", "p3", "final_noun")


def write_tuple_file(records: Iterable[TupleRecord]) -> bytes:
    """Serialize records to the 11-column tab-separated tuple format."""
    lines = [TUPLE_FILE_HEADER]
    for record in records:
        validate_record(record)
        fields = [getattr(record, col) for col in _COLUMNS]
        lines.append("\t".join("" if f is None else str(f) for f in fields))
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_tuple_file(data: bytes) -> list[TupleRecord]:
    """Parse a tuple file; the inverse of :func:`write_tuple_file`."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise TupleFileError(f"not valid UTF-8: {err}", 1) from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != TUPLE_FILE_HEADER:
        raise TupleFileError(f"expected header {TUPLE_FILE_HEADER!r}", 1)
    records = []
    for number, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != len(_COLUMNS):
            raise TupleFileError(
                f"expected {len(_COLUMNS)} tab-separated fields, found {len(fields)}",
                number,
            )
        values = dict(zip(_COLUMNS, (f if f else None for f in fields)))
        try:
            kind = int(values["kind"] or "")
            config = int(values["config"] or "")
        except ValueError:
            raise TupleFileError("kind and config must be integers", number) from None
        values["kind"] = kind
        values["config"] = config
        record = TupleRecord(**values)  # type: ignore[arg-type]
        try:
            validate_record(record)
        except ValueError as err:
            raise TupleFileError(str(err), number) from None
        records.append(record)
    return records


def build_vp(kind: int, code: int, words: Iterable[str]) -> Tree:
    """Build the canonical bracketing for a configuration.

    ``words`` is the full head chain ``(v, n1, p1, n2, ..., p<kind>,
    final_noun)`` of length ``2 * kind + 2``: each preposition is followed
    by its object noun, and the last noun is the final PP's object.
    """
    words = list(words)
    if len(words) != 2 * kind + 2:
        raise ValueError(f"need {2 * kind + 2} words for {kind} PP(s), got {len(words)}")
    sites = sites_for(kind, code)
    verb = words[0]
    noun_words = {1: words[1]}
    prep_words = {}
    for k in range(1, kind + 1):
        prep_words[k] = words[2 * k]
        noun_words[k + 1] = words[2 * k + 1]

    vp_attached: list[int] = []
    noun_attached: dict[int, list[int]] = {i: [] for i in noun_words}
    for k, site in enumerate(sites, start=1):
        if site is Site.VERB:
            vp_attached.append(k)
        else:
            noun_attached[site.value].append(k)

    np_nodes: dict[int, Tree] = {}
    pp_nodes: dict[int, Tree] = {}
    for index in sorted(noun_words, reverse=True):
        children = [Tree.leaf("N", noun_words[index])]
        children += [pp_nodes[k] for k in noun_attached[index]]
        np_nodes[index] = Tree.node("NP", children)
        if index > 1:
            k = index - 1
            pp_nodes[k] = Tree.node("PP", [Tree.leaf("P", prep_words[k]), np_nodes[index]])

    children = [Tree.leaf("V", verb), np_nodes[1]]
    children += [pp_nodes[k] for k in vp_attached]
    return Tree.node("VP", children)


def record_from_classification(match: VPClassification, record_id: str) -> TupleRecord:
    return TupleRecord(id=record_id, **{f: getattr(match, f) for f in match.__dataclass_fields__})


def renumber(records: Iterable[TupleRecord], prefix: str) -> list[TupleRecord]:
    """Re-id records as ``<prefix>0, <prefix>1, ...`` preserving order."""
    return [replace(r, id=f"{prefix}{i}") for i, r in enumerate(records)]
