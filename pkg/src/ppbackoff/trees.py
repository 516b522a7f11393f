"""Labeled-bracket constituency trees and the plain-text treebank format.

Trees are written in the usual parenthesized style, one tree per
blank-line-separated block::

    (S (NP (N agency))
       (VP (V keep) (NP (N debt)) (PP (P under) (NP (N review)))))

A node is either internal (a label plus ordered children) or a leaf
(a part-of-speech label plus a token), never both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class ParseError(ValueError):
    """Malformed bracketing; ``offset`` is a character position in the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.message = message
        self.offset = offset


_BAD_CHARS = re.compile(r"[\t\n]")
_TOKEN = re.compile(r"\(|\)|[^()\s]+")


@dataclass(frozen=True)
class Tree:
    """A constituency node: internal nodes carry children, leaves a token."""

    label: str
    children: tuple["Tree", ...] = ()
    token: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.label or _BAD_CHARS.search(self.label):
            raise ValueError(f"invalid node label {self.label!r}")
        if self.token is not None and (not self.token or _BAD_CHARS.search(self.token)):
            raise ValueError(f"invalid leaf token {self.token!r}")
        if (self.token is None) == (not self.children):
            raise ValueError("a node needs either children or a token, never both")

    @classmethod
    def leaf(cls, label: str, token: str) -> "Tree":
        return cls(label, (), token)

    @classmethod
    def node(cls, label: str, children) -> "Tree":
        return cls(label, tuple(children), None)

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    def subtrees(self) -> Iterator["Tree"]:
        """Pre-order traversal, including this node."""
        yield self
        for child in self.children:
            yield from child.subtrees()

    def leaves(self) -> Iterator["Tree"]:
        for node in self.subtrees():
            if node.is_leaf:
                yield node

    def bracketed(self) -> str:
        """Serialize back to a single-line bracketing with single spaces."""
        if self.is_leaf:
            return f"({self.label} {self.token})"
        return f"({self.label} {' '.join(c.bracketed() for c in self.children)})"


def parse_bracketed_tree(text: str) -> Tree:
    """Parse one labeled bracketing; errors report the character offset."""
    tokens = [(m.group(), m.start()) for m in _TOKEN.finditer(text)]
    if not tokens:
        raise ParseError("empty input", 0)
    end = len(text)

    def at(pos: int, expected: str) -> tuple[str, int]:
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of input, expected {expected}", end)
        return tokens[pos]

    def parse_node(pos: int) -> tuple[Tree, int]:
        tok, off = at(pos, "'('")
        if tok != "(":
            raise ParseError(f"expected '(', found {tok!r}", off)
        pos += 1
        tok, off = at(pos, "a node label")
        if tok in ("(", ")"):
            raise ParseError("missing node label", off)
        label = tok
        pos += 1
        tok, off = at(pos, "a token or '('")
        if tok == ")":
            raise ParseError("node has neither a token nor children", off)
        if tok == "(":
            children = []
            while True:
                child, pos = parse_node(pos)
                children.append(child)
                tok, off = at(pos, "'(' or ')'")
                if tok == ")":
                    return Tree.node(label, children), pos + 1
                if tok != "(":
                    raise ParseError(f"expected '(' or ')', found {tok!r}", off)
        token = tok
        pos += 1
        tok, off = at(pos, "')'")
        if tok != ")":
            raise ParseError("a leaf holds exactly one token, expected ')'", off)
        return Tree.leaf(label, token), pos + 1

    tree, pos = parse_node(0)
    if pos != len(tokens):
        raise ParseError("trailing material after the tree", tokens[pos][1])
    return tree


def read_treebank(text: str) -> list[Tree]:
    """Parse a whole treebank, one bracketing per blank-line-separated block.

    Parse failures are re-raised with the zero-based tree index prepended.
    """
    trees = []
    for index, block in enumerate(_blocks(text)):
        try:
            trees.append(parse_bracketed_tree(block))
        except ParseError as err:
            raise ParseError(f"tree {index}: {err.message}", err.offset) from None
    return trees


def _blocks(text: str) -> Iterator[str]:
    buf: list[str] = []
    for line in text.splitlines():
        if line.strip():
            buf.append(line)
        elif buf:
            yield "\n".join(buf)
            buf = []
    if buf:
        yield "\n".join(buf)
