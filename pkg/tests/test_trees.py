import pytest
from hypothesis import given, strategies as st

from ppbackoff import ParseError, Tree, parse_bracketed_tree, read_treebank


def test_single_leaf():
    tree = parse_bracketed_tree("(N article)")
    assert tree.label == "N"
    assert tree.token == "article"
    assert tree.is_leaf


def test_nested_children_in_order():
    tree = parse_bracketed_tree("(VP (V read) (NP (N article)))")
    assert tree.label == "VP"
    assert [c.label for c in tree.children] == ["V", "NP"]
    assert tree.children[0].token == "read"
    assert not tree.is_leaf


def test_whitespace_normalized_round_trip():
    text = "(VP   (V read)\n  (NP (N article)))"
    tree = parse_bracketed_tree(text)
    assert tree.bracketed() == "(VP (V read) (NP (N article)))"
    assert parse_bracketed_tree(tree.bracketed()) == tree


def test_unbalanced_input_errors_at_end_of_input():
    text = "(VP (V read) (NP (N article)"
    with pytest.raises(ParseError) as exc:
        parse_bracketed_tree(text)
    assert exc.value.offset == len(text)


def test_empty_input():
    with pytest.raises(ParseError) as exc:
        parse_bracketed_tree("   ")
    assert exc.value.offset == 0


@pytest.mark.parametrize(
    "text",
    [
        "(N)",  # neither token nor children
        "( (N x))",  # missing label
        "(N x y)",  # two tokens in one leaf
        "(N x) (N y)",  # trailing material
        "(VP (V read)))",  # extra close
        "x",  # no bracketing at all
    ],
)
def test_malformed_inputs_raise(text):
    with pytest.raises(ParseError):
        parse_bracketed_tree(text)


def test_tree_invariants_enforced():
    with pytest.raises(ValueError):
        Tree("N", (), None)  # neither children nor token
    with pytest.raises(ValueError):
        Tree("N", (Tree.leaf("X", "x"),), "tok")  # both
    with pytest.raises(ValueError):
        Tree.leaf("N", "bad\ttoken")


def test_read_treebank_blocks_and_indexing():
    text = "(A x)\n\n(B (C y) (D z))\n\n\n(E w)\n"
    trees = read_treebank(text)
    assert [t.label for t in trees] == ["A", "B", "E"]


def test_read_treebank_reports_tree_index():
    with pytest.raises(ParseError) as exc:
        read_treebank("(A x)\n\n(B (C y)\n")
    assert str(exc.value).startswith("tree 1:")


_labels = st.sampled_from(["S", "NP", "VP", "PP", "N", "V", "P", "DT"])
_tokens = st.text(alphabet="abcdefg", min_size=1, max_size=6)


def _tree_strategy():
    return st.recursive(
        st.builds(Tree.leaf, _labels, _tokens),
        lambda children: st.builds(
            Tree.node, _labels, st.lists(children, min_size=1, max_size=4)
        ),
        max_leaves=20,
    )


@given(_tree_strategy())
def test_parse_inverts_serialization(tree):
    assert parse_bracketed_tree(tree.bracketed()) == tree
