from collections import Counter

import pytest
from hypothesis import given, strategies as st

from ppbackoff import (
    TupleFileError,
    TupleRecord,
    build_vp,
    classify_vp,
    extract_tuples,
    parse_bracketed_tree,
    read_tuple_file,
    write_tuple_file,
)
from ppbackoff.configurations import SITES_BY_CODE
from ppbackoff.corpus import validate_record


def test_classify_two_pp_flat_vp():
    tree = parse_bracketed_tree(
        "(VP (V keep) (NP (N debt)) (PP (P under) (NP (N review))) (PP (P for) (NP (N downgrade))))"
    )
    match = classify_vp(tree)
    assert (match.kind, match.config) == (2, 1)
    assert (match.v, match.n1, match.p1, match.n2, match.p2) == (
        "keep", "debt", "under", "review", "for",
    )


def test_classify_single_pp_noun_attachment():
    tree = parse_bracketed_tree(
        "(VP (V read) (NP (N article) (PP (P about) (NP (N budget)))))"
    )
    match = classify_vp(tree)
    assert (match.kind, match.config) == (1, 2)
    assert (match.v, match.n1, match.p1) == ("read", "article", "about")
    assert match.final_noun == "budget"


def test_classify_left_recursive_np_stack_is_no_match():
    tree = parse_bracketed_tree(
        "(VP (V see) (NP (NP (NP (N man)) (PP (P with) (NP (N dog)))) (PP (P in) (NP (N park)))))"
    )
    assert classify_vp(tree) is None


@pytest.mark.parametrize(
    "text",
    [
        "(VP (V sleep))",  # no object
        "(VP (V see) (NP (N man)))",  # no PPs
        "(VP (V see) (NP (DT the)))",  # object has no noun head
        "(VP (NP (N man)) (V see) (PP (P in) (NP (N park))))",  # verb not first
        "(VP (V see) (NP (N man)) (ADVP (RB yesterday)) (PP (P in) (NP (N park))))",
        "(VP (V see) (NP (N man)) (PP (P up)))",  # PP without object NP
        "(VP (V see) (NP (N man)) (PP (RB right) (NP (N park))))",  # PP without preposition
        # four PPs exceed the taxonomy
        "(VP (V see) (NP (N man)) (PP (P at) (NP (N noon))) (PP (P in) (NP (N park)))"
        " (PP (P on) (NP (N monday))) (PP (P with) (NP (N dog))))",
    ],
)
def test_out_of_scope_shapes_are_no_match(text):
    assert classify_vp(parse_bracketed_tree(text)) is None


def test_head_rules_rightmost_noun_and_tag_variants():
    tree = parse_bracketed_tree(
        "(VP (VBD kept) (NP (DT the) (JJ rising) (NN debt)) (PP (IN under) (NP (NN review))))"
    )
    match = classify_vp(tree)
    assert (match.kind, match.config) == (1, 1)
    assert (match.v, match.n1, match.p1) == ("kept", "debt", "under")
    assert match.final_noun == "review"


def test_nested_base_np_is_supported():
    tree = parse_bracketed_tree(
        "(VP (V extend) (NP (NP (N involvement)) (PP (P with) (NP (N service)))) (PP (P for) (NP (N years))))"
    )
    match = classify_vp(tree)
    assert (match.kind, match.config) == (2, 2)
    assert match.n1 == "involvement"


def test_extract_ids_and_normalization():
    trees = [
        parse_bracketed_tree("(S (NP (N He)) (VP (V Read) (NP (N Article) (PP (P About) (NP (N Budget))))))"),
        parse_bracketed_tree("(S (VP (V keep) (NP (N debt)) (PP (P under) (NP (N review)))))"),
    ]
    records = extract_tuples(trees)
    assert [r.id for r in records] == ["t0.v0", "t1.v0"]
    assert records[0].v == "read" and records[0].n1 == "article"
    raw = extract_tuples(trees, normalization="none")
    assert raw[0].v == "Read"


def test_extract_empty_stream():
    assert extract_tuples([]) == []


def test_exemplar_fixture_matches_manifest(exemplar_records, exemplar_manifest):
    assert len(exemplar_records) == len(exemplar_manifest) == 21
    got = Counter((r.kind, r.config) for r in exemplar_records)
    expected = Counter((kind, config) for _, kind, config in exemplar_manifest)
    assert got == expected
    for record, (record_id, kind, config) in zip(exemplar_records, exemplar_manifest):
        assert (record.id, record.kind, record.config) == (record_id, kind, config)


def test_build_vp_round_trips_every_configuration():
    for kind, table in SITES_BY_CODE.items():
        words = ["vrb", "alpha", "p1w", "beta", "p2w", "gamma", "p3w", "delta"]
        needed = words[: 2 * kind + 2]
        for code in table:
            tree = build_vp(kind, code, needed)
            match = classify_vp(tree)
            assert match is not None, (kind, code)
            assert (match.kind, match.config) == (kind, code)


def test_tuple_file_round_trip_empty():
    data = write_tuple_file([])
    assert data.decode().splitlines() == ["ppbackoff-tuples v1"]
    assert read_tuple_file(data) == []


def test_tuple_file_round_trip_single_kind1():
    record = TupleRecord("t0.v0", 1, 2, "read", "article", "about", final_noun="budget")
    data = write_tuple_file([record])
    lines = data.decode().splitlines()
    assert len(lines) == 2
    assert lines[1].count("\t") == 10
    assert read_tuple_file(data) == [record]
    assert write_tuple_file(read_tuple_file(data)) == data


def test_tuple_file_out_of_range_config():
    line = "x\t2\t6\tv\tn\tp\tm\tq\t\t\t"
    data = ("ppbackoff-tuples v1\n" + line + "\n").encode()
    with pytest.raises(TupleFileError) as exc:
        read_tuple_file(data)
    assert exc.value.line == 2
    assert "config" in str(exc.value)


def test_tuple_file_malformed_line_number():
    good = "a\t1\t1\tv\tn\tp\t\t\t\t\t"
    data = ("ppbackoff-tuples v1\n" + good + "\nnot-enough-fields\n").encode()
    with pytest.raises(TupleFileError) as exc:
        read_tuple_file(data)
    assert exc.value.line == 3


def test_tuple_file_header_required():
    with pytest.raises(TupleFileError):
        read_tuple_file(b"wrong header\n")


def test_validate_record_rejects_slot_misuse():
    with pytest.raises(ValueError):
        validate_record(TupleRecord("a", 1, 1, "v", "n", "p", n2="extra"))
    with pytest.raises(ValueError):
        validate_record(TupleRecord("a", 2, 1, "v", "n", "p"))  # missing n2/p2
    with pytest.raises(ValueError):
        validate_record(TupleRecord("a", 1, 3, "v", "n", "p"))  # config range


_words = st.text(alphabet="abcdefgh", min_size=1, max_size=5)


@st.composite
def _records(draw):
    kind = draw(st.sampled_from([1, 2, 3]))
    config = draw(st.sampled_from(sorted(SITES_BY_CODE[kind])))
    fields = {
        "kind": kind,
        "config": config,
        "v": draw(_words),
        "n1": draw(_words),
        "p1": draw(_words),
    }
    if kind >= 2:
        fields["n2"] = draw(_words)
        fields["p2"] = draw(_words)
    if kind == 3:
        fields["n3"] = draw(_words)
        fields["p3"] = draw(_words)
    if draw(st.booleans()):
        fields["final_noun"] = draw(_words)
    return fields


@given(st.lists(_records(), max_size=20))
def test_tuple_file_round_trip_property(field_dicts):
    records = [TupleRecord(id=f"t{i}.v0", **fields) for i, fields in enumerate(field_dicts)]
    data = write_tuple_file(records)
    assert read_tuple_file(data) == records
    assert write_tuple_file(read_tuple_file(data)) == data
