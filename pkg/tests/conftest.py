import pathlib

import pytest

from ppbackoff import extract_tuples, read_treebank

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def exemplar_text():
    return (DATA / "exemplars.trees").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def exemplar_trees(exemplar_text):
    return read_treebank(exemplar_text)


@pytest.fixture(scope="session")
def exemplar_records(exemplar_trees):
    return extract_tuples(exemplar_trees)


@pytest.fixture(scope="session")
def exemplar_manifest():
    rows = []
    for line in (DATA / "exemplars_manifest.tsv").read_text().splitlines():
        record_id, kind, config = line.split("\t")
        rows.append((record_id, int(kind), int(config)))
    return rows
