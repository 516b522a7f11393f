import pytest

from ppbackoff.configurations import (
    CONFIG_COUNTS,
    SITES_BY_CODE,
    Site,
    config_code,
    enumerate_configurations,
    enumerate_site_tuples,
    extension_code,
    first_pp_code,
    leading_pair_code,
    legal_next_sites,
    p3_candidate_sites,
    sites_for,
)

V, N1, N2, N3 = Site.VERB, Site.N1, Site.N2, Site.N3


def test_taxonomy_sizes():
    assert CONFIG_COUNTS == {1: 2, 2: 5, 3: 14}
    for kind, expected in CONFIG_COUNTS.items():
        assert len(enumerate_site_tuples(kind)) == expected


def test_enumeration_matches_code_tables():
    for kind in (1, 2, 3):
        configurations = enumerate_configurations(kind)
        assert [c.code for c in configurations] == sorted(SITES_BY_CODE[kind])
        assert {c.sites for c in configurations} == set(enumerate_site_tuples(kind))


def test_known_site_tuples():
    assert sites_for(2, 3) == (N1, N2)
    assert sites_for(3, 8) == (N1, N2, N3)
    assert sites_for(3, 13) == (N1, N1, N1)
    assert config_code(2, (V, N2)) == 4
    with pytest.raises(ValueError):
        config_code(2, (N2, V))  # crossing: not a configuration
    with pytest.raises(ValueError):
        sites_for(2, 6)


def test_sites_are_non_crossing():
    for kind in (1, 2, 3):
        for code, sites in SITES_BY_CODE[kind].items():
            prefix = ()
            for site in sites:
                assert site in legal_next_sites(prefix), (kind, code)
                prefix += (site,)


def test_frontier_simulation():
    assert legal_next_sites(()) == (V, N1)
    assert legal_next_sites((V,)) == (V, N2)
    assert legal_next_sites((N1,)) == (V, N1, N2)
    assert legal_next_sites((N1, N2)) == (V, N1, N2, N3)
    assert legal_next_sites((N1, N1)) == (V, N1, N3)
    assert legal_next_sites((V, V)) == (V, N3)


def test_p3_candidate_sites_per_pair_code():
    expected = {
        1: (V, N3),
        2: (V, N3),
        3: (V, N1, N2, N3),
        4: (V, N2, N3),
        5: (V, N1, N3),
    }
    for code, sites in expected.items():
        assert p3_candidate_sites(code) == sites


def test_extension_map_is_a_bijection_onto_all_14_codes():
    seen = {}
    for pair_code in range(1, 6):
        for site in p3_candidate_sites(pair_code):
            code = extension_code(pair_code, site)
            assert code not in seen, f"{(pair_code, site)} collides with {seen[code]}"
            seen[code] = (pair_code, site)
    assert sorted(seen) == list(range(1, 15))


def test_projections():
    assert first_pp_code(1, 1) == 1
    assert first_pp_code(1, 2) == 2
    assert first_pp_code(2, 4) == 1
    assert first_pp_code(3, 12) == 2
    assert leading_pair_code(8) == 3  # (N1, N2, N3) starts like (N1, N2)
    assert leading_pair_code(1) == 1
    assert leading_pair_code(14) == 5
