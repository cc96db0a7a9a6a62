import random
from math import comb

import pytest

import oracles
from turan3.core import Hypergraph3
from turan3.patterns import (
    ConstructionSpec,
    as_pattern,
    catalog,
    check_witness,
    clique_union,
    comet,
    common_vertex,
    complete,
    construct,
    contains,
    copies_in_complete,
    count_copies,
    count_embeddings,
    h0,
    is_intersecting,
    star,
)

NAMED = ["P", "C", "M", "P2", "P2uK3"]


@pytest.mark.parametrize("name", NAMED + ["K4", "K5"])
def test_automorphism_counts_match_brute_force(name):
    assert catalog(name).automorphism_count == oracles.automorphisms(name)


def test_frozen_pattern_facts():
    # frozen from oracles.automorphisms / oracles.copy_masks
    assert catalog("P").automorphism_count == 8
    assert catalog("P2uK3").vertices == 8
    assert count_copies(complete(7), "P") == 630
    assert count_copies(complete(6), "M") == 10


def test_catalog_aliases_and_errors():
    assert catalog("K(4)") == catalog("K4")
    assert as_pattern("C") is catalog("C")
    with pytest.raises(KeyError):
        catalog("Q")


def test_known_containment_cases():
    assert contains(star(20), "P") is None
    assert contains(comet(13), "C") is None
    assert contains(h0(8), "P2uK3") is None
    assert contains(complete(7), "P") is not None
    assert contains(complete(5), "P") is None


def _graph(n, mask):
    return Hypergraph3(n, mask)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("name", ["M", "C", "P2", "K4"])
def test_detectors_exhaustive_up_to_isomorphism(n, name):
    """Every isomorphism class on n <= 6 vertices: auto, generic and oracle agree."""
    hits = oracles._contains(n, name)
    for mask in oracles.orbit_reps(n):
        H = _graph(n, mask)
        auto = contains(H, name)
        gen = contains(H, name, method="generic")
        assert (auto is not None) == (gen is not None) == bool(hits[mask])
        for w in (auto, gen):
            if w is not None:
                assert check_witness(H, name, w)


def test_m_detector_exhaustive_labeled_n5_n6_sample():
    for mask in range(1 << 10):
        H = _graph(5, mask)
        assert contains(H, "M") is None
    hits = oracles._contains(6, "M")
    rng = random.Random(7)
    for mask in rng.sample(range(1 << 20), 3000):
        H = _graph(6, mask)
        assert (contains(H, "M") is not None) == bool(hits[mask])


def _random_graph(rng, n, density):
    N = comb(n, 3)
    mask = 0
    for i in range(N):
        if rng.random() < density:
            mask |= 1 << i
    return _graph(n, mask)


@pytest.mark.parametrize("name", ["P", "M", "C"])
def test_detectors_sampled_n7(name):
    rng = random.Random(11)
    for k in range(120):
        H = _random_graph(rng, 7, [0.08, 0.15, 0.25, 0.4][k % 4])
        fast = contains(H, name)
        gen = contains(H, name, method="generic")
        expected = oracles.has_copy(7, oracles.to_mask(7, H.triples()), name)
        assert (fast is not None) == (gen is not None) == expected
        if fast is not None:
            assert check_witness(H, name, fast)


def test_fast_method_only_for_p_and_m():
    with pytest.raises(ValueError):
        contains(complete(6), "C", method="fast")
    assert contains(complete(6), "M", method="fast") is not None


@pytest.mark.parametrize("name", ["M", "C", "P2", "K4"])
def test_copies_times_automorphisms_is_embeddings(name):
    rng = random.Random(3)
    for k in range(40):
        n = 5 + k % 2
        H = _random_graph(rng, n, 0.5)
        emb = oracles.embeddings(n, oracles.to_mask(n, H.triples()), name)
        assert count_embeddings(H, name) == emb
        assert count_copies(H, name) * catalog(name).automorphism_count == emb


@pytest.mark.parametrize("n,name", [(6, "C"), (6, "M"), (7, "P"), (7, "C"), (6, "P2")])
def test_copies_in_complete_match_oracle(n, name):
    ours = {oracles.to_mask(n, [tuple(_unrank(r)) for r in cp]) for cp in copies_in_complete(n, name)}
    assert ours == set(oracles.copy_masks(n, name))


def _unrank(r):
    from turan3.core import TRIPLES

    return TRIPLES[r]


def test_check_witness_rejects_bad_maps():
    K = complete(7)
    assert check_witness(K, "P", (0, 1, 2, 3, 4, 5, 6))
    assert not check_witness(K, "P", (0, 1, 2, 3, 4, 5, 5))
    assert not check_witness(star(7), "P", (0, 1, 2, 3, 4, 5, 6))
    assert not check_witness(K, "P", (0, 1, 2))


def test_structural_predicates():
    assert common_vertex(star(9)) == 0
    assert common_vertex(comet(9)) is None
    assert common_vertex(Hypergraph3(5, 0)) is None
    assert is_intersecting(star(9))
    assert not is_intersecting(clique_union([3, 3]))


def test_construction_sizes():
    assert construct(ConstructionSpec.parse("comet", 13)).m == 40
    assert construct(ConstructionSpec.parse("h0", 9)).m == 14
    assert construct(ConstructionSpec.parse("cliqueunion", sizes=[6, 6, 1])).m == 40
    assert construct(ConstructionSpec.parse("star", 12)).m == 55


def test_construction_spec_errors():
    with pytest.raises(ValueError):
        ConstructionSpec.parse("wheel", 8)
    with pytest.raises(ValueError):
        ConstructionSpec.parse("star")
    with pytest.raises(ValueError):
        comet(4)


@pytest.mark.parametrize("n", range(6, 21))
def test_construction_certificates(n):
    co, st, hz, cu = comet(n), star(n), h0(n), clique_union([6, n - 6]) if n > 6 else complete(6)
    assert co.m == 4 + comb(n - 4, 2)
    assert st.m == comb(n - 1, 2)
    assert hz.m == 2 * n - 4
    assert cu.m == 20 + comb(n - 6, 3)
    for name in ("P", "C"):
        assert contains(co, name) is None
        assert contains(hz, name) is None
    assert contains(hz, "P2uK3") is None
    assert contains(co, "M") is not None and contains(hz, "M") is not None
    for name in ("P", "C", "M"):
        assert contains(st, name) is None
    # K6 u K(n-6) is only P-free while the second clique has at most 6 vertices
    assert (contains(cu, "P") is None) == (n <= 12)
