import random

import pytest

from linhyp.constructions import bose_burton, fan, fano, mk4, whirl3
from linhyp.errors import PatternTooLarge
from linhyp.hypergraph import make_system
from linhyp.patterns import (
    MatchMode,
    Pattern,
    contains_pattern,
    find_embedding,
    get_pattern,
    is_free,
    is_rs,
    verify_embedding,
)
from linhyp.search import random_linear_system

import oracle

W3_SYS = make_system(6, oracle.W3)


def test_w3_contains_itself_induced():
    assert contains_pattern(W3_SYS, whirl3(), MatchMode.INDUCED)


def test_b3_contains_w3_subgraph_not_induced():
    b3 = bose_burton(3)
    assert contains_pattern(b3, whirl3(), MatchMode.SUBGRAPH)
    assert not contains_pattern(b3, whirl3(), MatchMode.INDUCED)


def test_fano_contains_fan():
    assert contains_pattern(fano().system, fan(), MatchMode.SUBGRAPH)


def test_witness_replays():
    b3 = bose_burton(3)
    phi = find_embedding(b3, whirl3(), MatchMode.SUBGRAPH)
    assert phi is not None
    assert verify_embedding(b3, whirl3(), MatchMode.SUBGRAPH, phi)
    phi2 = find_embedding(fano().system, fan(), MatchMode.SUBGRAPH)
    assert verify_embedding(fano().system, fan(), MatchMode.SUBGRAPH, phi2)


def test_witness_deterministic():
    b3 = bose_burton(3)
    a = find_embedding(b3, whirl3(), MatchMode.SUBGRAPH)
    b = find_embedding(b3, whirl3(), MatchMode.SUBGRAPH)
    assert a == b


def test_pattern_too_large():
    big = make_system(8, [])
    with pytest.raises(PatternTooLarge):
        Pattern("big", big)


def test_is_rs_examples():
    assert is_rs(make_system(6, [(1, 2, 3), (3, 4, 5)]))
    assert not is_rs(W3_SYS)
    assert not is_rs(bose_burton(3))


def test_is_free_examples():
    b4 = bose_burton(4)
    assert is_free(b4, [whirl3(), fano()], MatchMode.INDUCED)
    assert is_free(bose_burton(3), [fan()], MatchMode.SUBGRAPH)
    assert not is_free(fano().system, [fan()], MatchMode.SUBGRAPH)


def test_registry():
    assert get_pattern("w3").system == whirl3().system
    with pytest.raises(KeyError):
        get_pattern("nope")


def test_matcher_against_oracle_exhaustive_n6():
    pats = [
        ("w3", 6, oracle.W3),
        ("mk4", 6, oracle.MK4),
    ]
    for edges in oracle.gen_linear_systems(6):
        h = make_system(6, edges)
        for name, pn, pe in pats:
            pat = get_pattern(name)
            assert contains_pattern(h, pat, MatchMode.SUBGRAPH) == \
                oracle.contains_subgraph(6, edges, pn, pe)
            assert contains_pattern(h, pat, MatchMode.INDUCED) == \
                oracle.contains_induced(6, edges, pn, pe)


def test_matcher_against_oracle_random_n8():
    rng = random.Random(20240811)
    pats = [("w3", 6, oracle.W3), ("fan", 7, oracle.FAN), ("fano", 7, oracle.FANO)]
    for _ in range(40):
        h = random_linear_system(8, rng)
        for name, pn, pe in pats:
            pat = get_pattern(name)
            assert contains_pattern(h, pat, MatchMode.SUBGRAPH) == \
                oracle.contains_subgraph(8, h.edges, pn, pe)
            assert contains_pattern(h, pat, MatchMode.INDUCED) == \
                oracle.contains_induced(8, h.edges, pn, pe)


def test_rs_equivalence_six_subset_oracle():
    # the six-vertex formulation agrees with the 3-cycle-free formulation
    for n in (4, 5, 6, 7):
        for edges in oracle.gen_linear_systems(n):
            h = make_system(n, edges)
            assert is_rs(h) == oracle.is_rs_six_subset(n, edges)


def test_rs_equivalence_random_n8():
    rng = random.Random(77)
    for _ in range(10_000):
        h = random_linear_system(8, rng)
        assert is_rs(h) == oracle.is_rs_six_subset(8, h.edges)


def test_subgraph_monotone_under_edge_removal():
    rng = random.Random(5)
    w3 = whirl3()
    for _ in range(200):
        h = random_linear_system(7, rng)
        if not contains_pattern(h, w3, MatchMode.SUBGRAPH):
            for k in range(len(h.edges)):
                sub = make_system(7, h.edges[:k] + h.edges[k + 1 :])
                assert not contains_pattern(sub, w3, MatchMode.SUBGRAPH)


def test_fan_forcing_exhaustive_n7():
    # no induced 3-cycle and no induced Fano forces fan-freeness
    w3p, fanop, fanp = whirl3(), fano(), fan()
    for edges in oracle.gen_linear_systems(7):
        h = make_system(7, edges)
        if is_free(h, [w3p, fanop], MatchMode.INDUCED):
            assert not contains_pattern(h, fanp, MatchMode.SUBGRAPH)
