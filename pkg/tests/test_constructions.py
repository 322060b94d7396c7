import itertools
from math import comb

import pytest

from linhyp.constructions import (
    GF2Vector,
    bose_burton,
    bose_burton_vertices,
    fan,
    fano,
    graham_sloane,
    mk4,
    whirl3,
)
from linhyp.errors import OutOfRange
from linhyp.hypergraph import induced
from linhyp.patterns import MatchMode, contains_pattern, is_free, is_rs
from linhyp.matroid3 import validate_sparse

import oracle


def test_whirl3_shape():
    w = whirl3().system
    assert set(w.edges) == {(1, 2, 3), (3, 4, 5), (1, 5, 6)}
    assert not is_rs(w)
    degs = sorted(w.degree(v) for v in range(1, 7))
    assert degs == [1, 1, 1, 2, 2, 2]


def test_mk4_shape():
    m = mk4().system
    assert set(m.edges) == {(1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6)}
    for a, b in itertools.combinations(m.edges, 2):
        assert len(set(a) & set(b)) == 1
    assert all(m.degree(v) == 2 for v in range(1, 7))
    assert contains_pattern(m, whirl3(), MatchMode.SUBGRAPH)
    assert not contains_pattern(m, whirl3(), MatchMode.INDUCED)


def test_fan_quoted_edges():
    assert set(fan().system.edges) == {(1, 2, 3), (1, 4, 5), (1, 6, 7), (3, 5, 7)}


def test_fano_every_pair_once():
    f = fano().system
    assert len(f.edges) == 7
    covered = oracle.shadow_pairs(f.edges)
    assert covered == set(itertools.combinations(range(1, 8), 2))


def test_fano_minus_point_is_mk4():
    f = fano().system
    rest = induced(f, range(2, 8))
    assert len(rest.edges) == 4
    assert contains_pattern(rest, mk4(), MatchMode.INDUCED)


def test_graham_sloane_examples():
    assert set(graham_sloane(6, 3, 0).ch) == {
        (1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5),
    }
    assert set(graham_sloane(4, 2, 1).ch) == {(1, 4), (2, 3)}
    assert set(graham_sloane(5, 3, 0).ch) == {(1, 4, 5), (2, 3, 5)}


def test_graham_sloane_partition_and_pigeonhole():
    for n in range(2, 11):
        for r in range(1, n):
            classes = [graham_sloane(n, r, k).ch for k in range(n)]
            sizes = sum(len(c) for c in classes)
            assert sizes == comb(n, r)
            union = set().union(*map(set, classes)) if classes else set()
            assert len(union) == comb(n, r)
            assert max(len(c) for c in classes) * n >= comb(n, r)


def test_graham_sloane_validates():
    with pytest.raises(OutOfRange):
        graham_sloane(5, 5, 0)
    with pytest.raises(OutOfRange):
        graham_sloane(5, 2, 5)


def test_gf2vector():
    v = GF2Vector((1, 0, 1))
    w = GF2Vector((0, 1, 1))
    assert (v + w).bits == (1, 1, 0)
    with pytest.raises(OutOfRange):
        GF2Vector((2, 0))
    with pytest.raises(OutOfRange):
        GF2Vector((1,))


def test_bose_burton_sizes():
    for r in (2, 3, 4, 5):
        b = bose_burton(r)
        assert b.n == 3 * 2 ** (r - 2)
        assert len(b.edges) == 2 ** (2 * (r - 2))
    with pytest.raises(OutOfRange):
        bose_burton(1)


def test_bose_burton_r2():
    assert bose_burton(2).edges == ((1, 2, 3),)


def test_b3_isomorphic_to_mk4():
    b3 = bose_burton(3)
    assert set(b3.edges) == {(1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)}
    assert contains_pattern(b3, mk4(), MatchMode.INDUCED)


def test_b_r_freeness():
    for r in (2, 3, 4):
        b = bose_burton(r)
        assert is_free(b, [fan()], MatchMode.SUBGRAPH)
        assert is_free(b, [whirl3(), fano()], MatchMode.INDUCED)


def test_b_r_edges_are_group_transversals():
    for r in (3, 4):
        verts = bose_burton_vertices(r)
        b = bose_burton(r)
        group = {i + 1: (v.bits[0], v.bits[1]) for i, v in enumerate(verts)}
        for e in b.edges:
            assert {group[v] for v in e} == {(0, 1), (1, 0), (1, 1)}


def test_b_r_subgeometry_restriction():
    # vertices with last coordinate 0 induce a copy of the next geometry down
    for r in (3, 4):
        verts = bose_burton_vertices(r)
        keep = [i + 1 for i, v in enumerate(verts) if v.bits[-1] == 0]
        sub = induced(bose_burton(r), keep)
        lower = bose_burton(r - 1)
        assert sub.n == lower.n and len(sub.edges) == len(lower.edges)
        # same labeled system: dropping the last zero coordinate preserves
        # the lexicographic labeling
        assert sub.edges == lower.edges


def test_every_gs_class_is_stable():
    for n in range(2, 9):
        for r in range(1, n):
            for k in range(n):
                fam = graham_sloane(n, r, k)
                validate_sparse(n, r, fam.ch)
