import itertools
import random
from math import comb

import pytest

from linhyp.errors import BudgetExceeded, MissingCount, OutOfRange
from linhyp.hypergraph import make_system
from linhyp.matroid3 import make_paving
from linhyp.patterns import MatchMode, contains_pattern, get_pattern, is_rs
from linhyp.search import (
    CountsTable,
    SearchBudget,
    count_f,
    count_linear_systems,
    count_paving,
    count_rank3,
    count_sparse_paving,
    extremal_max,
    iter_linear_systems,
    iter_paving_lines,
    parse_predicate,
    random_paving_lines,
    rs_max,
    sparse_count,
    sparse_table,
    stirling2,
    workers_from_env,
)

import oracle

# frozen by the naive reference enumerations (tests/oracle.py)
LINEAR_ALL = {3: 2, 4: 5, 5: 26, 6: 271, 7: 5596, 8: 231577}
LINEAR_RS = {4: 5, 5: 26, 6: 121, 7: 1156, 8: 12937, 9: 194300}
PAVING_ALL = {3: 1, 4: 5, 5: 31, 6: 352, 7: 8389}
PAVING_XFREE = {3: 1, 4: 5, 5: 31, 6: 202, 7: 1849}
F_COUNT = {4: 5, 5: 26, 6: 151, 7: 1366}
RANK3_ALL = {3: 1, 4: 15, 5: 171, 6: 2053}
RANK3_XFREE = {3: 1, 4: 15, 5: 171, 6: 1903}
JOHNSON = {
    (4, 2): 10,
    (5, 2): 26,
    (6, 2): 76,
    (6, 3): 271,
    (7, 2): 232,
    (7, 3): 5596,
    (7, 4): 5596,
}
RS_MAX = {4: 1, 5: 2, 6: 2, 7: 3, 8: 4, 9: 6}


def test_count_linear_all_frozen():
    for n, want in LINEAR_ALL.items():
        assert count_linear_systems(n) == want


def test_count_linear_rs_frozen():
    for n, want in LINEAR_RS.items():
        assert count_linear_systems(n, "rs") == want


def test_count_against_oracle():
    for n in (4, 5, 6):
        systems = oracle.gen_linear_systems(n)
        assert count_linear_systems(n) == len(systems)
        assert count_linear_systems(n, "rs") == sum(
            1 for s in systems if oracle.is_rs_six_subset(n, s)
        )


def test_count_paving_frozen():
    for n, want in PAVING_ALL.items():
        assert count_paving(n) == want
    for n, want in PAVING_XFREE.items():
        assert count_paving(n, "free(mk4,w3)") == want


def test_count_paving_against_oracle_n5():
    pavings = oracle.gen_paving(5)
    assert count_paving(5) == len(pavings)
    assert count_paving(5, "free(mk4,w3)") == sum(
        1 for p in pavings if oracle.xfree(5, p)
    )


def test_count_paving_xfree_oracle_n6():
    pavings = oracle.gen_paving(6)
    assert count_paving(6, "free(mk4,w3)") == sum(
        1 for p in pavings if oracle.xfree(6, p)
    )


def test_count_f_frozen():
    for n, want in F_COUNT.items():
        assert count_f(n) == want


def test_count_f_against_oracle_n6():
    systems = oracle.gen_linear_systems(6)
    assert count_f(6) == sum(1 for s in systems if oracle.indwf(6, s))


def test_equivalent_predicates():
    for n in (5, 6, 7):
        rs = count_linear_systems(n, "rs")
        assert count_linear_systems(n, "subgraph-free(w3)") == rs
        assert count_linear_systems(n, "subgraph-free(mk4,w3)") == rs
        assert count_linear_systems(n, "induced-free(mk4,w3)") == rs


def test_generic_predicate_filter_path():
    # mk4 alone has no kernel fast path; cross-check with the oracle
    for n in (5, 6):
        systems = oracle.gen_linear_systems(n)
        want = sum(
            1 for s in systems if not oracle.contains_subgraph(n, s, 6, oracle.MK4)
        )
        assert count_linear_systems(n, "subgraph-free(mk4)") == want
        want_ind = sum(
            1 for s in systems if not oracle.contains_induced(n, s, 6, oracle.MK4)
        )
        assert count_linear_systems(n, "induced-free(mk4)") == want_ind


def test_count_sparse_frozen_and_symmetry():
    for (n, r), want in JOHNSON.items():
        assert count_sparse_paving(n, r) == want
    for n in (4, 5, 6, 7):
        assert count_sparse_paving(n, 1) == count_sparse_paving(n, n - 1)


def test_count_sparse_against_oracle():
    for n in range(2, 7):
        for r in range(1, n):
            assert count_sparse_paving(n, r) == oracle.count_stable_johnson(n, r)


def test_sparse_equals_linear_at_rank3():
    # two unrelated kernel routes: pair-usage DFS vs stable-set DFS
    for n in (5, 6, 7, 8):
        assert count_sparse_paving(n, 3) == count_linear_systems(n)


def test_count_rank3_frozen():
    for n, want in RANK3_ALL.items():
        assert count_rank3(n) == want
    for n, want in RANK3_XFREE.items():
        assert count_rank3(n, "free(mk4,w3)") == want


def test_rank3_formula_example():
    # n=4: 1*p(4) + C(4,0)*S2(4,3)*p(3) + C(4,1)*S2(3,3)*p(3) = 5 + 6 + 4
    assert count_rank3(4) == 15


def test_rank3_dedup_oracle():
    # regenerate with ordered partitions, dedup canonical forms
    from linhyp.matroid3 import xfree as paving_xfree

    def ordered_partitions(elems, k):
        for assign in itertools.product(range(k), repeat=len(elems)):
            if set(assign) == set(range(k)):
                blocks = [[] for _ in range(k)]
                for e, b in zip(elems, assign):
                    blocks[b].append(e)
                yield [tuple(sorted(b)) for b in blocks]

    pavings_by_k = {k: list(iter_paving_lines(k)) for k in range(3, 6)}
    for n in (4, 5):
        for predicate in ("all", "free(mk4,w3)"):
            seen = set()
            for j in range(0, n + 1):
                for loops in itertools.combinations(range(1, n + 1), j):
                    rest = [x for x in range(1, n + 1) if x not in loops]
                    for k in range(3, len(rest) + 1):
                        for blocks in ordered_partitions(rest, k):
                            for lines in pavings_by_k[k]:
                                if predicate != "all" and not paving_xfree(
                                    make_paving(k, lines)
                                ):
                                    continue
                                lifted = frozenset(
                                    frozenset(
                                        itertools.chain.from_iterable(
                                            blocks[p - 1] for p in line
                                        )
                                    )
                                    for line in lines
                                )
                                seen.add(
                                    (
                                        frozenset(loops),
                                        frozenset(blocks),
                                        lifted,
                                    )
                                )
            assert count_rank3(n, predicate) == len(seen)


def test_rs_max_frozen_values_and_witnesses():
    for n, want in RS_MAX.items():
        value, witness = rs_max(n)
        assert value == want
        assert witness.n == n and len(witness.edges) == want
        assert is_rs(witness)
    assert rs_max(6)[1].edges == ((1, 2, 3), (1, 4, 5))
    assert rs_max(7)[1].edges == ((1, 2, 3), (1, 4, 5), (1, 6, 7))
    assert rs_max(9)[1].edges == (
        (1, 2, 3), (1, 4, 5), (2, 6, 7), (3, 8, 9), (4, 6, 8), (5, 7, 9),
    )


def test_rs_max_monotone_window():
    values = {n: rs_max(n)[0] for n in range(4, 10)}
    for n in range(4, 9):
        assert values[n] <= values[n + 1] <= values[n] + n // 2
    for n in range(4, 10):
        assert values[n] <= n * (n - 1) // 6


def test_extremal_frozen():
    value, witness = extremal_max(6, ["fan"], MatchMode.SUBGRAPH)
    assert value == 4
    assert contains_pattern(witness, get_pattern("mk4"), MatchMode.INDUCED)

    value2, witness2 = extremal_max(6, ["w3", "fano"], MatchMode.INDUCED)
    assert value2 == 4
    assert witness2.edges == ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))

    value3, witness3 = extremal_max(6, ["w3", "mk4"], MatchMode.INDUCED)
    assert value3 == 2 == rs_max(6)[0]


def test_extremal_generic_path_matches_kernel():
    for n in (5, 6, 7):
        fast, _ = extremal_max(n, ["w3", "fano"], MatchMode.INDUCED)
        slow = -1
        for edges in iter_linear_systems(n):
            if len(edges) > slow and oracle.indwf(n, edges):
                slow = len(edges)
        assert fast == slow


def test_fan_free_extremal_quadratic_cap():
    # frozen by search; every value respects the n^2/9 cap, equality at 6 and 9
    want = {4: 1, 5: 2, 6: 4, 7: 4, 8: 6, 9: 9}
    for n, expected in want.items():
        value, witness = extremal_max(n, ["fan"], MatchMode.SUBGRAPH)
        assert value == expected
        assert 9 * value <= n * n
        assert len(witness.edges) == value


def test_extremal_weakly_increasing():
    vals = [extremal_max(n, ["w3", "fano"], MatchMode.INDUCED)[0] for n in range(4, 9)]
    assert vals == sorted(vals)
    fan_vals = [extremal_max(n, ["fan"], MatchMode.SUBGRAPH)[0] for n in range(4, 9)]
    assert fan_vals == sorted(fan_vals)


def test_extremal_seed_floor():
    seed = make_system(6, [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6)])
    value, witness = extremal_max(6, ["w3", "fano"], MatchMode.INDUCED, seed=seed)
    assert value == 4 and witness == seed
    with pytest.raises(OutOfRange):
        extremal_max(6, ["w3"], MatchMode.INDUCED, seed=make_system(6, oracle.W3))


def test_iterators_match_counts():
    for n in (4, 5, 6):
        assert sum(1 for _ in iter_linear_systems(n)) == count_linear_systems(n)
        assert sum(1 for _ in iter_paving_lines(n)) == count_paving(n)


def test_worker_counts_are_identical():
    for workers in (1, 4):
        b = SearchBudget(workers=workers)
        assert count_linear_systems(7, "rs", b) == 1156
        assert count_paving(7, "free(mk4,w3)", b) == 1849
        v, w = rs_max(8, b)
        assert (v, w.edges) == (4, ((1, 2, 3), (1, 4, 5), (2, 6, 7), (4, 6, 8)))


def test_budget_node_limit():
    with pytest.raises(BudgetExceeded):
        count_linear_systems(7, "all", SearchBudget(node_limit=10))
    with pytest.raises(BudgetExceeded):
        count_sparse_paving(7, 3, SearchBudget(node_limit=10))
    with pytest.raises(BudgetExceeded):
        rs_max(8, SearchBudget(node_limit=10))


def test_budget_validation():
    with pytest.raises(OutOfRange):
        SearchBudget(time_limit=0)
    with pytest.raises(OutOfRange):
        SearchBudget(node_limit=-1)
    with pytest.raises(OutOfRange):
        SearchBudget(workers=0)


def test_documented_bounds_enforced():
    with pytest.raises(OutOfRange):
        count_linear_systems(10)
    with pytest.raises(OutOfRange):
        count_sparse_paving(10, 3)
    with pytest.raises(OutOfRange):
        rs_max(11)
    with pytest.raises(OutOfRange):
        extremal_max(13, ["fan"], MatchMode.SUBGRAPH)
    with pytest.raises(OutOfRange):
        count_paving(7, "free(fan)")


def test_parse_predicate():
    assert parse_predicate("all") == ("all", (), None)
    assert parse_predicate("induced-free(w3, fano)") == (
        "induced-free", ("fano", "w3"), MatchMode.INDUCED,
    )
    with pytest.raises(OutOfRange):
        parse_predicate("induced-free()")
    with pytest.raises(OutOfRange):
        parse_predicate("bogus")


def test_stirling2():
    assert stirling2(0, 0) == 1
    assert stirling2(4, 2) == 7
    assert stirling2(6, 3) == 90
    assert sum(stirling2(5, k) for k in range(6)) == 52  # Bell number


def test_workers_from_env(monkeypatch):
    monkeypatch.delenv("LINHYP_WORKERS", raising=False)
    assert workers_from_env() == 1
    monkeypatch.setenv("LINHYP_WORKERS", "4")
    assert workers_from_env() == 4
    monkeypatch.setenv("LINHYP_WORKERS", "zero")
    with pytest.raises(OutOfRange):
        workers_from_env()


def test_counts_table_round_trip(tmp_path):
    t = CountsTable()
    t.add(6, 3, "linear:all", 271, "exhaustive")
    t.add(6, 2, "sparse:all", 76, "stable-set-count")
    path = tmp_path / "t.jsonl"
    t.save(path)
    back = CountsTable.load(path)
    assert back.get(6, 3, "linear:all") == 271
    assert back.rows() == t.rows()
    with pytest.raises(MissingCount):
        back.get(9, 9, "nope")
    with pytest.raises(OutOfRange):
        back.add(6, 3, "linear:all", 272, "exhaustive")


def test_sparse_table_contents():
    t = sparse_table(5)
    assert t.get(5, 0, "sparse:all") == 1
    assert t.get(5, 5, "sparse:all") == 1
    assert t.get(5, 2, "sparse:all") == 26
    assert sparse_count(5, 0) == 1 and sparse_count(5, 2) == 26


def test_random_paving_lines_valid():
    rng = random.Random(3)
    for _ in range(100):
        p = random_paving_lines(7, rng)
        make_paving(p.n, p.lines)  # revalidates
