"""Exact enumeration, counting and extremal search on small ground sets.

Counting is labeled throughout: systems are counted as edge sets on the
fixed ground set [n], never up to isomorphism. The DFS visits candidate
edges in lexicographic order, extending only with larger candidates, so
every system appears exactly once; branch-and-bound pruning uses admissible
bounds only (remaining compatible candidates, free-pair capacity, vertex
degree slack), so maxima are exact.

The search tree can be split at a fixed depth into independent subtree tasks
executed by worker processes. Aggregation is order-independent (sums for
counts, deterministic max/lexicographic-min for witnesses), so results are
identical for every worker count. Workers do not share incumbent bounds:
that keeps witness selection reproducible. Budgets are enforced per task;
an exhausted budget raises BudgetExceeded and never degrades to an
approximate result.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Optional, Sequence

from . import _kernels
from ._kernels import py_backend
from ._kernels.prep import johnson_conflicts, prepare
from .errors import MissingCount, OutOfRange
from .hypergraph import Triple, TripleSystem, make_system
from .matroid3 import PavingLines, make_paving
from .patterns import MatchMode, is_free, resolve_patterns

# Documented bounds for the exact operations (hard errors above these).
MAX_COUNT_N = 9
MAX_SPARSE_N = 9
MAX_RS_MAX_N = 10
MAX_EXTREMAL_N = 12
# Generic predicates go through the matcher on every enumerated system.
MAX_FILTER_N = 8

WORKERS_ENV = "LINHYP_WORKERS"


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a search run; None means unlimited.

    Node budgets are enforced per subtree task and are deterministic; time
    budgets are wall-clock and best-effort. Exceeding either raises
    BudgetExceeded: partial results are never reported as counts.
    """

    time_limit: Optional[float] = None
    node_limit: Optional[int] = None
    workers: int = 1
    split_depth: int = 2

    def __post_init__(self):
        if self.time_limit is not None and self.time_limit <= 0:
            raise OutOfRange("time limit must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise OutOfRange("node limit must be positive")
        if self.workers < 1:
            raise OutOfRange("worker count must be at least 1")
        if self.split_depth < 1:
            raise OutOfRange("split depth must be at least 1")


def workers_from_env(default: int = 1) -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise OutOfRange(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise OutOfRange(f"{WORKERS_ENV} must be positive, got {value}")
    return value


_DEFAULT = SearchBudget()


def _deadline(budget: SearchBudget) -> float:
    return time.monotonic() + budget.time_limit if budget.time_limit else 0.0


def _limits(budget: SearchBudget) -> tuple[int, float]:
    return budget.node_limit or 0, _deadline(budget)


# --- predicates -------------------------------------------------------------

_REGISTERED = ("fan", "fano", "mk4", "w3")


def parse_predicate(text: str) -> tuple[str, tuple[str, ...], Optional[MatchMode]]:
    """Parse a predicate string into (kind, pattern names, mode).

    Grammar: "all" | "rs" | "subgraph-free(p,...)" | "induced-free(p,...)".
    Pattern names are canonicalized to sorted order.
    """
    text = text.strip()
    if text in ("all", "rs"):
        return text, (), None
    for kind, mode in (
        ("subgraph-free", MatchMode.SUBGRAPH),
        ("induced-free", MatchMode.INDUCED),
    ):
        if text.startswith(kind + "(") and text.endswith(")"):
            inner = text[len(kind) + 1 : -1]
            names = tuple(sorted(p.strip() for p in inner.split(",") if p.strip()))
            if not names:
                raise OutOfRange(f"predicate {text!r} names no patterns")
            for nm in names:
                if nm not in _REGISTERED:
                    raise OutOfRange(f"unknown pattern {nm!r} in predicate")
            return kind, names, mode
    raise OutOfRange(f"cannot parse predicate {text!r}")


def predicate_name(kind: str, names: Sequence[str] = ()) -> str:
    if kind in ("all", "rs"):
        return kind
    return f"{kind}({','.join(sorted(names))})"


# --- enumeration generators ---------------------------------------------------


def iter_linear_systems(n: int) -> Iterator[tuple[Triple, ...]]:
    """Yield the edge tuple of every linear system on [n] in DFS lex order."""
    space = prepare(n, "triples")
    cands = space.cands
    masks = [space.pair_lo[i] | (space.pair_hi[i] << 64) for i in range(space.m)]
    chosen: list[int] = []

    def rec(start: int, used: int):
        yield tuple(cands[i] for i in chosen)
        for i in range(start, space.m):
            if masks[i] & used:
                continue
            chosen.append(i)
            yield from rec(i + 1, used | masks[i])
            chosen.pop()

    yield from rec(0, 0)


def iter_paving_lines(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield the line tuple of every paving structure on [n] in DFS lex order."""
    space = prepare(n, "lines")
    cands = space.cands
    masks = [space.pair_lo[i] | (space.pair_hi[i] << 64) for i in range(space.m)]
    chosen: list[int] = []

    def rec(start: int, used: int):
        yield tuple(cands[i] for i in chosen)
        for i in range(start, space.m):
            if masks[i] & used:
                continue
            chosen.append(i)
            yield from rec(i + 1, used | masks[i])
            chosen.pop()

    yield from rec(0, 0)


# --- parallel kernel plumbing -------------------------------------------------


def _count_task(arg):
    n, kind, mode, prefix, start, node_limit, deadline = arg
    space = prepare(n, kind)
    cnt, _ = _kernels.backend.count_systems(
        space, mode, prefix, start, node_limit, deadline
    )
    return cnt


def _max_task(arg):
    n, mode, prefix, start, node_limit, deadline, initial_best = arg
    space = prepare(n, "triples")
    best, wit, _ = _kernels.backend.max_systems(
        space, mode, prefix, start, node_limit, deadline, initial_best
    )
    return best, wit


def _pool_map(fn, args, workers):
    chunk = max(1, len(args) // (workers * 8) or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args, chunksize=chunk))


def _kernel_count(n: int, kind: str, mode: int, budget: SearchBudget) -> int:
    space = prepare(n, kind)
    node_limit, deadline = _limits(budget)
    if budget.workers <= 1 or space.m < 4:
        cnt, _ = _kernels.backend.count_systems(
            space, mode, (), 0, node_limit, deadline
        )
        return cnt
    shallow, tasks = py_backend.collect_tasks(space, mode, budget.split_depth)
    if not tasks:
        return shallow
    args = [
        (n, kind, mode, prefix, start, node_limit, deadline)
        for prefix, start in tasks
    ]
    return shallow + sum(_pool_map(_count_task, args, budget.workers))


def _kernel_max(
    n: int, mode: int, budget: SearchBudget, initial_best: int = -1
) -> tuple[int, Optional[tuple[int, ...]]]:
    space = prepare(n, "triples")
    node_limit, deadline = _limits(budget)
    if budget.workers <= 1 or space.m < 4:
        best, wit, _ = _kernels.backend.max_systems(
            space, mode, (), 0, node_limit, deadline, initial_best
        )
        return best, wit
    shallow_best, shallow_wit, tasks = py_backend.collect_tasks_max(
        space, mode, budget.split_depth
    )
    if not tasks:
        return shallow_best, shallow_wit
    args = [
        (n, mode, prefix, start, node_limit, deadline, initial_best)
        for prefix, start in tasks
    ]
    results = _pool_map(_max_task, args, budget.workers)
    results.append((shallow_best, shallow_wit))
    best = max(b for b, _ in results)
    if best < 0:
        return -1, None
    witness = min(w for b, w in results if b == best and w is not None)
    return best, witness


# --- counting operations ------------------------------------------------------


def count_linear_systems(
    n: int, predicate: str = "all", budget: Optional[SearchBudget] = None
) -> int:
    """Exact number of labeled linear triple systems on [n] with the predicate.

    Fast kernels cover "all", "rs", any subgraph-free set containing w3, the
    induced-free pair {w3, mk4} (equivalent to rs) and the induced-free pair
    {w3, fano}; other predicates filter every enumerated system through the
    matcher (documented bound n <= 8).
    """
    budget = budget or _DEFAULT
    if not 0 <= n <= MAX_COUNT_N:
        raise OutOfRange(f"count_linear_systems supports 0 <= n <= {MAX_COUNT_N}")
    kind, names, mode = parse_predicate(predicate)
    if kind == "all":
        return _kernel_count(n, "triples", py_backend.MODE_ALL, budget)
    if kind == "rs":
        return _kernel_count(n, "triples", py_backend.MODE_CAP, budget)
    if kind == "subgraph-free" and "w3" in names:
        # every registered pattern contains the linear 3-cycle as a subgraph,
        # so w3-freeness subsumes the rest of the set
        return _kernel_count(n, "triples", py_backend.MODE_CAP, budget)
    if kind == "induced-free" and names == ("mk4", "w3"):
        # six points spanning >= 3 edges force one of these two up to labels
        return _kernel_count(n, "triples", py_backend.MODE_CAP, budget)
    if kind == "induced-free" and names == ("fano", "w3"):
        return _kernel_count(n, "triples", py_backend.MODE_INDWF, budget)
    return _count_by_filter(n, names, mode, budget)


def _count_by_filter(n, names, mode, budget):
    if n > MAX_FILTER_N:
        raise OutOfRange(
            f"generic predicate counting supports n <= {MAX_FILTER_N}"
        )
    pats = resolve_patterns(names)
    count = 0
    for edges in iter_linear_systems(n):
        if is_free(TripleSystem(n, edges), pats, mode):
            count += 1
    return count


def count_f(n: int, budget: Optional[SearchBudget] = None) -> int:
    """Linear systems on [n] with no induced 3-cycle and no induced Fano plane."""
    return count_linear_systems(n, "induced-free(fano,w3)", budget)


def count_paving(
    n: int, predicate: str = "all", budget: Optional[SearchBudget] = None
) -> int:
    """Exact number of labeled paving line sets on [n] with the predicate.

    Predicates: "all", or "free(mk4,w3)" meaning no 6-point restriction
    isomorphic to the 3-cycle or the K4 triangle family.
    """
    budget = budget or _DEFAULT
    if not 3 <= n <= MAX_COUNT_N:
        raise OutOfRange(f"count_paving supports 3 <= n <= {MAX_COUNT_N}")
    text = predicate.strip()
    if text == "all":
        return _kernel_count(n, "lines", py_backend.MODE_ALL, budget)
    if text in ("free(mk4,w3)", "free(w3,mk4)"):
        return _kernel_count(n, "lines", py_backend.MODE_CAP, budget)
    raise OutOfRange(f"unsupported paving predicate {predicate!r}")


PAVING_FREE_PREDICATE = "free(mk4,w3)"


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Partitions of an n-set into k nonempty unordered blocks (exact)."""
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def count_rank3(
    n: int, predicate: str = "all", budget: Optional[SearchBudget] = None
) -> int:
    """Labeled rank-3 matroids on [n] with the predicate, by composition.

    A rank-3 matroid is a loop set, an unordered partition of the rest into
    k >= 3 parallel classes, and a paving structure on the k class labels
    (taken in min-element order), so the count composes as
    sum_j C(n,j) sum_k S2(n-j,k) * paving_count(k). The decomposition's
    injectivity is validated against a deduplicating oracle in the tests.
    """
    if not 0 <= n <= MAX_COUNT_N:
        raise OutOfRange(f"count_rank3 supports 0 <= n <= {MAX_COUNT_N}")
    text = predicate.strip()
    if text not in ("all", "free(mk4,w3)", "free(w3,mk4)"):
        raise OutOfRange(f"unsupported rank-3 predicate {predicate!r}")
    paving = {
        k: count_paving(k, "all" if text == "all" else PAVING_FREE_PREDICATE, budget)
        for k in range(3, n + 1)
    }
    total = 0
    for j in range(0, n + 1):
        rest = n - j
        for k in range(3, rest + 1):
            total += comb(n, j) * stirling2(rest, k) * paving[k]
    return total


def count_sparse_paving(
    n: int, r: int, budget: Optional[SearchBudget] = None
) -> int:
    """Stable sets (the empty one included) in the Johnson graph J(n, r)."""
    budget = budget or _DEFAULT
    if not 1 <= r <= n - 1:
        raise OutOfRange(f"need 1 <= r <= n-1, got r={r}, n={n}")
    if n > MAX_SPARSE_N:
        raise OutOfRange(f"count_sparse_paving supports n <= {MAX_SPARSE_N}")
    masks = johnson_conflicts(n, r)
    backend = _kernels.backend
    if len(masks) > 128:
        backend = py_backend
    node_limit, deadline = _limits(budget)
    cnt, _ = backend.count_stable_sets(masks, node_limit, deadline)
    return cnt


def sparse_count(n: int, r: int, budget: Optional[SearchBudget] = None) -> int:
    """Sparse paving matroid count by rank, with the trivial ranks included.

    Ranks 0 and n each contribute exactly one matroid (the loop matroid's
    nonbasis set must stay empty for bases to exist, likewise the free one).
    """
    if r in (0, n):
        return 1
    return count_sparse_paving(n, r, budget)


# --- extremal searches ----------------------------------------------------------


def _witness_system(n: int, witness: tuple[int, ...]) -> TripleSystem:
    space = prepare(n, "triples")
    return make_system(n, [space.cands[i] for i in witness])


def rs_max(
    n: int, budget: Optional[SearchBudget] = None
) -> tuple[int, TripleSystem]:
    """Maximum edges over systems where any six vertices span at most two
    edges, with the lexicographically least optimal witness."""
    budget = budget or _DEFAULT
    if not 1 <= n <= MAX_RS_MAX_N:
        raise OutOfRange(f"rs_max supports 1 <= n <= {MAX_RS_MAX_N}")
    best, wit = _kernel_max(n, py_backend.MAX_CAP, budget)
    system = _witness_system(n, wit or ())
    _replay_extremal(system, ("mk4", "w3"), MatchMode.INDUCED, best)
    return best, system


def extremal_max(
    n: int,
    patterns: Sequence[str],
    mode: MatchMode,
    budget: Optional[SearchBudget] = None,
    seed: Optional[TripleSystem] = None,
) -> tuple[int, TripleSystem]:
    """Maximum edges over linear systems avoiding the patterns in the mode.

    Fast branch-and-bound paths exist for subgraph sets containing w3, the
    subgraph set {fan}, the induced set {mk4, w3} and the induced set
    {fano, w3}; the last one searches the fan-free tree, which is complete
    because a system with no induced 3-cycle and no induced Fano cannot
    contain a fan (the forced-completion argument; verified exhaustively on
    7 points in the acceptance suite). Other pattern sets enumerate every
    linear system and filter through the matcher (bound n <= 7).

    ``seed`` is an optional certificate: a system that already avoids the
    patterns. Its size becomes a pruning floor, and it is returned as the
    witness whenever the search finds nothing strictly better. Without a
    seed the witness is the lexicographically least optimum.

    The witness is re-verified through the matcher before returning.
    """
    budget = budget or _DEFAULT
    if not 1 <= n <= MAX_EXTREMAL_N:
        raise OutOfRange(f"extremal_max supports 1 <= n <= {MAX_EXTREMAL_N}")
    names = tuple(sorted(patterns))
    if not names:
        raise OutOfRange("extremal_max needs at least one pattern")
    for nm in names:
        if nm not in _REGISTERED:
            raise OutOfRange(f"unknown pattern {nm!r}")

    floor = -1
    if seed is not None:
        if seed.n != n:
            raise OutOfRange(f"seed lives on {seed.n} points, search on {n}")
        if not is_free(seed, resolve_patterns(names), mode):
            raise OutOfRange("seed fails the requested pattern-freeness")
        floor = len(seed.edges)

    kernel_mode = None
    if mode is MatchMode.SUBGRAPH and "w3" in names:
        kernel_mode = py_backend.MAX_CAP
    elif mode is MatchMode.SUBGRAPH and names == ("fan",):
        kernel_mode = py_backend.MAX_FANFREE
    elif mode is MatchMode.INDUCED and names == ("mk4", "w3"):
        kernel_mode = py_backend.MAX_CAP
    elif mode is MatchMode.INDUCED and names == ("fano", "w3"):
        kernel_mode = py_backend.MAX_FANFREE_INDWF

    if kernel_mode is not None:
        best, wit = _kernel_max(n, kernel_mode, budget, floor)
        if best > floor and wit is not None:
            system = _witness_system(n, wit)
        else:
            best, system = floor, seed  # type: ignore[assignment]
    else:
        if n > 7:
            raise OutOfRange("generic extremal search supports n <= 7")
        pats = resolve_patterns(names)
        best, wit_edges = -1, ()
        for edges in iter_linear_systems(n):
            if len(edges) > best and is_free(TripleSystem(n, edges), pats, mode):
                best, wit_edges = len(edges), edges
        if seed is not None and best <= floor:
            best, system = floor, seed
        else:
            system = make_system(n, wit_edges)
    _replay_extremal(system, names, mode, best)
    return best, system


def _replay_extremal(system, names, mode, claimed):
    if len(system.edges) != claimed:
        raise RuntimeError("witness does not match the claimed optimum")
    if not is_free(system, resolve_patterns(names), mode):
        raise RuntimeError("witness fails pattern-freeness replay")


# --- random instances (deterministic given the generator state) -----------------


def random_linear_system(n: int, rng: random.Random) -> TripleSystem:
    """A random linear system: random target size, randomized greedy fill."""
    cands = list(itertools.combinations(range(1, n + 1), 3))
    rng.shuffle(cands)
    target = rng.randint(0, n * (n - 1) // 6)
    chosen: list[Triple] = []
    used_pairs: set[tuple[int, int]] = set()
    for c in cands:
        if len(chosen) >= target:
            break
        pairs = [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])]
        if any(p in used_pairs for p in pairs):
            continue
        chosen.append(c)
        used_pairs.update(pairs)
    return make_system(n, chosen)


def random_paving_lines(n: int, rng: random.Random) -> PavingLines:
    """A random paving line set, mixing line sizes."""
    cands: list[tuple[int, ...]] = []
    for size in range(3, n):
        cands.extend(itertools.combinations(range(1, n + 1), size))
    rng.shuffle(cands)
    target = rng.randint(0, max(1, n * (n - 1) // 6))
    chosen: list[tuple[int, ...]] = []
    used_pairs: set[tuple[int, int]] = set()
    for c in cands:
        if len(chosen) >= target:
            break
        pairs = list(itertools.combinations(c, 2))
        if any(p in used_pairs for p in pairs):
            continue
        chosen.append(c)
        used_pairs.update(pairs)
    return make_paving(n, chosen)


# --- the counts table ------------------------------------------------------------

PROVENANCES = ("exhaustive", "composed", "stable-set-count", "search", "trivial")


@dataclass(frozen=True)
class CountEntry:
    n: int
    r: int
    predicate: str
    value: int
    provenance: str


class CountsTable:
    """Exact counts keyed by (n, r, predicate), each with a provenance note.

    Append-only discipline: re-adding a key with the same value is a no-op,
    a different value is an error.
    """

    def __init__(self):
        self._rows: dict[tuple[int, int, str], CountEntry] = {}

    def add(self, n: int, r: int, predicate: str, value: int, provenance: str):
        if provenance not in PROVENANCES:
            raise OutOfRange(f"unknown provenance {provenance!r}")
        if value < 0:
            raise OutOfRange("counts are nonnegative")
        key = (n, r, predicate)
        old = self._rows.get(key)
        if old is not None and old.value != value:
            raise OutOfRange(
                f"conflicting values for {key}: {old.value} vs {value}"
            )
        self._rows[key] = CountEntry(n, r, predicate, value, provenance)

    def get(self, n: int, r: int, predicate: str) -> int:
        try:
            return self._rows[(n, r, predicate)].value
        except KeyError:
            raise MissingCount(f"no entry for (n={n}, r={r}, {predicate!r})") from None

    def has(self, n: int, r: int, predicate: str) -> bool:
        return (n, r, predicate) in self._rows

    def rows(self) -> list[CountEntry]:
        return [self._rows[k] for k in sorted(self._rows)]

    def save(self, path, append: bool = True) -> None:
        mode = "a" if append else "w"
        with open(path, mode, encoding="ascii") as fh:
            for row in self.rows():
                fh.write(
                    json.dumps(
                        {
                            "n": row.n,
                            "r": row.r,
                            "predicate": row.predicate,
                            "value": row.value,
                            "provenance": row.provenance,
                        },
                        sort_keys=True,
                    )
                    + "\n"
                )

    @classmethod
    def load(cls, path) -> "CountsTable":
        table = cls()
        with open(path, "r", encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                table.add(
                    rec["n"], rec["r"], rec["predicate"], rec["value"], rec["provenance"]
                )
        return table


def sparse_table(
    nmax: int, budget: Optional[SearchBudget] = None, table: Optional[CountsTable] = None
) -> CountsTable:
    """Fill a table with sparse counts for all ranks 0..n, n <= nmax."""
    table = table or CountsTable()
    for n in range(0, nmax + 1):
        for r in range(0, n + 1):
            if table.has(n, r, "sparse:all"):
                continue
            if r in (0, n):
                table.add(n, r, "sparse:all", 1, "trivial")
            else:
                table.add(
                    n, r, "sparse:all", count_sparse_paving(n, r, budget),
                    "stable-set-count",
                )
    return table
