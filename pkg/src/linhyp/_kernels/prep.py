"""Flat search-space tables shared by the compiled and pure-Python kernels.

Candidates are either all triples on [n] or all admissible lines (sizes 3
to n-1), in lexicographic tuple order. Compatibility of a candidate with a
partial system is a pair-disjointness test: a system is linear exactly when
no vertex pair is covered twice, and the same holds for line families, so
one bitmask of used pairs drives the whole DFS.

Per-candidate lists record which 6-subsets a candidate traces in exactly 3
points (t3) or 4+ points (t4), and which 7-subsets contain it outright (s7);
the kernels keep running counters over these to evaluate span predicates in
O(updates) per step.
"""

from __future__ import annotations

import itertools
from array import array
from functools import lru_cache


def pair_index(n: int, u: int, v: int) -> int:
    """0-based index of the pair {u, v} (1 <= u < v <= n) in lex order."""
    if u > v:
        u, v = v, u
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


class SearchSpace:
    """Immutable after construction; safe to share across workers."""

    def __init__(self, n: int, kind: str):
        if kind not in ("triples", "lines"):
            raise ValueError(f"unknown candidate kind {kind!r}")
        self.n = n
        self.kind = kind
        self.dmax = (n - 1) // 2
        self.num_pairs = n * (n - 1) // 2

        if kind == "triples":
            cands = list(itertools.combinations(range(1, n + 1), 3))
        else:
            cands = []
            for size in range(3, n):
                cands.extend(itertools.combinations(range(1, n + 1), size))
            cands.sort()
        self.cands = tuple(cands)
        self.m = len(cands)

        pair_lo = array("Q")
        pair_hi = array("Q")
        vmask = array("Q")
        for c in cands:
            pm = 0
            for a, b in itertools.combinations(c, 2):
                pm |= 1 << pair_index(n, a, b)
            pair_lo.append(pm & 0xFFFFFFFFFFFFFFFF)
            pair_hi.append(pm >> 64)
            vm = 0
            for v in c:
                vm |= 1 << (v - 1)
            vmask.append(vm)
        self.pair_lo = pair_lo
        self.pair_hi = pair_hi
        self.vmask = vmask

        sixes = list(itertools.combinations(range(1, n + 1), 6))
        self.num_six = len(sixes)
        six_sets = [frozenset(s) for s in sixes]

        t3_off = array("i", [0])
        t3_idx = array("i")
        t4_off = array("i", [0])
        t4_idx = array("i")
        for c in cands:
            cs = set(c)
            for si, s in enumerate(six_sets):
                k = len(cs & s)
                if k == 3:
                    t3_idx.append(si)
                elif k >= 4:
                    t4_idx.append(si)
            t3_off.append(len(t3_idx))
            t4_off.append(len(t4_idx))
        self.t3_off, self.t3_idx = t3_off, t3_idx
        self.t4_off, self.t4_idx = t4_off, t4_idx

        s7_off = array("i", [0])
        s7_idx = array("i")
        if kind == "triples" and n >= 7:
            sevens = [frozenset(s) for s in itertools.combinations(range(1, n + 1), 7)]
            self.num_seven = len(sevens)
            for c in cands:
                cs = set(c)
                for si, s in enumerate(sevens):
                    if cs <= s:
                        s7_idx.append(si)
                s7_off.append(len(s7_idx))
        else:
            self.num_seven = 0
            for _ in cands:
                s7_off.append(0)
        self.s7_off, self.s7_idx = s7_off, s7_idx


@lru_cache(maxsize=32)
def prepare(n: int, kind: str) -> SearchSpace:
    return SearchSpace(n, kind)


def johnson_conflicts(n: int, r: int) -> list[int]:
    """Neighbor bitmasks of the Johnson graph J(n, r) over lex-ordered r-subsets."""
    cands = list(itertools.combinations(range(1, n + 1), r))
    sets = [set(c) for c in cands]
    masks = [0] * len(cands)
    for i, j in itertools.combinations(range(len(cands)), 2):
        if len(sets[i] & sets[j]) == r - 1:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return masks
