"""Naive reference implementations used as independent test oracles.

Everything here works on plain tuples and sets with no bitmasks, no
incremental counters and no pruning beyond definitionally-safe extension,
so it stays independent of the production kernels it arbitrates.
"""

import itertools

W3 = [(1, 2, 3), (3, 4, 5), (1, 5, 6)]
MK4 = [(1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6)]
FAN = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (3, 5, 7)]
FANO = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


def gen_linear_systems(n):
    """Every linear triple system on [n], as a list of tuples of triples."""
    cands = list(itertools.combinations(range(1, n + 1), 3))
    out = []

    def rec(start, chosen):
        out.append(tuple(chosen))
        for i in range(start, len(cands)):
            c = cands[i]
            if all(len(set(c) & set(e)) <= 1 for e in chosen):
                chosen.append(c)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def gen_paving(n):
    """Every paving line family on [n] (line sizes 3..n-1, pairwise <=1 common)."""
    cands = []
    for k in range(3, n):
        cands.extend(itertools.combinations(range(1, n + 1), k))
    cands.sort()
    out = []

    def rec(start, chosen):
        out.append(tuple(chosen))
        for i in range(start, len(cands)):
            c = cands[i]
            if all(len(set(c) & set(l)) <= 1 for l in chosen):
                chosen.append(c)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def is_rs_six_subset(n, edges):
    """The six-vertex formulation: min(6, n)-subsets span at most 2 edges."""
    k = min(6, n)
    for sub in itertools.combinations(range(1, n + 1), k):
        ss = set(sub)
        if sum(1 for e in edges if set(e) <= ss) > 2:
            return False
    return True


def contains_subgraph(n, edges, pat_n, pat_edges):
    """Permutation-based subgraph test."""
    edgeset = {tuple(sorted(e)) for e in edges}
    if pat_n > n:
        return False
    for img in itertools.permutations(range(1, n + 1), pat_n):
        phi = {i + 1: img[i] for i in range(pat_n)}
        if all(
            tuple(sorted((phi[a], phi[b], phi[c]))) in edgeset
            for a, b, c in pat_edges
        ):
            return True
    return False


def contains_induced(n, edges, pat_n, pat_edges):
    """Permutation-based induced-subgraph test."""
    edgeset = {tuple(sorted(e)) for e in edges}
    if pat_n > n:
        return False
    for img in itertools.combinations(range(1, n + 1), pat_n):
        ss = set(img)
        inside = {e for e in edgeset if set(e) <= ss}
        for perm in itertools.permutations(img):
            phi = {i + 1: perm[i] for i in range(pat_n)}
            mapped = {
                tuple(sorted((phi[a], phi[b], phi[c]))) for a, b, c in pat_edges
            }
            if mapped == inside:
                return True
    return False


def indwf(n, edges):
    """No induced 3-cycle, no induced Fano."""
    if contains_induced(n, edges, 6, W3):
        return False
    if n >= 7 and contains_induced(n, edges, 7, FANO):
        return False
    return True


def dependent_triples(lines):
    out = set()
    for line in lines:
        out.update(itertools.combinations(sorted(line), 3))
    return out


def has_restriction(n, lines, pat_triples):
    """Some 6-subset whose inside dependent triples map bijectively onto the
    pattern's."""
    dep = dependent_triples(lines)
    pat = {tuple(sorted(t)) for t in pat_triples}
    for sub in itertools.combinations(range(1, n + 1), 6):
        ss = set(sub)
        inside = {t for t in dep if set(t) <= ss}
        if len(inside) != len(pat):
            continue
        for perm in itertools.permutations(range(1, 7)):
            phi = {sub[i]: perm[i] for i in range(6)}
            mapped = {
                tuple(sorted((phi[a], phi[b], phi[c]))) for a, b, c in inside
            }
            if mapped == pat:
                return True
    return False


def xfree(n, lines):
    return not has_restriction(n, lines, W3) and not has_restriction(n, lines, MK4)


def count_stable_johnson(n, r):
    cands = list(itertools.combinations(range(1, n + 1), r))
    total = 0

    def rec(start, chosen):
        nonlocal total
        total += 1
        for i in range(start, len(cands)):
            c = cands[i]
            if all(len(set(c) & set(e)) <= r - 2 for e in chosen):
                chosen.append(c)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return total


def shadow_pairs(edges):
    out = set()
    for e in edges:
        out.update(itertools.combinations(sorted(e), 2))
    return out
