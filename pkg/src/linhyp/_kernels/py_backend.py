"""Pure-Python search kernels; same contracts as the compiled backend.

Masks are plain integers so there is no width limit here. The compiled
backend mirrors this module exactly; agreement between the two is pinned by
tests, and the naive reference enumerations in the test suite arbitrate.
"""

from __future__ import annotations

import time

from ..errors import BudgetExceeded

NAME = "py"

# counting modes
MODE_ALL = 0
MODE_CAP = 1  # prune once some 6-set has >=3 three-point traces and no 4+ trace
MODE_INDWF = 2  # count nodes with no 6-set spanning exactly 3 and no full 7-set

# max-search modes
MAX_CAP = 0
MAX_FANFREE = 1
MAX_FANFREE_INDWF = 2

_CHECK_EVERY = 8192


class _Budget:
    __slots__ = ("node_limit", "deadline", "nodes")

    def __init__(self, node_limit, deadline):
        self.node_limit = node_limit or 0
        self.deadline = deadline or 0.0
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise BudgetExceeded(f"node limit {self.node_limit} exhausted")
        if self.deadline and self.nodes % _CHECK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("time budget exhausted")


def _pair_mask(space, i):
    return space.pair_lo[i] | (space.pair_hi[i] << 64)


def _apply_prefix(space, prefix, cnt3, cnt4, cnt7):
    used = 0
    for i in prefix:
        pm = _pair_mask(space, i)
        if pm & used:
            raise ValueError("prefix is not pair-compatible")
        used |= pm
        for k in range(space.t3_off[i], space.t3_off[i + 1]):
            cnt3[space.t3_idx[k]] += 1
        for k in range(space.t4_off[i], space.t4_off[i + 1]):
            cnt4[space.t4_idx[k]] += 1
        for k in range(space.s7_off[i], space.s7_off[i + 1]):
            cnt7[space.s7_idx[k]] += 1
    return used


def count_systems(space, mode, prefix=(), start=0, node_limit=0, deadline=0.0):
    """Count systems in the DFS subtree rooted at ``prefix``.

    Returns (count, nodes visited). The subtree includes the prefix node
    itself; extensions use candidates with index >= start.
    """
    cnt3 = [0] * space.num_six
    cnt4 = [0] * space.num_six
    cnt7 = [0] * space.num_seven
    used = _apply_prefix(space, prefix, cnt3, cnt4, cnt7)

    t3o, t3i = space.t3_off, space.t3_idx
    t4o, t4i = space.t4_off, space.t4_idx
    s7o, s7i = space.s7_off, space.s7_idx
    pair_lo, pair_hi = space.pair_lo, space.pair_hi
    m = space.m
    budget = _Budget(node_limit, deadline)

    bad6 = 0
    bad7 = 0
    if mode == MODE_INDWF:
        bad6 = sum(1 for s in range(space.num_six) if cnt3[s] == 3)
        bad7 = sum(1 for s in range(space.num_seven) if cnt7[s] == 7)

    count = 0

    def rec(i0, used):
        nonlocal count, bad6, bad7
        budget.tick()
        if mode == MODE_INDWF:
            if bad6 == 0 and bad7 == 0:
                count += 1
        else:
            count += 1
        for i in range(i0, m):
            pm = pair_lo[i] | (pair_hi[i] << 64)
            if pm & used:
                continue
            if mode == MODE_CAP:
                ok = True
                for k in range(t4o[i], t4o[i + 1]):
                    cnt4[t4i[k]] += 1
                for k in range(t3o[i], t3o[i + 1]):
                    s = t3i[k]
                    cnt3[s] += 1
                    if cnt4[s] == 0 and cnt3[s] >= 3:
                        ok = False
                if ok:
                    rec(i + 1, used | pm)
                for k in range(t3o[i], t3o[i + 1]):
                    cnt3[t3i[k]] -= 1
                for k in range(t4o[i], t4o[i + 1]):
                    cnt4[t4i[k]] -= 1
            elif mode == MODE_INDWF:
                for k in range(t3o[i], t3o[i + 1]):
                    s = t3i[k]
                    if cnt3[s] == 3:
                        bad6 -= 1
                    cnt3[s] += 1
                    if cnt3[s] == 3:
                        bad6 += 1
                for k in range(s7o[i], s7o[i + 1]):
                    s = s7i[k]
                    cnt7[s] += 1
                    if cnt7[s] == 7:
                        bad7 += 1
                # a full 7-set keeps spanning 7 edges in every descendant,
                # so nothing below such a node can pass the filter
                if bad7 == 0:
                    rec(i + 1, used | pm)
                for k in range(s7o[i], s7o[i + 1]):
                    s = s7i[k]
                    if cnt7[s] == 7:
                        bad7 -= 1
                    cnt7[s] -= 1
                for k in range(t3o[i], t3o[i + 1]):
                    s = t3i[k]
                    if cnt3[s] == 3:
                        bad6 -= 1
                    cnt3[s] -= 1
                    if cnt3[s] == 3:
                        bad6 += 1
            else:
                rec(i + 1, used | pm)

    rec(start, used)
    return count, budget.nodes


def _creates_fan(space, chosen, cov, i):
    """Would adding candidate i complete a 3-fan with chosen edges?

    Case 1: i is the transversal; some apex off i reaches all three of its
    vertices through covered pairs (the three edges are distinct and the
    seven vertices distinct automatically, by linearity).
    Case 2: i is an arm through apex v; two more chosen edges pass through v
    and some chosen edge missing v meets all three arms.
    """
    from .prep import pair_index

    n = space.n
    a, b, c = space.cands[i]
    for v in range(1, n + 1):
        if v == a or v == b or v == c:
            continue
        if (
            cov[pair_index(n, v, a)] >= 0
            and cov[pair_index(n, v, b)] >= 0
            and cov[pair_index(n, v, c)] >= 0
        ):
            return True
    vm_t = space.vmask[i]
    for v in (a, b, c):
        vb = 1 << (v - 1)
        through = [j for j in chosen if space.vmask[j] & vb]
        if len(through) < 2:
            continue
        others = [j for j in chosen if not space.vmask[j] & vb]
        if not others:
            continue
        for x in range(len(through)):
            e2 = space.vmask[through[x]]
            for y in range(x + 1, len(through)):
                e3 = space.vmask[through[y]]
                for w in others:
                    wm = space.vmask[w]
                    if wm & vm_t and wm & e2 and wm & e3:
                        return True
    return False


def max_systems(space, mode, prefix=(), start=0, node_limit=0, deadline=0.0,
                initial_best=-1):
    """Branch-and-bound maximum edges over the subtree rooted at ``prefix``.

    Returns (best, witness, nodes): the maximum over eligible nodes of the
    subtree and its lexicographically least witness (as candidate indices),
    or (-1, None, nodes) when no node of the subtree is eligible.

    ``initial_best`` is a pruning floor: subtrees that cannot beat it are
    cut, so witnesses at or below the floor may be missed. Callers pass a
    verified certificate's size here and keep the certificate as the answer
    when nothing better is returned.
    """
    cnt3 = [0] * space.num_six
    cnt4 = [0] * space.num_six
    cnt7 = [0] * space.num_seven
    used = _apply_prefix(space, prefix, cnt3, cnt4, cnt7)
    cov = [-1] * space.num_pairs
    chosen = list(prefix)
    for pos, i in enumerate(prefix):
        pm = _pair_mask(space, i)
        k = 0
        while pm:
            if pm & 1:
                cov[k] = 1  # any nonnegative marker: position not needed
            pm >>= 1
            k += 1

    bad6 = sum(1 for s in range(space.num_six) if cnt3[s] == 3)
    bad7 = sum(1 for s in range(space.num_seven) if cnt7[s] == 7)

    t3o, t3i = space.t3_off, space.t3_idx
    t4o, t4i = space.t4_off, space.t4_idx
    s7o, s7i = space.s7_off, space.s7_idx
    pair_lo, pair_hi = space.pair_lo, space.pair_hi
    m, n, dmax = space.m, space.n, space.dmax
    num_pairs = space.num_pairs
    budget = _Budget(node_limit, deadline)

    best = -1
    best_wit = None

    def eligible():
        if mode == MAX_FANFREE_INDWF:
            return bad6 == 0 and bad7 == 0
        return True

    def rec(i0, used):
        nonlocal best, best_wit, bad6, bad7
        budget.tick()
        if eligible() and len(chosen) > best:
            best = len(chosen)
            best_wit = tuple(chosen)
        comp = []
        for i in range(i0, m):
            if not (pair_lo[i] | (pair_hi[i] << 64)) & used:
                comp.append(i)
        free_pairs = num_pairs - used.bit_count()
        cur = len(chosen)
        ub = cur + min(len(comp), free_pairs // 3, (n * dmax - 3 * cur) // 3)
        if ub <= max(best, initial_best):
            return
        for i in comp:
            pm = pair_lo[i] | (pair_hi[i] << 64)
            if mode == MAX_CAP:
                ok = True
                for k in range(t4o[i], t4o[i + 1]):
                    cnt4[t4i[k]] += 1
                for k in range(t3o[i], t3o[i + 1]):
                    s = t3i[k]
                    cnt3[s] += 1
                    if cnt4[s] == 0 and cnt3[s] >= 3:
                        ok = False
                if ok:
                    chosen.append(i)
                    rec(i + 1, used | pm)
                    chosen.pop()
                for k in range(t3o[i], t3o[i + 1]):
                    cnt3[t3i[k]] -= 1
                for k in range(t4o[i], t4o[i + 1]):
                    cnt4[t4i[k]] -= 1
            else:
                if _creates_fan(space, chosen, cov, i):
                    continue
                if mode == MAX_FANFREE_INDWF:
                    for k in range(t3o[i], t3o[i + 1]):
                        s = t3i[k]
                        if cnt3[s] == 3:
                            bad6 -= 1
                        cnt3[s] += 1
                        if cnt3[s] == 3:
                            bad6 += 1
                    for k in range(s7o[i], s7o[i + 1]):
                        s = s7i[k]
                        cnt7[s] += 1
                        if cnt7[s] == 7:
                            bad7 += 1
                recurse = mode != MAX_FANFREE_INDWF or bad7 == 0
                if recurse:
                    pmm = pm
                    kk = 0
                    while pmm:
                        if pmm & 1:
                            cov[kk] = 1
                        pmm >>= 1
                        kk += 1
                    chosen.append(i)
                    rec(i + 1, used | pm)
                    chosen.pop()
                    pmm = pm
                    kk = 0
                    while pmm:
                        if pmm & 1:
                            cov[kk] = -1
                        pmm >>= 1
                        kk += 1
                if mode == MAX_FANFREE_INDWF:
                    for k in range(s7o[i], s7o[i + 1]):
                        s = s7i[k]
                        if cnt7[s] == 7:
                            bad7 -= 1
                        cnt7[s] -= 1
                    for k in range(t3o[i], t3o[i + 1]):
                        s = t3i[k]
                        if cnt3[s] == 3:
                            bad6 -= 1
                        cnt3[s] -= 1
                        if cnt3[s] == 3:
                            bad6 += 1

    rec(start, used)
    return best, best_wit, budget.nodes


def count_stable_sets(neigh, node_limit=0, deadline=0.0):
    """Count stable sets (the empty one included) in a conflict graph.

    ``neigh`` maps candidate index to the bitmask of its neighbors.
    """
    m = len(neigh)
    budget = _Budget(node_limit, deadline)

    def rec(i, banned):
        budget.tick()
        total = 1
        for j in range(i, m):
            if not (banned >> j) & 1:
                total += rec(j + 1, banned | neigh[j])
        return total

    return rec(0, 0), budget.nodes


def collect_tasks(space, mode, depth):
    """Valid DFS nodes at exactly ``depth`` plus the shallow aggregate.

    Returns (shallow_count, tasks): shallow_count counts predicate-passing
    nodes strictly above the split depth, tasks are (prefix, start) pairs in
    lexicographic order. Expansion mirrors count_systems exactly.
    """
    cnt3 = [0] * space.num_six
    cnt4 = [0] * space.num_six
    cnt7 = [0] * space.num_seven
    bad = [0, 0]  # bad6, bad7
    shallow = 0
    tasks = []
    chosen = []

    def node_passes():
        if mode == MODE_INDWF:
            return bad[0] == 0 and bad[1] == 0
        return True

    def rec(i0, used):
        nonlocal shallow
        if len(chosen) == depth:
            tasks.append((tuple(chosen), i0))
            return
        if node_passes():
            shallow += 1
        for i in range(i0, space.m):
            pm = _pair_mask(space, i)
            if pm & used:
                continue
            ok = True
            for k in range(space.t4_off[i], space.t4_off[i + 1]):
                cnt4[space.t4_idx[k]] += 1
            for k in range(space.t3_off[i], space.t3_off[i + 1]):
                s = space.t3_idx[k]
                if cnt3[s] == 3:
                    bad[0] -= 1
                cnt3[s] += 1
                if cnt3[s] == 3:
                    bad[0] += 1
                if mode == MODE_CAP and cnt4[s] == 0 and cnt3[s] >= 3:
                    ok = False
            for k in range(space.s7_off[i], space.s7_off[i + 1]):
                s = space.s7_idx[k]
                cnt7[s] += 1
                if cnt7[s] == 7:
                    bad[1] += 1
            if mode == MODE_CAP:
                expand = ok
            elif mode == MODE_INDWF:
                expand = bad[1] == 0
            else:
                expand = True
            if expand:
                chosen.append(i)
                rec(i + 1, used | pm)
                chosen.pop()
            for k in range(space.s7_off[i], space.s7_off[i + 1]):
                s = space.s7_idx[k]
                if cnt7[s] == 7:
                    bad[1] -= 1
                cnt7[s] -= 1
            for k in range(space.t3_off[i], space.t3_off[i + 1]):
                s = space.t3_idx[k]
                if cnt3[s] == 3:
                    bad[0] -= 1
                cnt3[s] -= 1
                if cnt3[s] == 3:
                    bad[0] += 1
            for k in range(space.t4_off[i], space.t4_off[i + 1]):
                cnt4[space.t4_idx[k]] -= 1

    rec(0, 0)
    return shallow, tasks


def collect_tasks_max(space, mode, depth):
    """Split points for the branch-and-bound search.

    Returns (best_shallow, wit_shallow, tasks). Shallow nodes (depth above
    the split) are folded into a best/witness pair here; tasks are (prefix,
    start) in lexicographic order. No bound pruning happens at this level,
    so the task list is independent of search results.
    """
    cnt3 = [0] * space.num_six
    cnt4 = [0] * space.num_six
    cnt7 = [0] * space.num_seven
    bad = [0, 0]
    cov = [-1] * space.num_pairs
    chosen = []
    best = [-1, None]
    tasks = []

    def eligible():
        if mode == MAX_FANFREE_INDWF:
            return bad[0] == 0 and bad[1] == 0
        return True

    def rec(i0, used):
        if len(chosen) == depth:
            tasks.append((tuple(chosen), i0))
            return
        if eligible() and len(chosen) > best[0]:
            best[0] = len(chosen)
            best[1] = tuple(chosen)
        for i in range(i0, space.m):
            pm = _pair_mask(space, i)
            if pm & used:
                continue
            if mode == MAX_CAP:
                ok = True
                for k in range(space.t4_off[i], space.t4_off[i + 1]):
                    cnt4[space.t4_idx[k]] += 1
                for k in range(space.t3_off[i], space.t3_off[i + 1]):
                    s = space.t3_idx[k]
                    cnt3[s] += 1
                    if cnt4[s] == 0 and cnt3[s] >= 3:
                        ok = False
                if ok:
                    chosen.append(i)
                    rec(i + 1, used | pm)
                    chosen.pop()
                for k in range(space.t3_off[i], space.t3_off[i + 1]):
                    cnt3[space.t3_idx[k]] -= 1
                for k in range(space.t4_off[i], space.t4_off[i + 1]):
                    cnt4[space.t4_idx[k]] -= 1
                continue
            if _creates_fan(space, chosen, cov, i):
                continue
            if mode == MAX_FANFREE_INDWF:
                for k in range(space.t3_off[i], space.t3_off[i + 1]):
                    s = space.t3_idx[k]
                    if cnt3[s] == 3:
                        bad[0] -= 1
                    cnt3[s] += 1
                    if cnt3[s] == 3:
                        bad[0] += 1
                for k in range(space.s7_off[i], space.s7_off[i + 1]):
                    s = space.s7_idx[k]
                    cnt7[s] += 1
                    if cnt7[s] == 7:
                        bad[1] += 1
            if mode != MAX_FANFREE_INDWF or bad[1] == 0:
                pmm, kk = pm, 0
                while pmm:
                    if pmm & 1:
                        cov[kk] = 1
                    pmm >>= 1
                    kk += 1
                chosen.append(i)
                rec(i + 1, used | pm)
                chosen.pop()
                pmm, kk = pm, 0
                while pmm:
                    if pmm & 1:
                        cov[kk] = -1
                    pmm >>= 1
                    kk += 1
            if mode == MAX_FANFREE_INDWF:
                for k in range(space.s7_off[i], space.s7_off[i + 1]):
                    s = space.s7_idx[k]
                    if cnt7[s] == 7:
                        bad[1] -= 1
                    cnt7[s] -= 1
                for k in range(space.t3_off[i], space.t3_off[i + 1]):
                    s = space.t3_idx[k]
                    if cnt3[s] == 3:
                        bad[0] -= 1
                    cnt3[s] -= 1
                    if cnt3[s] == 3:
                        bad[0] += 1

    rec(0, 0)
    return best[0], best[1], tasks
