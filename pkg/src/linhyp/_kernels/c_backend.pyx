# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels.

Mirrors py_backend function for function; the pure backend is the reference
and cross-backend agreement is pinned by tests. Width limits here: ground
sets up to 16 vertices (pair masks in two 64-bit words) and at most 128
candidates for the stable-set counter; the dispatcher falls back to the pure
backend beyond that.
"""

import time

from ..errors import BudgetExceeded
from libc.stdlib cimport calloc, free

NAME = "c"

MODE_ALL = 0
MODE_CAP = 1
MODE_INDWF = 2
MAX_CAP = 0
MAX_FANFREE = 1
MAX_FANFREE_INDWF = 2

cdef extern from *:
    int __builtin_popcountll(unsigned long long)
    int __builtin_ctzll(unsigned long long)

cdef unsigned long long CHECK_EVERY = 65536


ctypedef struct Ctx:
    int m, num_six, num_seven, num_pairs, n, dmax, mode
    const unsigned long long *plo
    const unsigned long long *phi
    const unsigned long long *vmask
    const int *t3o
    const int *t3i
    const int *t4o
    const int *t4i
    const int *s7o
    const int *s7i
    int *cnt3
    int *cnt4
    int *cnt7
    int *cov
    int *chosen
    int n_chosen
    int bad6
    int bad7
    unsigned long long used_lo
    unsigned long long used_hi
    unsigned long long count
    unsigned long long nodes
    unsigned long long node_limit
    double deadline
    int aborted
    int best
    int floor
    int *best_wit
    int best_len
    const int *ca
    const int *cb
    const int *cc


cdef inline int _budget_tick(Ctx *c):
    c.nodes += 1
    if c.node_limit != 0 and c.nodes > c.node_limit:
        c.aborted = 1
        return 1
    if c.deadline != 0.0 and c.nodes % CHECK_EVERY == 0:
        if time.monotonic() > c.deadline:
            c.aborted = 2
            return 1
    return 0


cdef void _count_rec(Ctx *c, int start):
    cdef int i, k, s, ok
    cdef unsigned long long pl, ph
    if _budget_tick(c):
        return
    if c.mode == MODE_INDWF:
        if c.bad6 == 0 and c.bad7 == 0:
            c.count += 1
    else:
        c.count += 1
    for i in range(start, c.m):
        pl = c.plo[i]
        ph = c.phi[i]
        if (pl & c.used_lo) or (ph & c.used_hi):
            continue
        if c.mode == MODE_CAP:
            ok = 1
            for k in range(c.t4o[i], c.t4o[i + 1]):
                c.cnt4[c.t4i[k]] += 1
            for k in range(c.t3o[i], c.t3o[i + 1]):
                s = c.t3i[k]
                c.cnt3[s] += 1
                if c.cnt4[s] == 0 and c.cnt3[s] >= 3:
                    ok = 0
            if ok:
                c.used_lo |= pl
                c.used_hi |= ph
                _count_rec(c, i + 1)
                c.used_lo &= ~pl
                c.used_hi &= ~ph
            for k in range(c.t3o[i], c.t3o[i + 1]):
                c.cnt3[c.t3i[k]] -= 1
            for k in range(c.t4o[i], c.t4o[i + 1]):
                c.cnt4[c.t4i[k]] -= 1
        elif c.mode == MODE_INDWF:
            for k in range(c.t3o[i], c.t3o[i + 1]):
                s = c.t3i[k]
                if c.cnt3[s] == 3:
                    c.bad6 -= 1
                c.cnt3[s] += 1
                if c.cnt3[s] == 3:
                    c.bad6 += 1
            for k in range(c.s7o[i], c.s7o[i + 1]):
                s = c.s7i[k]
                c.cnt7[s] += 1
                if c.cnt7[s] == 7:
                    c.bad7 += 1
            if c.bad7 == 0:
                c.used_lo |= pl
                c.used_hi |= ph
                _count_rec(c, i + 1)
                c.used_lo &= ~pl
                c.used_hi &= ~ph
            for k in range(c.s7o[i], c.s7o[i + 1]):
                s = c.s7i[k]
                if c.cnt7[s] == 7:
                    c.bad7 -= 1
                c.cnt7[s] -= 1
            for k in range(c.t3o[i], c.t3o[i + 1]):
                s = c.t3i[k]
                if c.cnt3[s] == 3:
                    c.bad6 -= 1
                c.cnt3[s] -= 1
                if c.cnt3[s] == 3:
                    c.bad6 += 1
        else:
            c.used_lo |= pl
            c.used_hi |= ph
            _count_rec(c, i + 1)
            c.used_lo &= ~pl
            c.used_hi &= ~ph
        if c.aborted:
            return


cdef inline int _pair_index(int n, int u, int v):
    cdef int t
    if u > v:
        t = u
        u = v
        v = t
    return (u - 1) * (2 * n - u) / 2 + (v - u - 1)


cdef int _creates_fan(Ctx *c, int i):
    cdef int a = c.ca[i], b = c.cb[i], cc_ = c.cc[i]
    cdef int v, x, y, w, j, n = c.n
    cdef unsigned long long vb, vm_t = c.vmask[i], e2, e3, wm
    for v in range(1, n + 1):
        if v == a or v == b or v == cc_:
            continue
        if (c.cov[_pair_index(n, v, a)] >= 0
                and c.cov[_pair_index(n, v, b)] >= 0
                and c.cov[_pair_index(n, v, cc_)] >= 0):
            return 1
    cdef int apex[3]
    apex[0] = a
    apex[1] = b
    apex[2] = cc_
    for j in range(3):
        v = apex[j]
        vb = (<unsigned long long>1) << (v - 1)
        for x in range(c.n_chosen):
            if not (c.vmask[c.chosen[x]] & vb):
                continue
            e2 = c.vmask[c.chosen[x]]
            for y in range(x + 1, c.n_chosen):
                if not (c.vmask[c.chosen[y]] & vb):
                    continue
                e3 = c.vmask[c.chosen[y]]
                for w in range(c.n_chosen):
                    wm = c.vmask[c.chosen[w]]
                    if wm & vb:
                        continue
                    if (wm & vm_t) and (wm & e2) and (wm & e3):
                        return 1
    return 0


cdef void _cov_set(Ctx *c, unsigned long long pl, unsigned long long ph, int val):
    cdef int k
    while pl:
        k = __builtin_ctzll(pl)
        c.cov[k] = val
        pl &= pl - 1
    while ph:
        k = __builtin_ctzll(ph)
        c.cov[64 + k] = val
        ph &= ph - 1


cdef void _max_rec(Ctx *c, int start):
    cdef int i, k, s, ok, comp, free_pairs, ub, a, recurse
    cdef unsigned long long pl, ph
    if _budget_tick(c):
        return
    if c.mode != MAX_FANFREE_INDWF or (c.bad6 == 0 and c.bad7 == 0):
        if c.n_chosen > c.best:
            c.best = c.n_chosen
            c.best_len = c.n_chosen
            for k in range(c.n_chosen):
                c.best_wit[k] = c.chosen[k]
    comp = 0
    for i in range(start, c.m):
        if not ((c.plo[i] & c.used_lo) or (c.phi[i] & c.used_hi)):
            comp += 1
    free_pairs = c.num_pairs - __builtin_popcountll(c.used_lo) - __builtin_popcountll(c.used_hi)
    ub = free_pairs / 3
    if comp < ub:
        ub = comp
    a = (c.n * c.dmax - 3 * c.n_chosen) / 3
    if a < ub:
        ub = a
    if c.n_chosen + ub <= (c.best if c.best > c.floor else c.floor):
        return
    for i in range(start, c.m):
        pl = c.plo[i]
        ph = c.phi[i]
        if (pl & c.used_lo) or (ph & c.used_hi):
            continue
        if c.mode == MAX_CAP:
            ok = 1
            for k in range(c.t4o[i], c.t4o[i + 1]):
                c.cnt4[c.t4i[k]] += 1
            for k in range(c.t3o[i], c.t3o[i + 1]):
                s = c.t3i[k]
                c.cnt3[s] += 1
                if c.cnt4[s] == 0 and c.cnt3[s] >= 3:
                    ok = 0
            if ok:
                c.used_lo |= pl
                c.used_hi |= ph
                c.chosen[c.n_chosen] = i
                c.n_chosen += 1
                _max_rec(c, i + 1)
                c.n_chosen -= 1
                c.used_lo &= ~pl
                c.used_hi &= ~ph
            for k in range(c.t3o[i], c.t3o[i + 1]):
                c.cnt3[c.t3i[k]] -= 1
            for k in range(c.t4o[i], c.t4o[i + 1]):
                c.cnt4[c.t4i[k]] -= 1
        else:
            if _creates_fan(c, i):
                continue
            if c.mode == MAX_FANFREE_INDWF:
                for k in range(c.t3o[i], c.t3o[i + 1]):
                    s = c.t3i[k]
                    if c.cnt3[s] == 3:
                        c.bad6 -= 1
                    c.cnt3[s] += 1
                    if c.cnt3[s] == 3:
                        c.bad6 += 1
                for k in range(c.s7o[i], c.s7o[i + 1]):
                    s = c.s7i[k]
                    c.cnt7[s] += 1
                    if c.cnt7[s] == 7:
                        c.bad7 += 1
            recurse = (c.mode != MAX_FANFREE_INDWF) or c.bad7 == 0
            if recurse:
                _cov_set(c, pl, ph, 1)
                c.used_lo |= pl
                c.used_hi |= ph
                c.chosen[c.n_chosen] = i
                c.n_chosen += 1
                _max_rec(c, i + 1)
                c.n_chosen -= 1
                c.used_lo &= ~pl
                c.used_hi &= ~ph
                _cov_set(c, pl, ph, -1)
            if c.mode == MAX_FANFREE_INDWF:
                for k in range(c.s7o[i], c.s7o[i + 1]):
                    s = c.s7i[k]
                    if c.cnt7[s] == 7:
                        c.bad7 -= 1
                    c.cnt7[s] -= 1
                for k in range(c.t3o[i], c.t3o[i + 1]):
                    s = c.t3i[k]
                    if c.cnt3[s] == 3:
                        c.bad6 -= 1
                    c.cnt3[s] -= 1
                    if c.cnt3[s] == 3:
                        c.bad6 += 1
        if c.aborted:
            return


class _Armed:
    """Keeps memoryview buffers alive for the duration of a kernel call."""

    def __init__(self, space):
        self.plo = space.pair_lo
        self.phi = space.pair_hi
        self.vmask = space.vmask
        self.t3o = space.t3_off
        self.t3i = space.t3_idx
        self.t4o = space.t4_off
        self.t4i = space.t4_idx
        self.s7o = space.s7_off
        self.s7i = space.s7_idx


cdef int _fill_ctx(Ctx *c, object space, object armed,
                   unsigned long long[:] plo, unsigned long long[:] phi,
                   unsigned long long[:] vmask,
                   int[:] t3o, int[:] t3i, int[:] t4o, int[:] t4i,
                   int[:] s7o, int[:] s7i) except -1:
    c.m = space.m
    c.num_six = space.num_six
    c.num_seven = space.num_seven
    c.num_pairs = space.num_pairs
    c.n = space.n
    c.dmax = space.dmax
    if c.m > 0:
        c.plo = &plo[0]
        c.phi = &phi[0]
        c.vmask = &vmask[0]
    c.t3o = &t3o[0]
    c.t4o = &t4o[0]
    c.s7o = &s7o[0]
    c.t3i = &t3i[0] if t3i.shape[0] else NULL
    c.t4i = &t4i[0] if t4i.shape[0] else NULL
    c.s7i = &s7i[0] if s7i.shape[0] else NULL
    return 0


def _apply_prefix_py(space, prefix, cnt3mem, cnt4mem, cnt7mem):
    used = 0
    for i in prefix:
        pm = space.pair_lo[i] | (space.pair_hi[i] << 64)
        if pm & used:
            raise ValueError("prefix is not pair-compatible")
        used |= pm
        for k in range(space.t3_off[i], space.t3_off[i + 1]):
            cnt3mem[space.t3_idx[k]] += 1
        for k in range(space.t4_off[i], space.t4_off[i + 1]):
            cnt4mem[space.t4_idx[k]] += 1
        for k in range(space.s7_off[i], space.s7_off[i + 1]):
            cnt7mem[space.s7_idx[k]] += 1
    return used


def count_systems(space, int mode, prefix=(), int start=0,
                  unsigned long long node_limit=0, double deadline=0.0):
    if space.n > 16:
        raise ValueError("c backend handles ground sets up to 16 vertices")
    armed = _Armed(space)
    cdef unsigned long long[:] plo = armed.plo
    cdef unsigned long long[:] phi = armed.phi
    cdef unsigned long long[:] vmask = armed.vmask
    cdef int[:] t3o = armed.t3o
    cdef int[:] t3i = armed.t3i
    cdef int[:] t4o = armed.t4o
    cdef int[:] t4i = armed.t4i
    cdef int[:] s7o = armed.s7o
    cdef int[:] s7i = armed.s7i

    cdef Ctx c
    _fill_ctx(&c, space, armed, plo, phi, vmask, t3o, t3i, t4o, t4i, s7o, s7i)
    c.mode = mode
    c.node_limit = node_limit
    c.deadline = deadline
    c.count = 0
    c.nodes = 0
    c.aborted = 0
    c.bad6 = 0
    c.bad7 = 0

    c.cnt3 = <int *>calloc(max(1, c.num_six), sizeof(int))
    c.cnt4 = <int *>calloc(max(1, c.num_six), sizeof(int))
    c.cnt7 = <int *>calloc(max(1, c.num_seven), sizeof(int))
    if not c.cnt3 or not c.cnt4 or not c.cnt7:
        raise MemoryError
    try:
        cnt3l = [0] * space.num_six
        cnt4l = [0] * space.num_six
        cnt7l = [0] * space.num_seven
        used = _apply_prefix_py(space, prefix, cnt3l, cnt4l, cnt7l)
        for k in range(space.num_six):
            c.cnt3[k] = cnt3l[k]
            c.cnt4[k] = cnt4l[k]
        for k in range(space.num_seven):
            c.cnt7[k] = cnt7l[k]
        c.used_lo = used & 0xFFFFFFFFFFFFFFFF
        c.used_hi = used >> 64
        if mode == MODE_INDWF:
            c.bad6 = sum(1 for s in range(space.num_six) if cnt3l[s] == 3)
            c.bad7 = sum(1 for s in range(space.num_seven) if cnt7l[s] == 7)
        _count_rec(&c, start)
        if c.aborted == 1:
            raise BudgetExceeded(f"node limit {node_limit} exhausted")
        if c.aborted == 2:
            raise BudgetExceeded("time budget exhausted")
        return int(c.count), int(c.nodes)
    finally:
        free(c.cnt3)
        free(c.cnt4)
        free(c.cnt7)


def max_systems(space, int mode, prefix=(), int start=0,
                unsigned long long node_limit=0, double deadline=0.0,
                int initial_best=-1):
    if space.kind != "triples":
        raise ValueError("max search runs on triple candidates only")
    if space.n > 16:
        raise ValueError("c backend handles ground sets up to 16 vertices")
    armed = _Armed(space)
    cdef unsigned long long[:] plo = armed.plo
    cdef unsigned long long[:] phi = armed.phi
    cdef unsigned long long[:] vmask = armed.vmask
    cdef int[:] t3o = armed.t3o
    cdef int[:] t3i = armed.t3i
    cdef int[:] t4o = armed.t4o
    cdef int[:] t4i = armed.t4i
    cdef int[:] s7o = armed.s7o
    cdef int[:] s7i = armed.s7i

    import array as _array
    ca = _array.array("i", [cand[0] for cand in space.cands])
    cb = _array.array("i", [cand[1] for cand in space.cands])
    cc = _array.array("i", [cand[2] for cand in space.cands])
    cdef int[:] ca_mv = ca
    cdef int[:] cb_mv = cb
    cdef int[:] cc_mv = cc

    cdef Ctx c
    _fill_ctx(&c, space, armed, plo, phi, vmask, t3o, t3i, t4o, t4i, s7o, s7i)
    c.mode = mode
    c.node_limit = node_limit
    c.deadline = deadline
    c.count = 0
    c.nodes = 0
    c.aborted = 0
    c.best = -1
    c.floor = initial_best
    c.best_len = 0
    if c.m > 0:
        c.ca = &ca_mv[0]
        c.cb = &cb_mv[0]
        c.cc = &cc_mv[0]

    cdef int cap = space.num_pairs // 3 + 1 + len(prefix)
    c.cnt3 = <int *>calloc(max(1, c.num_six), sizeof(int))
    c.cnt4 = <int *>calloc(max(1, c.num_six), sizeof(int))
    c.cnt7 = <int *>calloc(max(1, c.num_seven), sizeof(int))
    c.cov = <int *>calloc(max(1, c.num_pairs), sizeof(int))
    c.chosen = <int *>calloc(max(1, cap), sizeof(int))
    c.best_wit = <int *>calloc(max(1, cap), sizeof(int))
    if not (c.cnt3 and c.cnt4 and c.cnt7 and c.cov and c.chosen and c.best_wit):
        raise MemoryError
    try:
        for k in range(c.num_pairs):
            c.cov[k] = -1
        cnt3l = [0] * space.num_six
        cnt4l = [0] * space.num_six
        cnt7l = [0] * space.num_seven
        used = _apply_prefix_py(space, prefix, cnt3l, cnt4l, cnt7l)
        for k in range(space.num_six):
            c.cnt3[k] = cnt3l[k]
            c.cnt4[k] = cnt4l[k]
        for k in range(space.num_seven):
            c.cnt7[k] = cnt7l[k]
        c.used_lo = used & 0xFFFFFFFFFFFFFFFF
        c.used_hi = used >> 64
        um = used
        k = 0
        while um:
            if um & 1:
                c.cov[k] = 1
            um >>= 1
            k += 1
        c.n_chosen = len(prefix)
        for k, idx in enumerate(prefix):
            c.chosen[k] = idx
        c.bad6 = sum(1 for s in range(space.num_six) if cnt3l[s] == 3)
        c.bad7 = sum(1 for s in range(space.num_seven) if cnt7l[s] == 7)
        _max_rec(&c, start)
        if c.aborted == 1:
            raise BudgetExceeded(f"node limit {node_limit} exhausted")
        if c.aborted == 2:
            raise BudgetExceeded("time budget exhausted")
        if c.best < 0:
            return -1, None, int(c.nodes)
        wit = tuple(c.best_wit[k] for k in range(c.best_len))
        return int(c.best), wit, int(c.nodes)
    finally:
        free(c.cnt3)
        free(c.cnt4)
        free(c.cnt7)
        free(c.cov)
        free(c.chosen)
        free(c.best_wit)


ctypedef struct SCtx:
    int m
    const unsigned long long *nlo
    const unsigned long long *nhi
    unsigned long long count
    unsigned long long nodes
    unsigned long long node_limit
    double deadline
    int aborted


cdef void _stable_rec(SCtx *c, int i, unsigned long long banned_lo,
                      unsigned long long banned_hi):
    cdef int j
    c.nodes += 1
    if c.node_limit != 0 and c.nodes > c.node_limit:
        c.aborted = 1
        return
    if c.deadline != 0.0 and c.nodes % CHECK_EVERY == 0:
        if time.monotonic() > c.deadline:
            c.aborted = 2
            return
    c.count += 1
    for j in range(i, c.m):
        if j < 64:
            if (banned_lo >> j) & 1:
                continue
        else:
            if (banned_hi >> (j - 64)) & 1:
                continue
        _stable_rec(c, j + 1, banned_lo | c.nlo[j], banned_hi | c.nhi[j])
        if c.aborted:
            return


def count_stable_sets(neigh, unsigned long long node_limit=0, double deadline=0.0):
    if len(neigh) > 128:
        raise ValueError("c backend handles at most 128 candidates")
    import array as _array
    nlo = _array.array("Q", [mask & 0xFFFFFFFFFFFFFFFF for mask in neigh])
    nhi = _array.array("Q", [mask >> 64 for mask in neigh])
    cdef unsigned long long[:] nlo_mv = nlo
    cdef unsigned long long[:] nhi_mv = nhi
    cdef SCtx c
    c.m = len(neigh)
    c.nlo = &nlo_mv[0] if c.m else NULL
    c.nhi = &nhi_mv[0] if c.m else NULL
    c.count = 0
    c.nodes = 0
    c.node_limit = node_limit
    c.deadline = deadline
    c.aborted = 0
    _stable_rec(&c, 0, 0, 0)
    if c.aborted == 1:
        raise BudgetExceeded(f"node limit {node_limit} exhausted")
    if c.aborted == 2:
        raise BudgetExceeded("time budget exhausted")
    return int(c.count), int(c.nodes)
