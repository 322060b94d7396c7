"""Fixed small-pattern detection in triple systems.

The matcher is plain backtracking over injective vertex assignments; patterns
are capped at 7 vertices so nothing fancier is warranted. It deliberately
accepts hosts whose triple collections are not linear, because restriction
tests on paving matroids feed it dependent-triple sets with overlapping pairs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import PatternTooLarge
from .hypergraph import Triple, TripleSystem

MAX_PATTERN_VERTICES = 7


class MatchMode(enum.Enum):
    SUBGRAPH = "subgraph"
    INDUCED = "induced"


@dataclass(frozen=True)
class Pattern:
    """A named triple system with at most 7 vertices, vertex set exactly 1..n."""

    name: str
    system: TripleSystem

    def __post_init__(self):
        if self.system.n > MAX_PATTERN_VERTICES:
            raise PatternTooLarge(
                f"pattern {self.name!r} has {self.system.n} vertices; "
                f"the matcher is bounded at {MAX_PATTERN_VERTICES}"
            )


Embedding = tuple[int, ...]  # position i-1 holds the image of pattern vertex i


def _match(
    host_n: int,
    host_edges: frozenset[Triple],
    pat_n: int,
    pat_edges: Sequence[Triple],
    mode: MatchMode,
) -> Optional[Embedding]:
    """Find the first injective embedding in deterministic order, or None.

    Pattern vertices are assigned in order of decreasing degree (ties by
    label); host candidates are tried in ascending label order, so the first
    match found is the lexicographically least assignment under that order.
    """
    deg = [0] * (pat_n + 1)
    for e in pat_edges:
        for v in e:
            deg[v] += 1
    order = sorted(range(1, pat_n + 1), key=lambda v: (-deg[v], v))
    pos = {v: i for i, v in enumerate(order)}

    # pattern edges become checkable once their last vertex is assigned
    edges_done_at: list[list[Triple]] = [[] for _ in range(pat_n)]
    for e in pat_edges:
        edges_done_at[max(pos[v] for v in e)].append(e)

    host_deg = [0] * (host_n + 1)
    for e in host_edges:
        for v in e:
            host_deg[v] += 1

    phi = [0] * (pat_n + 1)
    used = [False] * (host_n + 1)

    def ok_after(i: int) -> bool:
        for e in edges_done_at[i]:
            img = tuple(sorted((phi[e[0]], phi[e[1]], phi[e[2]])))
            if img not in host_edges:
                return False
        if mode is MatchMode.INDUCED:
            # no host edge may sit inside the current image without a preimage
            image = {phi[order[k]] for k in range(i + 1)}
            inv = {phi[order[k]]: order[k] for k in range(i + 1)}
            pat_set = set(pat_edges)
            for he in host_edges:
                if image.issuperset(he):
                    pre = tuple(sorted(inv[v] for v in he))
                    if pre not in pat_set:
                        return False
        return True

    def assign(i: int) -> Optional[Embedding]:
        if i == pat_n:
            return tuple(phi[1:])
        p = order[i]
        for h in range(1, host_n + 1):
            if used[h]:
                continue
            if mode is MatchMode.SUBGRAPH and host_deg[h] < deg[p]:
                continue
            phi[p] = h
            used[h] = True
            if ok_after(i):
                found = assign(i + 1)
                if found is not None:
                    return found
            used[h] = False
            phi[p] = 0
        return None

    return assign(0)


def find_embedding(
    host: TripleSystem, pattern: Pattern, mode: MatchMode
) -> Optional[Embedding]:
    """The witness embedding for contains_pattern, or None when absent."""
    if pattern.system.n > MAX_PATTERN_VERTICES:
        raise PatternTooLarge(f"pattern {pattern.name!r} too large")
    if pattern.system.n > host.n:
        return None
    return _match(
        host.n, host.edge_set, pattern.system.n, pattern.system.edges, mode
    )


def contains_pattern(host: TripleSystem, pattern: Pattern, mode: MatchMode) -> bool:
    """Does ``host`` contain ``pattern`` as a (induced) subgraph?

    SUBGRAPH: some injective vertex map sends every pattern edge to an edge.
    INDUCED: additionally, the image vertex set spans no other edges.
    """
    return find_embedding(host, pattern, mode) is not None


def verify_embedding(
    host: TripleSystem, pattern: Pattern, mode: MatchMode, phi: Embedding
) -> bool:
    """Replay a witness: check it proves the claimed containment."""
    if len(phi) != pattern.system.n or len(set(phi)) != len(phi):
        return False
    if any(h < 1 or h > host.n for h in phi):
        return False
    mapped = {
        tuple(sorted((phi[a - 1], phi[b - 1], phi[c - 1])))
        for a, b, c in pattern.system.edges
    }
    if not mapped.issubset(host.edge_set):
        return False
    if mode is MatchMode.INDUCED:
        image = set(phi)
        inside = {e for e in host.edges if image.issuperset(e)}
        return inside == mapped
    return True


def is_free(
    host: TripleSystem, patterns: Iterable[Pattern], mode: MatchMode
) -> bool:
    """True iff none of the patterns occurs in the given mode."""
    return all(not contains_pattern(host, p, mode) for p in patterns)


def is_rs(host: TripleSystem) -> bool:
    """The six-vertex span property: any six vertices span at most two edges.

    Equivalent to containing no linear 3-cycle as a subgraph, which is what
    this implementation checks; the six-vertex formulation (quantified over
    subsets of size min(6, n)) is enforced as the test oracle.
    """
    from .constructions import whirl3

    return not contains_pattern(host, whirl3(), MatchMode.SUBGRAPH)


def get_pattern(name: str) -> Pattern:
    """Resolve a registered pattern name (w3, mk4, fan, fano)."""
    from . import constructions

    try:
        factory = constructions.PATTERN_FACTORIES[name]
    except KeyError:
        raise KeyError(
            f"unknown pattern {name!r}; registered: "
            f"{sorted(constructions.PATTERN_FACTORIES)}"
        ) from None
    return factory()


def resolve_patterns(names: Iterable[str]) -> tuple[Pattern, ...]:
    return tuple(get_pattern(nm) for nm in names)
