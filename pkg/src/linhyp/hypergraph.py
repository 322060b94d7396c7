"""Labeled linear 3-uniform hypergraphs and their 2-shadows.

A triple system on ground set [n] = {1..n} is a set of 3-element edges in
which every pair of distinct edges shares at most one vertex (linearity).
All values are immutable after construction; operations are pure functions.

Vertex and edge masks are plain Python integers, so nothing here depends on
the ground set fitting a machine word; the compiled search kernels have their
own documented width limits and the pure-Python backend covers the rest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import FormatError, NotATriple, NotLinear, OutOfRange

Triple = tuple[int, int, int]
Pair = tuple[int, int]


def make_triple(items: Iterable[int]) -> Triple:
    """Canonicalize three distinct vertex labels into an ascending tuple."""
    t = tuple(sorted(items))
    if len(t) != 3 or len(set(t)) != 3:
        raise NotATriple(f"not a set of three distinct vertices: {tuple(items)!r}")
    return t  # type: ignore[return-value]


def _check_labels(n: int, elems: Iterable[int], what: str) -> None:
    for x in elems:
        if not isinstance(x, int) or x < 1 or x > n:
            raise OutOfRange(f"{what} contains label {x!r} outside 1..{n}")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class TripleSystem:
    """A labeled linear 3-uniform hypergraph on [n].

    ``edges`` is stored sorted lexicographically with each triple ascending,
    which makes the serialized form unique per labeled system.
    """

    n: int
    edges: tuple[Triple, ...]
    masks: tuple[int, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self.masks:
            object.__setattr__(self, "masks", tuple(mask_of(e) for e in self.edges))

    @property
    def edge_set(self) -> frozenset[Triple]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def __len__(self) -> int:
        return len(self.edges)


def make_system(n: int, triples: Iterable[Iterable[int]]) -> TripleSystem:
    """Validate and canonicalize a triple system.

    Raises OutOfRange / NotATriple / NotLinear; the linearity error names the
    offending pair of edges. Linearity is checked eagerly so every downstream
    consumer may assume it.
    """
    if n < 0:
        raise OutOfRange(f"ground size must be nonnegative, got {n}")
    canon = sorted({make_triple(t) for t in triples})
    for t in canon:
        _check_labels(n, t, f"edge {t}")
    masks = [mask_of(t) for t in canon]
    # linearity: two edges meeting in >= 2 vertices have mask overlap >= 2 bits
    for i, j in itertools.combinations(range(len(canon)), 2):
        if (masks[i] & masks[j]).bit_count() >= 2:
            raise NotLinear(
                f"edges {canon[i]} and {canon[j]} share two vertices",
                edges=(canon[i], canon[j]),
            )
    return TripleSystem(n, tuple(canon), tuple(masks))


@dataclass(frozen=True)
class Graph:
    """A simple graph on [n]; edges are ascending pairs sorted lexicographically."""

    n: int
    edges: tuple[Pair, ...]

    def __len__(self) -> int:
        return len(self.edges)


def make_graph(n: int, pairs: Iterable[Iterable[int]]) -> Graph:
    canon = set()
    for p in pairs:
        t = tuple(sorted(p))
        if len(t) != 2 or t[0] == t[1]:
            raise OutOfRange(f"not a vertex pair: {tuple(p)!r}")
        _check_labels(n, t, f"pair {t}")
        canon.add(t)
    return Graph(n, tuple(sorted(canon)))


def shadow(system: TripleSystem) -> Graph:
    """The 2-shadow: u ~ v iff some edge contains both.

    By linearity no pair is covered twice, so the result has exactly
    3 * len(system) edges.
    """
    pairs = set()
    for e in system.edges:
        pairs.add((e[0], e[1]))
        pairs.add((e[0], e[2]))
        pairs.add((e[1], e[2]))
    return Graph(system.n, tuple(sorted(pairs)))


def induced(system: TripleSystem, subset: Iterable[int]) -> TripleSystem:
    """Subsystem induced on ``subset``, relabeled onto 1..|subset|.

    Relabeling follows the ascending order of the chosen vertices, so the
    result is canonical for a given subset.
    """
    sub = sorted(set(subset))
    _check_labels(system.n, sub, "vertex subset")
    relabel = {v: i + 1 for i, v in enumerate(sub)}
    keep = set(sub)
    inside = [
        tuple(sorted(relabel[v] for v in e)) for e in system.edges if keep.issuperset(e)
    ]
    return TripleSystem(len(sub), tuple(sorted(inside)))  # type: ignore[arg-type]


def unique_triangle_property(graph: Graph) -> bool:
    """True iff every edge of the graph lies in exactly one triangle."""
    adj = [0] * (graph.n + 1)
    for u, v in graph.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for u, v in graph.edges:
        if (adj[u] & adj[v]).bit_count() != 1:
            return False
    return True


# --- .l3h text format ------------------------------------------------------
#
#   first line: "n m"; then m lines "a b c" with a < b < c.
#   Blank lines and lines starting with "#" are ignored.


def serialize(system: TripleSystem) -> str:
    lines = [f"{system.n} {len(system.edges)}"]
    lines.extend(" ".join(map(str, e)) for e in system.edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> TripleSystem:
    rows = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not rows:
        raise FormatError("empty .l3h input")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'n m', got {rows[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"non-integer header {rows[0]!r}") from exc
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header promises {m} edges, found {len(body)}")
    triples = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"edge line must have three labels: {ln!r}")
        try:
            triples.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise FormatError(f"non-integer edge line {ln!r}") from exc
    return make_system(n, triples)


def write_l3h(system: TripleSystem, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize(system))


def read_l3h(path) -> TripleSystem:
    with open(path, "r", encoding="ascii") as fh:
        return parse(fh.read())
