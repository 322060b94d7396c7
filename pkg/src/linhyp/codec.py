"""Encoding a rank-3 paving structure as a pair of linear triple systems.

Each line, read in the natural order of the ground set, yields its chain of
consecutive triples (sliding windows of width 3). Splitting every chain into
even- and odd-indexed entries and taking unions over all lines gives two
triple systems; both are linear, and the pair determines the original line
set: triples sharing two points must be windows of one common line, so
merging on two-point overlaps recovers the lines.

Both halves are kept (rather than just their union) because counting
arguments need each half to be a valid sparse family on its own.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import InternalLinearityFailure, LineTooShort, NotDecodable, NotLinear
from .hypergraph import Triple, TripleSystem, make_system
from .matroid3 import Line, PavingLines, make_paving


@dataclass(frozen=True)
class TripleChain:
    """Windows of width 3 over one sorted line, in increasing order.

    Consecutive entries share exactly two points; entries further apart share
    at most one. Decoding never needs the order, but it is kept for fidelity
    of the chain structure.
    """

    line: Line
    triples: tuple[Triple, ...]


def consecutive_triples(line: Sequence[int]) -> TripleChain:
    pts = tuple(sorted(set(line)))
    if len(pts) < 3:
        raise LineTooShort(f"line {tuple(line)!r} has fewer than 3 points")
    windows = tuple(pts[i : i + 3] for i in range(len(pts) - 2))
    return TripleChain(pts, windows)  # type: ignore[arg-type]


@dataclass(frozen=True)
class CodecPair:
    """Even- and odd-indexed window systems; both linear on the same ground set."""

    even: TripleSystem
    odd: TripleSystem


def encode(paving: PavingLines) -> CodecPair:
    """Split every line's window chain by parity and validate both unions."""
    even: set[Triple] = set()
    odd: set[Triple] = set()
    for line in paving.lines:
        chain = consecutive_triples(line)
        for i, tri in enumerate(chain.triples):
            (even if i % 2 == 0 else odd).add(tri)
    try:
        return CodecPair(
            make_system(paving.n, even), make_system(paving.n, odd)
        )
    except NotLinear as exc:  # pragma: no cover - guaranteed impossible
        raise InternalLinearityFailure(
            f"encoder produced a non-linear component: {exc}"
        ) from exc


def decode(pair: CodecPair) -> PavingLines:
    """Recover the line set, rejecting anything outside the encoder's image.

    Merges the union of both halves transitively on two-point overlaps; each
    component's vertex union is one line (singleton components are 3-point
    lines). The result is validated and re-encoded; any mismatch means the
    input was not produced by encode, and is rejected.
    """
    if pair.even.n != pair.odd.n:
        raise NotDecodable("components live on different ground sets")
    triples = sorted(set(pair.even.edges) | set(pair.odd.edges))
    parent = list(range(len(triples)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(triples)), 2):
        if len(set(triples[i]) & set(triples[j])) >= 2:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj

    components: dict[int, set[int]] = {}
    for i, tri in enumerate(triples):
        components.setdefault(find(i), set()).update(tri)

    try:
        result = make_paving(pair.even.n, components.values())
    except Exception as exc:
        raise NotDecodable(f"merged components are not a valid line set: {exc}") from exc

    back = encode(result)
    if back.even.edges != pair.even.edges or back.odd.edges != pair.odd.edges:
        raise NotDecodable("input is not in the image of encode")
    return result
