"""Named instances and parametric families.

Fixed patterns: the linear 3-cycle (whirl), the triangle family of K4, the
3-fan and the Fano plane. Parametric: sum-class stable families on [n] and
the binary point-line geometries B_r (a transversal design with three groups).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import OutOfRange
from .hypergraph import TripleSystem, make_system
from .matroid3 import SparsePaving, validate_sparse
from .patterns import Pattern


def whirl3() -> Pattern:
    """The linear 3-cycle on 6 vertices: three edges pairwise meeting in one point."""
    return Pattern("w3", make_system(6, [(1, 2, 3), (3, 4, 5), (5, 6, 1)]))


def mk4() -> Pattern:
    """The four triangle edge-sets of K4 under its usual edge labeling."""
    return Pattern("mk4", make_system(6, [(1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6)]))


def fan() -> Pattern:
    """Three edges through an apex plus one transversal edge (the sail)."""
    return Pattern("fan", make_system(7, [(1, 2, 3), (1, 4, 5), (1, 6, 7), (3, 5, 7)]))


def fano() -> Pattern:
    """The 7-point projective plane: every pair of points on exactly one line."""
    return Pattern(
        "fano",
        make_system(
            7,
            [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)],
        ),
    )


PATTERN_FACTORIES = {"w3": whirl3, "mk4": mk4, "fan": fan, "fano": fano}


def graham_sloane(n: int, r: int, k: int) -> SparsePaving:
    """The sum-class family: all r-subsets of [n] whose element sum is k mod n.

    Two r-subsets differing by a single exchange have sums differing by a
    nonzero residue, so each class is stable under single-element exchange;
    the classes for k = 0..n-1 partition all r-subsets, giving at least
    C(n,r)/n members in the largest one.
    """
    if not 1 <= r <= n - 1:
        raise OutOfRange(f"need 1 <= r <= n-1, got r={r}, n={n}")
    if not 0 <= k < n:
        raise OutOfRange(f"need 0 <= k < n, got k={k}")
    members = [
        x for x in itertools.combinations(range(1, n + 1), r) if sum(x) % n == k
    ]
    return validate_sparse(n, r, members)


@dataclass(frozen=True)
class GF2Vector:
    """A point of the binary affine cube used to build B_r."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) < 2:
            raise OutOfRange("need at least 2 coordinates")
        if any(b not in (0, 1) for b in self.bits):
            raise OutOfRange(f"non-binary coordinate in {self.bits}")

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        return GF2Vector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))


def bose_burton_vertices(r: int) -> list[GF2Vector]:
    """Qualifying vectors of B_r in lexicographic bit order (first bit most
    significant); the position in this list is the vertex label minus one."""
    if r < 2:
        raise OutOfRange(f"need r >= 2, got {r}")
    return [
        GF2Vector(v)
        for v in itertools.product((0, 1), repeat=r)
        if (v[0], v[1]) != (0, 0)
    ]


def bose_burton(r: int) -> TripleSystem:
    """The rank-r binary geometry B_r: vertices are the vectors of F_2^r whose
    first two coordinates are not both zero, edges the zero-sum triples.

    Yields 3 * 2^(r-2) vertices and 2^(2(r-2)) edges. Any two vertices lie in
    at most one edge since the third point of an edge is the sum of the other
    two, so the system is linear by construction.
    """
    vecs = bose_burton_vertices(r)
    label = {v.bits: i + 1 for i, v in enumerate(vecs)}
    edges = set()
    for x, y in itertools.combinations(vecs, 2):
        z = (x + y).bits
        if z in label and z != x.bits and z != y.bits:
            edges.add(tuple(sorted((label[x.bits], label[y.bits], label[z]))))
    return make_system(len(vecs), edges)
