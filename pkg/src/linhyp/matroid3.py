"""Rank-3 matroids as point-line incidences, plus general-rank stable families.

A rank-3 paving matroid on [n] is determined by its long lines: the rank-2
flats with at least 3 points. Lines pairwise share at most one point and are
shorter than the full ground set; 2-point lines are implicit and never
stored, which makes the representation canonical per matroid. With n >= 4
the size cap |line| <= n-1 leaves a point off any given line, so three
points spanning rank 3 always exist and rank-3 validity is structural.

General rank-3 matroids add loops and parallel classes on top of a paving
structure; sparse paving matroids of any rank are families of rank-size sets
no two of which differ by a single exchange (stable sets in the Johnson
graph J(n, r)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    ExchangeViolation,
    FormatError,
    GroundMismatch,
    GroundTooSmall,
    NotLinear,
    OutOfRange,
)
from .hypergraph import Triple, TripleSystem, make_system
from .patterns import MatchMode, _match

Line = tuple[int, ...]


@dataclass(frozen=True)
class PavingLines:
    """Long lines of a rank-3 paving matroid on [n]; n >= 3."""

    n: int
    lines: tuple[Line, ...]

    def __len__(self) -> int:
        return len(self.lines)


def make_paving(n: int, lines: Iterable[Iterable[int]]) -> PavingLines:
    if n < 3:
        raise GroundTooSmall(f"rank-3 structure needs n >= 3, got {n}")
    canon = sorted({tuple(sorted(set(l))) for l in lines})
    for l in canon:
        if any(x < 1 or x > n for x in l):
            raise OutOfRange(f"line {l} leaves 1..{n}")
        if not 3 <= len(l) <= n - 1:
            raise OutOfRange(f"line {l} must have size in [3, {n - 1}]")
    for a, b in itertools.combinations(canon, 2):
        common = set(a) & set(b)
        if len(common) >= 2:
            raise NotLinear(f"lines {a} and {b} share {sorted(common)}", edges=(a, b))
    return PavingLines(n, tuple(canon))


@dataclass(frozen=True)
class SparsePaving:
    """Rank-size nonbases forming a stable set in the Johnson graph J(n, r)."""

    n: int
    r: int
    ch: tuple[tuple[int, ...], ...]


def validate_sparse(n: int, r: int, ch: Iterable[Iterable[int]]) -> SparsePaving:
    """Check the no-single-exchange condition: |A & B| <= r-2 pairwise."""
    if not 1 <= r <= n - 1:
        raise OutOfRange(f"need 1 <= r <= n-1, got r={r}, n={n}")
    canon = sorted({tuple(sorted(set(x))) for x in ch})
    for x in canon:
        if len(x) != r:
            raise OutOfRange(f"member {x} is not an r-subset (r={r})")
        if any(v < 1 or v > n for v in x):
            raise OutOfRange(f"member {x} leaves 1..{n}")
    for a, b in itertools.combinations(canon, 2):
        if len(set(a) & set(b)) == r - 1:
            raise ExchangeViolation(
                f"{a} and {b} differ by a single exchange", pair=(a, b)
            )
    return SparsePaving(n, r, tuple(canon))


def sparse_from_hypergraph(system: TripleSystem) -> PavingLines:
    """Edges of a linear triple system as 3-point lines (n >= 4)."""
    if system.n < 4:
        raise GroundTooSmall(f"need n >= 4 for 3-point lines, got {system.n}")
    return make_paving(system.n, system.edges)


def hypergraph_from_sparse(paving: PavingLines) -> TripleSystem:
    """Inverse of sparse_from_hypergraph on all-3-point line sets."""
    if any(len(l) != 3 for l in paving.lines):
        raise OutOfRange("structure has a line longer than 3 points")
    return make_system(paving.n, paving.lines)


def dependent_triples(paving: PavingLines) -> frozenset[Triple]:
    """All 3-subsets lying inside some line (the nonspanning circuits)."""
    out: set[Triple] = set()
    for l in paving.lines:
        out.update(itertools.combinations(l, 3))
    return frozenset(out)


def weak_map_leq(a: PavingLines, b: PavingLines) -> bool:
    """True iff every dependent triple of ``a`` is dependent in ``b``."""
    if a.n != b.n:
        raise GroundMismatch(f"ground sizes differ: {a.n} vs {b.n}")
    return dependent_triples(a) <= dependent_triples(b)


def has_restriction(paving: PavingLines, target: PavingLines) -> bool:
    """Does some 6-point restriction realize ``target`` exactly?

    ``target`` is a 6-point structure (the 3-cycle or K4-triangle family).
    The test asks for a 6-subset S and a bijection onto [6] carrying the
    dependent triples inside S onto the dependent triples of the target.
    The matcher runs on raw triple collections, which need not be linear.
    """
    if target.n != 6:
        raise OutOfRange(f"restriction target must live on 6 points, got {target.n}")
    tgt = sorted(dependent_triples(target))
    dep = dependent_triples(paving)
    for sub in itertools.combinations(range(1, paving.n + 1), 6):
        relabel = {v: i + 1 for i, v in enumerate(sub)}
        keep = set(sub)
        inside = frozenset(
            tuple(sorted(relabel[v] for v in t)) for t in dep if keep.issuperset(t)
        )
        if len(inside) != len(tgt):
            continue
        # bijection on 6 points in both directions: induced match suffices
        if _match(6, inside, 6, tgt, MatchMode.INDUCED) is not None:
            return True
    return False


def xfree(paving: PavingLines) -> bool:
    """No 6-point restriction isomorphic to the 3-cycle or the K4 family."""
    from .constructions import mk4, whirl3

    w3l = sparse_from_hypergraph(whirl3().system)
    mk4l = sparse_from_hypergraph(mk4().system)
    return not has_restriction(paving, w3l) and not has_restriction(paving, mk4l)


@dataclass(frozen=True)
class Rank3Matroid:
    """Loops, parallel classes and a paving structure on the class labels.

    Classes are ordered by minimum element; block i stands for point i of the
    structure. This fixed ordering keeps the representation canonical.
    """

    n: int
    loops: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    structure: PavingLines


def make_rank3(
    n: int,
    loops: Iterable[int],
    classes: Iterable[Iterable[int]],
    structure: PavingLines,
) -> Rank3Matroid:
    loop_t = tuple(sorted(set(loops)))
    class_t = tuple(sorted((tuple(sorted(set(c))) for c in classes), key=lambda c: c[0]))
    if any(x < 1 or x > n for x in loop_t):
        raise OutOfRange("loop outside ground set")
    if len(class_t) < 3:
        raise OutOfRange(f"need at least 3 parallel classes, got {len(class_t)}")
    seen: set[int] = set(loop_t)
    for c in class_t:
        if not c:
            raise OutOfRange("empty parallel class")
        if any(x < 1 or x > n for x in c):
            raise OutOfRange(f"class {c} leaves 1..{n}")
        if seen & set(c):
            raise OutOfRange(f"class {c} overlaps loops or another class")
        seen |= set(c)
    if seen != set(range(1, n + 1)):
        raise OutOfRange("loops and classes must partition the ground set")
    if structure.n != len(class_t):
        raise GroundMismatch(
            f"structure on {structure.n} points but {len(class_t)} classes"
        )
    return Rank3Matroid(n, loop_t, class_t, structure)


def simplification(matroid: Rank3Matroid) -> PavingLines:
    """The paving structure on class labels (loops and multiplicities dropped)."""
    return matroid.structure


def has_minor_w3_mk4(matroid: Rank3Matroid) -> bool:
    """Whether the matroid has a 3-cycle or K4-family minor.

    Both targets are simple of rank 3, and every rank-preserving minor of a
    rank-3 matroid is, up to parallel elements, a restriction of its
    simplification; so restriction search on the structure decides it.
    """
    return not xfree(simplification(matroid))


# --- .pav text format -------------------------------------------------------
#
#   "n k" then k lines, each listing one long line's points ascending.
#   Rank3Matroid files prepend a loops line and one "class" line per class.


def serialize_pav(paving: PavingLines) -> str:
    rows = [f"{paving.n} {len(paving.lines)}"]
    rows.extend(" ".join(map(str, l)) for l in paving.lines)
    return "\n".join(rows) + "\n"


def _clean_rows(text: str) -> list[str]:
    return [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]


def parse_pav(text: str) -> PavingLines:
    rows = _clean_rows(text)
    if not rows:
        raise FormatError("empty .pav input")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'n k', got {rows[0]!r}")
    try:
        n, k = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"non-integer header {rows[0]!r}") from exc
    if len(rows) - 1 != k:
        raise FormatError(f"header promises {k} lines, found {len(rows) - 1}")
    try:
        lines = [tuple(int(p) for p in ln.split()) for ln in rows[1:]]
    except ValueError as exc:
        raise FormatError("non-integer line entry") from exc
    return make_paving(n, lines)


def serialize_rank3(matroid: Rank3Matroid) -> str:
    rows = ["loops " + " ".join(map(str, matroid.loops)) if matroid.loops else "loops"]
    rows.extend("class " + " ".join(map(str, c)) for c in matroid.classes)
    return "\n".join(rows) + "\n" + serialize_pav(matroid.structure)


def parse_rank3(text: str) -> Rank3Matroid:
    rows = _clean_rows(text)
    if not rows or not rows[0].startswith("loops"):
        raise FormatError("rank-3 file must start with a loops line")
    loops = [int(p) for p in rows[0].split()[1:]]
    classes = []
    i = 1
    while i < len(rows) and rows[i].startswith("class"):
        classes.append([int(p) for p in rows[i].split()[1:]])
        i += 1
    structure = parse_pav("\n".join(rows[i:]))
    n = len(loops) + sum(len(c) for c in classes)
    return make_rank3(n, loops, classes, structure)


def write_pav(paving: PavingLines, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_pav(paving))


def read_pav(path) -> PavingLines:
    with open(path, "r", encoding="ascii") as fh:
        return parse_pav(fh.read())
