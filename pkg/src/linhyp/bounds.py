"""Numeric verification of counting inequalities on exact enumerated data.

Every verdict here is decided by exact integer arithmetic; the float fields
of a report are for display only. The key identity: comparing X against
2^(H(a/P) * P), where H is the binary entropy function and 0 <= a <= P, is
equivalent to comparing X * a^a * (P-a)^(P-a) against P^P, which involves
integers only. Log-ratio comparisons cross-multiply as exponents the same
way. With exact comparison there are no borderline verdicts to adjudicate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from .errors import MissingCount, OutOfRange
from .search import CountsTable

SPARSE_PREDICATE = "sparse:all"


@dataclass
class BoundReport:
    """One verified inequality instance.

    ``left`` and ``right`` are display values on the scale noted in
    ``scale``; ``verdict`` is (left <= right) decided exactly; ``slack`` is
    right - left on that display scale.
    """

    name: str
    params: dict
    left: float
    right: float
    verdict: bool
    slack: float = field(init=False)
    scale: str = "raw"
    note: str = ""

    def __post_init__(self):
        self.slack = self.right - self.left


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"binary entropy needs x in [0, 1], got {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _pow_display(a: int) -> float:
    # log2 of a positive integer, safe for huge values
    return a.bit_length() - 1 + math.log2(a / (1 << (a.bit_length() - 1)))


def entropy_count_bound(n: int, rs_value: int) -> BoundReport:
    """Check sum_{i <= 3*rs} C(C(n,2), i) <= 2^(H(3*rs / C(n,2)) * C(n,2)).

    The inequality is guaranteed only in the regime 3*rs <= C(n,2)/2; outside
    it the report carries a note and the verdict is still computed honestly
    rather than asserted.
    """
    if rs_value < 0:
        raise OutOfRange("rs value must be nonnegative")
    pairs = comb(n, 2)
    a = 3 * rs_value
    if a > pairs:
        raise OutOfRange(f"3*rs = {a} exceeds the number of pairs {pairs}")
    lhs = sum(comb(pairs, i) for i in range(a + 1))
    # lhs <= 2^(H(a/P)*P)  <=>  lhs * a^a * (P-a)^(P-a) <= P^P
    aa = a**a if a > 0 else 1
    bb = (pairs - a) ** (pairs - a) if pairs - a > 0 else 1
    verdict = lhs * aa * bb <= pairs**pairs
    rhs_log2 = pairs * binary_entropy(a / pairs) if pairs else 0.0
    note = "" if 2 * a <= pairs else "outside the entropy-bound regime (3*rs > C(n,2)/2)"
    return BoundReport(
        name="entropy-count",
        params={"n": n, "rs": rs_value},
        left=float(lhs),
        right=float(2.0**rhs_log2),
        verdict=verdict,
        scale="raw",
        note=note,
    )


def verify_blowup(
    table: CountsTable, class_name: str, n: int, r: int, t: int
) -> BoundReport:
    """Check log(1 + c(n,r)) / C(n,r) <= log(1 + c(n-t,r-t)) / C(n-t,r-t).

    Valid for contraction-closed classes; the caller asserts closure (the
    sparse paving class qualifies). Counts come from the table under
    ``class_name``; a missing entry raises MissingCount.
    """
    if not 0 <= t <= r <= n:
        raise OutOfRange(f"need t <= r <= n, got (n={n}, r={r}, t={t})")
    big = table.get(n, r, class_name)
    small = table.get(n - t, r - t, class_name)
    cb_big = comb(n, r)
    cb_small = comb(n - t, r - t)
    # log(1+big)/cb_big <= log(1+small)/cb_small
    #   <=>  (1+big)^cb_small <= (1+small)^cb_big
    verdict = (1 + big) ** cb_small <= (1 + small) ** cb_big
    return BoundReport(
        name="contraction-blowup",
        params={"class": class_name, "n": n, "r": r, "t": t},
        left=_pow_display(1 + big) / cb_big,
        right=_pow_display(1 + small) / cb_small,
        verdict=verdict,
        scale="log2/binom",
    )


def gs_lower_check(table: CountsTable, n: int) -> BoundReport:
    """Check log2 s(n) >= C(n, floor(n/2)) / n on the summed sparse counts.

    s(n) sums the table's sparse counts over ranks 0..n. The floor convention
    at odd n is fixed here; the bound is exact at even n.
    """
    if n < 1:
        raise OutOfRange("need n >= 1")
    missing = [r for r in range(0, n + 1) if not table.has(n, r, SPARSE_PREDICATE)]
    if missing:
        raise MissingCount(f"sparse counts missing for n={n}, ranks {missing}")
    s_n = sum(table.get(n, r, SPARSE_PREDICATE) for r in range(0, n + 1))
    rhs_num = comb(n, n // 2)
    # log2 s(n) >= rhs_num / n  <=>  s(n)^n >= 2^rhs_num
    verdict = s_n**n >= 2**rhs_num
    return BoundReport(
        name="gs-lower",
        params={"n": n, "s(n)": s_n},
        left=rhs_num / n,
        right=_pow_display(s_n),
        verdict=verdict,
        scale="log2",
        note="verdict checks right >= left (a lower bound)",
    )


def trivial_f_bound(n: int, f_value: int) -> BoundReport:
    """Check f(n) <= sum_{i <= floor(n^2/9)} C(C(n,3), i), all exact."""
    if f_value < 0:
        raise OutOfRange("count must be nonnegative")
    triples = comb(n, 3)
    cap = n * n // 9
    bound = sum(comb(triples, i) for i in range(min(cap, triples) + 1))
    return BoundReport(
        name="trivial-f-bound",
        params={"n": n, "f": f_value, "cap": cap},
        left=float(f_value),
        right=float(bound),
        verdict=f_value <= bound,
        scale="raw",
    )
