"""Base-p / base-q digit combinatorics behind the power sums.

The index sets U_d(k), V_d(k) and the twisted variant are enumerated by
distributing the base-p digits of k among the d+1 parts.  A part is chosen
as a digit-wise sub-number of what remains, so the parts always add without
carries.  A memoised feasibility table prunes branches that cannot complete.
The table is built by the same search and never consults L_k, which keeps
the emptiness criterion an honest check.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .field import FieldParams


def digit_sum(k: int, base: int) -> int:
    if k < 0:
        raise ValueError("digit_sum needs k >= 0")
    if base < 2:
        raise ValueError("base must be at least 2")
    s = 0
    while k:
        k, r = divmod(k, base)
        s += r
    return s


def digits(k: int, base: int) -> list[int]:
    """Digits of k, least significant first."""
    out = []
    while k:
        k, r = divmod(k, base)
        out.append(r)
    return out


@dataclass(frozen=True)
class LValue:
    """The exact rational L_k = numerator / (q - 1)."""

    numerator: int
    denominator: int

    def floor(self) -> int:
        return self.numerator // self.denominator

    @property
    def is_integer(self) -> bool:
        return self.numerator % self.denominator == 0

    def exceeded_by(self, n: int, offset: int = 0) -> bool:
        """Exact test of n > L + offset."""
        return n * self.denominator > self.numerator + offset * self.denominator

    def reached_by(self, n: int, offset: int = 0) -> bool:
        """Exact test of n >= L + offset."""
        return n * self.denominator >= self.numerator + offset * self.denominator

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


def l_value(k: int, fp: FieldParams) -> LValue:
    """L_k = min over 0 <= i < f of l(k p^i) / (q - 1), l the base-q digit sum.

    L_0 is taken to be 0.
    """
    if k < 0:
        raise ValueError("L_k needs k >= 0")
    q = fp.q
    num = min(digit_sum(k * fp.p ** i, q) for i in range(fp.f))
    return LValue(num, q - 1)


def is_q_even(s: int, fp: FieldParams) -> bool:
    return s % (fp.q - 1) == 0


def carry_free(parts: Sequence[int], p: int) -> bool:
    if not parts:
        raise ValueError("carry_free needs at least one part")
    if any(m < 0 for m in parts):
        raise ValueError("parts must be nonnegative")
    return digit_sum(sum(parts), p) == sum(digit_sum(m, p) for m in parts)


def multinomial_mod_p(k: int, parts: Sequence[int], p: int) -> int:
    """The multinomial coefficient (k; m_0, ..., m_d) mod p, digit by digit (Lucas)."""
    if sum(parts) != k:
        raise ValueError(f"parts {tuple(parts)} do not sum to {k}")
    parts = list(parts)
    result = 1
    while k:
        k, kd = divmod(k, p)
        md = []
        for i, m in enumerate(parts):
            parts[i], r = divmod(m, p)
            md.append(r)
        if sum(md) != kd:
            return 0
        denom = 1
        for r in md:
            denom = denom * math.factorial(r) % p
        result = result * math.factorial(kd) * pow(denom, -1, p) % p
    return result


class Kind(str, enum.Enum):
    U = "U"
    V = "V"
    U_TWISTED = "U-twisted"


# (must be positive, must be divisible by q-1) for each part m_0..m_d
def _constraints(d: int, kind: Kind) -> tuple[tuple[bool, bool], ...]:
    kind = Kind(kind)
    if d < 0:
        raise ValueError("d must be nonnegative")
    if kind is Kind.U:
        return ((False, False),) + ((True, True),) * d
    if kind is Kind.V:
        return ((True, False),) + ((True, True),) * d
    if d < 1:
        raise ValueError("the twisted index set needs d >= 1")
    return ((False, False),) + ((True, True),) * (d - 1) + ((False, True),)


def _part_ok(m: int, positive: bool, even: bool, qm1: int) -> bool:
    return (m > 0 or not positive) and (m % qm1 == 0 or not even)


def _submasks(n: int, p: int) -> Iterator[int]:
    """Digit-wise sub-numbers of n in base p, in descending numeric order."""
    ds = digits(n, p)
    weights = [p ** i for i in range(len(ds))][::-1]
    for choice in itertools.product(*[range(dg, -1, -1) for dg in reversed(ds)]):
        yield sum(c * w for c, w in zip(choice, weights))


@functools.lru_cache(maxsize=1 << 18)
def _feasible(rest: int, cons: tuple, p: int, qm1: int) -> bool:
    if not cons:
        return rest == 0
    positive, even = cons[0]
    if len(cons) == 1:
        return _part_ok(rest, positive, even, qm1)
    tail = cons[1:]
    return any(
        _part_ok(m, positive, even, qm1) and _feasible(rest - m, tail, p, qm1)
        for m in _submasks(rest, p)
    )


def _iter_parts(k: int, cons: tuple, p: int, qm1: int) -> Iterator[tuple[int, ...]]:
    if not _feasible(k, cons, p, qm1):
        return
    positive, even = cons[0]
    if len(cons) == 1:
        yield (k,)
        return
    tail = cons[1:]
    for m in _submasks(k, p):
        if _part_ok(m, positive, even, qm1) and _feasible(k - m, tail, p, qm1):
            for rest in _iter_parts(k - m, tail, p, qm1):
                yield (m,) + rest


@dataclass(frozen=True)
class IndexTuple:
    parts: tuple[int, ...]
    target: int
    kind: Kind

    @property
    def d(self) -> int:
        return len(self.parts) - 1

    @property
    def exponent(self) -> int:
        """d m_0 + (d-1) m_1 + ... + m_{d-1}, the t-degree of the matching term."""
        d = self.d
        return sum((d - i) * m for i, m in enumerate(self.parts))

    def to_json(self) -> list[int]:
        return list(self.parts)


def exponent_of(parts: Sequence[int]) -> int:
    d = len(parts) - 1
    return sum((d - i) * m for i, m in enumerate(parts))


def enumerate_index_set(d: int, k: int, fp: FieldParams, kind: Kind = Kind.U) -> Iterator[IndexTuple]:
    """Every tuple of the requested index set, in descending lexicographic order."""
    kind = Kind(kind)
    if k < 0:
        raise ValueError("k must be nonnegative")
    cons = _constraints(d, kind)
    for parts in _iter_parts(k, cons, fp.p, fp.q - 1):
        yield IndexTuple(parts, k, kind)


def index_set_is_empty(d: int, k: int, fp: FieldParams, kind: Kind = Kind.U) -> bool:
    return not _feasible(k, _constraints(d, Kind(kind)), fp.p, fp.q - 1)


def _extremal(k: int, cons: tuple, p: int, qm1: int) -> list[int] | None:
    # pick each part as large as possible, in the order given, while the
    # remaining parts can still be completed
    parts = []
    rest = k
    for idx, (positive, even) in enumerate(cons):
        tail = cons[idx + 1:]
        for m in _submasks(rest, p):
            if _part_ok(m, positive, even, qm1) and _feasible(rest - m, tail, p, qm1):
                parts.append(m)
                rest -= m
                break
        else:
            return None
    return parts


def greedy_element(d: int, k: int, fp: FieldParams, kind: Kind = Kind.U) -> IndexTuple | None:
    """Lexicographically largest element of the index set."""
    kind = Kind(kind)
    parts = _extremal(k, _constraints(d, kind), fp.p, fp.q - 1)
    return None if parts is None else IndexTuple(tuple(parts), k, kind)


def modest_element(d: int, k: int, fp: FieldParams, kind: Kind = Kind.U) -> IndexTuple | None:
    """Largest element for the reversed order: m_d first, then m_{d-1}, and so on."""
    kind = Kind(kind)
    cons = _constraints(d, kind)[::-1]
    parts = _extremal(k, cons, fp.p, fp.q - 1)
    return None if parts is None else IndexTuple(tuple(parts[::-1]), k, kind)
