"""Multiple zeta values at tuples of non-positive integers, and their zeros.

For s_i <= 0 every power sum is a polynomial.  Power sums vanish beyond an
explicit degree bound, so both the infinity-adic and the v-adic series are
finite sums and are computed exactly.

Trivial-zero conditions treat an entry s_i = 0 like any other entry, with
L_0 = 0.  Pass ``include_zero_entries=False`` to restrict them to entries
s_i < 0 only.  That restricted form labels tuples such as (0, -1, -1) at a
degree-1 prime as nontrivial zeros.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .digits import l_value, is_q_even
from .field import INFINITY, FieldParams, Polynomial, PrimeModulus, v_adic_valuation
from .powersum import _formula_value, _twisted_value


class MZVDomainError(ValueError):
    """Raised for tuples outside the supported domain (empty, or with positive entries)."""


class Classification(str, enum.Enum):
    NONZERO = "nonzero"
    TRIVIAL = "trivial-zero"
    NONTRIVIAL = "nontrivial-zero"
    DEPTH1_Q_EVEN = "depth1-q-even-zero"


def check_index(s: Sequence[int]) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if not s:
        raise MZVDomainError("the index tuple must have depth r >= 1")
    if any(x > 0 for x in s):
        raise MZVDomainError(f"only non-positive entries are supported, got {s}")
    return s


@dataclass(frozen=True)
class TrivialZeroCheck:
    holds: bool
    witness: tuple[int, ...] | None = None
    condition: int | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class ZeroReport:
    s: tuple[int, ...]
    value: Polynomial
    classification: Classification
    witness: tuple[int, ...] | None = None
    prime: PrimeModulus | None = None
    nu_predicted: object = None
    nu_actual: object = None

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero()

    def to_json(self) -> dict:
        def enc(x):
            return "inf" if x is INFINITY else x

        return {
            "q": self.value.field.q,
            "v": None if self.prime is None else str(self.prime),
            "s": list(self.s),
            "value": str(self.value),
            "is_zero": self.is_zero,
            "class": self.classification.value,
            "witness": None if self.witness is None else list(self.witness),
            "nu_predicted": enc(self.nu_predicted),
            "nu_actual": enc(self.nu_actual),
        }


# -- the sums ----------------------------------------------------------------

def _chain_sum(factors: list[list[Polynomial]], fp: FieldParams) -> Polynomial:
    """Sum over d_1 > ... > d_r >= 0 of factors[0][d_1] * ... * factors[r-1][d_r].

    factors[i][d] is the i-th power sum at degree d; lists may have any length,
    indices past the end count as zero.
    """
    zero = Polynomial.zero(fp)
    # below[d] = sum over chains of the remaining coordinates whose top degree is < d
    r = len(factors)
    last = factors[r - 1]
    top = max(len(f) for f in factors) + r
    below = [zero] * (top + 1)
    acc = zero
    for d in range(top + 1):
        below[d] = acc
        if d < len(last):
            acc = acc + last[d]
    for i in range(r - 2, -1, -1):
        row = factors[i]
        new_below = [zero] * (top + 1)
        acc = zero
        for d in range(top + 1):
            new_below[d] = acc
            if d < len(row) and row[d] and below[d]:
                acc = acc + row[d] * below[d]
        below = new_below
    return below[top]


def zeta_inf_value(s: Sequence[int], fp: FieldParams) -> Polynomial:
    s = check_index(s)
    factors = []
    for si in s:
        bound = l_value(-si, fp).floor()  # S_d(si) = 0 for d > L
        factors.append([_formula_value(d, -si, fp) for d in range(bound + 1)])
    return _chain_sum(factors, fp)


def zeta_v_value(s: Sequence[int], fp: FieldParams, v: PrimeModulus, cutoff: int | None = None) -> Polynomial:
    """The v-adic MZV as an exact polynomial.

    With ``cutoff`` set, every chain with d_1 <= cutoff is summed literally,
    ignoring the vanishing bounds.
    """
    s = check_index(s)
    if v.field != fp:
        raise ValueError("prime lives over a different field")
    if cutoff is not None:
        return _literal_chain_sum(s, fp, v, cutoff)
    factors = []
    for si in s:
        L = l_value(-si, fp)
        bound = (L.numerator + v.degree * L.denominator) // L.denominator
        factors.append([_twisted_value(d, -si, v) for d in range(bound + 1)])
    return _chain_sum(factors, fp)


def _literal_chain_sum(s, fp, v, cutoff):
    total = Polynomial.zero(fp)
    r = len(s)
    table = [[_twisted_value(d, -si, v) for d in range(cutoff + 1)] for si in s]
    for chain in itertools.combinations(range(cutoff, -1, -1), r):
        term = Polynomial.one(fp)
        for i, d in enumerate(chain):
            term = term * table[i][d]
            if term.is_zero():
                break
        total = total + term
    return total


# -- trivial zeros -----------------------------------------------------------

def _participates(si: int, include_zero_entries: bool) -> bool:
    return si < 0 or (include_zero_entries and si == 0)


def is_trivial_zero_inf(s: Sequence[int], fp: FieldParams, include_zero_entries: bool = True) -> TrivialZeroCheck:
    """Some 1 <= i <= r-1 with r - i > L_{-s_i}; reports the smallest such i."""
    s = check_index(s)
    r = len(s)
    if r < 2:
        raise MZVDomainError("trivial zeros are defined for depth r > 1")
    for i in range(1, r):
        si = s[i - 1]
        if _participates(si, include_zero_entries) and l_value(-si, fp).exceeded_by(r - i):
            return TrivialZeroCheck(True, (i,), 1)
    return TrivialZeroCheck(False)


def is_trivial_zero_v(s: Sequence[int], fp: FieldParams, v: PrimeModulus | int,
                      include_zero_entries: bool = True) -> TrivialZeroCheck:
    """Trivial-zero test at a prime; only deg(v) matters, so an int degree is accepted.

    Condition 1: some i with r - i > L_{-s_i} + deg v.
    Condition 2: some i, j with deg v > r - i > L_{-s_i} and i - j > L_{-s_j}.
    """
    s = check_index(s)
    e = v if isinstance(v, int) else v.degree
    r = len(s)
    if r < 2:
        raise MZVDomainError("trivial zeros are defined for depth r > 1")
    Ls = [l_value(-si, fp) for si in s]
    use = [_participates(si, include_zero_entries) for si in s]
    for i in range(1, r + 1):
        if use[i - 1] and Ls[i - 1].exceeded_by(r - i, offset=e):
            return TrivialZeroCheck(True, (i,), 1)
    for i in range(1, r + 1):
        if not (use[i - 1] and e > r - i and Ls[i - 1].exceeded_by(r - i)):
            continue
        for j in range(1, r + 1):
            if use[j - 1] and Ls[j - 1].exceeded_by(i - j):
                return TrivialZeroCheck(True, (i, j), 2)
    return TrivialZeroCheck(False)


@dataclass(frozen=True)
class AllPrimesCheck:
    holds: bool
    per_degree: dict

    def __bool__(self):
        return self.holds


def is_trivial_zero_all_primes(s: Sequence[int], fp: FieldParams, include_zero_entries: bool = True) -> AllPrimesCheck:
    """Trivial at every prime, which reduces to the prime degrees 1..r."""
    s = check_index(s)
    r = len(s)
    if r < 2:
        raise MZVDomainError("trivial zeros are defined for depth r > 1")
    per = {e: is_trivial_zero_v(s, fp, e, include_zero_entries) for e in range(1, r + 1)}
    return AllPrimesCheck(all(per.values()), per)


# -- valuation prediction ----------------------------------------------------

def valuation_prediction(s: Sequence[int], fp: FieldParams, v: PrimeModulus):
    """Sum over i of nu_{r-i}(s_i), the valuation of the leading chain (r-1, ..., 0)."""
    s = check_index(s)
    if v.degree != 1:
        raise ValueError("the valuation prediction is only for degree-1 primes")
    r = len(s)
    total = 0
    for i, si in enumerate(s, start=1):
        nu = v_adic_valuation(_twisted_value(r - i, -si, v), v)
        if nu is INFINITY:
            return INFINITY
        total += nu
    return total


# -- reports -----------------------------------------------------------------

def _classify(s, value, fp, trivial: TrivialZeroCheck | None):
    if not value.is_zero():
        return Classification.NONZERO, None
    if len(s) == 1:
        if is_q_even(s[0], fp):
            return Classification.DEPTH1_Q_EVEN, None
        return Classification.NONTRIVIAL, None
    if trivial:
        return Classification.TRIVIAL, trivial.witness
    return Classification.NONTRIVIAL, None


def zeta_inf(s: Sequence[int], fp: FieldParams, include_zero_entries: bool = True) -> ZeroReport:
    s = check_index(s)
    value = zeta_inf_value(s, fp)
    trivial = is_trivial_zero_inf(s, fp, include_zero_entries) if len(s) > 1 else None
    cls, witness = _classify(s, value, fp, trivial)
    return ZeroReport(s, value, cls, witness)


def zeta_v(s: Sequence[int], fp: FieldParams, v: PrimeModulus, include_zero_entries: bool = True) -> ZeroReport:
    s = check_index(s)
    value = zeta_v_value(s, fp, v)
    trivial = is_trivial_zero_v(s, fp, v, include_zero_entries) if len(s) > 1 else None
    cls, witness = _classify(s, value, fp, trivial)
    predicted = actual = None
    if v.degree == 1:
        predicted = valuation_prediction(s, fp, v)
        actual = v_adic_valuation(value, v)
    return ZeroReport(s, value, cls, witness, v, predicted, actual)
