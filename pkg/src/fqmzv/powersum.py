"""Power sums S_d(s) and their v-coprime versions for s <= 0.

Two independent routes are provided.  The enumeration route sums a^(-s)
over the monic polynomials a of degree d.  The formula route expands
(t^d + c_1 t^(d-1) + ... + c_d)^k, keeps the carry-free index tuples, and
weights each term by its multinomial coefficient mod p.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .digits import Kind, enumerate_index_set, exponent_of, greedy_element, l_value
from .field import (
    INFINITY,
    FieldParams,
    Polynomial,
    PrimeModulus,
    monics_of_degree,
    poly_pow,
    v_adic_valuation,
)
from .digits import multinomial_mod_p

DEFAULT_MAX_COST = 10 ** 6


class CostGuardError(RuntimeError):
    pass


def _exponent(s: int) -> int:
    if s > 0:
        raise ValueError(f"only s <= 0 is supported, got s={s}")
    return -s


@dataclass(frozen=True)
class PowerSumResult:
    value: Polynomial
    d: int
    s: int
    prime: PrimeModulus | None
    method: str

    def to_json(self) -> dict:
        nu = None
        if self.prime is not None:
            nu = v_adic_valuation(self.value, self.prime)
            nu = "inf" if nu is INFINITY else nu
        return {
            "q": self.value.field.q,
            "d": self.d,
            "s": self.s,
            "v": None if self.prime is None else str(self.prime),
            "value": str(self.value),
            "nu": nu,
            "method": self.method,
        }


@dataclass(frozen=True)
class Valuation:
    nu: object  # int or INFINITY
    d: int
    s: int
    prime: PrimeModulus

    @property
    def is_infinite(self) -> bool:
        return self.nu is INFINITY


# -- enumeration route -------------------------------------------------------

def s_enumerate(d: int, s: int, fp: FieldParams, v: PrimeModulus | None = None,
                max_cost: int = DEFAULT_MAX_COST) -> PowerSumResult:
    """Sum a^(-s) over monic a of degree d, restricted to (a, v) = 1 when v is given."""
    k = _exponent(s)
    if fp.q ** d > max_cost:
        raise CostGuardError(f"q^d = {fp.q ** d} monics exceeds the cost guard {max_cost}")
    total = Polynomial.zero(fp)
    for a in monics_of_degree(fp, d):
        if v is not None and a.divmod_monic(v.poly)[1].is_zero():
            continue
        total = total + poly_pow(a, k)
    return PowerSumResult(total, d, s, v, "enumeration")


def _column_sum(fp: FieldParams, rows: np.ndarray) -> Polynomial:
    tb = fp.tables
    if rows.shape[0] == 0:
        return Polynomial.zero(fp)
    summed = tb.digits(rows).sum(axis=1) % fp.p
    return Polynomial.from_array(fp, tb.encode(summed))


def enumerate_power_sums(d: int, max_k: int, fp: FieldParams, primes=(),
                         max_cost: int = DEFAULT_MAX_COST) -> dict:
    """Brute-force S_d(-k) and the v-coprime sums for every 0 <= k <= max_k at once.

    All monics are raised to successive powers together, one multiplication by
    a per step.  Returns {None: [S_d(0), ...], v: [S~_d(0), ...], ...}.
    """
    N = fp.q ** d
    if N > max_cost:
        raise CostGuardError(f"q^d = {N} monics exceeds the cost guard {max_cost}")
    tb = fp.tables
    monics = list(monics_of_degree(fp, d))
    A = np.array([m.coeffs for m in monics], dtype=np.int64).reshape(N, d + 1)
    masks = {None: np.ones(N, dtype=bool)}
    for v in primes:
        masks[v] = np.array([not m.divmod_monic(v.poly)[1].is_zero() for m in monics])
    P = np.ones((N, 1), dtype=np.int64)
    out = {key: [_column_sum(fp, P[mask])] for key, mask in masks.items()}
    for _ in range(max_k):
        L = P.shape[1]
        new = np.zeros((N, L + d), dtype=np.int64)
        for i in range(d + 1):
            new[:, i:i + L] = tb.add[new[:, i:i + L], tb.mul[P, A[:, i:i + 1]]]
        P = new
        for key, mask in masks.items():
            out[key].append(_column_sum(fp, P[mask]))
    return out


# -- formula route -----------------------------------------------------------

def formula_terms(d: int, k: int, fp: FieldParams, kind: Kind = Kind.U) -> list[tuple[tuple[int, ...], int, int]]:
    """(parts, exponent, multinomial mod p) for each carry-free index tuple."""
    return [
        (it.parts, it.exponent, multinomial_mod_p(k, it.parts, fp.p))
        for it in enumerate_index_set(d, k, fp, kind)
    ]


def _sum_terms(d: int, k: int, fp: FieldParams, kind: Kind) -> Polynomial:
    p = fp.p
    acc: dict[int, int] = {}
    for it in enumerate_index_set(d, k, fp, kind):
        c = multinomial_mod_p(k, it.parts, p)
        e = it.exponent
        acc[e] = (acc.get(e, 0) + c) % p
    if not acc:
        return Polynomial.zero(fp)
    sign = -1 if d % 2 else 1
    coeffs = [0] * (max(acc) + 1)
    for e, c in acc.items():
        coeffs[e] = sign * c % p
    return Polynomial(fp, coeffs)


@functools.lru_cache(maxsize=1 << 14)
def _formula_value(d: int, k: int, fp: FieldParams) -> Polynomial:
    return _sum_terms(d, k, fp, Kind.U)


def s_formula(d: int, s: int, fp: FieldParams) -> PowerSumResult:
    """S_d(s) from the carry-free multinomial expansion."""
    k = _exponent(s)
    if d < 0:
        raise ValueError("d must be nonnegative")
    return PowerSumResult(_formula_value(d, k, fp), d, s, None, "formula")


@functools.lru_cache(maxsize=1 << 12)
def _prime_power(v: Polynomial, k: int) -> Polynomial:
    return poly_pow(v, k)


@functools.lru_cache(maxsize=1 << 14)
def _twisted_value(d: int, k: int, v: PrimeModulus) -> Polynomial:
    fp = v.field
    e = v.degree
    if d < e:
        return _formula_value(d, k, fp)
    return _formula_value(d, k, fp) - _prime_power(v.poly, k) * _formula_value(d - e, k, fp)


def s_twisted(d: int, s: int, fp: FieldParams, v: PrimeModulus) -> PowerSumResult:
    """S~_d(s) = S_d(s) - v^(-s) S_{d - deg v}(s), which is just S_d(s) when d < deg v."""
    k = _exponent(s)
    if v.field != fp:
        raise ValueError("prime lives over a different field")
    if d < 0:
        raise ValueError("d must be nonnegative")
    return PowerSumResult(_twisted_value(d, k, v), d, s, v, "identity")


def s_twisted_formula_t(d: int, s: int, fp: FieldParams) -> PowerSumResult:
    """S~_d(s) for v = t, straight from its own carry-free expansion."""
    k = _exponent(s)
    if d < 1:
        raise ValueError("the twisted expansion needs d >= 1")
    return PowerSumResult(_sum_terms(d, k, fp, Kind.U_TWISTED), d, s,
                          PrimeModulus(Polynomial.t(fp)), "formula")


# -- predicates and predictions ---------------------------------------------

def vanishes(d: int, s: int, fp: FieldParams) -> bool:
    return l_value(_exponent(s), fp).exceeded_by(d)


def vanishes_twisted(d: int, s: int, fp: FieldParams, v: PrimeModulus | int) -> bool:
    e = v if isinstance(v, int) else v.degree
    L = l_value(_exponent(s), fp)
    return L.exceeded_by(d, offset=e) or e > d > L.floor()


def max_degree_prediction(d: int, s: int, fp: FieldParams) -> int | None:
    g = greedy_element(d, _exponent(s), fp)
    return None if g is None else g.exponent


def nu(d: int, s: int, fp: FieldParams, v: PrimeModulus) -> Valuation:
    value = s_twisted(d, s, fp, v).value
    return Valuation(v_adic_valuation(value, v), d, s, v)


def min_degree_prediction_t(d: int, s: int, fp: FieldParams) -> int | None:
    # direct minimisation over the twisted index set
    k = _exponent(s)
    if d < 1:
        raise ValueError("d must be >= 1")
    exps = [it.exponent for it in enumerate_index_set(d, k, fp, Kind.U_TWISTED)]
    return min(exps) if exps else None


def exponent_counts(d: int, k: int, fp: FieldParams, kind: Kind = Kind.U) -> Counter:
    """How many index tuples land on each t-exponent."""
    return Counter(exponent_of(it.parts) for it in enumerate_index_set(d, k, fp, kind))
