"""Exact arithmetic in F_q = F_p[x]/(m(x)) and in the polynomial ring F_q[t].

Elements of F_q are encoded as integers in [0, q): the element
c_0 + c_1 x + ... + c_{f-1} x^{f-1} is stored as c_0 + c_1 p + ... + c_{f-1} p^{f-1}.
For f = 1 this is just the residue mod p.  Polynomials in t are immutable
tuples of such codes, lowest degree first, with no trailing zeros.

Multiplication goes through numpy: each polynomial is split into its f
coordinate polynomials over F_p, these are convolved exactly in int64 and the
result is reduced modulo m(x).
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np


class FieldError(ValueError):
    pass


class _Sentinel:
    """Tagged marker value; deliberately supports no arithmetic."""

    __slots__ = ("_name", "_order")

    def __init__(self, name: str, order: int):
        self._name = name
        self._order = order

    def __repr__(self):
        return self._name

    def __reduce__(self):
        return (_sentinel_by_name, (self._name,))

    # infinity compares above every integer, the zero-degree marker below
    def _cmp_key(self, other):
        if isinstance(other, _Sentinel):
            return self._order, other._order
        if isinstance(other, int):
            return self._order, 0
        return NotImplemented

    def __lt__(self, other):
        k = self._cmp_key(other)
        return k if k is NotImplemented else k[0] < k[1]

    def __gt__(self, other):
        k = self._cmp_key(other)
        return k if k is NotImplemented else k[0] > k[1]

    def __le__(self, other):
        k = self._cmp_key(other)
        return k if k is NotImplemented else k[0] <= k[1]

    def __ge__(self, other):
        k = self._cmp_key(other)
        return k if k is NotImplemented else k[0] >= k[1]


INFINITY = _Sentinel("inf", 1)
ZERO_DEGREE = _Sentinel("-inf", -1)


def _sentinel_by_name(name):
    return INFINITY if name == "inf" else ZERO_DEGREE


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power_split(q: int) -> tuple[int, int]:
    """Return (p, f) with q = p**f, or raise FieldError."""
    if q < 2:
        raise FieldError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    f, r = 0, q
    while r % p == 0:
        r //= p
        f += 1
    if r != 1:
        raise FieldError(f"q={q} is not a prime power")
    return p, f


# -- polynomials over the prime field, used only to build F_q ---------------

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, b, p):
    a = _fp_trim([x % p for x in a])
    b = _fp_trim(b)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _fp_trim(a)
    return a


def _fp_irreducible(m: Sequence[int], p: int) -> bool:
    deg = len(_fp_trim(m)) - 1
    if deg < 1:
        return False
    for e in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            if not _fp_mod(m, list(low) + [1], p):
                return False
    return True


def _default_modulus(p: int, f: int) -> tuple[int, ...]:
    # lexicographically smallest, comparing from the constant term upward
    for low in itertools.product(range(p), repeat=f):
        m = low + (1,)
        if _fp_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible of degree {f} over F_{p}")


@dataclass(frozen=True)
class FieldParams:
    """The finite field F_q, q = p**f, given by a monic irreducible modulus over F_p.

    ``modulus`` lists coefficients from the constant term up and has length f + 1.
    """

    p: int
    f: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime_int(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if self.f < 1:
            raise FieldError(f"f={self.f} must be positive")
        m = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.f + 1 or m[-1] != 1:
            raise FieldError(f"modulus {m} is not monic of degree {self.f}")
        if any(not 0 <= c < self.p for c in m):
            raise FieldError(f"modulus {m} has coefficients outside [0, {self.p})")
        if not _fp_irreducible(m, self.p):
            raise FieldError(f"modulus {m} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.f

    @functools.cached_property
    def tables(self) -> "_Tables":
        return _Tables(self)

    def coords(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.f):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.f or any(not 0 <= c < self.p for c in coords):
            raise FieldError(f"bad coordinate vector {coords!r}")
        return sum(c * self.p ** i for i, c in enumerate(coords))

    def element_str(self, code: int) -> str:
        if self.f == 1:
            return str(code)
        return np.base_repr(code, self.p).lower()

    def parse_element(self, text: str) -> int:
        try:
            code = int(text, self.p) if self.f > 1 else int(text)
        except ValueError:
            raise FieldError(f"cannot parse field element {text!r}") from None
        if self.f == 1:
            code %= self.p
        elif not 0 <= code < self.q:
            raise FieldError(f"field element {text!r} out of range")
        return code

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}


class _Tables:
    """Addition/multiplication tables for F_q, as numpy arrays and nested lists."""

    def __init__(self, fp: FieldParams):
        p, f, q = fp.p, fp.f, fp.q
        self.p, self.f, self.q = p, f, q
        codes = np.arange(q)
        digits = np.stack([(codes // p ** i) % p for i in range(f)])  # (f, q)
        self.weights = np.array([p ** i for i in range(f)], dtype=np.int64)
        add = np.zeros((q, q), dtype=np.int64)
        for i in range(f):
            add += ((digits[i][:, None] + digits[i][None, :]) % p) * p ** i
        neg = ((-digits) % p * self.weights[:, None]).sum(axis=0)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                mul[a, b] = _mul_codes(a, b, fp)
        self.add = add
        self.neg = neg
        self.mul = mul
        self.add_l = add.tolist()
        self.neg_l = neg.tolist()
        self.mul_l = mul.tolist()
        self.inv_l = [0] * q
        for a in range(1, q):
            self.inv_l[a] = int(np.nonzero(mul[a] == 1)[0][0])

    def digits(self, arr: np.ndarray) -> np.ndarray:
        """Split codes into coordinates; the new leading axis has length f."""
        return np.stack([(arr // self.weights[i]) % self.p for i in range(self.f)])

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return np.tensordot(self.weights, coords % self.p, axes=(0, 0))


def _mul_codes(a: int, b: int, fp: FieldParams) -> int:
    p, f = fp.p, fp.f
    ca, cb = fp.coords(a), fp.coords(b)
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            prod[i + j] += x * y
    rem = _fp_mod(prod, fp.modulus, p) if f > 1 else [prod[0] % p]
    rem = rem + [0] * (f - len(rem))
    return fp.from_coords(rem)


def make_field(p: int, f: int = 1, modulus: Sequence[int] | None = None) -> FieldParams:
    """Build F_{p^f}; without an explicit modulus the default rule picks one."""
    if not is_prime_int(p):
        raise FieldError(f"p={p} is not prime")
    if f < 1:
        raise FieldError(f"f={f} must be positive")
    if modulus is None:
        modulus = _default_modulus(p, f)
    return FieldParams(p, f, tuple(modulus))


@functools.cache
def field_for_q(q: int) -> FieldParams:
    p, f = prime_power_split(q)
    return make_field(p, f)


# -- polynomials in t --------------------------------------------------------

_TERM_RE = re.compile(r"^(?:([0-9a-su-z]+)\*?)?(t(?:\^(\d+))?)?$")


class Polynomial:
    """Immutable element of F_q[t]."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldParams, coeffs: Sequence[int] = ()):
        coeffs = [int(c) for c in coeffs]
        q = field.q
        for c in coeffs:
            if not 0 <= c < q:
                raise FieldError(f"coefficient code {c} outside [0, {q})")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.field, self.coeffs))

    # constructors
    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def t(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, degree: int, code: int = 1):
        return cls(field, [0] * degree + [code])

    @classmethod
    def from_array(cls, field, arr) -> "Polynomial":
        return cls(field, np.asarray(arr).tolist())

    # basic queries
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Polynomial(q={self.field.q}, {self})"

    def __str__(self):
        return self.to_text()

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.field != self.field:
            raise FieldError("polynomials live over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        add = self.field.tables.add_l
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add[out[i]][c]
        return Polynomial(self.field, out)

    def __neg__(self):
        neg = self.field.tables.neg_l
        return Polynomial(self.field, [neg[c] for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other % self.field.p)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.field, _poly_mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, code: int) -> "Polynomial":
        """Multiply by the field element with the given code."""
        mul = self.field.tables.mul_l[code]
        return Polynomial(self.field, [mul[c] for c in self.coeffs])

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def shift(self, k: int) -> "Polynomial":
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return Polynomial(self.field, (0,) * k + self.coeffs)

    def divmod_monic(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division by a monic polynomial."""
        if not divisor.is_monic():
            raise FieldError("divisor must be monic")
        tb = self.field.tables
        mul, add, neg = tb.mul_l, tb.add_l, tb.neg_l
        b = divisor.coeffs
        n = len(b) - 1
        rem = list(self.coeffs)
        if len(rem) <= n:
            return Polynomial.zero(self.field), self
        quot = [0] * (len(rem) - n)
        for k in range(len(rem) - 1, n - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            quot[k - n] = c
            nc = neg[c]
            mrow = mul[nc]
            for i in range(n):
                j = k - n + i
                rem[j] = add[rem[j]][mrow[b[i]]]
            rem[k] = 0
        return Polynomial(self.field, quot), Polynomial(self.field, rem[:n])

    # text / json
    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            cs = self.field.element_str(c)
            terms.append(cs if k == 0 else f"{cs}*t^{k}")
        return "+".join(terms)

    @classmethod
    def from_text(cls, field: FieldParams, text: str) -> "Polynomial":
        """Parse text such as ``2*t^2+1``, ``t+1`` or ``t^2+t+1``."""
        s = text.replace(" ", "").lower()
        if not s:
            raise FieldError("empty polynomial text")
        acc: dict[int, int] = {}
        add = field.tables.add_l
        for term in s.split("+"):
            m = _TERM_RE.match(term)
            if not term or m is None or (m.group(1) is None and m.group(2) is None):
                raise FieldError(f"cannot parse term {term!r} in {text!r}")
            coeff = field.parse_element(m.group(1)) if m.group(1) is not None else 1
            if m.group(2) is None:
                k = 0
            else:
                k = int(m.group(3)) if m.group(3) is not None else 1
            acc[k] = add[acc.get(k, 0)][coeff]
        deg = max(acc)
        return cls(field, [acc.get(k, 0) for k in range(deg + 1)])

    def to_json(self) -> dict:
        fp = self.field
        d = fp.to_json()
        d["coeffs"] = [list(fp.coords(c)) for c in self.coeffs]
        return d

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        fp = make_field(data["p"], data["f"], data["modulus"])
        return cls(fp, [fp.from_coords(c) for c in data["coeffs"]])


def _poly_mul(fp: FieldParams, a: tuple, b: tuple) -> list:
    if not a or not b:
        return []
    if len(a) == 1 or len(b) == 1:
        c, other = (a[0], b) if len(a) == 1 else (b[0], a)
        row = fp.tables.mul_l[c]
        return [row[x] for x in other]
    tb = fp.tables
    p, f = fp.p, fp.f
    A = tb.digits(np.asarray(a, dtype=np.int64))
    B = tb.digits(np.asarray(b, dtype=np.int64))
    C = np.zeros((2 * f - 1, len(a) + len(b) - 1), dtype=np.int64)
    for i in range(f):
        for j in range(f):
            C[i + j] += np.convolve(A[i], B[j])
    C %= p
    m = fp.modulus
    for k in range(2 * f - 2, f - 1, -1):
        # x^k = -x^(k-f) * (m_0 + ... + m_{f-1} x^(f-1))
        for i in range(f):
            if m[i]:
                C[k - f + i] = (C[k - f + i] - m[i] * C[k]) % p
    return tb.encode(C[:f]).tolist()


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.field != b.field:
        raise FieldError("polynomials live over different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_pow(a: Polynomial, e: int) -> Polynomial:
    """a**e by square-and-multiply."""
    if e < 0:
        raise ValueError("negative exponent")
    result = Polynomial.one(a.field)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def monics_of_degree(fp: FieldParams, d: int) -> Iterator[Polynomial]:
    """All q**d monic polynomials of degree d.

    Ordered lexicographically on the coefficient vector read from the constant
    term upward, matching the default-modulus rule.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    for low in itertools.product(range(fp.q), repeat=d):
        yield Polynomial(fp, low + (1,))


def is_irreducible(a: Polynomial) -> bool:
    """Trial division by every monic of degree <= deg(a)/2."""
    if a.is_zero() or a.degree < 1:
        raise FieldError("irreducibility is only defined for non-constant polynomials")
    if not a.is_monic():
        a = a.scale(a.field.tables.inv_l[a.leading()])
    for e in range(1, a.degree // 2 + 1):
        for m in monics_of_degree(a.field, e):
            if a.divmod_monic(m)[1].is_zero():
                return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A monic irreducible v in F_q[t]."""

    poly: Polynomial

    def __post_init__(self):
        if not self.poly.is_monic() or self.poly.degree < 1:
            raise FieldError(f"{self.poly} is not a monic non-constant polynomial")
        if not is_irreducible(self.poly):
            raise FieldError(f"{self.poly} is not irreducible")

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def field(self) -> FieldParams:
        return self.poly.field

    @classmethod
    def from_text(cls, fp: FieldParams, text: str) -> "PrimeModulus":
        return cls(Polynomial.from_text(fp, text))

    def __str__(self):
        return str(self.poly)


@functools.cache
def primes_of_degree(fp: FieldParams, d: int) -> tuple[PrimeModulus, ...]:
    if d < 1:
        raise ValueError("prime degree must be positive")
    return tuple(PrimeModulus(m) for m in monics_of_degree(fp, d) if is_irreducible(m))


@functools.cache
def _binomials_mod_p(p: int, n: int) -> np.ndarray:
    """Pascal triangle mod p, rows 0..n-1."""
    B = np.zeros((n, n), dtype=np.int64)
    B[:, 0] = 1
    for i in range(1, n):
        B[i, 1:i + 1] = (B[i - 1, 1:i + 1] + B[i - 1, 0:i]) % p
    return B


def _root_order(a: Polynomial, theta: int) -> int:
    """Order of vanishing of a at t = theta, via the Taylor coefficients at theta."""
    fp = a.field
    tb = fp.tables
    n = len(a.coeffs)
    size = 64
    while size < n:
        size *= 2
    binom = _binomials_mod_p(fp.p, size)
    coeffs = np.asarray(a.coeffs, dtype=np.int64)
    powers = [1]
    for _ in range(n):
        powers.append(tb.mul_l[powers[-1]][theta])
    powers = np.asarray(powers, dtype=np.int64)
    for j in range(n):
        # j-th Taylor coefficient: sum_i a_i * C(i, j) * theta^(i-j)
        terms = tb.mul[tb.mul[coeffs[j:], binom[j:n, j]], powers[: n - j]]
        if tb.digits(terms).sum(axis=1).__mod__(fp.p).any():
            return j
    raise AssertionError("nonzero polynomial vanishes identically")


def v_adic_valuation(a: Polynomial, v: PrimeModulus):
    """Largest e with v**e dividing a; INFINITY for a = 0."""
    if a.field != v.field:
        raise FieldError("polynomials live over different fields")
    if a.is_zero():
        return INFINITY
    vc = v.poly.coeffs
    if vc == (0, 1):
        return next(k for k, c in enumerate(a.coeffs) if c)
    if len(vc) == 2:
        return _root_order(a, a.field.tables.neg_l[vc[0]])
    return valuation_by_division(a, v)


def valuation_by_division(a: Polynomial, v: PrimeModulus):
    """Valuation by repeated exact division; slow but independent of _root_order."""
    if a.is_zero():
        return INFINITY
    e = 0
    while True:
        quot, rem = a.divmod_monic(v.poly)
        if not rem.is_zero():
            return e
        a = quot
        e += 1
