"""Grid sweeps that check each theorem cell by cell, plus the conjecture search.

A cell is a small JSON-able dict (field size, degree or prime, exponent or
tuple) and is checked from scratch, so any record can be replayed alone.
Workers share only the immutable grid.  Results come back in grid order and
a single writer persists them as JSON lines.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

from .digits import (
    Kind,
    index_set_is_empty,
    is_q_even,
    l_value,
    modest_element,
)
from .field import (
    INFINITY,
    Polynomial,
    PrimeModulus,
    field_for_q,
    primes_of_degree,
    v_adic_valuation,
)
from .mzv import (
    Classification,
    is_trivial_zero_all_primes,
    is_trivial_zero_inf,
    is_trivial_zero_v,
    zeta_inf,
    zeta_v,
    zeta_v_value,
)
from .powersum import (
    enumerate_power_sums,
    exponent_counts,
    max_degree_prediction,
    min_degree_prediction_t,
    s_formula,
    s_twisted,
    s_twisted_formula_t,
    vanishes,
    vanishes_twisted,
)

SUITES = (
    "carlitz-sheats",
    "twisted-vanishing",
    "extremal-degrees",
    "valuation-chain",
    "main-theorem",
    "trivial-sufficiency",
    "all-primes-example",
)


class HarnessError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    q_list: tuple[int, ...] = (2, 3)
    max_d: int = 4
    min_s: int = 0  # smallest -s
    max_s: int = 10  # largest -s
    depths: tuple[int, ...] = (1, 2, 3)
    prime_degrees: tuple[int, ...] = (1,)
    max_enum_cost: int = 625  # q^d cap for the enumeration oracle
    max_cells: int = 2_000_000

    def __post_init__(self):
        for name in ("q_list", "depths", "prime_degrees"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))
        if self.max_d < 0 or self.min_s < 0 or self.max_s < self.min_s:
            raise HarnessError(f"bad ranges: max_d={self.max_d}, s in [-{self.max_s}, -{self.min_s}]")
        if any(r < 1 for r in self.depths) or any(e < 1 for e in self.prime_degrees):
            raise HarnessError("depths and prime degrees must be positive")
        if self.max_enum_cost < 1 or self.max_cells < 1:
            raise HarnessError("cost caps must be positive")
        for q in self.q_list:
            field_for_q(q)

    def to_json(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    @classmethod
    def from_json(cls, data: dict) -> "GridSpec":
        return cls(**data)

    @property
    def exponents(self) -> range:
        return range(self.min_s, self.max_s + 1)


@dataclass
class SuiteReport:
    suite: str
    cells: int = 0
    failures: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "cells": self.cells,
            "failures": len(self.failures),
            "counterexamples": len(self.counterexamples),
            "passed": self.passed,
        }


def cell_key(cell: dict) -> str:
    return json.dumps(cell, sort_keys=True)


def _prime(fp, text):
    return None if text is None else PrimeModulus.from_text(fp, text)


def _nu_json(x):
    return "inf" if x is INFINITY else x


class _Checker:
    """Collects (check, expected, actual) triples for one cell."""

    def __init__(self):
        self.failures = []

    def eq(self, name, expected, actual):
        if expected != actual:
            self.failures.append({"check": name, "expected": expected, "actual": actual})

    def record(self, suite, cell, **info):
        rec = {"suite": suite, "cell": cell, "ok": not self.failures}
        if self.failures:
            rec["failures"] = self.failures
        rec.update(info)
        return rec


@functools.lru_cache(maxsize=64)
def _oracle_table(q: int, d: int, block: int, degrees: tuple[int, ...]):
    fp = field_for_q(q)
    primes = [v for e in degrees for v in primes_of_degree(fp, e)]
    return enumerate_power_sums(d, block, fp, primes)


def _oracle(q, d, k, v, grid):
    """Enumeration value of S_d(-k) (v None) or the v-coprime sum, or None if over the cost cap."""
    if q ** d > grid.max_enum_cost:
        return None
    block = -(-max(k, 1) // 64) * 64
    degrees = () if v is None else (v.degree,)
    return _oracle_table(q, d, block, degrees)[v][k]


# -- per-suite cells and checks ---------------------------------------------

def _cells_powersum(grid):
    for q in grid.q_list:
        for d in range(grid.max_d + 1):
            for k in grid.exponents:
                yield {"q": q, "d": d, "s": -k}


def _cells_twisted(grid):
    for q in grid.q_list:
        fp = field_for_q(q)
        for e in grid.prime_degrees:
            for v in primes_of_degree(fp, e):
                for d in range(grid.max_d + 1):
                    for k in grid.exponents:
                        yield {"q": q, "v": str(v), "d": d, "s": -k}


def _check_carlitz_sheats(cell, grid):
    q, d, s = cell["q"], cell["d"], cell["s"]
    fp = field_for_q(q)
    k = -s
    c = _Checker()
    value = s_formula(d, s, fp).value
    oracle = _oracle(q, d, k, None, grid)
    if oracle is not None:
        c.eq("formula=enumeration", str(oracle), str(value))
    c.eq("zero<=>d>L", vanishes(d, s, fp), value.is_zero())
    if k > 0:
        c.eq("V_d(k) empty<=>d>=L", l_value(k, fp).reached_by(d), index_set_is_empty(d, k, fp, Kind.V))
    if not value.is_zero():
        top = max_degree_prediction(d, s, fp)
        c.eq("degree=greedy exponent", top, value.degree)
        c.eq("unique greedy term", 1, exponent_counts(d, k, fp)[top])
    return c.record("carlitz-sheats", cell, value=str(value), enumerated=oracle is not None)


def _check_twisted(cell, grid):
    q, d, s = cell["q"], cell["d"], cell["s"]
    fp = field_for_q(q)
    v = _prime(fp, cell["v"])
    k = -s
    c = _Checker()
    value = s_twisted(d, s, fp, v).value
    oracle = _oracle(q, d, k, v, grid)
    if oracle is not None:
        c.eq("identity=filtered enumeration", str(oracle), str(value))
    c.eq("zero<=>twisted criterion", vanishes_twisted(d, s, fp, v), value.is_zero())
    if v.poly == Polynomial.t(fp) and d >= 1:
        c.eq("twisted expansion=identity", str(value), str(s_twisted_formula_t(d, s, fp).value))
    L = l_value(k, fp)
    tags = [name for name, hit in (
        ("d=deg v", d == v.degree),
        ("d=floor(L)+1", d == L.floor() + 1),
        ("deg v=d=1", v.degree == d == 1),
    ) if hit]
    return c.record("twisted-vanishing", cell, value=str(value), boundary=tags, enumerated=oracle is not None)


def _check_extremal(cell, grid):
    q, d, s = cell["q"], cell["d"], cell["s"]
    fp = field_for_q(q)
    k = -s
    c = _Checker()
    tv = PrimeModulus(Polynomial.t(fp))
    value = s_formula(d, s, fp).value
    if not value.is_zero():
        c.eq("degree=greedy exponent", max_degree_prediction(d, s, fp), value.degree)
        m = modest_element(d, k, fp)
        c.eq("t-adic valuation=modest exponent", m.exponent, v_adic_valuation(value, tv))
        c.eq("unique modest term", 1, exponent_counts(d, k, fp)[m.exponent])
    nu = None
    if d >= 1:
        twisted = s_twisted(d, s, fp, tv).value
        if not twisted.is_zero():
            nu = v_adic_valuation(twisted, tv)
            pred = min_degree_prediction_t(d, s, fp)
            c.eq("nu_d=min twisted exponent", pred, nu)
            c.eq("unique minimal twisted term", 1, exponent_counts(d, k, fp, Kind.U_TWISTED)[pred])
    return c.record("extremal-degrees", cell, nu=nu)


def _cells_chain(grid):
    for q in grid.q_list:
        fp = field_for_q(q)
        for v in primes_of_degree(fp, 1):
            for k in grid.exponents:
                if k > 0:
                    yield {"q": q, "v": str(v), "s": -k}


def _check_chain(cell, grid):
    q, s = cell["q"], cell["s"]
    fp = field_for_q(q)
    v = _prime(fp, cell["v"])
    top = l_value(-s, fp).floor() + 1
    nus = [v_adic_valuation(s_twisted(d, s, fp, v).value, v) for d in range(top + 1)]
    c = _Checker()
    for d in range(top, 0, -1):
        a, b = nus[d], nus[d - 1]
        ok = (a is not INFINITY and b is not INFINITY) and (a > b if d >= 2 else a >= b)
        if not ok:
            rel = ">" if d >= 2 else ">="
            c.failures.append({"check": f"nu_{d} {rel} nu_{d - 1}", "expected": True,
                               "actual": [_nu_json(a), _nu_json(b)]})
    return c.record("valuation-chain", cell, nu=[_nu_json(x) for x in nus], nu1_equals_nu0=nus[1] == nus[0])


def _tuples(grid, depths):
    lo, hi = grid.min_s, grid.max_s
    for r in depths:
        for s in itertools.product(range(-lo, -hi - 1, -1), repeat=r):
            yield r, list(s)


def _cells_main(grid):
    for q in grid.q_list:
        fp = field_for_q(q)
        for r, s in _tuples(grid, grid.depths):
            if r == 1 and s[0] == 0:
                continue
            yield {"q": q, "v": None, "s": s}
        for v in primes_of_degree(fp, 1):
            for r, s in _tuples(grid, grid.depths):
                if r == 1 and s[0] == 0:
                    continue
                yield {"q": q, "v": str(v), "s": s}


def _check_main(cell, grid):
    q, s = cell["q"], tuple(cell["s"])
    fp = field_for_q(q)
    v = _prime(fp, cell["v"])
    c = _Checker()
    rep = zeta_inf(s, fp) if v is None else zeta_v(s, fp, v)
    if len(s) == 1:
        c.eq("zero<=>q-even", is_q_even(s[0], fp), rep.is_zero)
    else:
        trivial = is_trivial_zero_inf(s, fp) if v is None else is_trivial_zero_v(s, fp, v)
        c.eq("zero<=>trivial", bool(trivial), rep.is_zero)
        if v is not None and not trivial:
            c.eq("valuation=sum of nu", _nu_json(rep.nu_predicted), _nu_json(rep.nu_actual))
    return c.record("main-theorem", cell, **{k: rep.to_json()[k] for k in ("value", "class", "witness")})


def _cells_sufficiency(grid):
    for q in grid.q_list:
        fp = field_for_q(q)
        for e in grid.prime_degrees:
            for v in primes_of_degree(fp, e):
                for r, s in _tuples(grid, [r for r in grid.depths if r > 1]):
                    yield {"q": q, "v": str(v), "s": s}


def _check_sufficiency(cell, grid):
    q, s = cell["q"], tuple(cell["s"])
    fp = field_for_q(q)
    v = _prime(fp, cell["v"])
    c = _Checker()
    trivial = is_trivial_zero_v(s, fp, v)
    value = zeta_v_value(s, fp, v) if trivial else None
    if trivial:
        c.eq("trivial=>zero", "0", str(value))
    return c.record("trivial-sufficiency", cell, trivial=bool(trivial),
                    witness=None if not trivial else list(trivial.witness))


def example_tuples(q: int, r: int, max_n: int = 1) -> Iterator[list[int]]:
    """Tuples whose first three entries are -p^n (n <= max_n); later entries are -1."""
    p = field_for_q(q).p
    for ns in itertools.product(range(max_n + 1), repeat=3):
        yield [-(p ** n) for n in ns] + [-1] * (r - 3)


def _cells_example(grid):
    for q in grid.q_list:
        rmin = 3 if q > 2 else 5
        for r in sorted({rmin} | {r for r in grid.depths if r >= rmin}):
            for s in example_tuples(q, r):
                yield {"q": q, "s": s}


def expected_example_witness(q: int, e: int) -> tuple[int, ...]:
    if q > 2:
        return (1,) if e == 1 else (2, 1)
    return (1,) if e <= 2 else (3, 1)


def _check_example(cell, grid):
    q, s = cell["q"], tuple(cell["s"])
    fp = field_for_q(q)
    r = len(s)
    c = _Checker()
    check = is_trivial_zero_all_primes(s, fp)
    c.eq("all-primes trivial", True, check.holds)
    rmin = 3 if q > 2 else 5
    if r == rmin and all(x == -1 for x in s[3:]):
        for e, w in check.per_degree.items():
            c.eq(f"witness at degree {e}", list(expected_example_witness(q, e)),
                 None if w.witness is None else list(w.witness))
    for e in (r + 1, r + 2):
        c.eq(f"trivial at degree {e} > r", True, bool(is_trivial_zero_v(s, fp, e)))
    if grid.max_enum_cost >= q:
        # actual values at one prime per degree
        for e in range(1, r + 1):
            v = primes_of_degree(fp, e)[0]
            c.eq(f"zeta_v=0 at {v}", "0", str(zeta_v_value(s, fp, v)))
    return c.record("all-primes-example", cell,
                    witness={str(e): list(w.witness) for e, w in check.per_degree.items() if w.witness})


_SUITE_TABLE: dict[str, tuple[Callable, Callable]] = {
    "carlitz-sheats": (_cells_powersum, _check_carlitz_sheats),
    "twisted-vanishing": (_cells_twisted, _check_twisted),
    "extremal-degrees": (_cells_powersum, _check_extremal),
    "valuation-chain": (_cells_chain, _check_chain),
    "main-theorem": (_cells_main, _check_main),
    "trivial-sufficiency": (_cells_sufficiency, _check_sufficiency),
    "all-primes-example": (_cells_example, _check_example),
}


# -- conjecture search -------------------------------------------------------

def zeta_v_by_enumeration(s, fp, v) -> Polynomial:
    """zeta_v from brute-force coprime power sums and the literal chain sum.

    Independent of the formula route: every S~_d is a direct sum over monics,
    and chains run one degree past the largest vanishing bound.
    """
    s = tuple(s)
    cutoff = max((l_value(-x, fp).numerator // (fp.q - 1)) + v.degree for x in s) + 1
    kmax = max(-x for x in s)
    block = -(-max(kmax, 1) // 64) * 64
    tables = [_oracle_table(fp.q, d, block, (v.degree,))[v] for d in range(cutoff + 1)]
    total = Polynomial.zero(fp)
    for chain in itertools.combinations(range(cutoff, -1, -1), len(s)):
        term = Polynomial.one(fp)
        for x, d in zip(s, chain):
            term = term * tables[d][-x]
        total = total + term
    return total


def _cells_conjecture(grid):
    for q in grid.q_list:
        fp = field_for_q(q)
        for e in grid.prime_degrees:
            for v in primes_of_degree(fp, e):
                for r, s in _tuples(grid, grid.depths):
                    yield {"q": q, "v": str(v), "s": s}


def _check_conjecture(cell, grid, confirm=True):
    q, s = cell["q"], tuple(cell["s"])
    fp = field_for_q(q)
    v = _prime(fp, cell["v"])
    rep = zeta_v(s, fp, v)
    c = _Checker()
    info = rep.to_json()
    counterexample = rep.classification is Classification.NONTRIVIAL
    if len(s) > 1:
        trivial = is_trivial_zero_v(s, fp, v)
        if trivial and not rep.is_zero:
            c.eq("trivial=>zero", "0", str(rep.value))
    elif not rep.is_zero and is_q_even(s[0], fp) and s[0] < 0:
        counterexample = True
    cutoff = max(l_value(-x, fp).floor() for x in s) + v.degree + 1
    if counterexample and confirm and fp.q ** cutoff <= grid.max_enum_cost * 100:
        info["confirmed_by_enumeration"] = str(zeta_v_by_enumeration(s, fp, v)) == str(rep.value)
    rec = c.record("conjecture", cell, counterexample=counterexample, report=info)
    return rec


def search_conjecture(grid: GridSpec, jobs: int = 1, out: str | None = None, resume: bool = False,
                      confirm: bool = True, emit: Callable | None = None) -> SuiteReport:
    """Evaluate zeta_v on every cell and report every nontrivial zero found.

    Counterexamples are findings, not failures; only a trivial zero with a
    nonzero value counts as a failure.
    """
    if any(e < 2 for e in grid.prime_degrees):
        raise HarnessError("the conjecture search is for primes of degree >= 2")
    check = functools.partial(_check_conjecture, grid=grid, confirm=confirm)
    report = _run(
        "conjecture", _cells_conjecture(grid), check, grid, jobs, out, resume, emit)
    report.counterexamples = [r for r in report.records if r.get("counterexample")]
    return report


# -- driver ------------------------------------------------------------------

def run_suite(name: str, grid: GridSpec, jobs: int = 1, out: str | None = None, resume: bool = False,
              emit: Callable | None = None) -> SuiteReport:
    if name not in _SUITE_TABLE:
        raise HarnessError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cells_fn, check_fn = _SUITE_TABLE[name]
    return _run(name, cells_fn(grid), functools.partial(check_fn, grid=grid), grid, jobs, out, resume, emit)


def replay(record: dict, grid: GridSpec | None = None) -> dict:
    """Re-run the cell of a stored record; the result should equal the record."""
    grid = grid or GridSpec()
    suite = record["suite"]
    if suite == "conjecture":
        return _check_conjecture(record["cell"], grid)
    return _SUITE_TABLE[suite][1](record["cell"], grid)


def _load_existing(path: str) -> list[dict]:
    records = []
    if not os.path.exists(path):
        return records
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if "cell" in rec:
                records.append(rec)
    return records


def _run(name, cells: Iterable[dict], check, grid, jobs, out, resume, emit) -> SuiteReport:
    start = time.perf_counter()
    cells = list(cells)
    if len(cells) > grid.max_cells:
        raise HarnessError(f"{len(cells)} cells exceed the cap of {grid.max_cells}")
    report = SuiteReport(name)
    done = {}
    if out and resume:
        for rec in _load_existing(out):
            if rec.get("suite") == name:
                done[cell_key(rec["cell"])] = rec
    todo = [cell for cell in cells if cell_key(cell) not in done]
    fh = None
    if out:
        fresh = not (resume and os.path.exists(out))
        fh = open(out, "a" if not fresh else "w")
        if fresh:
            fh.write(json.dumps({"header": {"suite": name, "grid": grid.to_json()}}) + "\n")
    try:
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(check, todo, chunksize=max(1, len(todo) // (8 * jobs))))
        else:
            results = map(check, todo)
        fresh_by_key = {}
        for rec in results:
            fresh_by_key[cell_key(rec["cell"])] = rec
            if fh:
                fh.write(json.dumps(rec) + "\n")
        # merge in grid order
        for cell in cells:
            key = cell_key(cell)
            rec = done.get(key) or fresh_by_key[key]
            report.records.append(rec)
            if emit:
                emit(rec)
            if not rec["ok"]:
                report.failures.append(rec)
        report.cells = len(cells)
        report.wall_time = time.perf_counter() - start
        if fh:
            fh.write(json.dumps({"trailer": {**report.summary(), "wall_time": round(report.wall_time, 3)}}) + "\n")
    finally:
        if fh:
            fh.close()
    return report
