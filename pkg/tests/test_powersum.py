import pytest

import oracle
from fqmzv.digits import Kind, greedy_element, l_value
from fqmzv.field import INFINITY, Polynomial, PrimeModulus, field_for_q, primes_of_degree
from fqmzv.powersum import (
    CostGuardError,
    enumerate_power_sums,
    exponent_counts,
    max_degree_prediction,
    min_degree_prediction_t,
    nu,
    s_enumerate,
    s_formula,
    s_twisted,
    s_twisted_formula_t,
    vanishes,
    vanishes_twisted,
)

F2, F3, F4, F5 = (field_for_q(q) for q in (2, 3, 4, 5))


def P(fp, text):
    return Polynomial.from_text(fp, text)


def V(fp, text):
    return PrimeModulus.from_text(fp, text)


def test_enumerate_examples():
    assert s_enumerate(1, -3, F2).value == P(F2, "t^2+t+1")
    assert s_enumerate(1, -4, F3).value == P(F3, "2")
    for fp in (F2, F3, F4):
        assert s_enumerate(0, -7, fp).value == Polynomial.one(fp)


def test_formula_examples():
    assert s_formula(1, -3, F2).value == P(F2, "t^2+t+1")
    assert s_formula(1, -4, F3).value == P(F3, "2")
    assert s_formula(2, -1, F3).value.is_zero()


def test_twisted_examples():
    t3 = V(F3, "t")
    assert s_twisted(1, -2, F3, t3).value == P(F3, "2*t^2+2")
    assert s_twisted(1, -1, F2, V(F2, "t")).value == P(F2, "t+1")
    assert s_twisted(2, -2, F3, t3).value == P(F3, "t^2")


def test_twisted_expansion_examples():
    assert s_twisted_formula_t(1, -1, F2).value == P(F2, "t+1")
    assert s_twisted_formula_t(1, -2, F3).value == P(F3, "2*t^2+2")
    assert s_twisted_formula_t(2, -1, F3).value.is_zero()


@pytest.mark.parametrize("q", [2, 3, 5])
def test_routes_match_naive_oracle(q):
    fp = field_for_q(q)
    primes = list(primes_of_degree(fp, 1)) + list(primes_of_degree(fp, 2))
    for d in range(0, 3 if q < 5 else 2):
        for k in range(0, 14):
            expected = oracle.power_sum(d, k, q)
            assert list(s_formula(d, -k, fp).value.coeffs) == expected
            assert list(s_enumerate(d, -k, fp).value.coeffs) == expected
            for v in primes:
                exp_t = oracle.power_sum(d, k, q, list(v.poly.coeffs))
                assert list(s_twisted(d, -k, fp, v).value.coeffs) == exp_t, (d, k, str(v))


def test_enumerate_power_sums_matches_single_calls():
    for fp in (F2, F3, F4):
        primes = primes_of_degree(fp, 1)
        for d in range(0, 3):
            table = enumerate_power_sums(d, 20, fp, primes)
            for k in range(21):
                assert table[None][k] == s_enumerate(d, -k, fp).value
                for v in primes:
                    assert table[v][k] == s_enumerate(d, -k, fp, v).value


def test_vanishing_examples():
    assert vanishes(1, -1, F3)
    assert not vanishes_twisted(1, -1, F3, V(F3, "t"))
    assert not vanishes_twisted(1, -3, F2, V(F2, "t^2+t+1"))
    # the degree of v can be given directly
    assert vanishes_twisted(1, -1, F3, 1) == vanishes_twisted(1, -1, F3, V(F3, "t"))


def test_vanishing_criteria_match_values_over_f4():
    # f > 1: L_k takes the minimum over the Frobenius twists
    for d in range(0, 4):
        for k in range(0, 40):
            assert vanishes(d, -k, F4) == s_formula(d, -k, F4).value.is_zero()
            for v in primes_of_degree(F4, 1):
                assert vanishes_twisted(d, -k, F4, v) == s_twisted(d, -k, F4, v).value.is_zero()


def test_max_degree_examples():
    assert max_degree_prediction(1, -3, F2) == 2
    assert max_degree_prediction(1, -4, F3) == 0
    assert max_degree_prediction(2, -1, F3) is None


def test_nu_examples():
    t3 = V(F3, "t")
    assert nu(1, -1, F3, t3).nu == 1
    assert nu(0, -5, F3, t3).nu == 0
    assert nu(1, -1, F2, V(F2, "t")).nu == 0
    assert nu(2, -1, F3, t3).nu is INFINITY


def test_min_degree_examples():
    assert min_degree_prediction_t(1, -1, F3) == 1
    assert min_degree_prediction_t(1, -1, F2) == 0
    assert min_degree_prediction_t(2, -1, F3) is None


def test_greedy_term_is_unique_and_gives_degree():
    for fp in (F2, F3, F4, F5):
        for d in range(1, 4):
            for k in range(1, 50):
                value = s_formula(d, -k, fp).value
                g = greedy_element(d, k, fp)
                if g is None:
                    assert value.is_zero()
                    continue
                assert exponent_counts(d, k, fp)[g.exponent] == 1
                assert value.degree == g.exponent


def test_valuation_chain_small():
    for fp in (F2, F3, F5):
        t = V(fp, "t")
        for k in range(1, 40):
            top = l_value(k, fp).floor() + 1
            nus = [nu(d, -k, fp, t).nu for d in range(top + 1)]
            assert all(n is not INFINITY for n in nus)
            assert all(nus[d] > nus[d - 1] for d in range(2, top + 1))
            assert nus[1] >= nus[0]


def test_exponent_counts_twisted():
    counts = exponent_counts(1, 2, F3, Kind.U_TWISTED)
    assert sum(counts.values()) == 2  # (2, 0) and (0, 2)


def test_cost_guard():
    with pytest.raises(CostGuardError):
        s_enumerate(5, -1, F5, max_cost=1000)
    with pytest.raises(CostGuardError):
        enumerate_power_sums(5, 3, F5, max_cost=1000)


def test_positive_s_rejected():
    with pytest.raises(ValueError):
        s_formula(1, 2, F3)


def test_json():
    rec = s_twisted(1, -1, F3, V(F3, "t")).to_json()
    assert rec == {"q": 3, "d": 1, "s": -1, "v": "1*t^1", "value": "2*t^1", "nu": 1, "method": "identity"}
    assert s_formula(2, -1, F3).to_json()["value"] == "0"
