"""Naive reference arithmetic over F_p[t] (p prime), sharing no code with the package.

Polynomials are coefficient lists, constant term first, with no trailing zeros.
"""

import itertools


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    a, b = list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b))
    return trim([(x + y) % p for x, y in zip(a, b)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def power(a, k, p):
    out = [1]
    for _ in range(k):
        out = mul(out, a, p)
    return out


def divides(v, a, p):
    a = trim(a)
    inv = pow(v[-1], -1, p)
    while len(a) >= len(v):
        c = a[-1] * inv % p
        shift = len(a) - len(v)
        for i, x in enumerate(v):
            a[shift + i] = (a[shift + i] - c * x) % p
        a = trim(a)
    return not a


def monics(d, p):
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def power_sum(d, k, p, v=None):
    total = []
    for a in monics(d, p):
        if v is not None and divides(v, a, p):
            continue
        total = add(total, power(a, k, p), p)
    return total


def zeta(s, p, v=None, top=None):
    """Literal sum over d_1 > ... > d_r >= 0 with d_1 <= top.

    For non-positive entries the sums vanish for large degrees; callers pick
    top past the vanishing bound.
    """
    r = len(s)
    if top is None:
        top = r + 6
    sums = {(d, -x): power_sum(d, -x, p, v) for d in range(top + 1) for x in set(s)}
    total = []
    for chain in itertools.combinations(range(top, -1, -1), r):
        term = [1]
        for x, d in zip(s, chain):
            term = mul(term, sums[(d, -x)], p)
        total = add(total, term, p)
    return total


def valuation(a, v, p):
    if not a:
        return None
    n = 0
    while True:
        a = trim(a)
        inv = pow(v[-1], -1, p)
        quot = [0] * max(len(a) - len(v) + 1, 0)
        rem = list(a)
        while len(rem) >= len(v):
            c = rem[-1] * inv % p
            shift = len(rem) - len(v)
            quot[shift] = c
            for i, x in enumerate(v):
                rem[shift + i] = (rem[shift + i] - c * x) % p
            rem = trim(rem)
        if rem:
            return n
        a, n = quot, n + 1
