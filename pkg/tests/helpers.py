"""Shared generators and brute-force oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from ofl.series import Series


def random_exponent(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-10, 10), rng.randint(1, 6))


def random_coefficient(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-9, 9)
    return Fraction(num, rng.randint(1, 5))


def random_series(rng: random.Random, max_terms: int = 6, order=None) -> Series:
    n = rng.randint(0, max_terms)
    coeffs = {}
    while len(coeffs) < n:
        coeffs[random_exponent(rng)] = random_coefficient(rng)
    if order is None:
        return Series.from_mapping(coeffs)
    return Series.from_mapping({e: c for e, c in coeffs.items() if e < order}, order)


def nonzero_series(rng: random.Random, max_terms: int = 6) -> Series:
    while True:
        s = random_series(rng, max_terms)
        if s.terms:
            return s


exponents = st.builds(Fraction, st.integers(-10, 10), st.integers(1, 6))
coefficients = st.builds(
    Fraction, st.integers(-9, 9).filter(lambda n: n != 0), st.integers(1, 5)
)
exact_series = st.dictionaries(exponents, coefficients, max_size=6).map(Series.from_mapping)


def convolve_oracle(a: Series, b: Series) -> dict:
    """Plain double loop over every pair of visible terms."""
    out: dict = {}
    for e1, c1 in a.terms:
        for e2, c2 in b.terms:
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def sign_scan_roots(p, lo: int = -10, hi: int = 10, steps_per_unit: int = 10**4):
    """Count real roots of a squarefree integer polynomial in [lo, hi].

    Evaluates ``p(k/N) * N**deg`` at every grid point with exact integer
    forward differences and counts sign changes plus exact zeros.
    """
    N = steps_per_unit
    d = len(p) - 1

    def scaled(k):
        return sum(c * k**i * N ** (d - i) for i, c in enumerate(p))

    k0 = lo * N
    row = [scaled(k0 + j) for j in range(d + 1)]
    diffs = []
    for _ in range(d + 1):
        diffs.append(row[0])
        row = [y - x for x, y in zip(row, row[1:])]
    count, last = 0, 0
    for _ in range((hi - lo) * N + 1):
        v = diffs[0]
        s = (v > 0) - (v < 0)
        if s == 0:
            count += 1
        elif last and s != last:
            count += 1
        if s:
            last = s
        elif last:
            # a grid point root: the next nonzero sign must not count again
            last = 0
        for j in range(d):
            diffs[j] += diffs[j + 1]
    return count
