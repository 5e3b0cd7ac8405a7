import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofl import poly as P
from ofl.cuts import (
    AlgebraicCut,
    AlgebraicNumber,
    FunctionCut,
    RegularityWitness,
    TranslatedCut,
    cut_contains,
    decimal_str,
    is_gap,
    ivp_failure_witness,
    regularity_probe,
    sqrt2_convergent,
    sup_approx,
    translate_cut,
    translate_into,
)
from ofl.errors import BudgetExhausted, HorizonExhausted, NoBracket, NotSquarefree

from helpers import sign_scan_roots

ROOT2 = AlgebraicNumber.sqrt(2)
ROOT2_CUT = AlgebraicCut(ROOT2)


def isqrt_digits(n: int, digits: int) -> int:
    """floor(sqrt(n) * 10**digits) by integer square root."""
    return math.isqrt(n * 10 ** (2 * digits))


# --- polynomials ------------------------------------------------------------


@pytest.mark.parametrize(
    "text, coeffs",
    [("x^2 - 2", (-2, 0, 1)), ("x^3-2", (-2, 0, 0, 1)), ("-3x + 1", (1, -3)), ("5", (5,)),
     ("2*x^2 + x - 1", (-1, 1, 2))],
)
def test_parse_poly(text, coeffs):
    assert P.parse_poly(text) == coeffs
    assert P.parse_poly(P.format_poly(coeffs)) == coeffs


def test_sturm_examples():
    assert P.sturm_count_roots_below(P.parse_poly("x^2-2"), 0) == 1
    assert P.sturm_count_roots_below(P.parse_poly("x^2-2"), 2) == 2
    # a root exactly at q is not strictly below it
    assert P.sturm_count_roots_below(P.parse_poly("x^2-1"), 1) == 1
    with pytest.raises(NotSquarefree):
        P.sturm_count_roots_below(P.parse_poly("x^2-2*x+1"), 0)


def _random_squarefree(rng, degree):
    while True:
        p = tuple(rng.randint(-20, 20) for _ in range(degree)) + (rng.choice([-3, -2, -1, 1, 2, 3]),)
        if P.is_squarefree(p):
            return p


def test_sturm_against_sign_scan():
    rng = random.Random(5)
    for _ in range(8):
        p = _random_squarefree(rng, rng.choice([3, 4]))
        inside = P.sturm_count_roots_below(p, 10) + (P.evaluate(p, 10) == 0) - P.sturm_count_roots_below(p, -10)
        assert inside == sign_scan_roots(p)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=3, max_size=6).filter(lambda c: c[-1] != 0))
def test_sturm_monotone_and_total(coeffs):
    p = P.normalize(coeffs)
    if not P.is_squarefree(p):
        return
    bound = P.cauchy_bound(p)
    counts = [P.sturm_count_roots_below(p, F(k, 4)) for k in range(-40, 41)]
    assert counts == sorted(counts)
    assert P.sturm_count_roots_below(p, bound) == P.count_real_roots(p)
    assert P.sturm_count_roots_below(p, -bound) == 0
    assert len(P.isolate_real_roots(p)) == P.count_real_roots(p)


def test_rational_roots():
    assert P.rational_roots(P.parse_poly("x^2-2")) == []
    assert P.rational_roots(P.parse_poly("6*x^2 - x - 1")) == [F(-1, 3), F(1, 2)]
    assert P.rational_roots(P.parse_poly("x^3 - x")) == [F(-1), F(0), F(1)]


# --- algebraic numbers -------------------------------------------------------


def test_algebraic_number_normalizes():
    r = AlgebraicNumber.from_poly(P.parse_poly("x^3 - 2*x^2 - 2*x + 4"))  # (x-2)(x^2-2)
    assert r.min_poly == (-2, 1) and r.as_rational() == 2
    s = AlgebraicNumber.from_poly(P.parse_poly("x^3 - 2*x^2 - 2*x + 4"), 1)
    assert s.min_poly == (-2, 0, 1) and s.compare_rational(F(7, 5)) > 0


def test_algebraic_decimal_matches_isqrt():
    assert ROOT2.decimal(30) == "1." + str(isqrt_digits(2, 30))[1:]
    assert AlgebraicNumber.sqrt(F(9, 4)).as_rational() == F(3, 2)


def test_algebraic_affine_and_compare():
    r = ROOT2.affine(1, 3)  # 1 + 3 sqrt 2
    assert r.compare_rational(F(5242, 1000)) > 0 > r.compare_rational(F(5243, 1000))
    assert ROOT2.compare(AlgebraicNumber.sqrt(3)) < 0
    assert ROOT2.compare(AlgebraicNumber.from_poly((-8, 0, 4))) == 0


# --- cuts -------------------------------------------------------------------


def test_cut_examples():
    assert cut_contains(ROOT2_CUT, F(7, 5))
    assert not cut_contains(ROOT2_CUT, F(3, 2))
    fc = FunctionCut(sqrt2_convergent, 50)
    assert cut_contains(fc, F(7, 5))
    assert not cut_contains(fc, F(3, 2))


def test_convergents():
    assert [sqrt2_convergent(k) for k in range(6)] == [1, F(3, 2), F(7, 5), F(17, 12), F(41, 29), F(99, 70)]
    assert sqrt2_convergent(F(5, 2)) == F(7, 5)


def test_function_cut_undecided_near_limit():
    fc = FunctionCut(sqrt2_convergent, 8)
    # the tail oscillates around sqrt 2, so a point between tail values is undecided
    q = (sqrt2_convergent(7) + sqrt2_convergent(8)) / 2
    with pytest.raises(HorizonExhausted):
        cut_contains(fc, q)


def test_is_gap():
    assert is_gap(ROOT2_CUT)
    assert not is_gap(AlgebraicCut(AlgebraicNumber.from_poly(P.parse_poly("x - 3"))))
    assert is_gap(AlgebraicCut(AlgebraicNumber.from_poly(P.parse_poly("x^3 - 2"))))


def test_regularity_examples():
    w = regularity_probe(ROOT2_CUT, F(1, 1000))
    assert ROOT2.compare_rational(w.x) > 0 and w.x > ROOT2.approx() - F(1, 1000)
    assert w.verify(ROOT2_CUT)
    shifted = translate_cut(ROOT2_CUT, 10)
    w2 = regularity_probe(shifted, F(1, 2))
    assert w2.verify(shifted) and abs(w2.x - 10 - ROOT2.approx()) < 1
    assert regularity_probe(ROOT2_CUT, 1).verify(ROOT2_CUT)


def test_regularity_errors():
    with pytest.raises(ValueError):
        regularity_probe(ROOT2_CUT, 0)
    with pytest.raises(NoBracket):
        regularity_probe(ROOT2_CUT, F(1, 10), member=2, non_member=3)
    with pytest.raises(BudgetExhausted):
        regularity_probe(ROOT2_CUT, F(1, 10**30), budget=5)
    assert not RegularityWitness(F(1), F(0)).verify(ROOT2_CUT)


def test_translate_examples():
    rng = random.Random(3)
    probes = [F(rng.randint(-4000, 4000), rng.randint(1, 1000)) for _ in range(100)]
    zero = translate_cut(ROOT2_CUT, 0)
    back = translate_cut(translate_cut(ROOT2_CUT, F(7, 3)), F(-7, 3))
    for q in probes:
        assert cut_contains(zero, q) == cut_contains(ROOT2_CUT, q) == cut_contains(back, q)
    v = translate_into(ROOT2_CUT, F(1, 3), F(1, 2))
    assert cut_contains(v, F(1, 3)) and not cut_contains(v, F(1, 2))


def test_sup_approx_examples():
    m, M = sup_approx(ROOT2_CUT, F(1, 10**6))
    assert M - m <= F(1, 10**6)
    assert m * m < 2 < M * M
    floor6 = F(isqrt_digits(2, 6), 10**6)
    assert m <= floor6 + F(1, 10**6) and M >= floor6
    fm, fM = sup_approx(FunctionCut(sqrt2_convergent, 50), F(1, 10**6))
    assert fm * fm < 2 < fM * fM
    r = AlgebraicCut(AlgebraicNumber.from_rational(F(3, 7)))
    lo, hi = sup_approx(r, F(1, 100), member=0, non_member=1)
    assert lo < F(3, 7) <= hi


@pytest.mark.parametrize(
    "cut",
    [ROOT2_CUT, TranslatedCut(ROOT2_CUT, F(-5, 2)), FunctionCut(sqrt2_convergent, 50),
     AlgebraicCut(AlgebraicNumber.from_poly(P.parse_poly("x^3 - 3*x + 1"), 1))],
    ids=["algebraic", "translated", "function", "cubic"],
)
def test_downward_closed(cut):
    rng = random.Random(17)
    for _ in range(2000):
        # probes concentrated on [-3, 3], where every cut above has its gap
        p = F(rng.randint(-3 * 10**6, 3 * 10**6), rng.randint(1, 10**6)) % 6 - 3
        q = p + F(1, 2 ** rng.randint(0, 30))
        try:
            if cut_contains(cut, q):
                assert cut_contains(cut, p)
        except HorizonExhausted:
            pass


def test_ivp_examples():
    w = ivp_failure_witness(P.parse_poly("x^2-2"), 1, 2)
    assert (w["sign_a"], w["sign_b"], w["rational_roots"], w["ivp_fails"]) == (-1, 1, [], True)
    w = ivp_failure_witness(P.parse_poly("x-1"), 0, 2)
    assert w["rational_roots"] == [1] and not w["ivp_fails"]
    w = ivp_failure_witness(P.parse_poly("x^3-2"), 1, 2)
    assert (w["sign_a"], w["sign_b"], w["rational_roots"]) == (-1, 1, [])
    with pytest.raises(ValueError):
        ivp_failure_witness(P.parse_poly("x"), 2, 1)


def test_decimal_str():
    assert decimal_str(F(1, 3), 5) == "0.33333"
    assert decimal_str(F(-1, 8), 3) == "-0.125"
