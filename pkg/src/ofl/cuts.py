"""Cuts and gaps of the rational field.

Three kinds of cut are supported:

* :class:`AlgebraicCut` -- ``{x : x < r}`` for a real algebraic ``r``, a gap
  exactly when ``r`` is irrational;
* :class:`FunctionCut` -- the cut ``{z : for all t, some x >= t has
  z <= f(x)}`` of a function Cauchy at infinity, evaluated over a finite
  integer horizon;
* :class:`TranslatedCut` -- ``base + shift``.

All membership oracles are exact.  Regularity is probed one ``epsilon`` at a
time, by bisection between a member and a non-member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Union

from . import poly as P
from .errors import BudgetExhausted, HorizonExhausted, NoBracket

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of an integer polynomial, pinned by an isolating interval.

    The polynomial is normalized on construction: squarefree, primitive, and
    stripped of rational roots other than the represented one, so that an
    irrational number never carries a linear factor.  The root lies strictly
    inside ``(lo, hi)`` and the polynomial does not vanish at either endpoint.
    """

    min_poly: tuple
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not lo < hi:
            raise ValueError("isolating interval must satisfy lo < hi")
        p = P.squarefree_part(P.normalize(self.min_poly))
        if P.degree(p) < 1:
            raise ValueError("polynomial has no roots")
        if P.evaluate(p, lo) == 0 or P.evaluate(p, hi) == 0:
            raise ValueError("isolating interval endpoint is a root")
        if P.count_roots_between(p, lo, hi) != 1:
            raise ValueError("interval does not isolate exactly one root")
        inside = [q for q in P.rational_roots(p) if lo < q < hi]
        if inside:
            p = P.primitive((-inside[0].numerator, inside[0].denominator))
        else:
            for q in P.rational_roots(p):
                p = P.primitive(P.quotient(p, (-q.numerator, q.denominator)))
        object.__setattr__(self, "min_poly", p)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def _trusted(cls, poly, lo, hi) -> "AlgebraicNumber":
        # for derived numbers whose invariants follow from the parent's
        obj = object.__new__(cls)
        object.__setattr__(obj, "min_poly", poly)
        object.__setattr__(obj, "lo", lo)
        object.__setattr__(obj, "hi", hi)
        return obj

    # construction ---------------------------------------------------------
    @classmethod
    def real_roots(cls, poly) -> list:
        poly = P.normalize(poly)
        return [cls(poly, lo, hi) for lo, hi in P.isolate_real_roots(poly)]

    @classmethod
    def from_poly(cls, poly, index: int = -1) -> "AlgebraicNumber":
        """The ``index``-th real root in increasing order (default: largest)."""
        roots = cls.real_roots(poly)
        if not roots:
            raise ValueError(f"{P.format_poly(P.normalize(poly))} has no real roots")
        return roots[index]

    @classmethod
    def sqrt(cls, q: Rational) -> "AlgebraicNumber":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("square root needs a positive rational")
        return cls.from_poly((-q.numerator, 0, q.denominator), -1)

    @classmethod
    def from_rational(cls, q: Rational) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls((-q.numerator, q.denominator), q - 1, q + 1)

    def affine(self, offset: Rational, scale: Rational) -> "AlgebraicNumber":
        """The number ``offset + scale * self``."""
        offset, scale = Fraction(offset), Fraction(scale)
        if scale == 0:
            return AlgebraicNumber.from_rational(offset)
        # substitute x = (y - offset) / scale into min_poly
        acc = [Fraction(0)]
        base = [-offset / scale, 1 / scale]
        for c in reversed(self.min_poly):
            prod = [Fraction(0)] * (len(acc) + 1)
            for i, a in enumerate(acc):
                for j, b in enumerate(base):
                    prod[i + j] += a * b
            prod[0] += c
            acc = prod
        lo, hi = sorted((offset + scale * self.lo, offset + scale * self.hi))
        return AlgebraicNumber._trusted(P.primitive(acc), lo, hi)

    # queries --------------------------------------------------------------
    @property
    def degree(self) -> int:
        return P.degree(self.min_poly)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("number is irrational")
        a0, a1 = self.min_poly
        return Fraction(-a0, a1)

    def refine(self, width: Rational) -> "AlgebraicNumber":
        """Bisect the isolating interval until it is narrower than ``width``."""
        width = Fraction(width)
        lo, hi = self.lo, self.hi
        p = self.min_poly
        s_lo = P.sign_at(p, lo)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s = P.sign_at(p, mid)
            if s == 0:
                quarter = (hi - lo) / 4
                lo, hi = mid - quarter, mid + quarter
                s_lo = P.sign_at(p, lo)
            elif s == s_lo:
                lo = mid
            else:
                hi = mid
        if lo == self.lo and hi == self.hi:
            return self
        return AlgebraicNumber._trusted(p, lo, hi)

    def compare_rational(self, q: Rational) -> int:
        """Sign of ``self - q``."""
        q = Fraction(q)
        if q <= self.lo:
            return 1
        if q >= self.hi:
            return -1
        s = P.sign_at(self.min_poly, q)
        if s == 0:
            return 0
        # one simple root in (lo, hi): p(q) shares the sign of p(lo) iff the root is above q
        return 1 if s == P.sign_at(self.min_poly, self.lo) else -1

    def compare(self, other) -> int:
        if not isinstance(other, AlgebraicNumber):
            return self.compare_rational(other)
        if other.is_rational:
            return self.compare_rational(other.as_rational())
        if self.is_rational:
            return -other.compare_rational(self.as_rational())
        a, b = self, other
        common = P.gcd(a.min_poly, b.min_poly)
        while True:
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            if P.degree(common) > 0:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if P.evaluate(common, lo) and P.evaluate(common, hi):
                    if P.count_roots_between(common, lo, hi) == 1:
                        return 0
            a = a.refine((a.hi - a.lo) / 2)
            b = b.refine((b.hi - b.lo) / 2)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def dyadic_below(self, k: int) -> Fraction:
        """Largest ``m / 2**k`` strictly below the number."""
        scale = 2**k
        tight = self.refine(Fraction(1, scale))
        m = math.floor(tight.lo * scale)
        while tight.compare_rational(Fraction(m + 1, scale)) > 0:
            m += 1
        while tight.compare_rational(Fraction(m, scale)) <= 0:
            m -= 1
        return Fraction(m, scale)

    def dyadic_above(self, k: int) -> Fraction:
        """Smallest ``m / 2**k`` strictly above the number."""
        scale = 2**k
        tight = self.refine(Fraction(1, scale))
        m = math.ceil(tight.hi * scale)
        while tight.compare_rational(Fraction(m - 1, scale)) < 0:
            m -= 1
        while tight.compare_rational(Fraction(m, scale)) >= 0:
            m += 1
        return Fraction(m, scale)

    def approx(self, tol: Rational = Fraction(1, 10**12)) -> Fraction:
        tight = self.refine(tol)
        return (tight.lo + tight.hi) / 2

    def decimal(self, digits: int = 20) -> str:
        """Decimal expansion truncated toward minus infinity."""
        return decimal_str(self._decimal_floor(digits), digits)

    def _decimal_floor(self, digits: int) -> Fraction:
        scale = 10**digits
        tight = self.refine(Fraction(1, 4 * scale))
        m = math.floor(tight.lo * scale)
        while self.compare_rational(Fraction(m + 1, scale)) >= 0:
            m += 1
        return Fraction(m, scale)

    def __str__(self):
        if self.is_rational:
            return str(self.as_rational())
        return f"root({P.format_poly(self.min_poly)} in ({self.lo}, {self.hi}))"


def decimal_str(x: Fraction, digits: int = 20) -> str:
    """``x`` rounded toward minus infinity to ``digits`` decimal places."""
    scale = 10**digits
    m = math.floor(Fraction(x) * scale)
    sign = "-" if m < 0 else ""
    whole, frac = divmod(abs(m), scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


# ---------------------------------------------------------------------------
# cuts


class CutSpec:
    """Base type of the cut variants; ``contains`` must be downward closed."""

    def contains(self, q: Rational) -> bool:
        raise NotImplementedError

    def seeds(self):
        """A ``(member, non_member)`` pair for bisection, or ``None``."""
        return None


@dataclass(frozen=True)
class AlgebraicCut(CutSpec):
    r: AlgebraicNumber

    def contains(self, q):
        return self.r.compare_rational(q) > 0

    def seeds(self):
        return self.r.lo, self.r.hi


@dataclass(frozen=True)
class TranslatedCut(CutSpec):
    base: CutSpec
    shift: Fraction

    def __post_init__(self):
        object.__setattr__(self, "shift", Fraction(self.shift))

    def contains(self, q):
        return cut_contains(self.base, Fraction(q) - self.shift)

    def seeds(self):
        inner = self.base.seeds()
        if inner is None:
            return None
        return inner[0] + self.shift, inner[1] + self.shift


@dataclass(frozen=True)
class FunctionCut(CutSpec):
    """Cut induced by ``f`` sampled at integer arguments ``1..horizon``.

    ``q`` is decided a member when *every* ``t`` in the last quarter of the
    horizon has some ``x`` in ``[t, horizon]`` with ``q <= f(x)``, and a
    non-member when none does.  A mixed pattern raises
    :class:`HorizonExhausted`.
    """

    f: Callable
    horizon: int
    label: str = "f"

    def __post_init__(self):
        if self.horizon < 4:
            raise ValueError("horizon must be at least 4")

    @cached_property
    def values(self) -> tuple:
        return tuple(Fraction(self.f(Fraction(x))) for x in range(1, self.horizon + 1))

    @cached_property
    def _tail_maxima(self) -> tuple:
        # suffix maxima over x in [t, horizon], for t in the last quarter
        start = self.horizon - self.horizon // 4
        out, best = [], None
        for x in range(self.horizon, start - 1, -1):
            v = self.values[x - 1]
            best = v if best is None else max(best, v)
            out.append(best)
        return tuple(reversed(out))

    def contains(self, q):
        q = Fraction(q)
        pattern = [q <= m for m in self._tail_maxima]
        if all(pattern):
            return True
        if not any(pattern):
            return False
        raise HorizonExhausted(
            f"membership of {q} in the cut of {self.label} undecided at horizon {self.horizon}"
        )

    def seeds(self):
        f1 = self.values[0]
        return f1 - 1, f1 + 1

    def limit_bracket(self) -> tuple:
        """Range of the sampled values over the last quarter of the horizon."""
        tail = self.values[self.horizon - self.horizon // 4 - 1:]
        return min(tail), max(tail)


def cut_contains(c: CutSpec, q: Rational) -> bool:
    return c.contains(Fraction(q))


def translate_cut(c: CutSpec, shift: Rational) -> TranslatedCut:
    return TranslatedCut(c, Fraction(shift))


def is_gap(c: AlgebraicCut) -> bool:
    """A cut below an algebraic number has no rational supremum iff the number is irrational."""
    return not c.r.is_rational


def sqrt2_convergent(x: Rational) -> Fraction:
    """Continued-fraction convergent of sqrt(2) with index ``floor(x)``: 1, 3/2, 7/5, ..."""
    p, q = 1, 1
    for _ in range(max(math.floor(x), 0)):
        p, q = p + 2 * q, p + q
    return Fraction(p, q)


# ---------------------------------------------------------------------------
# probes


@dataclass(frozen=True)
class RegularityWitness:
    epsilon: Fraction
    x: Fraction

    def verify(self, c: CutSpec) -> bool:
        return cut_contains(c, self.x) and not cut_contains(c, self.x + self.epsilon)


def _bracket(c: CutSpec, member, non_member):
    if member is None or non_member is None:
        seeds = c.seeds()
        if seeds is None:
            raise NoBracket("no bracketing seeds available for this cut")
        member = seeds[0] if member is None else member
        non_member = seeds[1] if non_member is None else non_member
    member, non_member = Fraction(member), Fraction(non_member)
    if not (cut_contains(c, member) and not cut_contains(c, non_member)):
        raise NoBracket(f"seeds {member}, {non_member} do not bracket the cut")
    return member, non_member


def _bisect(c, lo, hi, width, budget):
    steps = 0
    while hi - lo > width:
        if steps >= budget:
            raise BudgetExhausted(f"bracket still {hi - lo} wide after {budget} steps")
        steps += 1
        mid = (lo + hi) / 2
        if cut_contains(c, mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def regularity_probe(
    c: CutSpec,
    epsilon: Rational,
    budget: int = 10_000,
    member: Rational | None = None,
    non_member: Rational | None = None,
) -> RegularityWitness:
    """Find ``x`` in the cut with ``x + epsilon`` outside it."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    lo, hi = _bracket(c, member, non_member)
    lo, _ = _bisect(c, lo, hi, epsilon, budget)
    witness = RegularityWitness(epsilon, lo)
    assert witness.verify(c)
    return witness


def sup_approx(
    c: CutSpec,
    tol: Rational,
    budget: int = 10_000,
    member: Rational | None = None,
    non_member: Rational | None = None,
) -> tuple:
    """Interval ``(m, M)`` of width at most ``tol`` with ``m`` in the cut and ``M`` not."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = _bracket(c, member, non_member)
    return _bisect(c, lo, hi, tol, budget)


def translate_into(c: CutSpec, a: Rational, b: Rational) -> TranslatedCut:
    """Translate a gap so that ``a`` lies in it and ``b`` does not.

    Picks a member ``m`` and non-member ``M`` with ``M - m < b - a`` and
    shifts by ``a - m``.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    m, _ = sup_approx(c, (b - a) / 2)
    return TranslatedCut(c, a - m)


def ivp_failure_witness(p, a: Rational, b: Rational) -> dict:
    """Signs of ``p`` at the endpoints and its rational roots in ``[a, b]``.

    Opposite signs with no rational root show a continuous function on the
    rationals skipping a value.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    p = P.normalize(p)
    roots = [r for r in P.rational_roots(p) if a <= r <= b]
    sa, sb = P.sign_at(p, a), P.sign_at(p, b)
    return {
        "poly": P.format_poly(p),
        "a": a,
        "b": b,
        "sign_a": sa,
        "sign_b": sb,
        "rational_roots": roots,
        "ivp_fails": sa * sb < 0 and not roots,
    }
