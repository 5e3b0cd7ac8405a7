"""Generalized power series with rational exponents and rational coefficients.

A :class:`Series` is a finite, strictly increasing list of ``(exponent,
coefficient)`` pairs together with a truncation order ``N``: the value it
stands for is ``sum(c * t**e) + O(t**N)``.  ``N = inf`` marks an exact
element.  The indeterminate ``t`` is a positive infinitesimal, so series are
ordered by the sign of the lowest-exponent coefficient of their difference.

Every operation propagates the truncation order so that no coefficient it
reports can change when the inputs are known to a higher order.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    DuplicateExponent,
    NegativeLeading,
    NonSquareLeadingCoefficient,
    SeriesSyntaxError,
    ZeroDivisor,
    ZeroSeries,
)

__all__ = [
    "INF",
    "Series",
    "Ordering",
    "ComparisonResult",
    "default_order",
    "parse_series",
    "format_series",
    "add",
    "neg",
    "sub",
    "mul",
    "compare",
    "invert",
    "sqrt",
    "automorphism_double",
    "automorphism_halve",
    "is_in_subring_R",
    "pitteloud_prime",
    "char_fn",
]

INF = math.inf

Order = Union[Fraction, float]  # a Fraction, or INF for exact series
Rational = Union[int, Fraction]


def default_order() -> Fraction:
    """Output truncation order used by :func:`invert` and :func:`sqrt`."""
    return Fraction(os.environ.get("OFL_DEFAULT_ORDER", "32"))


def _as_order(value) -> Order:
    if value is None or value == INF:
        return INF
    return Fraction(value)


@dataclass(frozen=True)
class Series:
    terms: tuple = ()
    order: Order = INF

    def __post_init__(self):
        terms = tuple((Fraction(e), Fraction(c)) for e, c in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "order", _as_order(self.order))
        prev = None
        for e, c in terms:
            if c == 0:
                raise ValueError("zero coefficient in term list")
            if prev is not None and e <= prev:
                raise ValueError("exponents must be strictly increasing")
            if e >= self.order:
                raise ValueError(f"exponent {e} not below truncation order {self.order}")
            prev = e

    @classmethod
    def from_mapping(cls, coeffs: Mapping, order=INF) -> "Series":
        """Build a canonical series, dropping zeros and terms at or above ``order``."""
        order = _as_order(order)
        terms = sorted(
            (Fraction(e), Fraction(c)) for e, c in coeffs.items() if c != 0 and e < order
        )
        return cls(tuple(terms), order)

    @classmethod
    def constant(cls, value: Rational) -> "Series":
        value = Fraction(value)
        return cls(((Fraction(0), value),) if value else ())

    @property
    def is_exact(self) -> bool:
        return self.order == INF

    @property
    def is_zero(self) -> bool:
        """True when no term is visible (the series may still be inexact)."""
        return not self.terms

    @property
    def lead_exponent(self) -> Order:
        return self.terms[0][0] if self.terms else INF

    @property
    def lead_coefficient(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    def coefficient(self, g: Rational) -> Fraction:
        g = Fraction(g)
        if g >= self.order:
            raise ValueError(f"coefficient at {g} is hidden by O(t^{self.order})")
        for e, c in self.terms:
            if e == g:
                return c
            if e > g:
                break
        return Fraction(0)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def truncate(self, order) -> "Series":
        order = min(self.order, _as_order(order))
        return Series(tuple((e, c) for e, c in self.terms if e < order), order)

    # operator sugar -------------------------------------------------------
    def __neg__(self):
        return neg(self)

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(other, self)

    def __mul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(self, invert(other))

    def __rtruediv__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(other, invert(self))

    def __lt__(self, other):
        return compare(self, _coerce_strict(other)).kind is Ordering.LESS

    def __gt__(self, other):
        return compare(self, _coerce_strict(other)).kind is Ordering.GREATER

    def __le__(self, other):
        return compare(self, _coerce_strict(other)).kind is not Ordering.GREATER

    def __ge__(self, other):
        return compare(self, _coerce_strict(other)).kind is not Ordering.LESS

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"Series({format_series(self)!r})"


def _coerce(value):
    if isinstance(value, Series):
        return value
    if isinstance(value, (int, Fraction)):
        return Series.constant(value)
    return None


def _coerce_strict(value) -> Series:
    out = _coerce(value)
    if out is None:
        raise TypeError(f"cannot compare Series with {type(value).__name__}")
    return out


# ---------------------------------------------------------------------------
# arithmetic


def _convolve(xs: Iterable, ys: Iterable, cutoff: Order) -> dict:
    """Cauchy product of two term lists, keeping exponents below ``cutoff``."""
    out: dict = {}
    ys = list(ys)
    for e1, c1 in xs:
        for e2, c2 in ys:
            e = e1 + e2
            if e >= cutoff:
                # ys is sorted by exponent
                break
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def add(a: Series, b: Series) -> Series:
    order = min(a.order, b.order)
    coeffs = dict(a.terms)
    for e, c in b.terms:
        coeffs[e] = coeffs.get(e, 0) + c
    return Series.from_mapping(coeffs, order)


def neg(a: Series) -> Series:
    return Series(tuple((e, -c) for e, c in a.terms), a.order)


def sub(a: Series, b: Series) -> Series:
    return add(a, neg(b))


def mul(a: Series, b: Series) -> Series:
    """Cauchy product with truncation ``min(N_a + lead_b, N_b + lead_a)``.

    For a factor with no visible term the lead is taken to be its own
    truncation order, so ``O(t^2) * O(t^3)`` is ``O(t^5)`` rather than an
    exact zero.
    """
    lead_a = min(a.lead_exponent, a.order)
    lead_b = min(b.lead_exponent, b.order)
    order = min(a.order + lead_b, b.order + lead_a)
    return Series.from_mapping(_convolve(a.terms, b.terms, order), order)


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    EQUAL_UP_TO_TRUNCATION = "equal_up_to_truncation"


@dataclass(frozen=True)
class ComparisonResult:
    kind: Ordering
    order: Order | None = None

    def __str__(self):
        if self.kind is Ordering.EQUAL_UP_TO_TRUNCATION:
            return f"{self.kind.value}({self.order})"
        return self.kind.value


def compare(a: Series, b: Series) -> ComparisonResult:
    diff = sub(a, b)
    if diff.terms:
        kind = Ordering.GREATER if diff.lead_coefficient > 0 else Ordering.LESS
        return ComparisonResult(kind)
    if diff.is_exact:
        return ComparisonResult(Ordering.EQUAL)
    return ComparisonResult(Ordering.EQUAL_UP_TO_TRUNCATION, diff.order)


def _split_leading(a: Series):
    """Return ``(mu, c, eps)`` with ``a = c t^mu (1 + eps)``; eps as a term list."""
    mu, c = a.terms[0]
    eps = [(e - mu, v / c) for e, v in a.terms[1:]]
    return mu, c, eps


def _power_sum(eps: list, weights, cutoff: Fraction) -> dict:
    """``sum_k weights(k) * eps**k`` over relative exponents below ``cutoff``."""
    total = {Fraction(0): Fraction(1)} if cutoff > 0 else {}
    power = {Fraction(0): Fraction(1)}
    k = 0
    while True:
        k += 1
        power = _convolve(sorted(power.items()), eps, cutoff)
        if not power:
            return total
        w = weights(k)
        for e, c in power.items():
            total[e] = total.get(e, 0) + w * c


def invert(a: Series, order=None) -> Series:
    """Multiplicative inverse, expanded as a geometric series in the tail.

    The result is truncated at ``min(order, N_a - 2*mu)`` where ``mu`` is the
    leading exponent of ``a``; an exact monomial inverts exactly.
    """
    if not a.terms:
        raise ZeroDivisor(f"no visible leading term in {format_series(a)}")
    mu, c, eps = _split_leading(a)
    if not eps and a.is_exact:
        return Series(((-mu, 1 / c),))
    order = default_order() if order is None else Fraction(order)
    out_order = min(order, a.order - 2 * mu)
    rel = _power_sum(eps, lambda k: (-1) ** k, out_order + mu)
    return Series.from_mapping({e - mu: v / c for e, v in rel.items()}, out_order)


def _rational_sqrt(q: Fraction) -> Fraction:
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise NonSquareLeadingCoefficient(f"{q} is not the square of a rational")
    return Fraction(num, den)


def _half_binomial(k: int, _cache=[Fraction(1)]) -> Fraction:
    while len(_cache) <= k:
        j = len(_cache)
        _cache.append(_cache[-1] * (Fraction(1, 2) - (j - 1)) / j)
    return _cache[k]


def sqrt(a: Series, order=None) -> Series:
    """Square root with positive leading coefficient (binomial series in the tail).

    Truncated at ``min(order, N_a - mu/2)``.
    """
    if not a.terms:
        raise ZeroSeries("square root of a series with no visible term")
    mu, c, eps = _split_leading(a)
    if c < 0:
        raise NegativeLeading(f"leading coefficient {c} is negative")
    root_c = _rational_sqrt(c)
    half = mu / 2
    if not eps and a.is_exact:
        return Series(((half, root_c),))
    order = default_order() if order is None else Fraction(order)
    out_order = min(order, a.order - half)
    rel = _power_sum(eps, _half_binomial, out_order - half)
    return Series.from_mapping({e + half: v * root_c for e, v in rel.items()}, out_order)


def automorphism_double(a: Series) -> Series:
    """The field automorphism ``t^g -> t^(2g)``."""
    return Series(tuple((2 * e, c) for e, c in a.terms), a.order * 2)


def automorphism_halve(a: Series) -> Series:
    return Series(tuple((e / 2, c) for e, c in a.terms), a.order / 2)


def is_in_subring_R(a: Series, accept_truncated: bool = False) -> bool:
    """Membership in the subring of series without infinitesimal terms.

    An inexact series is rejected unless ``accept_truncated`` is set, in
    which case only its visible support is inspected.
    """
    if not a.is_exact and not accept_truncated:
        return False
    return all(e <= 0 for e in a.support)


def pitteloud_prime(n_terms: int) -> Series:
    """``1 + t^(-1) + t^(-1/2) + ... + t^(-1/n_terms)``, exact."""
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    coeffs = {Fraction(-1, k): 1 for k in range(1, n_terms + 1)}
    coeffs[Fraction(0)] = 1
    return Series.from_mapping(coeffs)


def char_fn(g: Rational) -> Series:
    """Characteristic function of the singleton ``{g}``, i.e. ``t^g``."""
    return Series(((Fraction(g), Fraction(1)),))


# ---------------------------------------------------------------------------
# text form


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.chars = [(ch, i) for i, ch in enumerate(text) if not ch.isspace()]
        self.i = 0

    def peek(self):
        return self.chars[self.i][0] if self.i < len(self.chars) else ""

    @property
    def pos(self):
        return self.chars[self.i][1] if self.i < len(self.chars) else len(self.text)

    def error(self, message):
        return SeriesSyntaxError(message, self.pos, self.text)

    def take(self, ch=None):
        got = self.peek()
        if not got or (ch is not None and got != ch):
            raise self.error(f"expected {ch!r}" if ch else "unexpected end of input")
        self.i += 1
        return got

    def accept(self, ch):
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def digits(self) -> int:
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if start == self.i:
            raise self.error("expected digits")
        return int("".join(ch for ch, _ in self.chars[start:self.i]))

    def rational(self) -> Fraction:
        num = self.digits()
        if self.accept("/"):
            den = self.digits()
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def exponent(self) -> Fraction:
        if self.accept("("):
            sign = -1 if self.accept("-") else 1
            value = sign * self.rational()
            self.take(")")
            return value
        return self.rational()


def _parse_term(sc: _Scanner):
    if sc.peek() == "t":
        sc.take()
        return (sc.exponent() if sc.accept("^") else Fraction(1)), Fraction(1)
    sign = -1 if sc.accept("-") else 1
    coeff = sign * sc.rational()
    if sc.accept("*"):
        sc.take("t")
        return (sc.exponent() if sc.accept("^") else Fraction(1)), coeff
    return Fraction(0), coeff


def _parse_big_o(sc: _Scanner) -> Fraction:
    sc.take("O")
    sc.take("(")
    sc.take("t")
    value = sc.exponent() if sc.accept("^") else Fraction(1)
    sc.take(")")
    return value


def parse_series(text: str) -> Series:
    """Parse the series literal grammar, e.g. ``"1 - t + 2*t^(1/2) + O(t^2)"``."""
    sc = _Scanner(text)
    raw: list = []
    order: Order = INF
    sign = 1
    if sc.peek() in "+-" and sc.peek():
        # leading sign on a bare ``t`` term, e.g. "-t^2"
        if sc.peek() == "+" or (sc.i + 1 < len(sc.chars) and sc.chars[sc.i + 1][0] == "t"):
            sign = -1 if sc.take() == "-" else 1
    while True:
        if sc.peek() == "O":
            if sign < 0:
                raise sc.error("big-O term must be added")
            order = _parse_big_o(sc)
            break
        pos = sc.pos
        e, c = _parse_term(sc)
        raw.append((e, sign * c, pos))
        if not sc.peek():
            break
        op = sc.take()
        if op not in "+-":
            sc.i -= 1
            raise sc.error(f"unexpected {op!r}")
        sign = 1 if op == "+" else -1
    if sc.peek():
        raise sc.error(f"unexpected {sc.peek()!r}")
    seen: dict = {}
    for e, c, pos in raw:
        if e in seen:
            raise DuplicateExponent(f"exponent {e} appears twice (position {pos})")
        seen[e] = c
    return Series.from_mapping(seen, order)


def _format_exponent(e: Fraction) -> str:
    return str(e) if e.denominator == 1 and e >= 0 else f"({e})"


def _format_term(e: Fraction, c: Fraction) -> str:
    if e == 0:
        return str(c)
    mono = "t" if e == 1 else f"t^{_format_exponent(e)}"
    return mono if c == 1 else f"{c}*{mono}"


def format_series(a: Series) -> str:
    parts = []
    for e, c in a.terms:
        if not parts:
            parts.append("-" + _format_term(e, -c) if c < 0 else _format_term(e, c))
        else:
            parts.append(("- " if c < 0 else "+ ") + _format_term(e, abs(c)))
    text = " ".join(parts) or "0"
    if not a.is_exact:
        power = "t" if a.order == 1 else f"t^{_format_exponent(a.order)}"
        text += f" + O({power})"
    return text
