"""Infix expressions over series literals.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := integer | 't' | 'O(t^' exp ')' | func '(' expr ')' | '(' expr ')'
    func   := 'sqrt' | 'A' | 'A_inv'

``t^e`` takes any rational exponent (parenthesize fractions and negatives);
other bases take integer powers, negative ones meaning inversion.  Division,
inversion and square roots expand to the truncation ``order``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import series as S
from .errors import SeriesSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|(A_inv|sqrt|A|O|t)|(.))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == "" and m.end() >= len(text)):
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise SeriesSyntaxError(f"unexpected character {m.group(3)!r}", start, text)
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, order):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.order = order

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message):
        return SeriesSyntaxError(message, self.tok[2], self.text)

    def accept(self, kind, value=None):
        k, v, _ = self.tok
        if k == kind and (value is None or v == value):
            self.i += 1
            return v if v is not None else True
        return None

    def expect(self, kind, value=None):
        got = self.accept(kind, value)
        if got is None:
            raise self.error(f"expected {value or kind}")
        return got

    def parse(self) -> S.Series:
        value = self.expr()
        if self.tok[0] != "end":
            raise self.error(f"unexpected {self.tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept("op", "+"):
                value = S.add(value, self.term())
            elif self.accept("op", "-"):
                value = S.sub(value, self.term())
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self.accept("op", "*"):
                value = S.mul(value, self.unary())
            elif self.accept("op", "/"):
                value = S.mul(value, S.invert(self.unary(), self.order))
            else:
                return value

    def unary(self):
        if self.accept("op", "-"):
            return S.neg(self.unary())
        if self.accept("op", "+"):
            return self.unary()
        return self.power()

    def rational_exponent(self) -> Fraction:
        if self.accept("op", "("):
            sign = -1 if self.accept("op", "-") else 1
            value = Fraction(self.expect("num"))
            if self.accept("op", "/"):
                den = self.expect("num")
                if den == 0:
                    raise self.error("zero denominator")
                value /= den
            self.expect("op", ")")
            return sign * value
        return Fraction(self.expect("num"))

    def integer_exponent(self) -> int:
        if self.accept("op", "("):
            sign = -1 if self.accept("op", "-") else 1
            value = sign * self.expect("num")
            self.expect("op", ")")
            return value
        return self.expect("num")

    def power(self):
        if self.accept("name", "t"):
            e = self.rational_exponent() if self.accept("op", "^") else Fraction(1)
            return S.char_fn(e)
        base = self.atom()
        if not self.accept("op", "^"):
            return base
        n = self.integer_exponent()
        return _int_power(base, n, self.order)

    def atom(self):
        num = self.accept("num")
        if num is not None:
            return S.Series.constant(num)
        if self.accept("name", "O"):
            self.expect("op", "(")
            self.expect("name", "t")
            e = self.rational_exponent() if self.accept("op", "^") else Fraction(1)
            self.expect("op", ")")
            return S.Series((), e)
        for name, fn in (
            ("sqrt", lambda s: S.sqrt(s, self.order)),
            ("A", S.automorphism_double),
            ("A_inv", S.automorphism_halve),
        ):
            if self.accept("name", name):
                self.expect("op", "(")
                inner = self.expr()
                self.expect("op", ")")
                return fn(inner)
        if self.accept("op", "("):
            inner = self.expr()
            self.expect("op", ")")
            return inner
        raise self.error("expected a number, t, O(...), a function or '('")


def _int_power(base: S.Series, n: int, order) -> S.Series:
    if n < 0:
        base, n = S.invert(base, order), -n
    result = S.Series.constant(1)
    while n:
        if n & 1:
            result = S.mul(result, base)
        base = S.mul(base, base)
        n >>= 1
    return result


def expression_eval(text: str, order=None) -> S.Series:
    """Evaluate an infix series expression; ``order`` defaults to the environment."""
    order = S.default_order() if order is None else Fraction(order)
    return _Parser(text, order).parse()
