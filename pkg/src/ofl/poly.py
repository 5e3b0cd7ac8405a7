"""Univariate integer polynomials: parsing, exact evaluation, Sturm sequences.

Polynomials are tuples of integer coefficients in ascending degree with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import NotSquarefree, SeriesSyntaxError

Poly = tuple


def normalize(coeffs: Sequence) -> Poly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Poly) -> int:
    return len(p) - 1


def primitive(coeffs: Sequence) -> Poly:
    """Scale rational coefficients to coprime integers with positive leading term."""
    coeffs = [Fraction(c) for c in normalize(coeffs)]
    if not coeffs:
        return ()
    den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    g = reduce(math.gcd, ints)
    if ints[-1] < 0:
        g = -g
    return tuple(i // g for i in ints)


_TERM = re.compile(r"([+-]?)(\d*)\*?(x(?:\^(\d+))?)?")


def parse_poly(text: str) -> Poly:
    """Parse ``"x^3 - 2"``-style text with integer coefficients."""
    src = text.replace(" ", "")
    if not src:
        raise SeriesSyntaxError("empty polynomial", 0, text)
    coeffs: dict = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise SeriesSyntaxError("malformed polynomial term", pos, text)
        if pos > 0 and not m.group(1):
            raise SeriesSyntaxError("expected '+' or '-'", pos, text)
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        deg = 0
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) else 1
        coeffs[deg] = coeffs.get(deg, 0) + sign * coeff
        pos = m.end()
    top = max(coeffs)
    return normalize([coeffs.get(i, 0) for i in range(top + 1)])


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for deg in range(len(p) - 1, -1, -1):
        c = p[deg]
        if c == 0:
            continue
        mono = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p: Sequence, x) -> int:
    v = evaluate(p, x)
    return (v > 0) - (v < 0)


def derivative(p: Sequence) -> Poly:
    return normalize([i * c for i, c in enumerate(p)][1:])


def _divmod(a: Sequence, b: Sequence):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in normalize(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = list(normalize(a))
    return normalize(q), normalize(a)


def remainder(a: Sequence, b: Sequence):
    return _divmod(a, b)[1]


def quotient(a: Sequence, b: Sequence):
    return _divmod(a, b)[0]


def gcd(a: Sequence, b: Sequence) -> Poly:
    a, b = primitive(a), primitive(b)
    while b:
        a, b = b, primitive(remainder(a, b))
    return a


def is_squarefree(p: Poly) -> bool:
    return degree(gcd(p, derivative(p))) <= 0


def squarefree_part(p: Poly) -> Poly:
    g = gcd(p, derivative(p))
    return primitive(quotient(p, g)) if degree(g) > 0 else primitive(p)


def sturm_sequence(p: Poly) -> list:
    """Sturm chain of ``p``; each member rescaled by a positive constant."""
    seq = [primitive(p), primitive(derivative(p))]
    while seq[-1] and degree(seq[-1]) > 0:
        r = remainder(seq[-2], seq[-1])
        if not r:
            break
        # primitive() normalizes the leading sign, so rescale -r by |content|
        prim = primitive(r)
        lead_ratio = Fraction(r[-1]) / prim[-1]
        seq.append(prim if lead_ratio < 0 else tuple(-c for c in prim))
    return [s for s in seq if s]


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def sign_changes(seq: list, x) -> int:
    return _variations(sign_at(s, x) for s in seq)


def sign_changes_at_infinity(seq: list, negative: bool) -> int:
    signs = []
    for s in seq:
        lead = 1 if s[-1] > 0 else -1
        if negative and degree(s) % 2:
            lead = -lead
        signs.append(lead)
    return _variations(signs)


def _check_squarefree(p: Poly):
    if not p:
        raise NotSquarefree("zero polynomial")
    if not is_squarefree(p):
        raise NotSquarefree(f"{format_poly(p)} has a repeated factor")


def sturm_count_roots_below(p: Poly, q) -> int:
    """Number of real roots of the squarefree polynomial ``p`` strictly below ``q``."""
    p = normalize(p)
    _check_squarefree(p)
    seq = sturm_sequence(p)
    at_q = sign_changes(seq, q)
    # V(-inf) - V(q) counts roots in (-inf, q]
    return sign_changes_at_infinity(seq, True) - at_q - (evaluate(p, q) == 0)


def count_real_roots(p: Poly) -> int:
    p = normalize(p)
    _check_squarefree(p)
    seq = sturm_sequence(p)
    return sign_changes_at_infinity(seq, True) - sign_changes_at_infinity(seq, False)


def count_roots_between(p: Poly, lo, hi) -> int:
    """Roots in the closed interval ``[lo, hi]``."""
    return (
        sturm_count_roots_below(p, hi)
        + (evaluate(p, hi) == 0)
        - sturm_count_roots_below(p, lo)
    )


def cauchy_bound(p: Poly) -> Fraction:
    """Every real root has absolute value strictly below this bound."""
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def rational_roots(p: Poly) -> list:
    """All rational roots, sorted.

    A rational root ``r`` of a primitive polynomial with leading coefficient
    ``l`` has ``l * r`` integral, so each isolated real root needs only one
    candidate once its interval is narrower than ``1 / (2|l|)``.
    """
    p = normalize(p)
    if not p:
        raise ValueError("zero polynomial has every rational as a root")
    roots = []
    lowest = next(i for i, c in enumerate(p) if c)
    if lowest:
        roots.append(Fraction(0))
    core = squarefree_part(p[lowest:])
    if degree(core) < 1:
        return roots
    lead = abs(core[-1])
    for lo, hi in isolate_real_roots(core):
        s_lo = sign_at(core, lo)
        while (hi - lo) * lead * 2 >= 1:
            mid = (lo + hi) / 2
            s = sign_at(core, mid)
            if s == 0:
                lo = hi = mid
                break
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        for m in range(math.ceil(lo * lead), math.floor(hi * lead) + 1):
            if evaluate(core, Fraction(m, lead)) == 0:
                roots.append(Fraction(m, lead))
    return sorted(roots)


def isolate_real_roots(p: Poly) -> list:
    """Disjoint rational intervals ``(lo, hi)``, each holding exactly one root
    strictly inside, with ``p`` nonzero at both endpoints.  Sorted."""
    p = squarefree_part(normalize(p))
    if degree(p) < 1:
        return []
    bound = cauchy_bound(p)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots_between(p, lo, hi)
        if n == 0:
            continue
        if n == 1 and evaluate(p, lo) != 0 and evaluate(p, hi) != 0:
            out.append((lo, hi))
            continue
        for frac in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5)):
            mid = lo + (hi - lo) * frac
            if evaluate(p, mid) != 0:
                break
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)
