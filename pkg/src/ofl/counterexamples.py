"""Pathological continuous maps on closed intervals of the rationals.

Every map here is piecewise affine with rational coefficients on countably
many slices whose endpoints are either rational or quadratic irrationals, so
evaluation is exact.  Slices are built lazily: evaluating near an
accumulation point simply builds more of them.

Kinds:

``thm12`` / ``cor13``
    A continuous injection of ``[a, b]`` fixing the interior point ``c`` while
    sending everything else strictly above ``c``; so ``c`` is a boundary
    point of the image and the map is not open.  ``cor13`` is the same map,
    probed for non-openness.
``thm21i``
    Continuous on ``[a, b]`` but unbounded, not uniformly continuous, with a
    range that accumulates at 0 without containing it.
``thm21ii``
    A variant of ``thm12`` whose right-end slice is spread onto ``[a, c)``.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .cuts import AlgebraicNumber
from .errors import DegenerateInterval, DepthLimit, InvalidInterval, OutOfDomain

Endpoint = Union[Fraction, AlgebraicNumber]

DEFAULT_DEPTH_LIMIT = 10**6
ROOT2 = AlgebraicNumber.sqrt(2)

INCREASING = "increasing"
DECREASING = "decreasing"
DYADIC = "dyadic-floor"
HALVING = "halving-distance"


def _compare(p: Endpoint, q: Endpoint) -> int:
    """Sign of ``p - q`` for rationals and algebraic numbers alike."""
    if isinstance(p, AlgebraicNumber):
        return p.compare(q)
    if isinstance(q, AlgebraicNumber):
        return -q.compare_rational(p)
    return (p > q) - (p < q)


def _map_endpoint(e: Endpoint, slope: Fraction, intercept: Fraction) -> Endpoint:
    if isinstance(e, AlgebraicNumber):
        return e.affine(intercept, slope)
    return slope * e + intercept


# ---------------------------------------------------------------------------
# nets


@dataclass(frozen=True)
class NetSpec:
    target: Endpoint
    direction: str
    scheme: str
    start: Fraction

    def __post_init__(self):
        if not isinstance(self.target, AlgebraicNumber):
            object.__setattr__(self, "target", Fraction(self.target))
        object.__setattr__(self, "start", Fraction(self.start))
        if self.direction not in (INCREASING, DECREASING):
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.scheme not in (DYADIC, HALVING):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        side = _compare(self.start, self.target)
        if (self.direction == INCREASING and side >= 0) or (
            self.direction == DECREASING and side <= 0
        ):
            raise ValueError("start must lie on the approach side of the target")
        if self.scheme == HALVING and isinstance(self.target, AlgebraicNumber):
            if not self.target.is_rational:
                raise ValueError("halving-distance nets need a rational target")
            object.__setattr__(self, "target", self.target.as_rational())


class _Net:
    """Memoized terms of one net; the dyadic scheme keeps a refined target."""

    def __init__(self, spec: NetSpec):
        self.spec = spec
        self.terms = [spec.start]
        self._k = 0
        target = spec.target
        if not isinstance(target, AlgebraicNumber):
            target = AlgebraicNumber.from_rational(target)
        self._tight = target
        self._lock = threading.Lock()

    def term(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("net index must be non-negative")
        if self.spec.scheme == HALVING:
            t, s = self.spec.target, self.spec.start
            return t - (t - s) / 2**n
        with self._lock:
            while len(self.terms) <= n:
                self.terms.append(self._next_dyadic())
            return self.terms[n]

    def _next_dyadic(self) -> Fraction:
        last = self.terms[-1]
        up = self.spec.direction == INCREASING
        while True:
            self._k += 1
            self._tight = self._tight.refine(Fraction(1, 2**self._k))
            d = self._tight.dyadic_below(self._k) if up else self._tight.dyadic_above(self._k)
            if (d > last) if up else (d < last):
                return d


@lru_cache(maxsize=256)
def _net(spec: NetSpec) -> _Net:
    return _Net(spec)


def make_net(spec: NetSpec, n: int) -> Fraction:
    """The ``n``-th term of a strictly monotone rational net.

    ``halving-distance``: ``target - (target - start) / 2**n``.
    ``dyadic-floor``: term 0 is ``start``; term ``n`` is the first dyadic
    ``m / 2**k`` (``k`` past the previous term's level) strictly between the
    previous term and the target, so it lies within ``2**-n`` of the target
    for ``n >= 1``.
    """
    return _net(spec).term(n)


# ---------------------------------------------------------------------------
# intervals and segments


@dataclass(frozen=True)
class Interval:
    lo: Endpoint
    hi: Endpoint
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, x) -> bool:
        lo = _compare(x, self.lo)
        hi = _compare(x, self.hi)
        return (lo > 0 or (lo == 0 and self.lo_closed)) and (
            hi < 0 or (hi == 0 and self.hi_closed)
        )

    def contains_interval(self, other: "Interval") -> bool:
        lo = _compare(other.lo, self.lo)
        hi = _compare(other.hi, self.hi)
        lo_ok = lo > 0 or (lo == 0 and (self.lo_closed or not other.lo_closed))
        hi_ok = hi < 0 or (hi == 0 and (self.hi_closed or not other.hi_closed))
        return lo_ok and hi_ok

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class Segment:
    source_lo: Endpoint
    source_hi: Endpoint
    lo_closed: bool
    hi_closed: bool
    slope: Fraction
    intercept: Fraction
    label: str = ""
    target: str = ""

    def __post_init__(self):
        if _compare(self.source_lo, self.source_hi) >= 0:
            raise InvalidInterval("segment source must satisfy lo < hi")

    @property
    def source(self) -> Interval:
        return Interval(self.source_lo, self.source_hi, self.lo_closed, self.hi_closed)

    def contains(self, x) -> bool:
        return self.source.contains(x)

    def __call__(self, x) -> Fraction:
        return self.slope * Fraction(x) + self.intercept

    def image(self) -> Interval:
        lo = _map_endpoint(self.source_lo, self.slope, self.intercept)
        hi = _map_endpoint(self.source_hi, self.slope, self.intercept)
        if self.slope > 0:
            return Interval(lo, hi, self.lo_closed, self.hi_closed)
        return Interval(hi, lo, self.hi_closed, self.lo_closed)

    def restrict(self, source: Interval, label: str = "", target: str = "") -> "Segment":
        return replace(
            self,
            source_lo=source.lo,
            source_hi=source.hi,
            lo_closed=source.lo_closed,
            hi_closed=source.hi_closed,
            label=label or self.label,
            target=target or self.target,
        )


def affine_transport(a1, a2, b1, b2) -> Segment:
    """The affine map sending ``a1 -> b1`` and ``a2 -> b2``, on the closed hull of ``a1, a2``."""
    a1, a2, b1, b2 = map(Fraction, (a1, a2, b1, b2))
    if a1 == a2 or b1 == b2:
        raise DegenerateInterval("transport needs two distinct points on each side")
    slope = (b2 - b1) / (a2 - a1)
    intercept = b1 - slope * a1
    return Segment(min(a1, a2), max(a1, a2), True, True, slope, intercept)


# ---------------------------------------------------------------------------
# maps


class PiecewiseLinearMap:
    """Base class: a lazily built family of affine segments on ``[a, b]``.

    Segments are keyed by ``(family, index)`` and cached under a lock, so
    concurrent evaluation is safe and every caller sees the same segments.
    """

    kind = ""
    injective = True

    def __init__(self, a, b, depth_limit: int = DEFAULT_DEPTH_LIMIT):
        self.a, self.b = Fraction(a), Fraction(b)
        if not self.a < self.b:
            raise InvalidInterval(f"need a < b, got [{self.a}, {self.b}]")
        self.depth_limit = depth_limit
        self.default_value = None
        self._segments: dict = {}
        self._lock = threading.RLock()
        self.max_depth_seen = 0

    @property
    def params(self) -> dict:
        return {"a": self.a, "b": self.b}

    @property
    def domain(self) -> Interval:
        return Interval(self.a, self.b)

    def segment(self, family: str, n: int) -> Segment:
        key = (family, n)
        with self._lock:
            seg = self._segments.get(key)
            if seg is None:
                seg = self._segments[key] = self._build(family, n)
            return seg

    @property
    def segments(self) -> list:
        """Segments built so far, in build-key order."""
        with self._lock:
            return [self._segments[k] for k in sorted(self._segments)]

    def families(self) -> tuple:
        raise NotImplementedError

    def _build(self, family: str, n: int) -> Segment:
        raise NotImplementedError

    def locate(self, x: Fraction):
        """The segment whose source holds ``x``, or ``None`` for a special point."""
        raise NotImplementedError

    def special_value(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def _deepen(self, n: int):
        if n >= self.depth_limit:
            raise DepthLimit(f"no slice found within {self.depth_limit} levels")
        if n > self.max_depth_seen:
            self.max_depth_seen = n

    def __call__(self, x) -> Fraction:
        return eval_map(self, x)


def eval_map(m: PiecewiseLinearMap, x) -> Fraction:
    x = Fraction(x)
    if not m.a <= x <= m.b:
        raise OutOfDomain(f"{x} outside [{m.a}, {m.b}]")
    seg = m.locate(x)
    if seg is None:
        return m.special_value(x)
    return seg(x)


class Theorem12Map(PiecewiseLinearMap):
    """Injection of ``[a, b]`` with ``c -> c`` and every other point sent above ``c``.

    ``a_n`` and ``b_n`` halve their distance to ``c``.  Irrational cut points
    ``u_n`` in ``(a_n, a_{n+1})`` and ``v_n`` in ``(b_{n+1}, b_n)`` slice the
    two sides::

        S_0 = [a, u_0),  S_n = (u_{n-1}, u_n)
        T_0 = (v_0, b],  T_n = (v_n, v_{n-1})

    ``S_n`` is mapped affinely into ``T_{2n}`` and ``T_n`` into ``T_{2n+1}``.
    """

    kind = "thm12"

    def __init__(self, a, b, c, depth_limit: int = DEFAULT_DEPTH_LIMIT):
        super().__init__(a, b, depth_limit)
        self.c = Fraction(c)
        if not self.a < self.c < self.b:
            raise InvalidInterval(f"need a < c < b, got a={self.a}, c={self.c}, b={self.b}")
        self.left = NetSpec(self.c, INCREASING, HALVING, self.a)
        self.right = NetSpec(self.c, DECREASING, HALVING, self.b)
        self._cuts: dict = {}

    @property
    def params(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}

    def families(self):
        return ("S", "T")

    def a_(self, n):
        return make_net(self.left, n)

    def b_(self, n):
        return make_net(self.right, n)

    def _cut_point(self, side: str, n: int) -> AlgebraicNumber:
        key = (side, n)
        with self._lock:
            pt = self._cuts.get(key)
            if pt is None:
                if side == "u":
                    lo, hi = self.a_(n), self.a_(n + 1)
                else:
                    lo, hi = self.b_(n + 1), self.b_(n)
                # lo + (hi - lo) / sqrt(2)
                pt = ROOT2.affine(lo, (hi - lo) / 2).refine((hi - lo) / 1024)
                self._cuts[key] = pt
            return pt

    def u(self, n):
        return self._cut_point("u", n)

    def v(self, n):
        return self._cut_point("v", n)

    def s_slice(self, n: int) -> Interval:
        if n == 0:
            return Interval(self.a, self.u(0), True, False)
        return Interval(self.u(n - 1), self.u(n), False, False)

    def t_slice(self, n: int) -> Interval:
        if n == 0:
            return Interval(self.v(0), self.b, False, True)
        return Interval(self.v(n), self.v(n - 1), False, False)

    def _t_box(self, m: int):
        """Rational closed box strictly inside ``T_m`` (closed at ``b`` for ``m = 0``)."""
        bm, below = self.b_(m), self.b_(m + 1)
        lo = bm - (bm - below) / 4
        hi = bm if m == 0 else bm + (self.b_(m - 1) - bm) / 4
        return lo, hi

    def _s_source_box(self, n: int):
        return (self.a_(n - 1) if n else self.a_(0)), self.a_(n + 1)

    def _t_source_box(self, n: int):
        return self.b_(n + 1), (self.b_(n - 1) if n else self.b_(0))

    def slice_interval(self, label: str) -> Interval:
        family, n = label[0], int(label[1:])
        return self.s_slice(n) if family == "S" else self.t_slice(n)

    def _build(self, family, n):
        if family == "S":
            src, target = self._s_source_box(n), 2 * n
            source = self.s_slice(n)
        elif family == "T":
            src, target = self._t_source_box(n), 2 * n + 1
            source = self.t_slice(n)
        else:
            raise KeyError(family)
        box = self._t_box(target)
        seg = affine_transport(src[0], src[1], box[0], box[1])
        return seg.restrict(source, label=f"{family}{n}", target=f"T{target}")

    def locate(self, x):
        if x == self.c:
            return None
        n = 0
        if x < self.c:
            while _compare(x, self.u(n)) > 0:
                n += 1
                self._deepen(n)
            return self.segment("S", n)
        while _compare(x, self.v(n)) < 0:
            n += 1
            self._deepen(n)
        return self._right_segment(x, n)

    def _right_segment(self, x, n):
        return self.segment("T", n)

    def special_value(self, x):
        return self.c


class Corollary13Map(Theorem12Map):
    kind = "cor13"


class Theorem21iiMap(Theorem12Map):
    """``thm12`` with ``T_0`` spread onto ``[a, c)`` instead of into ``T_1``.

    ``T_0 = (v_0, b]`` is cut at a net ``e_n`` decreasing from ``b`` to
    ``v_0``; the piece ``(e_{n+1}, e_n]`` is mapped decreasingly onto
    ``[p_n, p_{n+1})`` where ``p_n`` halves its distance to ``c``.  The
    pieces use their own family ``P`` so the remaining ``T_n`` keep their
    odd-indexed targets.
    """

    kind = "thm21ii"

    def __init__(self, a, b, c, depth_limit: int = DEFAULT_DEPTH_LIMIT):
        super().__init__(a, b, c, depth_limit)
        self.t0_net = NetSpec(self.v(0), DECREASING, DYADIC, self.b)
        self.fill = NetSpec(self.c, INCREASING, HALVING, self.a)

    def families(self):
        return ("S", "T", "P")

    def e_(self, n):
        return make_net(self.t0_net, n)

    def p_(self, n):
        return make_net(self.fill, n)

    def left_image(self) -> Interval:
        return Interval(self.a, self.c, True, False)

    def _build(self, family, n):
        if family == "T" and n == 0:
            raise KeyError("T0 is covered by the P pieces")
        if family == "P":
            seg = affine_transport(self.e_(n), self.e_(n + 1), self.p_(n), self.p_(n + 1))
            source = Interval(self.e_(n + 1), self.e_(n), False, True)
            return seg.restrict(source, label=f"P{n}", target="[a,c)")
        return super()._build(family, n)

    def _right_segment(self, x, n):
        if n:
            return self.segment("T", n)
        k = 0
        while x <= self.e_(k + 1):
            k += 1
            self._deepen(k)
        return self.segment("P", k)


class Theorem21iMap(PiecewiseLinearMap):
    """Unbounded, non-uniformly continuous map with a range that is not closed.

    ``a_n`` increases to ``theta1 = a + (b - a)(sqrt 2 - 1)`` and ``b_n``
    decreases to ``theta2 = a + (b - a)(2 - sqrt 2)`` along dyadic nets.
    ``[a_n, a_{n+1})`` goes increasingly onto ``[n + 1, n + 2)``,
    ``(b_{n+1}, b_n]`` decreasingly onto ``[-1/(n+1), -1/(n+2))``, and the
    plateau ``(theta1, theta2)`` goes to 1.
    """

    kind = "thm21i"
    injective = False

    def __init__(self, a, b, depth_limit: int = DEFAULT_DEPTH_LIMIT):
        super().__init__(a, b, depth_limit)
        width = self.b - self.a
        self.theta1 = ROOT2.affine(self.a - width, width)
        self.theta2 = ROOT2.affine(self.a + 2 * width, -width)
        self.left = NetSpec(self.theta1, INCREASING, DYADIC, self.a)
        self.right = NetSpec(self.theta2, DECREASING, DYADIC, self.b)
        self.default_value = Fraction(1)

    def families(self):
        return ("A", "B")

    def a_(self, n):
        return make_net(self.left, n)

    def b_(self, n):
        return make_net(self.right, n)

    @staticmethod
    def u_(n) -> Fraction:
        return Fraction(n + 1)

    @staticmethod
    def d_(n) -> Fraction:
        return Fraction(-1, n + 1)

    def plateau(self) -> Interval:
        return Interval(self.theta1, self.theta2, False, False)

    def _build(self, family, n):
        if family == "A":
            seg = affine_transport(self.a_(n), self.a_(n + 1), self.u_(n), self.u_(n + 1))
            source = Interval(self.a_(n), self.a_(n + 1), True, False)
        elif family == "B":
            seg = affine_transport(self.b_(n), self.b_(n + 1), self.d_(n), self.d_(n + 1))
            source = Interval(self.b_(n + 1), self.b_(n), False, True)
        else:
            raise KeyError(family)
        return seg.restrict(source, label=f"{family}{n}")

    def locate(self, x):
        if _compare(x, self.theta1) < 0:
            n = 0
            while x >= self.a_(n + 1):
                n += 1
                self._deepen(n)
            return self.segment("A", n)
        if _compare(x, self.theta2) > 0:
            n = 0
            while x <= self.b_(n + 1):
                n += 1
                self._deepen(n)
            return self.segment("B", n)
        return None

    def special_value(self, x):
        return self.default_value


def build_theorem12_map(a, b, c) -> Theorem12Map:
    return Theorem12Map(a, b, c)


def build_corollary13_map(a, b, c) -> Corollary13Map:
    return Corollary13Map(a, b, c)


def build_theorem21i_map(a, b) -> Theorem21iMap:
    return Theorem21iMap(a, b)


def build_theorem21ii_map(a, b, c) -> Theorem21iiMap:
    return Theorem21iiMap(a, b, c)


BUILDERS = {
    "thm12": build_theorem12_map,
    "cor13": build_corollary13_map,
    "thm21i": build_theorem21i_map,
    "thm21ii": build_theorem21ii_map,
}


def build_map(kind: str, a, b, c=None) -> PiecewiseLinearMap:
    if kind not in BUILDERS:
        raise ValueError(f"unknown map kind {kind!r}")
    if kind == "thm21i":
        return build_theorem21i_map(a, b)
    if c is None:
        raise InvalidInterval(f"{kind} needs an interior point c")
    return BUILDERS[kind](a, b, c)


# ---------------------------------------------------------------------------
# probes


def sample_points(m: PiecewiseLinearMap, samples: int, seed: int) -> list:
    """Distinct seeded rationals in ``[a, b]``: mostly uniform on a fine grid,
    a fifth clustered near the accumulation points of the slices."""
    rng = random.Random(seed)
    grid = 10**9
    width = m.b - m.a
    hot = [m.c] if hasattr(m, "c") else [m.theta1.approx(), m.theta2.approx()]
    out = {m.a, m.b}
    if hasattr(m, "c"):
        out.add(m.c)
    attempts = 0
    while len(out) < samples and attempts < 20 * samples:
        attempts += 1
        if rng.random() < 0.8:
            x = m.a + width * Fraction(rng.randrange(grid + 1), grid)
        else:
            centre = rng.choice(hot)
            offset = width * Fraction(rng.randrange(1, 1000), 1000) / 2 ** rng.randrange(2, 24)
            x = centre + offset if rng.random() < 0.5 else centre - offset
            if not m.a <= x <= m.b:
                continue
        out.add(x)
    return sorted(out)


def check_image_discipline(m: Theorem12Map, depth: int) -> list:
    """Segments (to ``depth`` per family) whose image leaves its assigned target.

    Symbolic: compares the exact image interval against the target slice.
    """
    failures = []
    for family in m.families():
        for n in range(depth):
            if family == "T" and n == 0 and isinstance(m, Theorem21iiMap):
                continue
            seg = m.segment(family, n)
            target = (
                m.left_image() if seg.target == "[a,c)" else m.slice_interval(seg.target)
            )
            if not target.contains_interval(seg.image()):
                failures.append(seg.label)
    return failures


def odd_even_separated(m: Theorem12Map, depth: int) -> bool:
    for n in range(depth):
        if m.segment("S", n).target != f"T{2 * n}":
            return False
        if (n or m.kind != "thm21ii") and m.segment("T", n).target != f"T{2 * n + 1}":
            return False
    return True


def segment_images_avoid(m: Theorem21iMap, value: Fraction, depth: int) -> bool:
    """True when no A/B segment image to ``depth`` (nor the plateau) contains ``value``."""
    if value == m.default_value:
        return False
    for family in m.families():
        for n in range(depth):
            if m.segment(family, n).image().contains(value):
                return False
    return True


def uniform_continuity_witnesses(m: Theorem21iMap, kmax: int = 20) -> list:
    """For each ``delta = 2**-k`` a pair ``a_n, a_{n+1}`` closer than delta with value gap >= 1."""
    out = []
    n = 0
    for k in range(1, kmax + 1):
        delta = Fraction(1, 2**k)
        while m.a_(n + 1) - m.a_(n) >= delta:
            n += 1
        x, y = m.a_(n), m.a_(n + 1)
        out.append((k, n, x, y, eval_map(m, y) - eval_map(m, x)))
    return out


def probe_pathologies(m: PiecewiseLinearMap, samples: int = 10_000, seed: int = 0) -> dict:
    xs = sample_points(m, samples, seed)
    values = [eval_map(m, x) for x in xs]
    report: dict = {"kind": m.kind, **m.params, "samples": len(xs)}
    if m.injective:
        report["collisions"] = len(xs) - len(set(values))
    if isinstance(m, Theorem12Map):
        _probe_sliced(m, xs, values, report)
    else:
        _probe_unbounded(m, xs, values, report)
    report["max_depth"] = m.max_depth_seen
    return report


def _probe_sliced(m: Theorem12Map, xs, values, report):
    c = m.c
    depth = m.max_depth_seen + 2
    report["f_c"] = eval_map(m, c)
    report["image_discipline_failures"] = len(check_image_discipline(m, depth))
    report["odd_even_separated"] = odd_even_separated(m, depth)
    if m.kind in ("thm12", "cor13"):
        others = [v for x, v in zip(xs, values) if x != c]
        report["min_image_other"] = min(others)
        report["all_other_images_above_c"] = all(v > c for v in others)
        report["c_is_boundary_of_image"] = report["f_c"] == c and report["all_other_images_above_c"]
        return
    a1, b1 = m.a_(1), m.b_(1)
    inner = [(x, v) for x, v in zip(xs, values) if a1 < x < b1]
    report["inner_samples"] = len(inner)
    report["inner_min_image"] = min(v for _, v in inner)
    report["inner_never_below_c"] = all(v >= c for _, v in inner)
    report["c_attained_only_at_c"] = all((v == c) == (x == c) for x, v in inner)
    t0 = m.t_slice(0)
    t0_vals = [v for x, v in zip(xs, values) if t0.contains(x)]
    report["t0_samples"] = len(t0_vals)
    report["t0_images_in_a_c"] = all(m.a <= v < c for v in t0_vals)
    report["not_open_witness"] = report["inner_never_below_c"] and report["c_attained_only_at_c"]


def _probe_unbounded(m: Theorem21iMap, xs, values, report, bound: int = 1000):
    witnesses = uniform_continuity_witnesses(m)
    report["uc_deltas_checked"] = len(witnesses)
    report["uc_min_value_gap"] = min(w[4] for w in witnesses)
    report["uc_violation_all_deltas"] = all(w[4] >= 1 for w in witnesses)
    big = m.a_(bound)
    report["unbounded_witness_x"] = big
    report["unbounded_witness_fx"] = eval_map(m, big)
    report["sample_max"] = max(values)
    report["sample_max_negative"] = max(v for v in values if v < 0) if any(v < 0 for v in values) else None
    # d_n = -1/(n+1) is attained at b_n; n = 10**6 puts it within 1e-6 of 0
    near = m.d_(10**6)
    report["near_zero_value"] = near
    report["near_zero_within_1e-6"] = abs(near) <= Fraction(1, 10**6)
    report["near_zero_evaluated"] = eval_map(m, m.b_(bound))
    depth = max(m.max_depth_seen, bound) + 2
    report["zero_attained"] = not segment_images_avoid(m, Fraction(0), depth) or 0 in values
    report["range_not_closed"] = report["near_zero_within_1e-6"] and not report["zero_attained"]


def format_report(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key}={value}")
    return "\n".join(lines)
