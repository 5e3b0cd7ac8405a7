"""Coefficientwise limits of functionals that are Cauchy at infinity.

A functional on series is probed only at the monomials ``t^(a_theta)`` with
``a_theta = -(theta + 1)``, a net decreasing without bound.  For each
exponent ``g`` the coefficient track ``theta -> F(t^(a_theta))(g)`` is
expected to become constant; its final value is the coefficient of the
candidate limit ``gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import FunctionalFailure, NotStabilized
from .series import Series, char_fn, invert, sub


@dataclass(frozen=True)
class CauchyFunctional:
    fn: Callable[[Series], Series]
    description: str = ""

    def __call__(self, x: Series) -> Series:
        try:
            out = self.fn(x)
        except Exception as exc:  # noqa: BLE001 - reported as a domain failure
            raise FunctionalFailure(f"{self.description or 'functional'} failed: {exc}") from exc
        if not isinstance(out, Series):
            raise FunctionalFailure(f"functional returned {type(out).__name__}, not Series")
        return out


def probe_exponent(theta: int) -> Fraction:
    return Fraction(-(theta + 1))


def _probe(F: CauchyFunctional, theta: int) -> Series:
    return F(char_fn(probe_exponent(theta)))


def coefficient_track(F: CauchyFunctional, g, theta_max: int) -> list:
    """Coefficients ``F(t^(a_theta))(g)`` for ``theta = 0 .. theta_max``."""
    if theta_max < 1:
        raise ValueError("theta_max must be at least 1")
    g = Fraction(g)
    out = []
    for theta in range(theta_max + 1):
        value = _probe(F, theta)
        if g >= value.order:
            raise FunctionalFailure(
                f"coefficient at {g} hidden by O(t^{value.order}) at theta={theta}"
            )
        out.append(value.coefficient(g))
    return out


@dataclass(frozen=True)
class GammaReport:
    gamma: Series
    stabilization: dict = field(default_factory=dict)
    residuals: list = field(default_factory=list)

    @property
    def residuals_nondecreasing(self) -> bool:
        exps = [e for _, e in self.residuals]
        return all(x <= y for x, y in zip(exps, exps[1:]))

    @property
    def residuals_increasing(self) -> bool:
        exps = [e for _, e in self.residuals]
        return all(x < y for x, y in zip(exps, exps[1:]))

    def lines(self) -> list:
        out = [f"gamma={self.gamma}"]
        for g, theta0 in sorted(self.stabilization.items()):
            out.append(f"stable[{g}]={theta0} coeff={self.gamma.as_dict().get(g, 0)}")
        out.append("residuals=" + ",".join(f"{theta}:{e}" for theta, e in self.residuals))
        out.append(f"residuals_nondecreasing={str(self.residuals_nondecreasing).lower()}")
        return out


def _stable_from(track: list) -> int:
    last = track[-1]
    theta0 = len(track) - 1
    while theta0 > 0 and track[theta0 - 1] == last:
        theta0 -= 1
    return theta0


def gamma_from_cauchy(
    F: CauchyFunctional, exponents, theta_max: int, stability_window: int = 4
) -> GammaReport:
    """Assemble the limit candidate from coefficient tracks that end constant.

    Raises :class:`NotStabilized` for the first exponent whose last
    ``stability_window`` values are not all equal.  Residual ``(theta, e)``
    records the leading exponent of ``F(t^(a_theta)) - gamma`` (``inf`` when
    the difference vanishes exactly).
    """
    if stability_window < 2:
        raise ValueError("stability_window must be at least 2")
    if stability_window > theta_max + 1:
        raise ValueError("stability_window longer than the probe horizon")
    exponents = sorted({Fraction(g) for g in exponents})
    coeffs, stabilization = {}, {}
    for g in exponents:
        track = coefficient_track(F, g, theta_max)
        tail = track[-stability_window:]
        if any(v != tail[0] for v in tail):
            raise NotStabilized(g, track)
        coeffs[g] = tail[0]
        stabilization[g] = _stable_from(track)
    gamma = Series.from_mapping(coeffs)
    residuals = []
    for theta in range(theta_max + 1):
        diff = sub(_probe(F, theta), gamma)
        lead = diff.lead_exponent if diff.terms else diff.order
        residuals.append((theta, lead))
    return GammaReport(gamma, stabilization, residuals)


# ---------------------------------------------------------------------------
# built-in functionals


def inv_shift(s0: Series, order=None) -> CauchyFunctional:
    """``x -> s0 + 1/x``; tends to ``s0`` at infinity."""
    return CauchyFunctional(lambda x: s0 + invert(x, order), f"{s0} + 1/x")


def constant(s0: Series) -> CauchyFunctional:
    return CauchyFunctional(lambda x: s0, f"constant {s0}")


def alternating(e0=0, e1=1) -> CauchyFunctional:
    """Divergent: jumps between ``t^e0`` and ``t^e1`` with the parity of the probe."""
    e0, e1 = Fraction(e0), Fraction(e1)

    def fn(x: Series) -> Series:
        return char_fn(e0 if x.lead_exponent.numerator % 2 else e1)

    return CauchyFunctional(fn, f"alternating t^{e0} / t^{e1}")


FUNCTIONALS = {
    "inv-shift": inv_shift,
    "const": constant,
    "alternating": lambda s0: alternating(),
}
