"""Matched asymptotic approximations of sn(t | 1 - eps) for small eps.

Building blocks:

  * outer (separatrix) expansion  u = tanh t + eps u1 + eps^2 u2 with
    u_n = a_n(t) / cosh^2 t, trusted for |t| << -log(eps)/2;
  * inner (turning-point) expansion  u = 1 + eps v1(tau) + eps^2 v2(tau) in
    the stretched coordinate tau = t + log(eps)/2, trusted for
    |tau| << -log(eps)/2, with matching constants c1 = -1/8 and
    c2 = -(log eps + 5)/512;
  * overlap expansion -- the common part of the two, used by the composite
    construction (sum minus common part);
  * composite half-period formulas and a piecewise full-period evaluator.

All evaluators are total functions: trust regions are advisory, and error
scans are expected to probe beyond them to exhibit divergence.

Sign conventions.  Two self-consistent sign frames circulate for the inner
recurrence; the series here uses u = 1 + eps v1 + eps^2 v2, which is the
frame forced by the composite formula and by the oracle (sn <= 1 near the
turning point).  In this frame the first- and second-order relations are

    (v1')^2 = 4 v1^2 - 2 v1,
    2 v1' v2' = 4 v1^3 + 8 v1 v2 - 5 v1^2 - 2 v2,

and both hold exactly for the closed forms below (the reflected frame
w_n = -v_n turns the first relation into (w')^2 = 4 w^2 + 2 w).  The
variant second-order relation with a +5 v1 inhomogeneity in place of
-5 v1^2 also circulates; it is evaluated for diagnostics only and fails.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .oracle import complete_k
from .params import ModulusSpec

__all__ = [
    "ApproxKind",
    "TauCoord",
    "C1",
    "c2_matching",
    "a1",
    "a2",
    "v1",
    "v2",
    "handbook_sn",
    "outer_eval",
    "outer_equation_residual",
    "validity_interval",
    "inner_eval",
    "inner_eval_sign_variant",
    "overlap_eval",
    "composite_first_half",
    "composite_second_half",
    "full_period_eval",
    "seam_points",
    "approx_eval",
    "turning_point_tau",
    "first_order_turning_residual",
    "second_order_turning_residual",
    "second_order_turning_residual_variant",
]

C1 = -1.0 / 8.0


class ApproxKind(enum.Enum):
    """Dispatch tag for the sn approximations."""

    HANDBOOK_SN = "handbook-sn"
    OUTER = "outer"
    INNER = "inner"
    COMPOSITE_FIRST_HALF = "composite"
    COMPOSITE_SECOND_HALF = "composite-second"
    FULL_PERIOD = "full-period"


@dataclass(frozen=True)
class TauCoord:
    """Stretched turning-point coordinate tau = t + log(eps)/2."""

    t: float
    tau: float

    @classmethod
    def from_t(cls, t: float, spec: ModulusSpec) -> "TauCoord":
        return cls(t=t, tau=t + 0.5 * math.log(spec.eps))

    @classmethod
    def from_tau(cls, tau: float, spec: ModulusSpec) -> "TauCoord":
        return cls(t=tau - 0.5 * math.log(spec.eps), tau=tau)


# ---------------------------------------------------------------------------
# outer (separatrix) expansion


def a1(t: float) -> float:
    """Numerator of the first outer correction u1 = a1 / cosh^2."""
    return math.sinh(2.0 * t) / 8.0 - t / 4.0


def a1_prime(t: float) -> float:
    return math.cosh(2.0 * t) / 4.0 - 0.25  # == sinh^2 t


def a2(t: float) -> float:
    """Numerator of the second outer correction u2 = a2 / cosh^2."""
    return (
        -(t * t / 16.0) * math.tanh(t)
        - math.sinh(4.0 * t) / 256.0
        + 5.0 * math.sinh(2.0 * t) / 64.0
        - 9.0 * t / 64.0
    )


def a2_prime(t: float) -> float:
    sech2 = 1.0 / math.cosh(t) ** 2
    return (
        -(t / 8.0) * math.tanh(t)
        - (t * t / 16.0) * sech2
        - math.cosh(4.0 * t) / 64.0
        + 5.0 * math.cosh(2.0 * t) / 32.0
        - 9.0 / 64.0
    )


def outer_eval(t: float, spec: ModulusSpec, order: int = 2) -> float:
    """Separatrix-anchored expansion tanh t + eps u1 + eps^2 u2.

    order selects how many corrections enter (0, 1 or 2).  Trusted on
    validity_interval(spec); total outside it.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order!r}")
    u = math.tanh(t)
    if order >= 1:
        sech2 = 1.0 / math.cosh(t) ** 2
        u += spec.eps * a1(t) * sech2
        if order == 2:
            u += spec.eps**2 * a2(t) * sech2
    return u


def _outer_derivative(t: float, spec: ModulusSpec, order: int) -> float:
    sech2 = 1.0 / math.cosh(t) ** 2
    d = sech2
    if order >= 1:
        tanh = math.tanh(t)
        d += spec.eps * (a1_prime(t) - 2.0 * a1(t) * tanh) * sech2
        if order == 2:
            d += spec.eps**2 * (a2_prime(t) - 2.0 * a2(t) * tanh) * sech2
    return d


def outer_equation_residual(t: float, spec: ModulusSpec, order: int = 2) -> float:
    """Residual of the defining equation (u')^2 - (1-u^2)(1-(1-eps)u^2)
    under the outer expansion; O(eps^(order+1)) inside its trust region."""
    u = outer_eval(t, spec, order)
    du = _outer_derivative(t, spec, order)
    return du * du - (1.0 - u * u) * (1.0 - (1.0 - spec.eps) * u * u)


def validity_interval(spec: ModulusSpec) -> tuple[float, float]:
    """Trust region (log(eps)/2, -log(eps)/2) of the outer expansion."""
    if not spec.eps < 1.0:
        raise ValueError("validity interval defined for eps < 1")
    half = -0.5 * math.log(spec.eps)
    return (-half, half)


# ---------------------------------------------------------------------------
# inner (turning-point) expansion


def c2_matching(spec: ModulusSpec) -> float:
    """Second matching constant c2 = -(log eps + 5)/512."""
    return -(math.log(spec.eps) + 5.0) / 512.0


def v1(tau: float) -> float:
    """First turning-point correction, with matched c1 = -1/8:
    v1 = -e^{2 tau}/128 - 2 e^{-2 tau} + 1/4."""
    return -math.exp(2.0 * tau) / 128.0 - 2.0 * math.exp(-2.0 * tau) + 0.25


def v1_prime(tau: float) -> float:
    return -math.exp(2.0 * tau) / 64.0 + 4.0 * math.exp(-2.0 * tau)


def v2(tau: float, spec: ModulusSpec) -> float:
    """Second turning-point correction with matched c2."""
    c2 = c2_matching(spec)
    e2, em2 = math.exp(2.0 * tau), math.exp(-2.0 * tau)
    return (
        e2 * c2
        - 256.0 * em2 * c2
        + math.exp(4.0 * tau) / 32768.0
        + tau * e2 / 256.0
        - tau * em2
        - 3.0 * em2
        + 2.0 * math.exp(-4.0 * tau)
        + 11.0 / 64.0
    )


def v2_prime(tau: float, spec: ModulusSpec) -> float:
    c2 = c2_matching(spec)
    e2, em2 = math.exp(2.0 * tau), math.exp(-2.0 * tau)
    return (
        2.0 * e2 * c2
        + 512.0 * em2 * c2
        + math.exp(4.0 * tau) / 8192.0
        + (1.0 + 2.0 * tau) * e2 / 256.0
        - (1.0 - 2.0 * tau) * em2
        + 6.0 * em2
        - 8.0 * math.exp(-4.0 * tau)
    )


def turning_point_tau() -> float:
    """Stationary point of 1 + eps v1: tau* = 2 log 2 (v1 = v1' = 0 there)."""
    return 2.0 * math.log(2.0)


def inner_eval(tau: float, spec: ModulusSpec, order: int = 2) -> float:
    """Turning-point expansion 1 + eps v1(tau) (+ eps^2 v2(tau) for order 2).

    The eps-term enters with a plus sign; see the module docstring for the
    frame convention.  Trusted for |tau| << -log(eps)/2; total everywhere.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    u = 1.0 + spec.eps * v1(tau)
    if order == 2:
        u += spec.eps**2 * v2(tau, spec)
    return u


def inner_eval_sign_variant(tau: float, spec: ModulusSpec, order: int = 1) -> float:
    """The rejected sign variant 1 - eps v1 (+ eps^2 v2): kept so scans can
    report its oracle-measured error next to the adopted form."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    u = 1.0 - spec.eps * v1(tau)
    if order == 2:
        u += spec.eps**2 * v2(tau, spec)
    return u


def overlap_eval(tau: float, spec: ModulusSpec) -> float:
    """Common part of the outer and inner expansions (two orders).

    The eps-term coincides with v1 (that is what the c1 matching enforces);
    the eps^2-term is v2 minus its e^{4 tau}/32768 component.
    """
    eps = spec.eps
    log_eps = math.log(eps)
    e2, em2 = math.exp(2.0 * tau), math.exp(-2.0 * tau)
    eps2_term = (
        tau * e2 / 256.0
        - log_eps * e2 / 512.0
        - 5.0 * e2 / 512.0
        - tau * em2
        + log_eps * em2 / 2.0
        - em2 / 2.0
        + 2.0 * math.exp(-4.0 * tau)
        + 11.0 / 64.0
    )
    return 1.0 + eps * v1(tau) + eps * eps * eps2_term


# ---------------------------------------------------------------------------
# composite (uniform) approximations


def composite_first_half(t: float, spec: ModulusSpec) -> float:
    """Uniform approximation near the first half-period:
    tanh t + eps (sinh 2t / 8 - t/4)/cosh^2 t + eps/4 - eps^2 e^{2t}/128.

    Outer plus inner minus their common part.  The trailing two terms are the
    turning-point contribution rewritten in t via e^{2 tau} = eps e^{2 t}.
    Trust core: from the lower outer edge up to where eps^2 v2 ~ eps, i.e.
    t up to about -3/4 log(eps) + 2.6; total everywhere.
    """
    eps = spec.eps
    return (
        math.tanh(t)
        + eps * a1(t) / math.cosh(t) ** 2
        + eps / 4.0
        - eps * eps * math.exp(2.0 * t) / 128.0
    )


def composite_second_half(t: float, spec: ModulusSpec) -> float:
    """Mirror composite for the second half-period.

    Defined as -composite_first_half(t - T/2) with the full-accuracy period
    T = 4K, which enforces the exact identity u(t + T/2) = -u(t); keeping
    the trailing eps/4 - eps^2 e^{2(t-T/2)}/128 terms unnegated instead
    would contradict that antisymmetry.
    """
    half = 2.0 * complete_k(spec)
    return -composite_first_half(t - half, spec)


@lru_cache(maxsize=128)
def _seam_origin(eps: float) -> float:
    """Error-balanced breakpoint for the piecewise full-period evaluator.

    The jump at a seam placed at s (and at s + T/2, by construction both
    seams carry the same jump) is g(s) = composite_first_half(s) +
    composite_first_half(s + T/2): the true values cancel by antisymmetry,
    leaving exactly the sum of the two formula errors.  g changes sign
    inside the lower overlap strip, so a bisection root gives seams whose
    jump is ~0 instead of the O(eps) error floor.  Falls back to the
    nominal -T/8 when no sign change exists (large eps).
    """
    spec = ModulusSpec.from_eps(eps)
    half = 2.0 * complete_k(spec)

    def g(s: float) -> float:
        return composite_first_half(s, spec) + composite_first_half(s + half, spec)

    lo = 0.5 * math.log(eps) if eps < 1.0 else -0.5
    lo, hi = 0.9 * lo, -0.05 * lo
    n = 81
    xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    gs = [g(x) for x in xs]
    bracket = None
    for i in range(n - 1):
        if gs[i] == 0.0:
            return xs[i]
        if (gs[i] > 0.0) != (gs[i + 1] > 0.0):
            bracket = (xs[i], xs[i + 1])
            break
    if bracket is None:
        return -half / 4.0  # -T/8
    a, b = bracket
    fa = g(a)
    for _ in range(80):
        mid = 0.5 * (a + b)
        fm = g(mid)
        if fm == 0.0:
            return mid
        if (fa > 0.0) != (fm > 0.0):
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def seam_points(spec: ModulusSpec) -> tuple[float, float]:
    """Breakpoints (s, s + T/2) of the piecewise full-period evaluator,
    reported in [0, T)."""
    full = 4.0 * complete_k(spec)
    s = _seam_origin(spec.eps)
    return (s % full, (s + full / 2.0) % full)


def full_period_eval(t: float, spec: ModulusSpec) -> float:
    """Piecewise uniform approximation for all t.

    t is reduced modulo the period into [s, s + T) for the error-balanced
    seam origin s; the first-half composite covers [s, s + T/2), its mirror
    covers the rest.
    """
    full = 4.0 * complete_k(spec)
    s0 = _seam_origin(spec.eps)
    s = math.fmod(t - s0, full)
    if s < 0.0:
        s += full
    s += s0
    if s < s0 + full / 2.0:
        return composite_first_half(s, spec)
    return composite_second_half(s, spec)


# ---------------------------------------------------------------------------
# baseline and dispatch


def handbook_sn(t: float, spec: ModulusSpec) -> float:
    """Two-term baseline tanh t + eps (sinh t cosh t - t) sech^2 t / 4.

    Non-uniform: it saturates near 1 + eps/4 for large t instead of turning,
    so its error grows without bound toward the half-period."""
    sech2 = 1.0 / math.cosh(t) ** 2
    return math.tanh(t) + 0.25 * spec.eps * (math.sinh(t) * math.cosh(t) - t) * sech2


def approx_eval(kind: ApproxKind, t: float, spec: ModulusSpec, order: int = 2) -> float:
    """Uniform dispatch over the approximation family (t-coordinate for all
    kinds; the inner kind converts to tau internally)."""
    if kind is ApproxKind.HANDBOOK_SN:
        return handbook_sn(t, spec)
    if kind is ApproxKind.OUTER:
        return outer_eval(t, spec, order)
    if kind is ApproxKind.INNER:
        return inner_eval(TauCoord.from_t(t, spec).tau, spec, max(1, min(order, 2)))
    if kind is ApproxKind.COMPOSITE_FIRST_HALF:
        return composite_first_half(t, spec)
    if kind is ApproxKind.COMPOSITE_SECOND_HALF:
        return composite_second_half(t, spec)
    if kind is ApproxKind.FULL_PERIOD:
        return full_period_eval(t, spec)
    raise ValueError(f"unknown approximation kind {kind!r}")


# ---------------------------------------------------------------------------
# turning-point recurrence diagnostics


def first_order_turning_residual(tau: float) -> float:
    """Residual of the first-order turning-point relation,
    (v1')^2 - 4 v1^2 + 2 v1; identically zero for the closed form.

    Equivalently this is (w')^2 - 4 w^2 - 2 w for the reflected frame
    w = -v1, the form in which the recurrence is usually quoted.

    Evaluated in the factored grouping (v1' - 2 v1)(v1' + 2 v1) + 2 v1
    with each factor in its reduced closed form, so intermediates stay
    O(|v1|).  The naive difference of squares cancels e^{4|tau|}-sized
    terms and drowns the residual in roundoff already at |tau| ~ 3;
    forming the factors from rounded v1, v1' has the same problem one
    level down (v1' + 2 v1 cancels at scale e^{-2 tau}).  The check is
    still nontrivial: (8 e^{-2 tau} - 1/2)(1/2 - e^{2 tau}/32) must
    cancel 2 v1 at scale O(|v1|).
    """
    fac_minus = 8.0 * math.exp(-2.0 * tau) - 0.5
    fac_plus = 0.5 - math.exp(2.0 * tau) / 32.0
    return fac_minus * fac_plus + 2.0 * v1(tau)


def second_order_turning_residual(tau: float, spec: ModulusSpec) -> float:
    """Residual of the second-order relation
    2 v1' v2' - (4 v1^3 + 8 v1 v2 - 5 v1^2 - 2 v2); identically zero."""
    f, g = v1(tau), v2(tau, spec)
    return 2.0 * v1_prime(tau) * v2_prime(tau, spec) - (
        4.0 * f**3 + 8.0 * f * g - 5.0 * f * f - 2.0 * g
    )


def second_order_turning_residual_variant(tau: float, spec: ModulusSpec) -> float:
    """Residual of the circulating variant relation
    2 v1' v2' - (8 v1 v2 - 2 v2 + 4 v1^3 + 5 v1).

    Diagnostic only: no sign frame makes this one vanish for the closed
    forms (the inhomogeneity should be -5 v1^2, not +5 v1); scans report its
    size instead of silently repairing it.
    """
    f, g = v1(tau), v2(tau, spec)
    return 2.0 * v1_prime(tau) * v2_prime(tau, spec) - (
        8.0 * f * g - 2.0 * g + 4.0 * f**3 + 5.0 * f
    )
