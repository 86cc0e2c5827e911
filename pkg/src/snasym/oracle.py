"""High-accuracy reference values: sn/cn/dn, K, the period, and quadrature.

Two unrelated evaluation routes are kept side by side so they can bound each
other's error:

  * ``jacobi_sn`` -- arithmetic-geometric mean / descending Landen recursion,
    accurate to ~1e-12 absolute for eps >= 1e-10;
  * ``ode_cross_check`` -- adaptive Runge-Kutta integration of the second-order
    form u'' = -(2 - eps) u + 2 (1 - eps) u^3, u(0) = 0, u'(0) = 1.

The first-order defining equation (u')^2 = (1 - u^2)(1 - (1-eps) u^2) is
square-root singular at the turning points, so the cross-check integrates the
differentiated form instead.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.integrate import IntegrationWarning, quad, solve_ivp

from .params import DegenerateModulusError, ModulusSpec

__all__ = [
    "JacobiTriple",
    "PeriodInfo",
    "IntegrationFailureError",
    "agm",
    "complete_k",
    "jacobi_sn",
    "ode_cross_check",
    "period",
    "quad_weak_singularity",
]

_QUAD_TOL = 1e-14


class IntegrationFailureError(RuntimeError):
    """ODE integration failed (step-size underflow); carries the reached t."""

    def __init__(self, reached_t: float):
        super().__init__(f"integration failure at t = {reached_t}")
        self.reached_t = reached_t


@dataclass(frozen=True)
class JacobiTriple:
    """Values sn, cn, dn at a time argument t."""

    sn: float
    cn: float
    dn: float
    t: float


@dataclass(frozen=True)
class PeriodInfo:
    """Quarter, half and full period of sn for a given modulus."""

    quarter: float
    half: float
    full: float


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of a, b > 0.

    Quadratically convergent; stops on exact fixed point or when the gap
    no longer shrinks (the iterates can oscillate by 1 ulp forever).
    """
    for _ in range(64):
        if a == b:
            break
        an, bn = 0.5 * (a + b), math.sqrt(a * b)
        if abs(an - bn) >= abs(a - b):
            break
        a, b = an, bn
    return 0.5 * (a + b)


def complete_k(spec: ModulusSpec) -> float:
    """Complete elliptic integral K(m) via K = pi / (2 AGM(1, sqrt(eps))).

    Relative accuracy ~1e-15 for eps >= 1e-12.  Rejects eps = 0, where K
    diverges logarithmically.
    """
    spec.require_regular("complete_k")
    return math.pi / (2.0 * agm(1.0, math.sqrt(spec.eps)))


def period(spec: ModulusSpec) -> PeriodInfo:
    """Period of sn: quarter K, half 2K, full T = 4K."""
    k = complete_k(spec)
    return PeriodInfo(quarter=k, half=2.0 * k, full=4.0 * k)


def _agm_ladder(eps: float) -> tuple[list[float], list[float]]:
    """Descending Landen scales a_n and gap terms c_n down to c_N ~ 0."""
    a = [1.0]
    c = [math.sqrt(1.0 - eps)]
    b = math.sqrt(eps)
    while c[-1] > 1e-17 and len(a) < 64:
        a_next = 0.5 * (a[-1] + b)
        b_next = math.sqrt(a[-1] * b)
        c.append(0.5 * (a[-1] - b))
        a.append(a_next)
        b = b_next
    return a, c


def jacobi_sn(t: float, spec: ModulusSpec) -> JacobiTriple:
    """sn, cn, dn at t by AGM/descending-Landen with argument reduction.

    t is reduced modulo the full period, then folded into [0, K] using the
    quarter-period reflection symmetries, which keeps the recursion phase
    small and the accuracy near machine precision for any t.

    The eps = 0 separatrix limit returns (tanh t, sech t, sech t) directly.
    """
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    if spec.degenerate:
        sech = 1.0 / math.cosh(t)
        return JacobiTriple(sn=math.tanh(t), cn=sech, dn=sech, t=t)

    m = spec.m
    k_quarter = complete_k(spec)
    sign_sn = 1.0
    tr = math.fmod(t, 4.0 * k_quarter)
    if tr < 0.0:
        tr += 4.0 * k_quarter
    if tr >= 2.0 * k_quarter:
        tr -= 2.0 * k_quarter
        sign_sn = -sign_sn
    sign_cn = sign_sn
    if tr > k_quarter:
        tr = 2.0 * k_quarter - tr
        sign_cn = -sign_cn

    a, c = _agm_ladder(spec.eps)
    n_top = len(a) - 1
    phi = (2.0**n_top) * a[n_top] * tr
    for n in range(n_top, 0, -1):
        s = c[n] / a[n] * math.sin(phi)
        s = max(-1.0, min(1.0, s))
        phi = 0.5 * (phi + math.asin(s))

    sn = math.sin(phi)
    cn = math.cos(phi)
    # dn > 0 for real t and 0 <= m < 1; the identity form avoids the loss of
    # significance the Landen quotient suffers when cn -> 0 at the turning point.
    dn = math.sqrt(max(0.0, 1.0 - m * sn * sn))
    return JacobiTriple(sn=sign_sn * sn, cn=sign_cn * cn, dn=dn, t=t)


def ode_cross_check(t: float, spec: ModulusSpec) -> float:
    """u(t) by adaptive Runge-Kutta on u'' = -(2-eps) u + 2 (1-eps) u^3.

    Independent of the AGM route.  Local tolerance 1e-13; the horizon is
    restricted to |t| <= 2 T(eps) so accumulated error stays ~1e-10.
    """
    full = period(spec).full
    if abs(t) > 2.0 * full:
        raise ValueError(f"|t| <= 2T required for the cross-check, got t={t}")
    if t == 0.0:
        return 0.0
    eps = spec.eps

    def rhs(_t: float, y):
        u, v = y
        return (v, -(2.0 - eps) * u + 2.0 * (1.0 - eps) * u**3)

    sol = solve_ivp(
        rhs,
        (0.0, t),
        (0.0, 1.0),
        method="DOP853",
        rtol=1e-13,
        atol=1e-15,
    )
    if sol.status != 0:
        raise IntegrationFailureError(reached_t=float(sol.t[-1]))
    return float(sol.y[0, -1])


def ode_cross_check_grid(ts, spec: ModulusSpec):
    """Vector version of ode_cross_check for a sorted grid of t >= 0."""
    eps = spec.eps

    def rhs(_t: float, y):
        u, v = y
        return (v, -(2.0 - eps) * u + 2.0 * (1.0 - eps) * u**3)

    t_final = float(max(ts))
    sol = solve_ivp(
        rhs,
        (0.0, t_final if t_final > 0 else 1.0),
        (0.0, 1.0),
        method="DOP853",
        rtol=1e-13,
        atol=1e-15,
        dense_output=True,
    )
    if sol.status != 0:
        raise IntegrationFailureError(reached_t=float(sol.t[-1]))
    return sol.sol(ts)[0]


def quad_weak_singularity(k: int, spec: ModulusSpec) -> float:
    """Integral of y^k / ((y+1)^(k+1) sqrt((1-y)(1-(1-mu) y))) over [0, 1].

    The substitution y = 1 - s^2 removes the inverse-square-root endpoint
    singularity: the transformed integrand is smooth on [0, 1], so adaptive
    quadrature reaches ~1e-14.  Valid for k in 0..4.
    """
    if k not in (0, 1, 2, 3, 4):
        raise ValueError(f"k must be in 0..4, got {k!r}")
    mu = spec.mu

    def integrand(s: float) -> float:
        y = 1.0 - s * s
        # sqrt(1 - (1-mu) y) with y = 1 - s^2 becomes sqrt(mu + (1-mu) s^2)
        return 2.0 * y**k / ((1.0 + y) ** (k + 1) * math.sqrt(mu + (1.0 - mu) * s * s))

    with warnings.catch_warnings():
        # requesting near-machine tolerance trips a roundoff warning even
        # though the returned value is good to ~1e-15
        warnings.simplefilter("ignore", IntegrationWarning)
        value, _err = quad(integrand, 0.0, 1.0, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
    return float(value)
