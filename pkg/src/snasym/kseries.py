"""Approximations of the complete elliptic integral K(1 - eps) as eps -> 0.

Three constructions of the same quantity:

  * ``k_asymptotic`` -- the five-term asymptotic series
    K ~ sum_k (const_k - log_k * log(eps)) eps^k with exact closed-form
    coefficients (dyadic rationals plus multiples of log 2);
  * ``k_mu_series`` -- the building-block form I0 + sum mu^k a_k J_k in the
    auxiliary parameter mu = 1 - sqrt(1 - eps), with I0 in closed form and
    the remaining weak-singularity integrals J_k evaluated by quadrature;
  * ``k_handbook`` -- the classic ten-constant polynomial-plus-log fit,
    uniformly accurate to 2e-8 on 0 < eps <= 1.

The asymptotic series and the handbook fit behave differently by design:
the series error vanishes like eps^5 log(eps) but grows away from eps = 0,
while the fit keeps a flat 2e-8 error floor everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .oracle import quad_weak_singularity
from .params import ModulusSpec

__all__ = [
    "KSeriesCoefficients",
    "HandbookKCoefficients",
    "BinomialWeights",
    "K_SERIES",
    "K_HANDBOOK",
    "BINOMIAL_WEIGHTS",
    "K_SERIES_NUMERIC_CONST",
    "K_SERIES_NUMERIC_LOG",
    "k_coefficient_table",
    "k_asymptotic",
    "k_handbook",
    "i0_closed_form",
    "k_mu_series",
]

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class KSeriesCoefficients:
    """Coefficient pairs of K ~ sum_k (const_part[k] - log_coeff[k] log eps) eps^k.

    const_part entries are exact rational combinations of 1 and log 2;
    log_coeff entries are exact dyadic rationals.
    """

    const_part: tuple[float, float, float, float, float]
    log_coeff: tuple[float, float, float, float, float]


@dataclass(frozen=True)
class HandbookKCoefficients:
    """Constants of the ten-term polynomial fit K ~ P_a(eps) + P_b(eps) log(1/eps)."""

    a: tuple[float, float, float, float, float]
    b: tuple[float, float, float, float, float]
    err_bound: float


@dataclass(frozen=True)
class BinomialWeights:
    """Weights a_k = (2k-1)!!/(2k)!! of the binomial expansion in mu, k = 1..4."""

    a: tuple[float, float, float, float]


K_SERIES = KSeriesCoefficients(
    const_part=(
        2.0 * _LOG2,
        (-1.0 + 2.0 * _LOG2) / 4.0,
        (-21.0 + 36.0 * _LOG2) / 128.0,
        (-185.0 + 300.0 * _LOG2) / 1536.0,
        (-18655.0 + 29400.0 * _LOG2) / 196608.0,
    ),
    log_coeff=(1.0 / 2.0, 1.0 / 8.0, 9.0 / 128.0, 25.0 / 512.0, 1225.0 / 32768.0),
)

# Independently published decimal renderings of the same ten coefficients,
# kept verbatim as a cross-check target for the closed forms above.
K_SERIES_NUMERIC_CONST = (
    1.386294361119891,
    0.09657359027997264,
    0.03088514453248459,
    0.01493760036978098,
    0.00876631219717606,
)
K_SERIES_NUMERIC_LOG = (0.5, 0.125, 0.0703125, 0.048828125, 0.037384033203125)

# Leading constant is log 4 = 1.38629436112; a widely circulated rendering
# transposes digits to 1.38662943, which shifts every value by 3.35e-4 and
# breaks the 2e-8 bound.  The five a-constants sum to pi/2 exactly within
# their precision, which pins the correct value.
K_HANDBOOK = HandbookKCoefficients(
    a=(1.38629436112, 0.09666344259, 0.03590092383, 0.03742563713, 0.01451196212),
    b=(0.5, 0.12498593597, 0.06880248576, 0.03328355346, 0.00441787012),
    err_bound=2e-8,
)

BINOMIAL_WEIGHTS = BinomialWeights(a=(1.0 / 2.0, 3.0 / 8.0, 5.0 / 16.0, 35.0 / 128.0))


def k_coefficient_table() -> KSeriesCoefficients:
    """The exact-form series coefficients (each matches its published decimal
    rendering to 1e-15)."""
    return K_SERIES


def k_asymptotic(spec: ModulusSpec, order: int = 4) -> float:
    """Partial sum of the asymptotic series for K(1 - eps) through eps^order."""
    if not 0 <= order <= 4:
        raise ValueError(f"order must be in 0..4, got {order!r}")
    eps = spec.eps
    if not 0.0 < eps < 1.0:
        raise ValueError("series anchored at eps -> 0: need 0 < eps < 1")
    log_eps = math.log(eps)
    table = K_SERIES
    terms = [
        (table.const_part[k] - table.log_coeff[k] * log_eps) * eps**k
        for k in range(order + 1)
    ]
    return math.fsum(terms)


def k_handbook(spec: ModulusSpec) -> float:
    """Ten-constant polynomial fit for K(1 - eps), |error| < 2e-8 on (0, 1]."""
    eps = spec.eps
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"need 0 < eps <= 1, got {eps!r}")
    tab = K_HANDBOOK
    pa = math.fsum(tab.a[k] * eps**k for k in range(5))
    pb = math.fsum(tab.b[k] * eps**k for k in range(5))
    return pa + pb * math.log(1.0 / eps)


def i0_closed_form(mu: float) -> float:
    """Closed form of the k = 0 weak-singularity integral.

    I0(mu) = sqrt(4-2mu) log(mu) / (2mu-4)
             - log(-mu + 2 sqrt(4-2mu) + 4) sqrt(4-2mu) / (2mu-4).
    """
    if not mu >= 1e-300:
        raise ValueError(f"mu >= 1e-300 required (log underflow), got {mu!r}")
    if mu >= 1.0:
        raise ValueError(f"need mu < 1, got {mu!r}")
    root = math.sqrt(4.0 - 2.0 * mu)
    denom = 2.0 * mu - 4.0
    return root * math.log(mu) / denom - math.log(-mu + 2.0 * root + 4.0) * root / denom


def k_mu_series(spec: ModulusSpec) -> float:
    """K(1 - eps) via the mu-parameter construction.

    I0 enters through its closed form; the k = 1..4 integrals are evaluated
    by weak-singularity quadrature and weighted by mu^k a_k.
    """
    spec.require_regular("k_mu_series")
    if not spec.mu < 0.5:
        raise ValueError(f"construction requires mu < 0.5, got mu={spec.mu}")
    mu = spec.mu
    terms = [i0_closed_form(mu)]
    for k in range(1, 5):
        terms.append(mu**k * BINOMIAL_WEIGHTS.a[k - 1] * quad_weak_singularity(k, spec))
    return math.fsum(terms)
