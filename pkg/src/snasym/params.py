"""Modulus bookkeeping for the near-unit-modulus regime.

Everything downstream is parameterized by the small gap ``eps = 1 - m``
between the modulus parameter m and 1.  The auxiliary parameter
``mu = 1 - sqrt(1 - eps)`` drives the series construction for the complete
elliptic integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DegenerateModulusError(ValueError):
    """Raised when an operation requires eps > 0 but got the eps = 0 limit."""


@dataclass(frozen=True)
class ModulusSpec:
    """Single source of truth for the parameter conversions eps <-> m <-> mu.

    Invariants (for the regular range 0 < eps <= 1):
      * m + eps == 1 exactly,
      * mu == 1 - sqrt(m) to machine precision, 0 < mu <= 1.

    eps == 0 is accepted as an explicit degenerate spec (separatrix limit);
    operations that diverge there raise DegenerateModulusError themselves.
    """

    eps: float
    m: float
    mu: float

    @classmethod
    def from_eps(cls, eps: float) -> "ModulusSpec":
        if not 0.0 <= eps <= 1.0 or math.isnan(eps):
            raise ValueError(f"eps must lie in [0, 1], got {eps!r}")
        m = 1.0 - eps
        # mu = 1 - sqrt(1-eps) computed in the cancellation-free form;
        # the naive difference loses ~eps^-1 relative accuracy as eps -> 0.
        mu = eps / (1.0 + math.sqrt(m))
        return cls(eps=float(eps), m=m, mu=mu)

    @property
    def degenerate(self) -> bool:
        return self.eps == 0.0

    def require_regular(self, what: str = "operation") -> None:
        if self.degenerate:
            raise DegenerateModulusError(f"degenerate modulus: {what} requires eps > 0")
