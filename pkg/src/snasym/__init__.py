"""Uniform asymptotics for the Jacobi elliptic function sn near unit modulus.

Oracle-grade sn/cn/dn and K evaluation (AGM plus an independent Runge-Kutta
cross-check), asymptotic and polynomial approximations of K(1 - eps), matched
outer/inner/composite expansions of sn(t | 1 - eps), and a CSV-emitting CLI
for error scans and convergence-order fits.
"""

from .kseries import (
    BINOMIAL_WEIGHTS,
    K_HANDBOOK,
    K_SERIES,
    BinomialWeights,
    HandbookKCoefficients,
    KSeriesCoefficients,
    i0_closed_form,
    k_asymptotic,
    k_coefficient_table,
    k_handbook,
    k_mu_series,
)
from .oracle import (
    IntegrationFailureError,
    JacobiTriple,
    PeriodInfo,
    complete_k,
    jacobi_sn,
    ode_cross_check,
    period,
    quad_weak_singularity,
)
from .params import DegenerateModulusError, ModulusSpec
from .scan import OrderFit, ScanConfig, ScanReport, ScanRow, fit_order, run_order, run_scan
from .snseries import (
    ApproxKind,
    TauCoord,
    approx_eval,
    composite_first_half,
    composite_second_half,
    full_period_eval,
    handbook_sn,
    inner_eval,
    outer_eval,
    overlap_eval,
    validity_interval,
)

__version__ = "0.1.0"
