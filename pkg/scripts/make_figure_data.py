#!/usr/bin/env python3
"""Emit the CSV data behind the four standard error-regime plots.

One file per regime, written to --out-dir:

  baseline_divergence.csv   saturating two-term baseline vs oracle across
                            the turning point (where it visibly departs);
  outer_near_separatrix.csv order-2 outer expansion on a central window;
  inner_near_turning.csv    order-2 inner expansion around t = K;
  full_period.csv           piecewise composite over one full period.

Each CSV has the scan schema t,oracle,approx,abs_err,rel_err.
"""

import argparse
import math
import sys
from pathlib import Path

from snasym.oracle import complete_k
from snasym.params import ModulusSpec
from snasym.scan import ScanConfig, run_scan, write_scan_csv
from snasym.snseries import ApproxKind, validity_interval


def regimes(eps: float, samples: int):
    spec = ModulusSpec.from_eps(eps)
    k = complete_k(spec)
    lo, hi = validity_interval(spec)
    return {
        "baseline_divergence.csv": ScanConfig(
            eps=eps, kind=ApproxKind.HANDBOOK_SN, t_min=0.0, t_max=k + 2.0, samples=samples
        ),
        "outer_near_separatrix.csv": ScanConfig(
            eps=eps, kind=ApproxKind.OUTER, t_min=0.8 * lo, t_max=0.8 * hi, samples=samples
        ),
        "inner_near_turning.csv": ScanConfig(
            eps=eps, kind=ApproxKind.INNER, t_min=k - 2.0, t_max=k + 2.0, samples=samples
        ),
        "full_period.csv": ScanConfig(
            eps=eps, kind=ApproxKind.FULL_PERIOD, t_min=-2.0 * k, t_max=6.0 * k, samples=samples
        ),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", type=float, default=0.01)
    ap.add_argument("--samples", type=int, default=601)
    ap.add_argument("--out-dir", type=Path, default=Path("figure_data"))
    args = ap.parse_args(argv)
    if not 0.0 < args.eps < 1.0 or not math.isfinite(args.eps):
        ap.error(f"--eps must be in (0, 1), got {args.eps}")

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, config in regimes(args.eps, args.samples).items():
        report = run_scan(config)
        path = args.out_dir / name
        with open(path, "w", encoding="ascii", newline="") as fh:
            write_scan_csv(report, fh)
        print(
            f"{path}  rows={len(report.rows)}  max_abs_err={report.max_abs_err:.3e}"
            f"  at t={report.argmax_t:.4f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
