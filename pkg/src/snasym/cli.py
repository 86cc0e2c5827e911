"""Command-line front end: scan, kcompare, order, selftest.

Exit codes: 0 success, 1 invalid arguments, 2 I/O failure, 3 selftest failure.
Flags are the complete interface (no environment variables, no config files).
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from . import scan as scanmod
from .scan import K_FORMULA_TAGS, FlatErrorLadderError, ScanConfig
from .snseries import ApproxKind

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_SELFTEST = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract reserves 2 for I/O
    def error(self, message):  # noqa: D102
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_eps_list(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --eps-list: {exc}") from exc
    if not values:
        raise ValueError("empty --eps-list")
    return values


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh


def _cmd_scan(args) -> int:
    try:
        kind = ApproxKind(args.approx)
    except ValueError:
        print(f"unknown approximation tag {args.approx!r}", file=sys.stderr)
        return EXIT_USAGE
    config = ScanConfig(
        eps=args.eps,
        kind=kind,
        order=args.order,
        t_min=args.tmin,
        t_max=args.tmax,
        samples=args.samples,
        output_path=args.out,
    )
    try:
        config.validate()
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = scanmod.run_scan(config)
    try:
        with _open_out(args.out) as fh:
            scanmod.write_scan_csv(report, fh)
    except OSError as exc:
        print(f"cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_IO
    flag = "exceeded" if report.trust_exceeded else "inside"
    print(
        f"scan eps={args.eps:g} approx={args.approx} rows={len(report.rows)} "
        f"max_abs_err={report.max_abs_err!r} at t={report.argmax_t!r} "
        f"trust-region: {flag}"
    )
    return EXIT_OK


def _cmd_kcompare(args) -> int:
    try:
        eps_grid = _parse_eps_list(args.eps_list)
        rows = scanmod.kcompare_rows(eps_grid)
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with _open_out(args.out) as fh:
            scanmod.write_kcompare_csv(rows, fh)
    except OSError as exc:
        print(f"cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_IO
    worst = max(r["res_handbook"] for r in rows)
    bound = 2e-8
    verdict = "holds" if worst < bound else "VIOLATED"
    print(f"kcompare rows={len(rows)} handbook 2e-8 bound {verdict} (worst {worst!r})")
    return EXIT_OK


def _cmd_order(args) -> int:
    tags = [k.value for k in ApproxKind] + list(K_FORMULA_TAGS)
    if args.approx not in tags:
        print(f"unknown approximation tag {args.approx!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        eps_list = _parse_eps_list(args.eps_list)
        fit = scanmod.run_order(
            args.approx,
            eps_list,
            window_policy=args.window,
            t_window=(args.tmin, args.tmax),
            order=args.order,
        )
    except FlatErrorLadderError:
        print("flat error ladder: cannot fit an order", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(
        f"order approx={args.approx} window={args.window} "
        f"fitted_order={fit.fitted_order!r} r_squared={fit.r_squared!r}"
    )
    for eps, err in zip(fit.eps_list, fit.max_errs):
        print(f"  eps={eps!r} max_err={err!r}")
    return EXIT_OK


def _cmd_selftest(_args) -> int:
    results = scanmod.selftest_checks()
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.name:<{width}}  {status}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
        failures += 0 if r.passed else 1
    print(f"selftest: {len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snasym", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="error scan of an approximation vs the oracle")
    p_scan.add_argument("--eps", type=float, required=True)
    p_scan.add_argument(
        "--approx",
        default=ApproxKind.COMPOSITE_FIRST_HALF.value,
        help="one of: " + ", ".join(k.value for k in ApproxKind),
    )
    p_scan.add_argument("--order", type=int, default=2)
    p_scan.add_argument("--tmin", type=float, required=True)
    p_scan.add_argument("--tmax", type=float, required=True)
    p_scan.add_argument("--samples", type=int, default=500)
    p_scan.add_argument("--out", default="-", help="CSV path; '-' streams to stdout")
    p_scan.set_defaults(func=_cmd_scan)

    p_kc = sub.add_parser("kcompare", help="compare the K formulas against the oracle")
    p_kc.add_argument("--eps-list", required=True, help="comma-separated eps values")
    p_kc.add_argument("--out", default="-")
    p_kc.set_defaults(func=_cmd_kcompare)

    p_ord = sub.add_parser("order", help="empirical convergence order over an eps ladder")
    p_ord.add_argument("--approx", required=True)
    p_ord.add_argument(
        "--eps-list",
        default=",".join(str(e) for e in scanmod.DEFAULT_ORDER_LADDER),
    )
    p_ord.add_argument("--window", choices=("fixed", "scaled"), default="scaled")
    p_ord.add_argument("--tmin", type=float, default=-1.0)
    p_ord.add_argument("--tmax", type=float, default=1.0)
    p_ord.add_argument("--order", type=int, default=2)
    p_ord.set_defaults(func=_cmd_order)

    p_st = sub.add_parser("selftest", help="run the library invariant suite")
    p_st.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
