"""Command-line driver: operator application over grids, verification
suites with JSON reports, and kernel/transform dumps for offline plotting.

Exit codes: 0 success, 1 failed verification checks, 2 non-converged
quadrature in apply/dump output, 64 configuration errors, 65 precondition
violations in strict mode.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import kernels, operators, transforms, verify
from .errors import DomainError, PreconditionError, QuadratureError
from .grids import Grid, GridFunction, OperatorParams, test_functions
from .quad import DEFAULT_SPEC, QuadratureSpec

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_NOT_CONVERGED = 2
EXIT_CONFIG = 64
EXIT_PRECONDITION = 65

REPORT_SCHEMA = 1


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("BESSELFRAC_THREADS", "1")))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    workers = _worker_count()
    if workers == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _load_config_file(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (want key=value): {line!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _apply_config_defaults(args, parser):
    if not getattr(args, "config", None):
        return args
    try:
        cfg = _load_config_file(args.config)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    for key, val in cfg.items():
        if not hasattr(args, key):
            parser.error(f"unknown config key {key!r}")
        # flags win over the file: only fill values the user left at default
        if parser.get_default(key) == getattr(args, key):
            default = parser.get_default(key)
            caster = type(default) if default is not None else str
            if caster is bool:
                setattr(args, key, val.lower() in ("1", "true", "yes"))
            else:
                setattr(args, key, caster(val))
    return args


def _parse_grid(spec: str) -> Grid:
    kind, _, rest = spec.partition(":")
    parts = rest.split(",")
    if kind == "geometric":
        x_min, x_max, n = float(parts[0]), float(parts[1]), int(parts[2])
        return Grid.geometric(x_min, x_max, n)
    if kind == "linear":
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        return Grid.linear(a, b, n)
    raise ValueError(f"unknown grid spec {spec!r} (want geometric:a,b,n or linear:a,b,n)")


def _make_function(args):
    if args.input_csv:
        from scipy.interpolate import PchipInterpolator

        gf = GridFunction.from_csv(open(args.input_csv).read())
        interp = PchipInterpolator(gf.grid.array, gf.values.real, extrapolate=False)
        warnings.warn(
            "CSV samples are interpolated (monotone cubic); spectral routes "
            "need analytic decay and are not reliable on interpolants",
            stacklevel=2,
        )

        def f(x):
            v = interp(x)
            return 0.0 if np.isnan(v) else float(v)

        f.decay = "unknown"
        return f
    kind = args.fn
    params = {}
    for item in args.fn_param or ():
        key, _, val = item.partition("=")
        params[key] = float(val)
    if kind == "gauss":
        params.setdefault("lam", args.lam)
        return test_functions("gaussian", **params)
    if kind == "holder":
        params.setdefault("alpha", args.alpha)
        return test_functions("holder", **params)
    if kind == "bump":
        return test_functions("bump", **params)
    if kind == "radial-gauss":
        return test_functions("radial_gaussian", **params)
    raise ValueError(f"unknown function kind {kind!r}")


def _quad_spec(args) -> QuadratureSpec:
    return QuadratureSpec(
        abs_tol=args.abs_tol,
        rel_tol=args.rel_tol,
        max_subdivisions=args.max_subdivisions,
        infinite_map=args.infinite_map,
    )


def _out_stream(args):
    return open(args.out, "w") if args.out else sys.stdout


def cmd_apply(args) -> int:
    p = OperatorParams(args.lam, args.sigma)
    f = _make_function(args)
    grid = _parse_grid(args.grid)
    spec = _quad_spec(args)
    routes = list(operators.ROUTES) if args.route == "all" else [args.route]
    if p.sigma >= 0.5 and "poisson" in routes:
        if args.route == "all":
            routes.remove("poisson")
        else:
            print("poisson route needs sigma < 1/2", file=sys.stderr)
            return EXIT_PRECONDITION

    def one(x):
        row = {}
        for route in routes:
            try:
                row[route] = operators.frac_power(
                    p, f, float(x), route, spec, strict=args.strict
                )
            except PreconditionError:
                raise
            except QuadratureError:
                row[route] = float("nan")
        return row

    try:
        with warnings.catch_warnings():
            if not args.strict:
                warnings.simplefilter("ignore")
            rows = _map_ordered(one, grid.nodes)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION

    failed_converge = any(math.isnan(v) for row in rows for v in row.values())
    out = _out_stream(args)
    if args.format == "json":
        payload = [
            {"x": x, **{r: row[r] for r in routes}}
            for x, row in zip(grid.nodes, rows)
        ]
        json.dump({"schema": REPORT_SCHEMA, "rows": payload}, out, indent=1)
        out.write("\n")
    else:
        header = "x,route,value,err_est"
        if args.route == "all" and len(routes) > 1:
            header += ",pairwise_delta"
        out.write(header + "\n")
        for x, row in zip(grid.nodes, rows):
            vals = [row[r] for r in routes]
            delta = (max(vals) - min(vals)) if len(vals) > 1 else None
            for route in routes:
                v = row[route]
                # the bound the quadrature stack was asked to meet
                err = max(spec.abs_tol, spec.rel_tol * abs(v))
                line = f"{_fmt(x)},{route},{_fmt(v)},{_fmt(err)}"
                if delta is not None:
                    line += f",{_fmt(delta)}"
                out.write(line + "\n")
    if out is not sys.stdout:
        out.close()
    return EXIT_NOT_CONVERGED if failed_converge else EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run_suite(args.suite, quick=args.quick)
    report = {
        "schema": REPORT_SCHEMA,
        "suite": args.suite,
        "quick": args.quick,
        "checks": [
            {
                "check_name": c.name,
                "target": c.target,
                "measured": c.measured,
                "tolerance": c.tolerance,
                "pass": c.passed,
                "detail": c.detail,
            }
            for c in checks
        ],
        "passed": all(c.passed for c in checks),
    }
    out = _out_stream(args)
    json.dump(report, out, indent=1, default=str)
    out.write("\n")
    if out is not sys.stdout:
        out.close()
    failing = [c.name for c in checks if not c.passed]
    if failing:
        print("failed checks: " + ", ".join(failing), file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_dump(args) -> int:
    p = OperatorParams(args.lam, args.sigma)
    spec = _quad_spec(args)
    grid = _parse_grid(args.grid)
    out = _out_stream(args)
    t = args.time
    x0 = args.x

    if args.kind == "heat":
        out.write("lambda,sigma,t,x,y,kind,value,err_est\n")
        for x in grid.nodes:
            for y in grid.nodes[:: max(1, len(grid.nodes) // 32)]:
                ev = kernels.heat_kernel(p, t, x, y)
                out.write(
                    f"{_fmt(p.lam)},{_fmt(p.sigma)},{_fmt(t)},{_fmt(x)},{_fmt(y)},"
                    f"heat,{_fmt(ev.value)},{_fmt(ev.err_est)}\n"
                )
    elif args.kind == "poisson":
        out.write("lambda,sigma,t,x,y,kind,value,err_est,classical_ratio\n")
        for y in grid.nodes:
            ev = kernels.poisson_kernel(p, t, x0, y, spec)
            ratio = ev.value / kernels.classical_poisson(t, x0 - y)
            out.write(
                f"{_fmt(p.lam)},{_fmt(p.sigma)},{_fmt(t)},{_fmt(x0)},{_fmt(y)},"
                f"poisson,{_fmt(ev.value)},{_fmt(ev.err_est)},{_fmt(ratio)}\n"
            )
    elif args.kind == "ksigma":
        out.write("lambda,sigma,t,x,y,kind,value,err_est,envelope\n")
        for y in grid.nodes:
            if abs(x0 - y) < 1e-6 * max(x0, y):
                continue
            ev = kernels.k_sigma(p, x0, y, spec)
            env = abs(x0 - y) ** (-1.0 - 2.0 * p.sigma)
            out.write(
                f"{_fmt(p.lam)},{_fmt(p.sigma)},nan,{_fmt(x0)},{_fmt(y)},"
                f"ksigma,{_fmt(ev.value)},{_fmt(ev.err_est)},{_fmt(env)}\n"
            )
    elif args.kind == "transform":
        f = _make_function(args)
        table = transforms.get_table(p.lam, f)
        out.write("lambda,sigma,t,x,y,kind,value,err_est\n")
        for y in grid.nodes:
            out.write(
                f"{_fmt(p.lam)},{_fmt(p.sigma)},nan,nan,{_fmt(y)},"
                f"transform,{_fmt(float(table(y)))},nan\n"
            )
    else:
        raise ValueError(f"unknown dump kind {args.kind!r}")
    if out is not sys.stdout:
        out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselfrac",
        description="Fractional Bessel operator on the half-line: apply, verify, dump",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
        sp.add_argument("--sigma", type=float, default=0.25)
        sp.add_argument("--beta", type=float, default=1.0)
        sp.add_argument("--alpha", type=float, default=0.3)
        sp.add_argument("--grid", default="geometric:0.01,20,256")
        sp.add_argument("--abs-tol", type=float, default=DEFAULT_SPEC.abs_tol)
        sp.add_argument("--rel-tol", type=float, default=DEFAULT_SPEC.rel_tol)
        sp.add_argument("--max-subdivisions", type=int, default=DEFAULT_SPEC.max_subdivisions)
        sp.add_argument("--infinite-map", choices=("rational", "exponential"),
                        default="rational")
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--strict", action="store_true",
                        help="treat hypothesis violations as errors (exit 65)")
        sp.add_argument("--config", default=None,
                        help="plain key=value file; explicit flags win")

    sp = sub.add_parser("apply", help="evaluate the fractional power over a grid")
    common(sp)
    sp.add_argument("--route", choices=operators.ROUTES + ("all",), default="heat")
    sp.add_argument("--fn", choices=("gauss", "holder", "bump", "radial-gauss"),
                    default="gauss")
    sp.add_argument("--fn-param", action="append", metavar="key=value")
    sp.add_argument("--input-csv", default=None,
                    help="sample file (x,value_re header) interpolated as input")
    sp.set_defaults(fn_handler=cmd_apply)

    sp = sub.add_parser("verify", help="run a named verification suite")
    common(sp)
    sp.add_argument("suite", choices=verify.SUITES + ("all",))
    sp.add_argument("--quick", action="store_true", help="subsample the lattices")
    sp.set_defaults(fn_handler=cmd_verify)

    sp = sub.add_parser("dump", help="tabulate a kernel or transform to CSV")
    common(sp)
    sp.add_argument("--kind", choices=("heat", "poisson", "ksigma", "transform"),
                    required=True)
    sp.add_argument("--time", type=float, default=1.0, help="kernel time parameter")
    sp.add_argument("--x", type=float, default=1.0, help="fixed first argument")
    sp.add_argument("--fn", choices=("gauss", "holder", "bump", "radial-gauss"),
                    default="gauss")
    sp.add_argument("--fn-param", action="append", metavar="key=value")
    sp.add_argument("--input-csv", default=None)
    sp.set_defaults(fn_handler=cmd_dump)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config_defaults(args, parser)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; the interface promises 64
        if exc.code not in (0, None):
            return EXIT_CONFIG
        return 0
    try:
        return args.fn_handler(args)
    except (DomainError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
