"""Command-line surface: evaluation, inversion, certification, identity
suites and density reports with machine-readable CSV/JSON output.

Exit codes: 0 success, 1 failed certification or residual above tolerance,
2 usage/configuration errors.  Output files are written atomically (temp
file plus rename) so no command leaves a partial artifact behind.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .config import DEFAULT
from .inversion import GridSpec, fid_certificate, invert_targets, voiculescu_grid
from .measures import (
    ConvergenceReport,
    DensityGrid,
    check_beta_square,
    check_beta_symmetric,
    density_ultra,
    poincare_report,
)
from .transforms import (
    check_derivative_identity,
    check_eq3,
    estimate_dn,
    gn_closed,
    gn_recurrence,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_CONVERGE_DEFAULT_NS = (1, 2, 5, 10, 20, 50)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(out_path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ultrafid-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _upper_grid(args) -> np.ndarray:
    return GridSpec(args.r_min, args.r_max, args.nr, args.ntheta).points()


def _x_grid(args) -> np.ndarray:
    return np.linspace(args.x_min, args.x_max, args.nx)


def _rows_csv(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _cmd_eval(args) -> int:
    pts = _upper_grid(args)
    vals = gn_closed(args.n, pts)
    if args.format == "json":
        payload = {
            "schema": 1,
            "n": args.n,
            "rows": [
                {"re_z": p.real, "im_z": p.imag, "re_g": v.real, "im_g": v.imag}
                for p, v in zip(pts, vals)
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        rows = [(p.real, p.imag, v.real, v.imag) for p, v in zip(pts, vals)]
        _emit(_rows_csv("re_z,im_z,re_g,im_g", rows), args.out)
    return EXIT_OK


def _cmd_invert(args) -> int:
    # lower half-plane targets mirroring the polar grid
    targets = np.conj(_upper_grid(args))
    pre = invert_targets(args.n, targets, args.tol)
    residuals = np.abs(gn_closed(args.n, pre) - targets)
    rows = [
        (w.real, w.imag, z.real, z.imag, float(r))
        for w, z, r in zip(targets, pre, residuals)
    ]
    if args.format == "json":
        payload = {
            "schema": 1,
            "n": args.n,
            "max_residual": float(residuals.max()),
            "rows": [
                {"re_w": a, "im_w": b, "re_z": c, "im_z": d, "residual": e}
                for a, b, c, d, e in rows
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_rows_csv("re_w,im_w,re_z,im_z,residual", rows), args.out)
    return EXIT_OK if residuals.max() <= args.tol else EXIT_FAIL


def _cmd_phi(args) -> int:
    pts = _upper_grid(args)
    phi = voiculescu_grid(args.n, pts)
    rows = [(p.real, p.imag, v.real, v.imag) for p, v in zip(pts, phi)]
    if args.format == "json":
        payload = {
            "schema": 1,
            "n": args.n,
            "rows": [
                {"re_z": a, "im_z": b, "re_phi": c, "im_phi": d}
                for a, b, c, d in rows
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_rows_csv("re_z,im_z,re_phi,im_phi", rows), args.out)
    return EXIT_OK


def _cmd_certify(args) -> int:
    spec = GridSpec(args.r_min, args.r_max, args.nr, args.ntheta)
    cert = fid_certificate(args.n, spec, args.tol)
    _emit(cert.to_json(), args.out)
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def _identity_suite(n: int):
    rng = np.random.default_rng(20240 + n)
    upper = rng.uniform(-3, 3, 24) + 1j * rng.uniform(0.05, 3, 24)
    lower = np.conj(upper[:12]) - 0.01j
    mixed = np.concatenate([upper, lower])

    eq3 = max(check_eq3(k, z).residual for k in range(6) for z in upper[:8])
    rec = float(np.max(np.abs(gn_closed(n, mixed) - gn_recurrence(n, mixed))))
    deriv = max(check_derivative_identity(n, complex(z)).residual for z in mixed)
    d_val, d_spread = estimate_dn(max(n, 2), list(mixed[:20]))
    spread_rel = d_spread / abs(d_val)
    bnd = max(
        abs(gn_closed(n, 2.0) - n / (2 * n - 1)),
        abs(gn_closed(n, -2.0) + n / (2 * n - 1)),
    )
    return [
        ("catalan-moment-expansion", eq3, 1e-9),
        ("closed-vs-recurrence", rec, 1e-10),
        ("derivative-recursion", deriv, 1e-10),
        ("constant-ratio-spread", spread_rel, 1e-6),
        ("boundary-values", bnd, 1e-12),
    ]


def _cmd_identities(args) -> int:
    rows = _identity_suite(args.n)
    if args.tol is not None:
        rows = [(name, res, args.tol) for name, res, _ in rows]
    lines = [f"{'identity':<28}{'max_residual':<16}{'threshold':<12}status"]
    ok = True
    for name, res, thr in rows:
        status = "ok" if res <= thr else "FAIL"
        ok &= res <= thr
        lines.append(f"{name:<28}{res:<16.3e}{thr:<12.1e}{status}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_density(args) -> int:
    x = _x_grid(args)
    grid = DensityGrid(tuple(x.tolist()), tuple(density_ultra(args.n, x).tolist()))
    if args.format == "json":
        payload = {
            "schema": 1,
            "n": args.n,
            "x": list(grid.abscissae),
            "value": list(grid.values),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(grid.to_csv(), args.out)
    return EXIT_OK


def _cmd_beta_check(args) -> int:
    u = np.linspace(1.0 / (args.nx + 1), args.nx / (args.nx + 1.0), args.nx)
    r_sym = check_beta_symmetric(args.n, u)
    r_sq = check_beta_square(args.n, u)
    tol = args.tol if args.tol is not None else 1e-12
    payload = {
        "schema": 1,
        "n": args.n,
        "symmetric_residual": r_sym,
        "square_residual": r_sq,
        "tolerance": tol,
    }
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_rows_csv("check,residual", [("symmetric", r_sym), ("square", r_sq)]), args.out)
    return EXIT_OK if max(r_sym, r_sq) <= tol else EXIT_FAIL


def _cmd_converge(args) -> int:
    report = poincare_report(_CONVERGE_DEFAULT_NS, _x_grid(args))
    if args.format == "json":
        payload = {
            "schema": 1,
            "entries": [{"n": n, "sup_distance": d} for n, d in report.entries],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(report.to_csv(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultrafid",
        description="Ultraspherical Cauchy transforms, global inversion and "
        "free-infinite-divisibility certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol_default=None):
        p.add_argument("--n", type=int, default=1, help="family index (>= 1)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--tol", type=float, default=tol_default)

    def polar(p):
        p.add_argument("--r-min", type=float, default=1e-2)
        p.add_argument("--r-max", type=float, default=1e2)
        p.add_argument("--nr", type=int, default=64)
        p.add_argument("--ntheta", type=int, default=64)

    def xgrid(p):
        p.add_argument("--x-min", type=float, default=-2.0)
        p.add_argument("--x-max", type=float, default=2.0)
        p.add_argument("--nx", type=int, default=201)
        p.add_argument("--eps", type=float, default=1e-6)

    p = sub.add_parser("eval", help="transform values on a polar upper half-plane grid")
    common(p)
    polar(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("invert", help="inverse-transform roundtrip residuals")
    common(p, tol_default=DEFAULT.inversion_residual)
    polar(p)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("phi", help="shifted inverse transform on the grid")
    common(p)
    polar(p)
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("certify", help="free-infinite-divisibility certificate")
    common(p, tol_default=DEFAULT.certificate)
    polar(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("identities", help="run the full identity residual suite")
    common(p)
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("density", help="closed-form density on an x grid")
    common(p)
    xgrid(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("beta-check", help="Beta push-forward residuals")
    common(p)
    xgrid(p)
    p.set_defaults(func=_cmd_beta_check)

    p = sub.add_parser("converge", help="Gaussian convergence report")
    common(p)
    xgrid(p)
    p.set_defaults(func=_cmd_converge)

    return parser


def _validate(args) -> str | None:
    if args.n < 1:
        return "--n must be >= 1"
    if getattr(args, "tol", None) is not None and args.tol <= 0:
        return "--tol must be positive"
    for name in ("nr", "ntheta", "nx"):
        if getattr(args, name, 2) < 2:
            return f"--{name.replace('_', '-')} must be >= 2"
    if getattr(args, "r_min", 1.0) <= 0 or getattr(args, "r_max", 2.0) <= getattr(
        args, "r_min", 1.0
    ):
        return "need 0 < r-min < r-max"
    if getattr(args, "eps", 1.0) <= 0:
        return "--eps must be positive"
    return None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.format is None:
        args.format = "json" if args.command in ("certify", "beta-check") else "csv"
    problem = _validate(args)
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
