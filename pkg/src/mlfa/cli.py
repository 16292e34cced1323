"""Command-line front end: ``mlfa {eval,poly,moments,sample,donsker,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 domain error
(bad argument, unsupported beta, degree cap), 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import __version__
from ._types import BetaParam, SeriesConfig
from .errors import DomainError, MLFAError

EXIT_FAIL = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3


def _fmt(x) -> str:
    if isinstance(x, complex):
        if x.imag == 0.0:
            return f"{x.real:.17g}"
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return f"{float(x):.17g}"


def _jnum(x):
    # JSON numbers for real values, [re, im] pairs for complex ones
    if isinstance(x, complex):
        return x.real if x.imag == 0.0 else [x.real, x.imag]
    return float(x)


def _parse_number(s: str):
    s = s.strip().replace(" ", "")
    try:
        return float(s)
    except ValueError:
        return complex(s)


def _z_values(args):
    if args.z is not None and args.z_range is not None:
        raise DomainError("give either --z or --z-range, not both")
    if args.z is not None:
        return [_parse_number(v) for v in args.z.split(",")]
    if args.z_range is not None:
        parts = args.z_range.split(":")
        if len(parts) != 3:
            raise DomainError("--z-range expects START:STOP:COUNT")
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise DomainError("--z-range COUNT must be positive")
        return [float(v) for v in np.linspace(a, b, n)]
    raise DomainError("one of --z or --z-range is required")


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _beta(args):
    return BetaParam(args.beta).beta


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    from .specfn import laplace_m_wright, m_wright, mittag_leffler

    b = _beta(args)
    cfg = SeriesConfig(abs_tol=args.tol) if args.tol is not None else None
    rows = []
    for z in _z_values(args):
        if args.fn == "mlf":
            val, info = mittag_leffler(b, z, cfg, full_output=True)
        elif args.fn == "mwright":
            val, info = m_wright(b, z, cfg, full_output=True)
        elif args.fn == "laplace":
            val, info = laplace_m_wright(b, args.rho, z, cfg, full_output=True)
        else:  # hdonsker: the H-function of the Donsker T-transform, rho = 1/2
            val, info = laplace_m_wright(b, 0.5, z, cfg, full_output=True)
        rows.append((z, val, info.get("error", 0.0)))
    if args.format == "json":
        text = json.dumps(
            {"fn": args.fn, "beta": b, "rows": [{"z": _jnum(z), "value": _jnum(v), "est_error": e} for z, v, e in rows]},
            indent=1,
        )
        text += "\n"
    else:
        text = "z, value, est_error\n" + "".join(f"{_fmt(z)}, {_fmt(v)}, {_fmt(e)}\n" for z, v, e in rows)
    _emit(text, args.out)
    return 0


def cmd_poly(args) -> int:
    from .appell import appell_poly
    from .orthopoly import orthogonal_poly

    b = _beta(args)
    if args.kind == "orthogonal":
        coeffs = orthogonal_poly(b, args.n).coeffs
    else:
        coeffs = appell_poly(b, args.n, args.u).poly.coeffs
    if args.format == "json":
        text = json.dumps({"kind": args.kind, "beta": b, "n": args.n, "u": args.u, "coeffs": list(coeffs)}) + "\n"
    else:
        text = ", ".join(_fmt(c) if c != 0.0 else "0" for c in coeffs) + "\n"
    _emit(text, args.out)
    return 0


def cmd_moments(args) -> int:
    from .measure import moment

    b = _beta(args)
    orders = tuple(int(v) for v in str(args.n).split(","))
    val = moment(b, orders)
    if args.format == "json":
        text = json.dumps({"beta": b, "orders": list(orders), "value": val}) + "\n"
    else:
        text = _fmt(val) + "\n"
    _emit(text, args.out)
    return 0


def cmd_sample(args) -> int:
    from .sampler import RngState, path_to_csv, path_to_json, sample_ggbm_path, sample_ggbm_paths
    from .specfn import gamma

    b = _beta(args)
    if args.n < 2:
        raise DomainError("--n (grid points) must be at least 2")
    grid = np.linspace(0.0, args.t_max, args.n)
    rng = RngState(args.seed)
    if args.paths is None:
        p = sample_ggbm_path(args.alpha, b, grid, rng)
        _emit(path_to_json(p) + "\n" if args.format == "json" else path_to_csv(p), args.out)
        return 0
    s, gauss, grey = sample_ggbm_paths(args.alpha, b, grid, rng, args.paths)
    end = grey[:, -1] ** 2
    exact = args.t_max**args.alpha / gamma(b + 1.0)
    se = float(end.std(ddof=1) / math.sqrt(args.paths))
    z = (float(end.mean()) - exact) / se
    summary = {
        "beta": b,
        "alpha": args.alpha,
        "paths": args.paths,
        "seed": args.seed,
        "rng": rng.algorithm,
        "t_end": args.t_max,
        "mean_B_end_sq": float(end.mean()),
        "exact": exact,
        "se": se,
        "z": z,
        "within_5_sigma": abs(z) < 5.0,
    }
    if args.out:
        base = args.out
        with open(base, "w", newline="\n") as fh:
            fh.write("path,t,grey,gaussian,S\n")
            for k in range(args.paths):
                for t, g, x in zip(grid, grey[k], gauss[k]):
                    fh.write(f"{k},{_fmt(t)},{_fmt(g)},{_fmt(x)},{_fmt(s[k])}\n")
        with open(base + ".summary.json", "w") as fh:
            json.dump(summary, fh, indent=1)
    sys.stdout.write(json.dumps(summary, indent=1) + "\n")
    return 0


def cmd_donsker(args) -> int:
    from ._types import QuadConfig
    from .donsker import DONSKER_QUAD, DonskerSpec, donsker_expectation, donsker_T, donsker_T_quad

    spec = DonskerSpec(_beta(args), args.eta_sq, args.a)
    out = {"beta": spec.beta, "eta_sq": spec.eta_sq, "a": spec.a, "eta_phi": args.eta_phi, "phi_sq": args.phi_sq}
    if args.method == "series" or (args.method == "auto" and spec.a == 0.0):
        out["method"] = "series"
        out["value"] = donsker_T(spec, args.eta_phi, args.phi_sq)
        out["expectation"] = donsker_expectation(spec)
    else:
        q = QuadConfig(rel_tol=args.tol, abs_tol=args.tol) if args.tol is not None else DONSKER_QUAD
        val, err = donsker_T_quad(spec, args.eta_phi, args.phi_sq, q, full_output=True)
        out["method"] = "quadrature"
        out["value"] = _jnum(val)
        out["est_error"] = err
    if args.format == "json":
        text = json.dumps(out, indent=1) + "\n"
    else:
        text = "".join(f"{k},{_fmt(v) if isinstance(v, (float, complex)) else v}\n" for k, v in out.items())
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    from .verify import run

    beta = _beta(args) if args.beta is not None else None
    report = run(args.suite, beta=beta, seed=args.seed, budget_seconds=args.budget_seconds)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=1)
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=1) + "\n")
    else:
        for suite, checks in report["suites"].items():
            for c in checks:
                sys.stdout.write(f"{suite} {c['name']}: {c['status']} ({c['detail']})\n")
        sys.stdout.write(f"{'PASS' if report['passed'] else 'FAIL'} in {report['elapsed_seconds']} s\n")
    return 0 if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mlfa", description="Numerical Mittag-Leffler analysis.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, beta_required=True, fmt=("csv", "json")):
        sp.add_argument("--beta", type=float, required=beta_required, help="order beta in (0, 1]")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=fmt, default=fmt[0])

    sp = sub.add_parser("eval", help="tabulate a special function")
    sp.add_argument("fn", choices=("mlf", "mwright", "hdonsker", "laplace"))
    common(sp)
    sp.add_argument("--z", help="argument(s), comma separated; complex as 1+2j")
    sp.add_argument("--z-range", help="START:STOP:COUNT")
    sp.add_argument("--rho", type=float, default=1.0, help="power rho for `laplace`")
    sp.add_argument("--tol", type=float, help="series truncation tolerance")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("poly", help="coefficients of H_n or P_n, ascending")
    sp.add_argument("kind", choices=("orthogonal", "appell"))
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--u", type=float, default=1.0, help="<phi,phi> for appell")
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("moments", help="exact moment of mu_beta^d")
    common(sp)
    sp.add_argument("--n", required=True, help="orders, comma separated (e.g. 2,2)")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("sample", help="generalized grey Brownian motion paths")
    common(sp)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=101, help="grid points on [0, t-max]")
    sp.add_argument("--t-max", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--paths", type=int, help="batch mode: number of paths")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("donsker", help="T-transform of Donsker's delta")
    common(sp)
    sp.add_argument("--eta-sq", type=float, default=1.0)
    sp.add_argument("--eta-phi", type=float, default=0.0)
    sp.add_argument("--phi-sq", type=float, default=0.0)
    sp.add_argument("--a", type=float, default=0.0, help="shift of the delta")
    sp.add_argument("--method", choices=("auto", "series", "quad"), default="auto")
    sp.add_argument("--tol", type=float, help="quadrature tolerance")
    sp.set_defaults(func=cmd_donsker)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument(
        "suite", nargs="?", default="all",
        choices=("specfn", "measure", "orthopoly", "appell", "donsker", "sampler", "all"),
    )
    common(sp, beta_required=False, fmt=("text", "json"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget-seconds", type=float, default=120.0)
    sp.add_argument("--tol", type=float, help="unused; accepted for symmetry")
    sp.set_defaults(func=cmd_verify)
    return p


_KIND = re.compile(r"(?<!^)(?=[A-Z])")


def _describe(exc: Exception) -> str:
    kind = _KIND.sub(" ", type(exc).__name__).lower()
    return f"{kind}: {exc}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"mlfa: error: {_describe(exc)}", file=sys.stderr)
        return EXIT_DOMAIN
    except MLFAError as exc:
        print(f"mlfa: error: {_describe(exc)}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
