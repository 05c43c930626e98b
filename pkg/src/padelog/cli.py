"""Command-line front end: ``padelog <subcommand> ...``.

Exit status 0 on success, 1 on a computation error (one line on stderr naming
the error class), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from . import mmio
from .engine import K_MAX, S_MAX, logm_auto, logm_fixed, select_params, select_params_recompute
from .errors import PadeLogError
from .gallery import FAMILIES, build, parse_spec
from .krylov import log_action
from .quadrature import gauss_legendre
from .reproduce import TABLE1, TABLE2, bound_scan, format_table, run_table
from .spectral import (
    fov_boundary,
    interval_set,
    pseudo_contour,
    resolvent_grid,
)


class UsageError(Exception):
    """Bad flag combination detected after parsing; reported with exit status 2."""


def _floats(text: str, count: int) -> tuple[float, ...]:
    vals = tuple(float(t) for t in text.split(","))
    if len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
    return vals


def parse_eps(text: str) -> float:
    """Accept ``1e-8`` as well as ``10^-8.5``."""
    text = text.strip()
    if text.startswith("10^"):
        return 10.0 ** float(text[3:])
    return float(text)


def _set_mode(text: str) -> tuple:
    kind, _, arg = text.partition(":")
    try:
        if kind == "fov" and not arg:
            return ("fov",)
        if kind == "pseudo":
            return ("pseudo", parse_eps(arg))
        if kind == "interval":
            return ("interval",) + _floats(arg, 2)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"set mode must be fov, pseudo:<eps> or interval:<lo>,<hi>; got {text!r}")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _emit_csv(rows, header, out):
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([mmio.format_scalar(v) if isinstance(v, (complex, np.complexfloating))
                        else repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    finally:
        if out:
            fh.close()


def _spectral_set(args, A):
    mode = args.set_mode
    if mode[0] == "fov":
        return None
    if mode[0] == "interval":
        return interval_set(mode[1], mode[2], A.shape[0])
    eps = mode[1]
    box = args.box or _default_box(A, args)
    grid = resolvent_grid(A, box, *args.grid, workers=args.threads)
    return pseudo_contour(grid, eps)


def _default_box(A, args):
    W = fov_boundary(A, args.fov_angles, args.threads).boundary
    pad = 0.05 * max(np.ptp(W.real), np.ptp(W.imag), 1e-3)
    return (W.real.min() - pad, W.real.max() + pad, W.imag.min() - pad, W.imag.max() + pad)


def cmd_logm(args):
    A = mmio.read_matrix(args.input)
    if args.s is not None or args.k is not None:
        if args.s is None or args.k is None:
            raise UsageError("--s and --k must be given together")
        rep = logm_fixed(A, args.s, args.k, args.threads)
    else:
        rep = logm_auto(A, args.tol, _spectral_set(args, A), args.fov_angles,
                        args.s_max, args.k_max, args.mode, args.threads)
    if args.out:
        if args.format == "csv":
            mmio.write_csv(args.out, rep.X)
        elif args.format == "mm":
            mmio.write_mm(args.out, rep.X)
        else:
            mmio.write_matrix(args.out, rep.X)
    text = rep.to_text()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    if not args.out:
        mmio.write_csv(sys.stdout, rep.X)


def cmd_params(args):
    A = mmio.read_matrix(args.input)
    if args.mode == "recompute" and args.set_mode[0] == "fov":
        c = select_params_recompute(A, args.tol, args.s_max, args.k_max, args.fov_angles, args.threads)
    else:
        S = _spectral_set(args, A) or fov_boundary(A, args.fov_angles, args.threads)
        c = select_params(S, args.tol, args.s_max, args.k_max)
    sys.stdout.write(f"s = {c.s}\nk = {c.k}\ncost = {float(c.cost):.6g}\n"
                     f"cost_floor = {c.cost_floor}\npredicted_error = {c.predicted_error:.6e}\n")


def cmd_bound(args):
    rows = bound_scan(args.k, args.zmin, args.zmax, args.samples)
    _emit_csv(rows, ["z", "error", "bound"], args.out)


def cmd_fov(args):
    A = mmio.read_matrix(args.input)
    S = fov_boundary(A, args.angles, args.threads)
    _emit_csv(((p.real, p.imag) for p in S.boundary), ["re", "im"], args.out)


def cmd_pseudo(args):
    A = mmio.read_matrix(args.input)
    box = args.box or _default_box(A, args)
    grid = resolvent_grid(A, box, *args.grid, workers=args.threads)
    if args.eps is None:
        z = grid.z.ravel()
        rows = zip(z.real, z.imag, grid.values.ravel())
        _emit_csv(rows, ["re", "im", "resolvent_norm"], args.out)
        return
    contours = pseudo_contour(grid, args.eps)
    rows = ((i, p.real, p.imag) for i, c in enumerate(contours) for p in c.boundary)
    _emit_csv(rows, ["curve", "re", "im"], args.out)


def cmd_krylov(args):
    A = mmio.read_matrix(args.input)
    n = A.shape[0]
    if args.vec:
        v = mmio.read_matrix(args.vec).ravel()
    elif args.ones:
        v = np.ones(n)
    else:
        v = np.random.default_rng(args.seed).standard_normal(n)
    W = fov_boundary(A, args.fov_angles, args.threads)
    ref = logm_auto(A, 1e-15, spectral_set=W, workers=args.threads, kappa=False).X @ v
    rows = []
    for k in range(args.kmin, args.kmax + 1):
        f, b = log_action(A, v, k, fov=W)
        rows.append((k, float(np.linalg.norm(f - ref)), b))
    _emit_csv(rows, ["k", "error", "bound"], args.out)


def cmd_gallery(args):
    A = build(parse_spec(args.spec))
    if args.format == "csv":
        mmio.write_csv(args.out, A)
    else:
        mmio.write_mm(args.out, A)


def cmd_nodes(args):
    r = gauss_legendre(args.k)
    _emit_csv(((i, x, w) for i, (x, w) in enumerate(zip(r.nodes, r.weights))),
              ["i", "node", "weight"], args.out)


def cmd_table(args, which):
    rows = TABLE1 if which == 1 else TABLE2
    res = run_table(rows, args.tol, args.threads)
    sys.stdout.write(format_table(res, which))
    if which == 2:
        sys.stdout.write("ADE columns are reported constants, not recomputed.\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="padelog", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                   help="worker threads (results do not depend on this)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, matrix=True):
        sp.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS)
        if matrix:
            sp.add_argument("--in", dest="input", required=True, help="Matrix Market or .csv file")
        sp.add_argument("--out", help="output file (default: stdout)")

    def selection(sp):
        sp.add_argument("--tol", type=float, default=1e-15)
        sp.add_argument("--fov-angles", type=_positive_int, default=64)
        sp.add_argument("--set-mode", type=_set_mode, default=("fov",),
                        help="fov | pseudo:<eps> | interval:<lo>,<hi>")
        sp.add_argument("--box", type=lambda t: _floats(t, 4), help="xmin,xmax,ymin,ymax for pseudo sets")
        sp.add_argument("--grid", type=lambda t: tuple(int(v) for v in _floats(t, 2)), default=(200, 200))
        sp.add_argument("--s-max", type=int, default=S_MAX)
        sp.add_argument("--k-max", type=int, default=K_MAX)
        sp.add_argument("--mode", choices=("mapped", "recompute"), default="mapped")

    sp = sub.add_parser("logm", help="logarithm of a matrix file")
    common(sp)
    selection(sp)
    sp.add_argument("--s", type=int)
    sp.add_argument("--k", type=_positive_int)
    sp.add_argument("--report", help="write the key-value report here too")
    sp.add_argument("--format", choices=("mm", "csv"))
    sp.set_defaults(func=cmd_logm)

    sp = sub.add_parser("params", help="a-priori choice of (s, k)")
    common(sp)
    selection(sp)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("bound", help="scalar error vs estimate scan (CSV)")
    common(sp, matrix=False)
    sp.add_argument("--k", type=_positive_int, required=True)
    sp.add_argument("--zmin", type=float, default=-0.95)
    sp.add_argument("--zmax", type=float, default=3.0)
    sp.add_argument("--samples", type=_positive_int, default=100)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("fov", help="field of values boundary points (CSV)")
    common(sp)
    sp.add_argument("--angles", type=_positive_int, default=64)
    sp.set_defaults(func=cmd_fov)

    sp = sub.add_parser("pseudo", help="resolvent norm grid or pseudospectral contour (CSV)")
    common(sp)
    sp.add_argument("--box", type=lambda t: _floats(t, 4))
    sp.add_argument("--grid", type=lambda t: tuple(int(v) for v in _floats(t, 2)), default=(200, 200))
    sp.add_argument("--eps", type=parse_eps)
    sp.add_argument("--fov-angles", type=_positive_int, default=64)
    sp.set_defaults(func=cmd_pseudo)

    sp = sub.add_parser("krylov", help="rational Krylov log(A) v error vs bound (CSV)")
    common(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--vec", help="vector file")
    g.add_argument("--ones", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kmin", type=_positive_int, default=1)
    sp.add_argument("--kmax", type=_positive_int, default=15)
    sp.add_argument("--fov-angles", type=_positive_int, default=64)
    sp.set_defaults(func=cmd_krylov)

    sp = sub.add_parser("gallery", help="write a test matrix; families: " + ", ".join(FAMILIES))
    sp.add_argument("spec", help="family[:n[,params...]], e.g. dorr:10,0.05 or rotation:100")
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("mm", "csv"), default="mm")
    sp.set_defaults(func=cmd_gallery)

    sp = sub.add_parser("nodes", help="Gauss-Legendre nodes and weights (CSV)")
    common(sp, matrix=False)
    sp.add_argument("--k", type=_positive_int, required=True)
    sp.set_defaults(func=cmd_nodes)

    for which in (1, 2):
        sp = sub.add_parser(f"table{which}", help=f"reproduce table {which}")
        sp.add_argument("--tol", type=float, default=1e-15)
        sp.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS)
        sp.set_defaults(func=lambda a, w=which: cmd_table(a, w))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except PadeLogError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
