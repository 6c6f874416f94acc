"""Command-line interface: faddeev {green,mu,tk,dbar,sweep,bound,calibrate}."""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np


class ConfigError(ValueError):
    pass


def _complex_pair(text: str) -> complex:
    parts = text.replace(" ", "").split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _real_pair(text: str):
    parts = text.replace(" ", "").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X1,X2, got {text!r}")
    return float(parts[0]), float(parts[1])


def _float_list(text: str):
    return tuple(float(v) for v in text.replace(" ", "").split(",") if v)


def _bool(text: str) -> bool:
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def read_config(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; dashes and underscores are equivalent."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _common(p):
    p.add_argument("--config", help="flat key=value file; command-line flags override it")
    p.add_argument("--energy", type=float, default=1.0)
    p.add_argument("--M", type=int, default=7, help="grid exponent (2^M nodes per side)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", default=".")


def _potential(p):
    p.add_argument("--potential", choices=("q1", "q2"), default="q1")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--R1", type=float, default=0.8)
    p.add_argument("--R2", type=float, default=0.9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faddeev", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("green", help="evaluate g_lambda(z)")
    _common(p)
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True)
    p.add_argument("--z", type=_real_pair, required=True)

    p = sub.add_parser("mu", help="solve for the CGO field and write it as CSV")
    _common(p)
    _potential(p)
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--out", default="mu.csv")

    p = sub.add_parser("tk", help="scattering transform t(lambda)")
    _common(p)
    _potential(p)
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True)
    p.add_argument("--tol", type=float, default=1e-7)

    p = sub.add_parser("dbar", help="d-bar equation residual")
    _common(p)
    _potential(p)
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True)
    p.add_argument("--dlambda", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("sweep", help="(alpha, lambda) sweep with exceptional-point detection")
    _common(p)
    _potential(p)
    p.add_argument("--lambda-min", type=float, default=1.01)
    p.add_argument("--lambda-max", type=float, default=4.5)
    p.add_argument("--lambda-count", type=int, default=88)
    p.add_argument("--alpha-min", type=float, default=-35.0)
    p.add_argument("--alpha-max", type=float, default=35.0)
    p.add_argument("--alpha-count", type=int, default=15)
    p.add_argument("--alphas", type=_float_list, default=None,
                   help="explicit comma-separated alpha values (overrides the range)")
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--profiles", type=_float_list, default=None,
                   help="alpha values to draw profile plots for (default: all)")
    p.add_argument("--cache", type=_bool, default=True)
    p.add_argument("--preset", choices=("desk", "full"), default="desk",
                   help="full = 250 lambda x 701 alpha at M=8 (long-running)")

    p = sub.add_parser("bound", help="norm-smallness bound on |alpha|")
    _common(p)
    p.add_argument("--eps", type=float, default=1.0)

    p = sub.add_parser("calibrate", help="calibrated quadrature node counts")
    _common(p)
    p.add_argument("--lambda", dest="lam", type=_complex_pair, required=True)
    p.add_argument("--variant", choices=("T1", "T2", "T3", "all"), default="all")
    p.add_argument("--radius", type=float, default=3.0)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv):
    """Install config-file values as defaults of the chosen subcommand."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    all_dests = set()
    for sp in sub_action.choices.values():
        all_dests |= {a.dest for a in sp._actions}
    aliases = {"lambda": "lam"}
    unknown = [k for k in values if aliases.get(k, k) not in all_dests]
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for sp in sub_action.choices.values():
        actions = {a.dest: a for a in sp._actions}
        defaults = {}
        for key, raw in values.items():
            dest = aliases.get(key, key)
            act = actions.get(dest)
            if act is None:
                continue
            try:
                val = act.type(raw) if act.type else raw
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise ConfigError(f"config key {key}: {exc}") from exc
            if act.choices is not None and val not in act.choices:
                raise ConfigError(f"config key {key}: {val!r} not in {sorted(act.choices)}")
            defaults[dest] = val
            act.required = False
        sp.set_defaults(**defaults)


def _param(args):
    from .spectral import SpectralParam
    return SpectralParam(args.lam, args.energy)


def _spec(args):
    from .potentials import PotentialSpec, RadialBump
    return PotentialSpec(args.potential, args.alpha, RadialBump(args.R1, args.R2))


def _out_path(args, name) -> Path:
    path = Path(name)
    if not path.is_absolute():
        path = Path(args.out_dir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def cmd_green(args):
    from .green import green_eval
    g = green_eval(args.z, _param(args))
    print(f"{g.real:.12g} {g.imag:.12g}")


def _field(args):
    from .ls import TorusGrid
    from .scatter import potential_grid, solve_cgo
    grid = TorusGrid(args.M)
    q = potential_grid(_spec(args), grid)
    return grid, q, solve_cgo(_param(args), q, grid, tol=args.tol)


def cmd_mu(args):
    grid, _, field = _field(args)
    path = _out_path(args, args.out)
    x = grid.nodes
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("x1", "x2", "re_mu", "im_mu"))
        for i in range(grid.n):
            for j in range(grid.n):
                m = field.mu[i, j]
                w.writerow((repr(float(x[i])), repr(float(x[j])), repr(float(m.real)),
                            repr(float(m.imag))))
    print(f"wrote {path} (converged={field.converged}, iterations={field.report.iterations})")


def cmd_tk(args):
    from .scatter import scattering_transform
    _, q, field = _field(args)
    t = scattering_transform(field, q, _param(args))
    flag = "" if field.converged else "  (LS solve did not converge)"
    print(f"{t.real:.12g} {t.imag:.12g}{flag}")


def cmd_dbar(args):
    from .scatter import dbar_residual
    r = dbar_residual(_param(args), args.dlambda, _spec(args), args.M, tol=args.tol)
    print(f"{r:.12g}")


def cmd_sweep(args):
    from .sweep import SweepConfig, emit_csv, emit_heatmap_svg, emit_profile_svg, run_sweep
    if args.preset == "full":
        args.lambda_count, args.alpha_count, args.M = 250, 701, 8
    cfg = SweepConfig(args.lambda_min, args.lambda_max, args.lambda_count, args.alpha_min,
                      args.alpha_max, args.alpha_count, args.alphas, args.M, args.energy,
                      args.potential, args.R1, args.R2, tol=args.tol, workers=args.workers,
                      cache=args.cache)
    report = run_sweep(cfg)
    emit_csv(report, _out_path(args, "sweep.csv"))
    emit_heatmap_svg(report, _out_path(args, "heatmap.svg"))
    for a in (args.profiles if args.profiles is not None else report.alphas):
        emit_profile_svg(report, a, _out_path(args, f"profile_alpha{a:+g}.svg"))
    for a, br in report.brackets.items():
        text = ", ".join(f"[{lo:.4g}, {hi:.4g}]" for lo, hi in br) or "none"
        print(f"alpha={a:+g}: {text}")
    print(f"done in {report.timing['seconds']:.1f} s; output in {args.out_dir}")


def cmd_bound(args):
    from .potentials import smallness_bound
    print(f"{smallness_bound(args.eps):.12g}")


def cmd_calibrate(args):
    from .green.contour import panel_points
    from .spectral import reduce_lambda
    red = reduce_lambda(_param(args))
    variants = ("T1", "T2", "T3") if args.variant == "all" else (args.variant,)
    for v in variants:
        print(f"{v}: {panel_points(red, v, args.radius)}")


COMMANDS = {"green": cmd_green, "mu": cmd_mu, "tk": cmd_tk, "dbar": cmd_dbar,
            "sweep": cmd_sweep, "bound": cmd_bound, "calibrate": cmd_calibrate}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except ConfigError as exc:
        print(f"faddeev: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    if args.workers < 1:
        print("faddeev: --workers must be positive", file=sys.stderr)
        return 2
    from .green import _kernels
    _kernels.num_threads = args.workers
    try:
        COMMANDS[args.command](args)
    except (ValueError, ConfigError) as exc:
        print(f"faddeev: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"faddeev: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
