"""Command-line front end: every computation as a subcommand.

Single results are emitted as one-line JSON documents
{"version", "command", "inputs", "outputs", "diagnostics"}; `scan` sweeps
one or two parameters of any subcommand and emits CSV (or a JSON array).
All physical inputs are dimensionless: momenta in units of M, radii in
units of 1/M.  Exit codes: 0 success, 2 invalid input, 3 numerical failure;
failures print a one-line JSON error object to stderr.

Floats are serialized with Python's shortest round-trip representation, so
every printed number parses back to the exact double that was computed.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from ._backend import BACKEND
from .errors import AbmodesError, InvalidInputError, NumericalFailureError
from .flux import decompose
from .fluxshell import (
    FluxShellProblem,
    g_asymptotic,
    g_from_alpha,
    limit_ratio,
    matching_ratio,
    resonance_defect,
    solve_g,
)
from .modes import DiracKinematics, make_schrodinger_mode
from .overlap import (
    closed_form_cross,
    closed_form_same,
    finite_part_estimate,
    fit_cancelling_exponent,
    mode_overlap_finite_part,
    mode_overlap_finite_part_numeric,
    windowed_overlap,
)
from .sae import Channel, ExtensionParameter, dirac_ratio, schrodinger_ratio
from .specfun import bessel_j, bessel_j_prime

__all__ = ["main", "run"]

_EXIT_OK = 0
_EXIT_INVALID = 2
_EXIT_NUMERICAL = 3


class _CliParseError(InvalidInputError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so errors serialize uniformly.

    Abbreviated flags are disabled: scan forwards unrecognized flags to the
    swept subcommand, and prefix matching would capture them.
    """

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise _CliParseError(message)


@dataclass
class RunConfig:
    tol_quad: float = 1e-9
    panel_budget: int = 200_000
    window_factor: float = 40.0
    fmt: str = "json"
    out: str = None

    def validate(self):
        if self.tol_quad <= 0.0 or self.window_factor <= 0.0:
            raise _CliParseError("tolerances must be positive")
        if self.panel_budget < 1000:
            raise _CliParseError("panel budget must be >= 1000")
        if self.fmt not in ("json", "csv"):
            raise _CliParseError(f"unknown format {self.fmt!r}")


def _channel(tag: str) -> Channel:
    try:
        return {"n": Channel.SCHRODINGER_N, "n1": Channel.SCHRODINGER_N_PLUS_1}[tag]
    except KeyError:
        raise _CliParseError(f"channel must be 'n' or 'n1', got {tag!r}")


def _flux_from(delta: float, enn: int):
    return decompose(enn + delta)


def _momenta_list(text: str):
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise _CliParseError(f"bad momenta list {text!r}")
    if not vals:
        raise _CliParseError("empty momenta list")
    return vals


# --- compute functions: Namespace + RunConfig -> (inputs, outputs, diagnostics) ---


def _cmd_decompose(args, cfg):
    f = decompose(args.phi)
    return {"phi": args.phi}, {"n": f.n, "delta": f.delta}, {}


def _cmd_bessel(args, cfg):
    out = {"j": bessel_j(args.nu, args.x)}
    if args.prime:
        out["jprime"] = bessel_j_prime(args.nu, args.x)
    return {"nu": args.nu, "x": args.x, "prime": args.prime}, out, {}


def _cmd_overlap(args, cfg):
    inputs = {
        "delta": args.delta,
        "p": args.p,
        "pprime": args.pprime,
        "kind": args.kind,
        "verify": args.verify,
    }
    if args.kind == "same":
        res = closed_form_same(args.delta, args.p, args.pprime)
    else:
        res = closed_form_cross(args.delta, args.p, args.pprime)
    outputs = {"delta_coeff": res.delta_coeff, "finite_closed": res.finite_part}
    diags = {}
    if args.verify:
        orders = (args.delta, args.delta) if args.kind == "same" else (args.delta, -args.delta)
        value, est = finite_part_estimate(
            orders[0],
            orders[1],
            args.p,
            args.pprime,
            window_factor=cfg.window_factor,
            tol=cfg.tol_quad,
            panel_budget=cfg.panel_budget,
        )
        outputs["finite_numeric"] = value
        outputs["abs_err"] = abs(value - res.finite_part)
        diags["est_error"] = est
    return inputs, outputs, diags


def _cmd_cancel(args, cfg):
    flux = _flux_from(args.delta, args.enn)
    channel = _channel(args.channel)
    l = flux.n if channel is Channel.SCHRODINGER_N else flux.n + 1
    inputs = {
        "delta": args.delta,
        "enn": args.enn,
        "channel": args.channel,
        "p": args.p,
        "pprime": args.pprime,
        "verify": args.verify,
    }
    if args.alpha is not None:
        inputs["alpha"] = args.alpha
        ep = ExtensionParameter.finite(channel, args.alpha)
        b_p = schrodinger_ratio(ep, flux, args.p, 1.0)
        b_pp = schrodinger_ratio(ep, flux, args.pprime, 1.0)
    elif args.b_p is not None and args.b_pprime is not None:
        inputs["b_p"] = b_p = args.b_p
        inputs["b_pprime"] = b_pp = args.b_pprime
    else:
        raise _CliParseError("give --alpha or both --b-p and --b-pprime")
    mode_a = make_schrodinger_mode(l, flux, args.p, 1.0, b_p)
    mode_b = make_schrodinger_mode(l, flux, args.pprime, 1.0, b_pp)
    finite = mode_overlap_finite_part(mode_a, mode_b)
    nu = mode_a.order
    scale = max(
        abs(b_pp * closed_form_cross(nu, args.p, args.pprime).finite_part),
        abs(b_p * closed_form_cross(nu, args.pprime, args.p).finite_part),
    )
    outputs = {"finite_part": finite, "cross_term_scale": scale}
    diags = {}
    if args.verify:
        value, est = mode_overlap_finite_part_numeric(
            mode_a,
            mode_b,
            window_factor=cfg.window_factor,
            tol=cfg.tol_quad,
            panel_budget=cfg.panel_budget,
        )
        outputs["finite_numeric"] = value
        diags["est_error"] = est
    return inputs, outputs, diags


def _cmd_exponent_fit(args, cfg):
    flux = _flux_from(args.delta, args.enn)
    channel = _channel(args.channel)
    l = flux.n if channel is Channel.SCHRODINGER_N else flux.n + 1
    momenta = _momenta_list(args.momenta)
    slope = fit_cancelling_exponent(flux, l, momenta)
    expected = 2.0 * flux.delta if channel is Channel.SCHRODINGER_N else 2.0 * (1.0 - flux.delta)
    return (
        {"delta": args.delta, "enn": args.enn, "channel": args.channel, "momenta": momenta},
        {"slope": slope, "expected": expected},
        {},
    )


def _cmd_sae_ratio(args, cfg):
    flux = _flux_from(args.delta, args.enn)
    if args.eq == "schrodinger":
        channel = _channel(args.channel)
        ep = ExtensionParameter.finite(channel, args.alpha)
        ratio = schrodinger_ratio(ep, flux, args.p, 1.0)
        inputs = {
            "eq": args.eq,
            "channel": args.channel,
            "alpha": args.alpha,
            "delta": args.delta,
            "enn": args.enn,
            "p": args.p,
        }
    else:
        kin = DiracKinematics.from_momenta(1.0, args.pperp, args.p3, args.s)
        ep = ExtensionParameter.finite(Channel.DIRAC_N, args.alpha)
        ratio = dirac_ratio(ep, flux, kin)
        inputs = {
            "eq": args.eq,
            "alpha": args.alpha,
            "delta": args.delta,
            "enn": args.enn,
            "pperp": args.pperp,
            "p3": args.p3,
            "s": args.s,
        }
    return inputs, {"ratio": ratio}, {}


def _shell_problem(args):
    flux = decompose(args.phi)
    return FluxShellProblem(rho0=args.rho0, g=args.g, l=args.l, flux=flux, p=args.p)


def _cmd_fluxshell(args, cfg):
    prob = _shell_problem(args)
    inputs = {"l": args.l, "phi": args.phi, "g": args.g, "p": args.p, "rho0": args.rho0}
    outputs = {
        "matching_ratio": matching_ratio(prob),
        "limit_ratio": limit_ratio(prob),
        "resonance_defect": resonance_defect(args.l, prob.flux, args.g),
    }
    return inputs, outputs, {"x": prob.x}


def _cmd_gfactor(args, cfg):
    flux = _flux_from(args.delta, args.enn)
    channel = _channel(args.channel)
    ep = ExtensionParameter.finite(channel, args.alpha)
    g = g_from_alpha(ep, flux, args.rho0, 1.0)
    inputs = {
        "channel": args.channel,
        "alpha": args.alpha,
        "enn": args.enn,
        "delta": args.delta,
        "rho0": args.rho0,
    }
    l = flux.n if channel is Channel.SCHRODINGER_N else flux.n + 1
    outputs = {"g": g, "resonance_defect": resonance_defect(l, flux, g)}
    if args.alpha != 0.0:
        outputs["g_asymptotic"] = g_asymptotic(ep, flux, args.rho0, 1.0)
    return inputs, outputs, {}


def _cmd_solve_g(args, cfg):
    prob = FluxShellProblem(
        rho0=args.rho0, g=0.0, l=args.l, flux=decompose(args.phi), p=args.p
    )
    g = solve_g(prob, args.target, args.glo, args.ghi)
    inputs = {
        "l": args.l,
        "phi": args.phi,
        "p": args.p,
        "rho0": args.rho0,
        "target": args.target,
        "glo": args.glo,
        "ghi": args.ghi,
    }
    return inputs, {"g": g}, {"residual": matching_ratio(
        FluxShellProblem(rho0=args.rho0, g=g, l=args.l, flux=prob.flux, p=args.p)
    ) - args.target}


def _cmd_windowed(args, cfg):
    value = windowed_overlap(
        args.nu,
        args.mu,
        args.p,
        args.pprime,
        args.window,
        tol=cfg.tol_quad,
        panel_budget=cfg.panel_budget,
    )
    return (
        {"nu": args.nu, "mu": args.mu, "p": args.p, "pprime": args.pprime, "window": args.window},
        {"value": value},
        {},
    )


_COMPUTE = {}


def _build_parser():
    parser = _Parser(prog="abmodes", description=__doc__)
    parser.add_argument("--version", action="version", version=f"abmodes {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", default="json", choices=("json", "csv"))
    common.add_argument("--tol-quad", type=float, default=1e-9)
    common.add_argument("--panel-budget", type=int, default=200_000)
    common.add_argument("--window-factor", type=float, default=40.0)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sub(name, fn, **kwargs):
        sp = subs.add_parser(name, parents=[common], **kwargs)
        _COMPUTE[name] = fn
        return sp

    sp = sub("decompose", _cmd_decompose, help="split flux into integer and fractional parts")
    sp.add_argument("--phi", type=float, required=True)

    sp = sub("bessel", _cmd_bessel, help="Bessel J of real order (optionally with derivative)")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--prime", action="store_true")

    sp = sub("overlap", _cmd_overlap, help="closed-form overlap, optionally verified numerically")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--pprime", type=float, required=True)
    sp.add_argument("--kind", choices=("cross", "same"), default="cross")
    sp.add_argument("--verify", action="store_true")

    sp = sub("windowed", _cmd_windowed, help="finite-window overlap integral")
    sp.add_argument("--nu", type=float, required=True)
    sp.add_argument("--mu", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--pprime", type=float, required=True)
    sp.add_argument("--window", type=float, required=True)

    sp = sub("cancel", _cmd_cancel, help="finite part of a critical-channel mode overlap")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--enn", type=int, default=0)
    sp.add_argument("--channel", default="n")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--pprime", type=float, required=True)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--b-p", dest="b_p", type=float, default=None)
    sp.add_argument("--b-pprime", dest="b_pprime", type=float, default=None)
    sp.add_argument("--verify", action="store_true")

    sp = sub("exponent-fit", _cmd_exponent_fit, help="fit the cancelling momentum exponent")
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--enn", type=int, default=0)
    sp.add_argument("--channel", default="n")
    sp.add_argument("--momenta", required=True, help="comma-separated list, units of M")

    sp = sub("sae-ratio", _cmd_sae_ratio, help="extension-parameter coefficient ratio")
    sp.add_argument("--eq", choices=("schrodinger", "dirac"), default="schrodinger")
    sp.add_argument("--channel", default="n")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--enn", type=int, default=0)
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--pperp", type=float, default=1.0)
    sp.add_argument("--p3", type=float, default=0.0)
    sp.add_argument("--s", type=int, default=1, choices=(1, -1))

    sp = sub("fluxshell", _cmd_fluxshell, help="shell matching ratio and its small-radius limit")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--phi", type=float, required=True)
    sp.add_argument("--g", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--rho0", type=float, required=True)

    sp = sub("gfactor", _cmd_gfactor, help="shell g-factor realizing an extension parameter")
    sp.add_argument("--channel", default="n")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--enn", type=int, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--rho0", type=float, required=True)

    sp = sub("solve-g", _cmd_solve_g, help="invert the matching ratio in g")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--phi", type=float, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--rho0", type=float, required=True)
    sp.add_argument("--target", type=float, required=True)
    sp.add_argument("--glo", type=float, default=-10.0)
    sp.add_argument("--ghi", type=float, default=10.0)

    # `scan` is dispatched before the main parse (see run()); registered here
    # only so it appears in --help
    subs.add_parser(
        "scan",
        add_help=False,
        help="sweep a subcommand over one or two --grid name=lo:hi:n grids "
        "(fixed flags pass through)",
    )

    return parser


def _scan_parser():
    sp = _Parser(prog="abmodes scan", description="sweep a subcommand over parameter grids")
    sp.add_argument("sub", help="subcommand to sweep")
    sp.add_argument(
        "--grid",
        action="append",
        required=True,
        metavar="name=lo:hi:n",
        help="linear grid, or name=log:lo:hi:n for a log grid (once or twice)",
    )
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", default="json", choices=("json", "csv"))
    sp.add_argument("--tol-quad", type=float, default=1e-9)
    sp.add_argument("--panel-budget", type=int, default=200_000)
    sp.add_argument("--window-factor", type=float, default=40.0)
    return sp


def _config_from(args) -> RunConfig:
    cfg = RunConfig(
        tol_quad=args.tol_quad,
        panel_budget=args.panel_budget,
        window_factor=args.window_factor,
        fmt=args.format,
        out=args.out,
    )
    cfg.validate()
    return cfg


def _check_finite(doc, where):
    if isinstance(doc, dict):
        for k, v in doc.items():
            _check_finite(v, f"{where}.{k}")
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            _check_finite(v, f"{where}[{i}]")
    elif isinstance(doc, float) and not math.isfinite(doc):
        raise NumericalFailureError(f"non-finite value in {where}")


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_doc(command, inputs, outputs, diagnostics):
    doc = {
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "diagnostics": diagnostics,
    }
    _check_finite(doc, command)
    return json.dumps(doc, separators=(",", ":")) + "\n"


def _parse_grid(spec: str):
    try:
        name, rest = spec.split("=", 1)
        parts = rest.split(":")
        if parts[0] == "log":
            lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
            if lo <= 0 or hi <= 0:
                raise _CliParseError(f"log grid bounds must be positive: {spec!r}")
            vals = [
                lo * (hi / lo) ** (i / (n - 1)) if n > 1 else lo for i in range(n)
            ]
        else:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            vals = [lo + (hi - lo) * i / (n - 1) if n > 1 else lo for i in range(n)]
        if n < 1:
            raise _CliParseError(f"grid needs at least one point: {spec!r}")
        return name, vals
    except (ValueError, IndexError):
        raise _CliParseError(f"bad grid spec {spec!r} (want name=lo:hi:n)")


def _run_scan(argv, parser):
    args, fixed = _scan_parser().parse_known_args(argv)
    cfg = _config_from(args)
    if args.sub not in _COMPUTE:
        raise _CliParseError(f"cannot scan subcommand {args.sub!r}")
    grids = [_parse_grid(g) for g in args.grid]
    if len(grids) > 2:
        raise _CliParseError("scan supports one or two grids")
    fixed = [tok for tok in fixed if tok != "--"]
    if len(grids) == 1:
        points = [((grids[0][0], v),) for v in grids[0][1]]
    else:
        points = [
            ((grids[0][0], v0), (grids[1][0], v1))
            for v0 in grids[0][1]
            for v1 in grids[1][1]
        ]
    rows = []
    for point in points:
        argv = [args.sub] + fixed[:]
        for name, value in point:
            argv += [f"--{name}", repr(value)]
        sub_args = parser.parse_args(argv)
        inputs, outputs, _ = _COMPUTE[args.sub](sub_args, cfg)
        row = dict(inputs)
        row.update(outputs)
        rows.append(row)
    if not rows:
        raise _CliParseError("empty scan")
    header = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row[k]) if k in row else "" for k in header])
        _emit(buf.getvalue(), cfg)
    else:
        for row in rows:
            _check_finite(row, "scan")
        doc = {"version": __version__, "command": f"scan {args.sub}", "rows": rows}
        _emit(json.dumps(doc, separators=(",", ":")) + "\n", cfg)
    return _EXIT_OK


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return ",".join(repr(x) for x in v)
    return v


def run(argv) -> int:
    """Entry point used by tests: parse argv, execute, return the exit code."""
    argv = list(argv)
    parser = _build_parser()
    try:
        if argv and argv[0] == "scan":
            return _run_scan(argv[1:], parser)
        args = parser.parse_args(argv)
        cfg = _config_from(args)
        if cfg.fmt == "csv":
            raise _CliParseError("csv output is available for scan only")
        inputs, outputs, diags = _COMPUTE[args.command](args, cfg)
        diags = dict(diags)
        diags["backend"] = BACKEND
        _emit(_json_doc(args.command, inputs, outputs, diags), cfg)
        return _EXIT_OK
    except NumericalFailureError as exc:
        _error_line(exc)
        return _EXIT_NUMERICAL
    except AbmodesError as exc:
        _error_line(exc)
        return _EXIT_INVALID
    except OSError as exc:
        _error_line(exc)
        return _EXIT_INVALID


def _error_line(exc):
    sys.stderr.write(
        json.dumps(
            {"error": type(exc).__name__, "message": str(exc)},
            separators=(",", ":"),
        )
        + "\n"
    )


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
