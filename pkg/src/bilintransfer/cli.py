"""Command-line entry point: ``bilintransfer {norm, apply, verify}``.

Exit codes: 0 success, 1 a verification assertion failed (the report is still
written), 2 bad input or configuration.

Sequence literals: ``delta:k``, ``values:z1,z2,...@offset`` (offset defaults
to 0) or a path to a JSON file ``{"offset": n, "values": [[re, im], ...]}``.
Complex entries are written ``re+imi``, e.g. ``1``, ``-2i``, ``0.5-1.5i``.

Symbol specs: ``one``, ``const:c``, ``sign:alpha``, ``phase:j1,j2``,
``grid:path.csv``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from . import harness
from .bandlimited import RAISED_COSINE, BandLimitedFunction
from .lorentz import Exponents, norm_pq
from .operators import (
    _delta_kernel,
    apply_Dm_kernel,
    apply_Dm_quadrature,
    bht_discrete,
    c_alpha_kernel,
    hilbert_discrete,
    hilbert_tail_bound,
)
from .quadrature import QuadratureError, QuadratureSpec
from .sequences import FiniteSequence
from .symbols import Constant, PeriodizedSymbol, Phase, SignLine, kernel_table, load_grid_csv

DEFAULT_SEED = 20240601

# campaign defaults; a --config JSON file overrides these, explicit flags override both
CAMPAIGNS = {
    "decomposition": {"alphas": "-2,-1,2,3", "trials": 200, "radius": 16, "law": "gaussian",
                      "tol": 1e-9},
    "kernel": {"alphas": "0.5,-1/3,-1,2,-2,3", "range": 6, "order": 32, "tol": 1e-7},
    "transfer": {"symbol": "sign:2", "k": 8, "u": "0,0.25,-0.5", "window": 32, "f": "delta:0",
                 "g": "delta:0", "order": 32, "tol": 1e-5},
    "equivalence": {"R": 0.2, "p": 2.0, "q": 2.0, "trials": 100, "radius": 8, "law": "gaussian",
                    "bound": 100.0, "per_trial_bound": 10.0},
    "uniformity": {"symbol": "sign:2", "t": "0.25,1,4,16", "inv_p": 0.0, "trials": 24, "radius": 6,
                   "law": "gaussian", "exponents": "2,2,2,2,1,1", "order": 32},
    "endpoint": {"alpha": 2, "p1": "4/3", "p2": "4/3", "trials": 500, "radius": 16,
                 "law": "gaussian", "slope_bound": 0.5},
}


class ConfigError(ValueError):
    pass


# parsing helpers

def parse_real(text):
    s = str(text).strip().lower()
    if s in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a real number: {text!r}") from None


def parse_reals(text):
    if isinstance(text, (list, tuple)):
        return [parse_real(v) for v in text]
    if isinstance(text, (int, float)):
        return [float(text)]
    return [parse_real(v) for v in str(text).split(",") if v.strip()]


def parse_complex(text):
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ConfigError("empty complex entry")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ConfigError(f"not a complex number: {text!r}") from None


def parse_sequence(text):
    """Sequence from a literal or a JSON file path."""
    s = str(text).strip()
    if s.startswith("delta:"):
        try:
            return FiniteSequence.delta(int(s[6:]))
        except ValueError:
            raise ConfigError(f"bad delta literal: {text!r}") from None
    if s.startswith("values:"):
        body, _, off = s[7:].partition("@")
        try:
            offset = int(off) if off else 0
        except ValueError:
            raise ConfigError(f"bad offset in {text!r}") from None
        return FiniteSequence(offset, [parse_complex(z) for z in body.split(",")])
    if os.path.exists(s):
        try:
            with open(s) as fh:
                return FiniteSequence.from_json(json.load(fh))
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read sequence file {s}: {exc}") from None
    raise ConfigError(f"unrecognised sequence {text!r} (use delta:k, values:...@offset or a file)")


def parse_symbol(text):
    s = str(text).strip()
    kind, _, arg = s.partition(":")
    try:
        if kind == "one":
            return Constant(1.0)
        if kind == "const":
            return Constant(parse_complex(arg))
        if kind == "sign":
            return SignLine(parse_real(arg), -1j)
        if kind == "phase":
            j1, j2 = (int(v) for v in arg.split(","))
            return Phase(j1, j2)
        if kind == "grid":
            return load_grid_csv(arg)
    except (ValueError, OSError) as exc:
        raise ConfigError(f"bad symbol {text!r}: {exc}") from None
    raise ConfigError(f"unknown symbol {text!r} (one, const:c, sign:alpha, phase:j1,j2, grid:path)")


def fmt(x):
    return f"{x:.17g}"


# norm

def cmd_norm(args):
    if args.file:
        seq = parse_sequence(args.file)
    elif args.values is not None:
        v = args.values
        seq = parse_sequence(v) if v.startswith(("delta:", "values:")) else parse_sequence("values:" + v)
    else:
        raise ConfigError("give --values or --file")
    p = parse_real(args.p)
    q = p if args.q is None else parse_real(args.q)
    try:
        e = Exponents(p, q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(fmt(norm_pq(seq, e)))
    return 0


# apply

def _kernel_for(sym, t, inv_p, reach, window, spec):
    """Exact kernel when one is known, otherwise a quadrature table."""
    scale = t ** inv_p
    if isinstance(sym, Constant):
        c = complex(sym.c) * scale
        return lambda r, s: c * _delta_kernel(r, s), "exact"
    if isinstance(sym, Phase) and t == 1.0:
        j1, j2 = sym.j1, sym.j2
        return (lambda r, s: ((np.asarray(r) == -j1) & (np.asarray(s) == -j2)).astype(complex),
                "exact")
    if isinstance(sym, SignLine) and inv_p == 0:
        k = c_alpha_kernel(sym.alpha, sym.amplitude)
        return k, "exact"
    L = reach + window
    rs = np.arange(-L, L + 1)
    table, err = kernel_table(PeriodizedSymbol(sym, t, inv_p), rs, rs, spec)

    def K(r, s):
        return table[np.asarray(r) + L, np.asarray(s) + L]
    return K, f"quadrature table, estimated error {fmt(err)}"


def cmd_apply(args):
    a = parse_sequence(args.a)
    meta = {"operator": args.operator}
    spec = QuadratureSpec(order=args.order, tol=args.tol)
    if args.operator == "hilbert":
        out = hilbert_discrete(a, args.pad)
        meta["tail_bound"] = hilbert_tail_bound(a, args.pad)
        meta["window"] = [out.offset, out.last] if len(out) else []
    else:
        if args.b is None:
            raise ConfigError(f"{args.operator} needs --b")
        b = parse_sequence(args.b)
        if args.operator == "bht":
            if args.alpha is None:
                raise ConfigError("bht needs --alpha")
            alpha = parse_real(args.alpha)
            if alpha != int(alpha) or int(alpha) in (0, 1):
                raise ConfigError("alpha must be an integer outside {0, 1}")
            out = bht_discrete(a, b, int(alpha))
            meta["tail_bound"] = 0.0
            meta["note"] = "finite support, computed exactly"
        else:
            sym = parse_symbol(args.symbol)
            t = parse_real(args.t)
            inv_p = parse_real(args.inv_p)
            if args.operator == "dm-kernel":
                reach = max(abs(a.offset), abs(a.last), abs(b.offset), abs(b.last))
                K, how = _kernel_for(sym, t, inv_p, 2 * reach, args.window, spec)
                out = apply_Dm_kernel(a, b, K, window=args.window)
                meta["kernel"] = how
            else:
                lo = min(a.offset, b.offset) - args.window
                hi = max(a.last, b.last) + args.window
                out, err = apply_Dm_quadrature(a, b, PeriodizedSymbol(sym, t, inv_p),
                                               range(lo, hi + 1), spec)
                meta["quadrature_error"] = err
            meta["window"] = [out.offset, out.last] if len(out) else []
            meta["note"] = "entries outside the window are not computed"
    text = json.dumps(out.to_json())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        stream = sys.stdout
    else:
        print(text)
        stream = sys.stderr
    for k in sorted(meta):
        v = meta[k]
        print(f"{k}: {fmt(v) if isinstance(v, float) else v}", file=stream)
    return 0


# verify

def _trial_config(c, exponents=None):
    law = str(c.get("law", "gaussian")).lower()
    sparsity = int(c.get("sparsity", 4))
    if law.startswith("sparse(") and law.endswith(")"):
        law, sparsity = "sparse", int(law[7:-1])
    try:
        return harness.TrialConfig(seed=int(c["seed"]), trials=int(c["trials"]),
                                   support_radius=int(c["radius"]), law=law, sparsity=sparsity,
                                   exponents=exponents or ((2.0, 2.0, 2.0, 2.0, 1.0, 1.0),))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad trial configuration: {exc}") from None


def run_campaign(name, c):
    if name == "decomposition":
        alphas = [int(a) for a in parse_reals(c["alphas"])]
        return harness.verify_decomposition(_trial_config(c), alphas, tol=float(c["tol"]))
    if name == "kernel":
        spec = QuadratureSpec(order=int(c["order"]), tol=1e-10)
        return harness.verify_kernel(parse_reals(c["alphas"]), int(c["range"]), spec,
                                     tol=float(c["tol"]))
    if name == "transfer":
        f = BandLimitedFunction(parse_sequence(c["f"]), RAISED_COSINE)
        g = BandLimitedFunction(parse_sequence(c["g"]), RAISED_COSINE)
        spec = QuadratureSpec(order=int(c["order"]), tol=1e-7)
        return harness.verify_transfer_relation(f, g, parse_symbol(c["symbol"]), int(c["k"]),
                                                parse_reals(c["u"]), spec, int(c["window"]),
                                                tol=float(c["tol"]))
    if name == "equivalence":
        e = Exponents(parse_real(c["p"]), parse_real(c["q"]))
        return harness.verify_restriction_extension(
            _trial_config(c), parse_real(c["R"]), e, bound=float(c["bound"]),
            per_trial_bound=float(c["per_trial_bound"]))
    if name == "uniformity":
        ex = parse_reals(c["exponents"])
        if len(ex) != 6:
            raise ConfigError("exponents are p1,q1,p2,q2,p3,q3")
        cfg = _trial_config(c, (tuple(ex),))
        spec = QuadratureSpec(order=int(c["order"]))
        return harness.uniformity_sweep(parse_symbol(c["symbol"]), parse_real(c["inv_p"]),
                                        parse_reals(c["t"]), cfg, spec=spec)
    if name == "endpoint":
        return harness.weak_endpoint_probe(int(parse_real(c["alpha"])), parse_real(c["p1"]),
                                           parse_real(c["p2"]), _trial_config(c),
                                           float(c["slope_bound"]))
    raise ConfigError(f"unknown campaign {name!r}")


VERIFY_FLAGS = ("seed", "trials", "radius", "law", "sparsity", "alphas", "range", "symbol", "t",
                "inv_p", "k", "u", "window", "f", "g", "R", "p", "q", "p1", "p2", "alpha",
                "exponents", "order", "tol", "bound", "per_trial_bound", "slope_bound")


def cmd_verify(args):
    conf = {"seed": DEFAULT_SEED, **CAMPAIGNS[args.campaign]}
    if args.config:
        try:
            with open(args.config) as fh:
                extra = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(extra, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(extra) - set(VERIFY_FLAGS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        conf.update(extra)
    for key in VERIFY_FLAGS:
        v = getattr(args, key, None)
        if v is not None:
            conf[key] = v
    try:
        report = run_campaign(args.campaign, conf)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    verdict = {True: "PASS", False: "FAIL", None: "RECORDED"}[report.passed]
    print(f"{args.campaign}: {verdict}", file=sys.stderr)
    return 1 if report.passed is False else 0


# parser

def build_parser():
    p = argparse.ArgumentParser(prog="bilintransfer", description=__doc__.split("\n")[0],
                                formatter_class=argparse.RawDescriptionHelpFormatter,
                                epilog="Exit codes: 0 ok, 1 assertion failed, 2 bad input.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    n = sub.add_parser("norm", help="Lorentz norm of a sequence")
    n.add_argument("--values", help="comma-separated complex entries, or a sequence literal")
    n.add_argument("--file", help="JSON sequence file")
    n.add_argument("--p", required=True, help="exponent p (inf allowed with q = inf)")
    n.add_argument("--q", help="exponent q, 'inf' for the weak norm (default: p)")
    n.set_defaults(func=cmd_norm)

    a = sub.add_parser("apply", help="apply a discrete operator",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    a.add_argument("operator", choices=["bht", "hilbert", "dm-kernel", "dm-quad"])
    a.add_argument("--a", required=True, help="first sequence")
    a.add_argument("--b", help="second sequence")
    a.add_argument("--alpha", help="integer alpha for bht")
    a.add_argument("--symbol", default="one", help="symbol spec for dm-kernel and dm-quad")
    a.add_argument("--t", default="1", help="dilation of the periodized symbol")
    a.add_argument("--inv-p", dest="inv_p", default="0", help="1/p weight of the periodization")
    a.add_argument("--window", type=int, default=16, help="output padding beyond the input hull")
    a.add_argument("--pad", type=int, default=256, help="window padding for hilbert")
    a.add_argument("--order", type=int, default=32, help="Gauss-Legendre order")
    a.add_argument("--tol", type=float, default=1e-8, help="quadrature tolerance")
    a.add_argument("--output", help="output JSON path; stdout if omitted")
    a.set_defaults(func=cmd_apply)

    defaults = "\n".join(f"  {k}: " + ", ".join(f"{kk}={vv}" for kk, vv in v.items())
                         for k, v in CAMPAIGNS.items())
    v = sub.add_parser("verify", help="run a verification campaign",
                       formatter_class=argparse.RawDescriptionHelpFormatter,
                       epilog=f"Campaign defaults (seed={DEFAULT_SEED} for all):\n{defaults}\n"
                              "A --config JSON object may set any of the flags below by name.")
    v.add_argument("campaign", choices=sorted(CAMPAIGNS))
    v.add_argument("--config", help="JSON config file")
    v.add_argument("--output", help="report path (default: stdout)")
    v.add_argument("--format", choices=["json", "csv"], default="json", help="report format")
    v.add_argument("--seed", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--radius", type=int, help="support radius of random sequences")
    v.add_argument("--law", help="gaussian, rademacher or sparse(k)")
    v.add_argument("--sparsity", type=int)
    v.add_argument("--alphas", help="comma-separated alphas")
    v.add_argument("--range", type=int, help="kernel index range")
    v.add_argument("--symbol")
    v.add_argument("--t", help="comma-separated dilations")
    v.add_argument("--inv-p", dest="inv_p")
    v.add_argument("--k", type=int)
    v.add_argument("--u", help="comma-separated shifts in [-1/2, 1/2]")
    v.add_argument("--window", type=int)
    v.add_argument("--f", help="coefficients of f (raised-cosine prototype)")
    v.add_argument("--g", help="coefficients of g (raised-cosine prototype)")
    v.add_argument("--R", help="Fourier radius, below 1/2")
    v.add_argument("--p")
    v.add_argument("--q")
    v.add_argument("--p1")
    v.add_argument("--p2")
    v.add_argument("--alpha")
    v.add_argument("--exponents", help="p1,q1,p2,q2,p3,q3")
    v.add_argument("--order", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--bound", type=float)
    v.add_argument("--per-trial-bound", dest="per_trial_bound", type=float)
    v.add_argument("--slope-bound", dest="slope_bound", type=float)
    v.set_defaults(func=cmd_verify)
    return p


def _attach_negative_values(argv):
    """Turn ``--flag -1,2`` into ``--flag=-1,2``; argparse reads ``-1,2`` as an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt is not None and re.match(r"^-[\d.]", nxt):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
