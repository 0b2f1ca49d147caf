"""Command-line front end.

    stieltjes eval      --builtin example1 --alpha 2 --z 1,2,1+1j
    stieltjes convert   --measure mu.json --alpha 1.5 --to rho
    stieltjes fracint   --measure mu.json --op kober --alpha 1.5 --eta 0.5
    stieltjes fracinv   --measure nu.json --op rl --eta 0.5 --grid 0.1:10:32
    stieltjes order     --builtin example2 --alpha 2
    stieltjes check     --builtin remark7 --criterion sokal --order 3
    stieltjes reproduce --builtin example1

Exit status: 0 on success, 1 when a check finds a violation under
``--expect-pass`` (or a reproduce criterion fails), 2 on input errors.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import measure as _m
from .builtins import get_builtin
from .criteria import NO_VIOLATION, krein_test, sector_test, sokal_test, sokal_value
from .fractional import (kober_right, kober_right_invert, order_raise_mu, order_raise_rho,
                         rl_left, rl_left_invert, rl_left_invert_closed)
from .measure import INF
from .order import default_grid, estimate_exact_order, order_report, phi_table
from .transform import MU, RHO, MeasureDerivatives, StieltjesFunction, eval_transform

SUBCOMMANDS = ("eval", "convert", "fracint", "fracinv", "order", "check", "reproduce")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    builtin: Optional[str] = None
    measure: Optional[str] = None
    representation: str = MU
    alpha: Optional[float] = None
    beta: Optional[float] = None
    eta: Optional[float] = None
    epsilon: Optional[float] = None
    order: Optional[float] = None
    z: Optional[str] = None
    grid: Optional[str] = None
    tol: Optional[float] = None
    fmt: str = "json"
    expect_pass: bool = False
    op: str = "rl"
    to: Optional[str] = None
    criterion: str = "sokal"
    n_max: int = 4
    k_max: int = 4
    extra: dict = field(default_factory=dict)


# ------------------------------------------------------------------ parsing

def parse_z_list(text):
    out = []
    for part in text.split(","):
        part = part.strip().replace(" ", "")
        if not part:
            continue
        try:
            out.append(complex(part.replace("i", "j")))
        except ValueError:
            raise InputError("--z: cannot parse %r as a complex number" % part)
    if not out:
        raise InputError("--z: empty list")
    return out


def parse_grid(text):
    """``lo:hi:n`` (geometric, lo > 0), ``lin:lo:hi:n`` or a comma list."""
    try:
        if ":" in text:
            parts = text.split(":")
            kind = "geom"
            if parts[0] in ("lin", "geom"):
                kind = parts.pop(0)
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            if len(parts) != 3 or n < 2 or not hi > lo:
                raise ValueError
            if kind == "geom":
                if lo <= 0.0:
                    raise ValueError
                return np.geomspace(lo, hi, n)
            return np.linspace(lo, hi, n)
        g = np.array(sorted({float(v) for v in text.split(",") if v.strip()}))
    except (ValueError, IndexError):
        raise InputError("--grid: expected lo:hi:n, lin:lo:hi:n or a comma list, got %r" % text)
    if g.size == 0:
        raise InputError("--grid: empty")
    return g


def _load_measure(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read measure file %r: %s" % (path, exc.strerror))
    try:
        return _m.loads(_unwrap(text))
    except ValueError as exc:
        raise InputError("%s: %s" % (path, exc))


def _unwrap(text):
    # accept the output of convert / fracint, which nests the measure
    try:
        doc = json.loads(text)
    except ValueError:
        return text
    if isinstance(doc, dict) and isinstance(doc.get("measure"), dict):
        return json.dumps(doc["measure"])
    return text


def _function(cfg, need_alpha=True):
    """(StieltjesFunction, header, builtin or None) for the configured input."""
    if cfg.builtin and cfg.measure:
        raise InputError("give either --builtin or --measure, not both")
    if cfg.builtin:
        try:
            b = get_builtin(cfg.builtin, cfg.alpha)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc))
        return b.function, b.report_header(), b
    if cfg.measure:
        mu = _load_measure(cfg.measure)
        if cfg.alpha is None:
            if need_alpha:
                raise InputError("--alpha is required with --measure")
            return mu, {"measure": cfg.measure}, None
        try:
            f = StieltjesFunction(mu, cfg.alpha, cfg.representation)
        except ValueError as exc:
            raise InputError(str(exc))
        return f, {"measure": cfg.measure, "alpha": cfg.alpha,
                   "representation": cfg.representation}, None
    raise InputError("an input is required: --builtin NAME or --measure FILE")


def _need(cfg, name):
    v = getattr(cfg, name)
    if v is None:
        raise InputError("--%s is required for %s" % (name, cfg.subcommand))
    return v


def _num(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return x


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["%.17g" % v if isinstance(v, float) else v for v in r])
    return buf.getvalue().rstrip("\n")


# -------------------------------------------------------------- subcommands

def cmd_eval(cfg):
    f, header, _ = _function(cfg)
    zs = parse_z_list(_need(cfg, "z"))
    vals = []
    for z in zs:
        try:
            vals.append(complex(eval_transform(f, z)))
        except ValueError as exc:
            raise InputError("z=%s: %s" % (z, exc))
    if cfg.fmt == "csv":
        return 0, _csv([(z.real, z.imag, v.real, v.imag) for z, v in zip(zs, vals)],
                       ["z_re", "z_im", "f_re", "f_im"])
    rows = []
    for z, v in zip(zs, vals):
        rows.append({"z": [z.real, z.imag], "value": v.real if v.imag == 0.0 else [v.real, v.imag]})
    return 0, {"header": header, "alpha": f.alpha, "values": rows}


def cmd_convert(cfg):
    f, header, _ = _function(cfg)
    if cfg.beta is not None:
        if not cfg.beta > f.alpha:
            raise InputError("--beta must exceed the order %g" % f.alpha)
        g = order_raise_mu(f, cfg.beta) if f.representation == MU else order_raise_rho(f, cfg.beta)
        if cfg.to is not None and cfg.to != g.representation:
            g = g.mu_form() if cfg.to == MU else g.rho_form()
    else:
        to = cfg.to or (RHO if f.representation == MU else MU)
        g = f.mu_form() if to == MU else f.rho_form()
    return 0, {"header": header, "alpha": g.alpha, "representation": g.representation,
               "measure": _m.to_dict(g.measure)}


def cmd_fracint(cfg):
    f, header, _ = _function(cfg, need_alpha=cfg.op == "kober")
    mu = f if isinstance(f, _m.Measure) else f.measure
    eta = _need(cfg, "eta")
    if not eta > 0.0:
        raise InputError("--eta must be positive")
    if cfg.op == "rl":
        out = rl_left(mu, eta)
        extra = {"op": "rl", "eta": eta}
    else:
        alpha = f.alpha if not isinstance(f, _m.Measure) else _need(cfg, "alpha")
        out = kober_right(mu, alpha, eta)
        extra = {"op": "kober", "alpha": alpha, "eta": eta}
    extra.update({"header": header, "measure": _m.to_dict(out)})
    return 0, extra


def cmd_fracinv(cfg):
    f, header, _ = _function(cfg, need_alpha=cfg.op == "kober")
    nu = f if isinstance(f, _m.Measure) else f.measure
    eta = _need(cfg, "eta")
    if not eta > 0.0:
        raise InputError("--eta must be positive")
    grid = parse_grid(cfg.grid) if cfg.grid else default_grid(nu, 48)
    report = {"header": header, "op": cfg.op, "eta": eta}
    try:
        if cfg.op == "rl":
            try:
                F = rl_left_invert(nu, eta)
            except ValueError:
                F = rl_left_invert_closed(nu, eta)
            report["atom_infinity"] = F.atom_infinity
        else:
            alpha = f.alpha if not isinstance(f, _m.Measure) else _need(cfg, "alpha")
            F, est = kober_right_invert(nu, alpha, eta)
            report.update({"alpha": alpha, "atom_infinity": est.value,
                           "atom_infinity_converged": est.converged,
                           "atom_infinity_ladder": [list(p) for p in zip(est.ladder, est.estimates)]})
        vals = [float(F(y)) for y in grid]
    except ValueError as exc:
        raise InputError(str(exc))
    if cfg.fmt == "csv":
        return 0, _csv(list(zip(grid.tolist(), vals)), ["y", "F"])
    report["distribution"] = [[float(y), v] for y, v in zip(grid, vals)]
    return 0, report


def cmd_order(cfg):
    f, header, _ = _function(cfg)
    grid = parse_grid(cfg.grid) if cfg.grid else None
    try:
        rep = order_report(f, cfg.epsilon, grid)
        iv = estimate_exact_order(f, tol=cfg.tol or 0.05, grid=grid)
    except ValueError as exc:
        raise InputError(str(exc))
    if cfg.fmt == "csv":
        return 0, _csv(rep.phi_samples, ["y", "phi"])
    out = {"header": header, "report": rep.to_dict(), "exact_order": iv.to_dict()}
    out["conclusion"] = "%s; estimated alpha* interval [%g, %g]" % (rep.conclusion, iv.lo, iv.hi)
    return 0, out


def _provider(f, b):
    if b is not None and b.provider is not None:
        return b.provider
    return MeasureDerivatives(f)


def cmd_check(cfg):
    f, header, b = _function(cfg)
    alpha = cfg.order if cfg.order is not None else f.alpha
    tol = cfg.tol
    xg = parse_grid(cfg.grid) if cfg.grid else None
    try:
        if cfg.criterion == "sokal":
            prov = _provider(f, b)
            rep = sokal_test(prov, alpha, cfg.n_max, cfg.k_max, x_grid=xg,
                             tol=1e-10 if tol is None else tol)
            if cfg.fmt == "csv":
                xs = rep.domain["points"] and (xg if xg is not None else _default_x())
                rows = []
                for n in range(cfg.n_max + 1):
                    for k in range(cfg.k_max + 1):
                        F, _ = sokal_value(prov, alpha, n, k, xs)
                        rows.extend((float(x), n, k, float(v)) for x, v in zip(xs, F))
                return _status(cfg, rep), _csv(rows, ["x", "n", "k", "F"])
        else:
            ev = b.closed_form if b is not None else f
            if cfg.criterion == "krein":
                rep = krein_test(ev, x_grid=xg, tol=1e-12 if tol is None else tol)
            else:
                rep = sector_test(ev, alpha, x_grid=xg, tol=1e-12 if tol is None else tol)
    except ValueError as exc:
        raise InputError(str(exc))
    d = rep.to_dict()
    d["header"] = header
    return _status(cfg, rep), d


def _default_x():
    from .criteria import default_x_grid
    return default_x_grid()


def _status(cfg, rep):
    return 1 if cfg.expect_pass and rep.verdict != NO_VIOLATION else 0


def cmd_reproduce(cfg):
    from .reproduce import BUILTIN_CHECKS, CHECKS, format_table, run
    if cfg.builtin:
        name = cfg.builtin.split("(")[0].strip()
        if name not in BUILTIN_CHECKS:
            raise InputError("no reproduction suite for %r (known: %s)"
                             % (name, ", ".join(sorted(BUILTIN_CHECKS))))
        numbers = BUILTIN_CHECKS[name]
    else:
        numbers = [c[0] for c in CHECKS]
    results = run(numbers)
    failed = [r for r in results if not r.passed]
    table = format_table(results)
    if cfg.fmt == "json":
        out = {"builtin": cfg.builtin, "results": [
            {"number": r.number, "criterion": r.name, "passed": r.passed,
             "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results]}
        text = json.dumps(out, indent=2)
    else:
        text = table
    if failed:
        names = ", ".join("%d %s" % (r.number, r.name) for r in failed)
        sys.stderr.write("failing criterion: %s\n" % names)
        return 1, text
    return 0, text


COMMANDS = {
    "eval": cmd_eval,
    "convert": cmd_convert,
    "fracint": cmd_fracint,
    "fracinv": cmd_fracinv,
    "order": cmd_order,
    "check": cmd_check,
    "reproduce": cmd_reproduce,
}


def run(cfg):
    """Execute ``cfg``; returns (exit code, report) where report is a dict or text."""
    if cfg.subcommand not in COMMANDS:
        raise InputError("unknown subcommand %r" % cfg.subcommand)
    return COMMANDS[cfg.subcommand](cfg)


# -------------------------------------------------------------------- main

def build_parser():
    p = argparse.ArgumentParser(prog="stieltjes",
                                description="Generalized Stieltjes transforms and order diagnostics.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        src = s.add_mutually_exclusive_group()
        src.add_argument("--builtin", help="example1(a), example2(a), example3(a,b,c), remark7, remark8(a,m)")
        src.add_argument("--measure", help="path to a JSON measure file")
        s.add_argument("--representation", choices=(MU, RHO), default=MU)
        s.add_argument("--alpha", type=float)
        s.add_argument("--beta", type=float)
        s.add_argument("--eta", type=float)
        s.add_argument("--epsilon", type=float)
        s.add_argument("--order", type=float)
        s.add_argument("--z")
        s.add_argument("--grid", help="lo:hi:n, lin:lo:hi:n or comma list")
        s.add_argument("--tol", type=float)
        s.add_argument("--format", dest="fmt", choices=("json", "csv"),
                       default="csv" if name == "reproduce" else "json")
        s.add_argument("--expect-pass", action="store_true")
        s.add_argument("--op", choices=("rl", "kober"), default="rl")
        s.add_argument("--to", choices=(MU, RHO))
        s.add_argument("--criterion", choices=("sokal", "krein", "sector"), default="sokal")
        s.add_argument("--n-max", type=int, default=4)
        s.add_argument("--k-max", type=int, default=4)
    return p


def _jsonable(o):
    if isinstance(o, dict):
        return {k: _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, (np.floating, float)):
        return _num(float(o))
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    return o


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        code, report = run(cfg)
    except InputError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    if isinstance(report, str):
        out.write(report + "\n")
    else:
        out.write(json.dumps(_jsonable(report), indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
