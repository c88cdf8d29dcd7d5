"""Command-line front end.

Every subcommand writes one JSON document (or CSV for ``eval --format csv``)
to stdout or ``--output``. Exit status: 0 success, 2 invalid input, 3
numerical failure. Errors are reported as {"error": {"type", "message"}}.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys

import numpy as np

from . import mathieu as ma
from . import recurrence as rec
from . import scattering as sc
from . import solutions as so
from . import transforms as tr
from . import verify as ve
from ._kernels import SCALE_BITS
from .equations import KINDS, make_params
from .errors import InceHeunError, InvalidParams, NumericalError, ValidationError
from .options import DEFAULT, Tolerances

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

PARAM_NAMES = ("B1", "B2", "B3", "z0", "q", "eta", "omega")


# -- parsing -------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """'1.5-0.25i', '2', '-3i', '1e-3+2e-2i' (a trailing j is accepted too)."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise InvalidParams("empty complex number")
    if s.endswith("i"):
        s = s[:-1] + "j"
        if s in ("j", "+j", "-j"):
            s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise InvalidParams(f"cannot parse complex number {text!r}") from None


def _cx_arg(text):
    try:
        return parse_complex(text)
    except InvalidParams as e:
        raise argparse.ArgumentTypeError(str(e))


def _params(args):
    if args.equation is None:
        raise InvalidParams("--equation is required")
    vals = {n: getattr(args, n) for n in PARAM_NAMES if getattr(args, n) is not None}
    return make_params(args.equation, **vals)


def _tolerances(args) -> Tolerances:
    kw = {}
    for n in ("fn", "root", "tail", "res"):
        v = getattr(args, f"tol_{n}")
        if v is not None:
            kw[n] = v
    return DEFAULT.with_(**kw)


def grid_points(start: complex, stop: complex, count: int, path: str, angle: float = 0.0):
    """Grid on a segment (real-line), a ray at ``angle`` or a circle of radius |start|."""
    if count < 1:
        raise InvalidParams("grid count must be positive")
    if path == "real-line":
        if start.imag or stop.imag:
            raise InvalidParams("real-line grids need real endpoints")
        return np.linspace(start.real, stop.real, count).astype(np.complex128)
    if path == "ray":
        d = cmath.exp(1j * angle)
        return np.linspace(abs(start), abs(stop), count) * d
    if path == "circle":
        th = angle + 2 * np.pi * np.arange(count) / count
        return abs(start) * np.exp(1j * th)
    raise InvalidParams(f"unknown path kind {path!r}")


# -- output --------------------------------------------------------------------

def _num(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return "%.17g" % x


def to_json(obj) -> str:
    """Deterministic JSON: sorted keys, %.17g floats, complex as [re, im]."""
    out = io.StringIO()

    def emit(o):
        if o is None or o is True or o is False:
            out.write({None: "null", True: "true", False: "false"}[o])
        elif isinstance(o, (bool, np.bool_)):
            out.write("true" if o else "false")
        elif isinstance(o, (int, np.integer)):
            out.write(str(int(o)))
        elif isinstance(o, (float, np.floating)):
            out.write(_num(float(o)))
        elif isinstance(o, (complex, np.complexfloating)):
            out.write(f"[{_num(o.real)}, {_num(o.imag)}]")
        elif isinstance(o, str):
            out.write(json.dumps(o))
        elif isinstance(o, dict):
            out.write("{")
            for i, k in enumerate(sorted(o, key=str)):
                if i:
                    out.write(", ")
                emit(str(k))
                out.write(": ")
                emit(o[k])
            out.write("}")
        elif isinstance(o, (list, tuple, np.ndarray)):
            out.write("[")
            for i, v in enumerate(o):
                if i:
                    out.write(", ")
                emit(v)
            out.write("]")
        else:
            emit(str(o))

    emit(obj)
    return out.getvalue() + "\n"


def _write(args, text: str):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------------

def _build(args, p, tol, variant=None):
    nu = args.nu
    seeds = args.seed or None
    return so.build_solution(args.family, variant or args.variant, p, nu=nu, sqrt_sign=args.sqrt_sign,
                             pair=args.pair, seeds=seeds, tol=tol)


def cmd_eval(args, tol):
    p = _params(args)
    sol = _build(args, p, tol)
    zs = grid_points(args.start, args.stop, args.count, args.path, args.angle)
    rows = []
    for i, z in enumerate(zs):
        u, tail = so.eval_solution(sol, complex(z), tol)
        rows.append((i, complex(z), u, tail))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "re_z", "im_z", "re_U", "im_U", "tail_estimate"])
        for i, z, u, t in rows:
            w.writerow([i, _num(z.real), _num(z.imag), _num(u.real), _num(u.imag), _num(t)])
        return buf.getvalue()
    return to_json({"solution": sol.describe(), "params": p.as_dict(),
                    "points": [{"index": i, "z": z, "U": u, "tail_estimate": t} for i, z, u, t in rows]})


def cmd_char(args, tol):
    if args.equation == "mathieu":
        args.family = args.family or "even-pi"
        if args.q is None:
            raise InvalidParams("--q is required")
        roots = []
        start = args.index
        for k in range(start, start + args.count):
            seed = args.seed[k - start] if args.seed and k - start < len(args.seed) else None
            r = ma.char_value_a(args.family, args.q, seed=seed, index=k, nu=args.nu, tol=tol)
            roots.append({"a": r.a, "residual": abs(r.residual), "cf_depth": r.depth})
        return to_json({"family": args.family, "q": args.q, "roots": roots})
    p = _params(args)
    unknown = args.unknown or ("B3" if rec.family_info(args.family).one_sided else "nu")
    prob = rec.CharacteristicProblem(args.family, p, unknown, nu=args.nu, tol=tol)
    seeds = list(args.seed or [])
    roots = []
    if unknown == "B3" and not seeds:
        seeds = [complex(x) for x in rec.eigen_roots(prob, 40)[: args.count]]
    if not seeds:
        seeds = [None]
    for s in seeds:
        r = rec.solve_characteristic(prob, seed=s, opts=tol)
        roots.append({"value": r.value, "residual": abs(r.residual), "cf_depth": r.depth})
    return to_json({"family": args.family, "unknown": unknown, "params": p.as_dict(), "roots": roots})


def cmd_coeffs(args, tol):
    p = _params(args)
    sol = _build(args, p, tol, variant="zero")
    win = sol.provider.get(args.n)
    logs = np.log10(np.maximum(np.abs(win.mant), 1e-300)) + win.expo * SCALE_BITS * math.log10(2)
    coeffs = [{"n": int(n), "b": complex(v), "log10_abs": float(lg)}
              for n, v, lg in zip(win.indices, win.values, logs) if abs(n) <= args.n]
    return to_json({"family": args.family, "nu": sol.nu, "params": sol.params.as_dict(),
                    "n_min": max(win.n_min, -args.n), "n_max": min(win.n_max, args.n),
                    "recurrence_residual": win.recurrence_residual(), "coefficients": coeffs})


def cmd_mathieu(args, tol):
    args.family = args.family or "even-pi"
    if args.q is None:
        raise InvalidParams("--q is required")
    us = grid_points(args.start, args.stop, args.count, args.path, args.angle)
    if args.poole:
        l, m = args.poole
        ps = ma.poole_solution(l, m, args.q, seed_a=args.a, index=args.index, tol=tol)
        vals = [ps.exp_type(u) for u in us]
        T = ps.period
        gap = max(abs(ps.exp_type(u + T) - v) for u, v in zip(us, vals)) / max(abs(v) for v in vals)
        return to_json({"family": f"poole-{l}-{m}", "q": args.q, "a": ps.a, "nu": ps.nu, "period": T,
                        "periodicity_gap": gap,
                        "samples": [{"u": u, "value": v} for u, v in zip(us, vals)]})
    sol = ma.mathieu_solution(args.family, args.q, a=args.a, sigma=args.sigma, nu=args.nu,
                              index=args.index, sqrt_sign=args.sqrt_sign, tol=tol)
    vals = [sol(u) for u in us]
    scale = max(max(abs(v) for v in vals), 1e-300)
    rep = {"family": args.family, "q": args.q, "a": sol.a, "sigma": sol.sigma, "parity": sol.parity,
           "samples": [{"u": u, "value": v} for u, v in zip(us, vals)]}
    if sol.period is not None and sol.sigma == 1:
        rep["period"] = sol.period
        rep["periodicity_gap"] = max(abs(sol(u + sol.period) - v) for u, v in zip(us, vals)) / scale
    sgn = 1 if sol.parity == "even" else -1
    rep["parity_gap"] = max(abs(sol(-u) - sgn * v) for u, v in zip(us, vals)) / scale
    return to_json(rep)


def cmd_scatter(args, tol):
    pot = sc.PotentialParams(args.alpha1, args.alpha2, args.beta1, args.Z, args.zprime, args.E, args.l)
    case = args.case or ("inverse4" if abs(pot.c6) <= 1e-14 else "inverse6")
    m = (sc.map_inverse6(pot, args.b1_sign) if case == "inverse6"
         else sc.map_inverse4(pot, args.omega_sign, args.b1_sign))
    sols = sc.radial_pairs(m, seeds=args.seed or None, tol=tol)
    rs = np.geomspace(args.rmin, args.rmax, args.count)
    first = sols[(1, "zero")]
    fid = first.series.family_id
    fnu = rec.characteristic_residual(rec.CharacteristicProblem(fid, m.params, "nu", tol=tol), first.nu)
    members = []
    for (pair, variant), s in sorted(sols.items()):
        members.append({
            "pair": pair, "variant": variant, "solution": s.describe(),
            "radial_residual": sc.radial_residual(s, rs).as_dict(),
            "boundary": sc.boundary_report(s).as_dict(),
            "samples": [{"r": float(r), "R": s(r)} for r in rs],
        })
    return to_json({"case": case, "params": m.params.as_dict(), "nu": first.nu,
                    "characteristic_residual": abs(fnu), "members": members,
                    "potential": {"alpha1p": pot.alpha1p, "alpha2p": pot.alpha2p, "beta1p": pot.beta1p,
                                  "Z": pot.Z, "zprime": pot.zprime, "E": pot.E, "l": pot.l}})


def cmd_transform(args, tol):
    kind = args.equation
    if args.rule:
        res = tr.apply_rule(args.rule, _params(args))
        pre = res.prefactor
        return to_json({"rule": args.rule, "source": res.source.as_dict(), "target": res.params.as_dict(),
                        "argument": res.argument,
                        "prefactor": {"z_power": pre.pz, "z_minus_z0_power": pre.pzz0, "exp_inv_z": pre.einv}})
    if args.normal_form:
        nf = tr.normal_form(args.normal_form, _params(args), n3_scale=args.n3_scale)
        return to_json({"normal_form": nf.which, "n3_scale": nf.n3_scale,
                        "coefficients": {str(k): v for k, v in sorted(nf.coeffs.items())}})
    if args.degenerate:
        vals = {n: getattr(args, n) for n in PARAM_NAMES if getattr(args, n) is not None}
        d = tr.degenerate_reduce(kind, vals)
        return to_json({"case": d.case, "substitution": d.substitution,
                        "reduced_equation": d.reduced_equation, "exponents": list(d.exponents),
                        "data": d.data})
    raise InvalidParams("transform needs --rule, --normal-form or --degenerate")


def cmd_verify(args, tol):
    p = _params(args)
    if args.members == "pair":
        z, i = so.build_pair(args.family, p, nu=args.nu, sqrt_sign=args.sqrt_sign, pair=args.pair,
                             seeds=args.seed or None, tol=tol)
        reports = [ve.verify_solution(z, i, n=args.points).as_dict(),
                   ve.verify_solution(i, z, n=args.points).as_dict()]
    else:
        z = _build(args, p, tol, variant=args.members)
        reports = [ve.verify_solution(z, n=args.points).as_dict()]
    return to_json({"family": args.family, "pair": args.pair, "nu": z.nu, "params": z.params.as_dict(),
                    "reports": reports})


COMMANDS = {"eval": cmd_eval, "char": cmd_char, "coeffs": cmd_coeffs, "mathieu": cmd_mathieu,
            "scatter": cmd_scatter, "transform": cmd_transform, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="inceheun", description="Series solutions of Ince-limit Heun equations")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default=None)
    for n in ("fn", "root", "tail", "res"):
        common.add_argument(f"--tol-{n}", type=float, default=None)

    eq = argparse.ArgumentParser(add_help=False)
    eq.add_argument("--equation", choices=sorted(KINDS) + ["mathieu"])
    for n in PARAM_NAMES:
        eq.add_argument(f"--{n}", type=_cx_arg, default=None)
    eq.add_argument("--family")
    eq.add_argument("--variant", choices=("zero", "infinity"), default="zero")
    eq.add_argument("--pair", type=int, choices=(1, 2), default=1)
    eq.add_argument("--nu", type=_cx_arg, default=None)
    eq.add_argument("--seed", type=_cx_arg, action="append")
    eq.add_argument("--sqrt-sign", type=int, choices=(1, -1), default=1)

    def grid(start=0.5, stop=1.5):
        # parents share action objects, so each subcommand gets its own copy
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--start", type=_cx_arg, default=complex(start))
        g.add_argument("--stop", type=_cx_arg, default=complex(stop))
        g.add_argument("--count", type=int, default=11)
        g.add_argument("--path", choices=("real-line", "ray", "circle"), default="real-line")
        g.add_argument("--angle", type=float, default=0.0)
        return g

    p = sub.add_parser("eval", parents=[common, eq, grid()])
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p = sub.add_parser("char", parents=[common, eq])
    p.add_argument("--unknown", choices=("nu", "B3"))
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p = sub.add_parser("coeffs", parents=[common, eq])
    p.add_argument("--n", type=int, default=32)
    p = sub.add_parser("mathieu", parents=[common, eq, grid(0.0, math.pi)])
    p.add_argument("--a", type=_cx_arg, default=None)
    p.add_argument("--sigma", type=_cx_arg, default=complex(1.0))
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--poole", type=int, nargs=2, metavar=("L", "M"))
    p = sub.add_parser("scatter", parents=[common])
    for n, d in (("alpha1", 1.0), ("alpha2", 0.0), ("beta1", 0.0), ("E", 0.5)):
        p.add_argument(f"--{n}", type=float, default=d)
    for n, d in (("Z", 0), ("zprime", 0), ("l", 0)):
        p.add_argument(f"--{n}", type=int, default=d)
    p.add_argument("--case", choices=("inverse6", "inverse4"))
    p.add_argument("--b1-sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--omega-sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--seed", type=_cx_arg, action="append")
    p.add_argument("--rmin", type=float, default=0.1)
    p.add_argument("--rmax", type=float, default=10.0)
    p.add_argument("--count", type=int, default=12)
    p = sub.add_parser("transform", parents=[common, eq])
    p.add_argument("--rule", choices=tr.RULES)
    p.add_argument("--normal-form", choices=("N1", "N2", "N3"))
    p.add_argument("--n3-scale", type=_cx_arg, default=complex(1.0))
    p.add_argument("--degenerate", action="store_true")
    p = sub.add_parser("verify", parents=[common, eq])
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--members", choices=("pair", "zero", "infinity"), default="pair")
    return ap


def _error(exc: Exception) -> str:
    if isinstance(exc, InceHeunError):
        err = exc.to_dict()
        err["type"] = err.pop("error")
    else:
        err = {"type": type(exc).__name__, "message": str(exc)}
    return to_json({"error": err})


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        tol = _tolerances(args)
        if getattr(args, "family", None) is None and args.command in ("eval", "char", "coeffs", "verify"):
            raise InvalidParams("--family is required")
        text = COMMANDS[args.command](args, tol)
    except ValidationError as e:
        sys.stdout.write(_error(e))
        return EXIT_INPUT
    except (NumericalError, InceHeunError, ArithmeticError) as e:
        sys.stdout.write(_error(e))
        return EXIT_NUMERIC
    _write(args, text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
