"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 mathematical refusal (divergent or
boundary series, no root in the completion), 3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from enum import Enum
from fractions import Fraction

import numpy as np

from . import __version__

EXIT_OK, EXIT_USAGE, EXIT_REFUSED, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# output


def _num(x: float) -> str:
    if math.isnan(x):
        return "null"
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with every float printed at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, Enum):
        obj = obj.value
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return {None: "null", True: "true", False: "false"}[None if obj is None else bool(obj)]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, complex):
        return to_json({"re": obj.real, "im": obj.imag}, indent, _level)
    if isinstance(obj, Fraction):
        return to_json(str(obj), indent, _level)
    if isinstance(obj, str):
        import json

        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_schema(command: str) -> dict:
    """The JSON schema for a subcommand's ``--format json`` output."""
    import json
    from importlib.resources import files

    return json.loads(files("discroot").joinpath("schemas", f"{command.replace('-', '_')}.json").read_text())


def _emit(payload: dict, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        print(to_json(payload))
    else:
        print(text if text is not None else to_json(payload))


def _valuation(v):
    return "inf" if v == math.inf else int(v)


# ---------------------------------------------------------------------------
# solve-cubic


def _fmt_value(v) -> str:
    if isinstance(v, complex):
        if v.imag == 0:
            return _num(v.real)
        return f"{_num(v.real)}{'+' if v.imag >= 0 else '-'}{_num(abs(v.imag))}j"
    return _num(v)


def _root_dict(rep) -> dict:
    d = rep.to_dict()
    if isinstance(d["value"], complex) and d["value"].imag == 0:
        d["value"] = d["value"].real
    return d


def cmd_solve_cubic(args) -> int:
    from .real import (
        RealDepressedCubic,
        RealRootError,
        RefusalError,
        RootReport,
        _sign,
        convergence_check,
        cubic_trinomial_root,
        discriminant_root,
        oracle_roots,
        trig_roots,
    )

    general = any(v is not None for v in (args.c1, args.c2, args.c3))
    depressed = args.p is not None or args.q is not None
    if general == depressed:
        raise UsageError("give either --p/--q or --c1/--c2/--c3")
    if general:
        if None in (args.c1, args.c2, args.c3):
            raise UsageError("--c1, --c2 and --c3 are all required")
        c1, c2, c3 = args.c1, args.c2, args.c3
        inp = {"c1": c1, "c2": c2, "c3": c3}
    else:
        if args.p is None or args.q is None:
            raise UsageError("--p and --q are both required")
        c1, c2, c3 = 0.0, args.p, args.q
        inp = {"p": args.p, "q": args.q}
    shift = -c1 / 3
    g = RealDepressedCubic(c2 - c1 * c1 / 3, 2 * c1**3 / 27 - c1 * c2 / 3 + c3)
    payload = {"command": "solve-cubic", "input": inp, "method": args.method, "status": "ok"}
    kw = dict(tol=args.tol, max_terms=args.max_terms, margin=args.margin)

    def shifted(rep: RootReport) -> RootReport:
        if shift:
            rep.value = rep.value + shift
            rep.residual = abs(((rep.value + c1) * rep.value + c2) * rep.value + c3)
            if not isinstance(rep.value, complex):
                rep.sign = _sign(rep.value, 1e-12 * g.scale)
        return rep

    verdicts = []
    if g.p != 0:
        verdicts = [convergence_check(g, s, args.margin) for s in ("discriminant", "trinomial")]
        payload["verdicts"] = [dict(series=v.series, verdict=v.verdict, ratio=v.ratio, margin=v.margin) for v in verdicts]
    try:
        method = args.method
        if method == "auto":
            chosen = next((v.series for v in verdicts if v.converges), None)
            if chosen is None:
                raise RefusalError("neither series converges" if verdicts else "p = 0: no series applies")
            payload["selected"] = chosen
            method = chosen
        if method == "discriminant":
            reports = [discriminant_root(g, **kw)]
        elif method == "trinomial":
            reports = [cubic_trinomial_root(g, **kw)]
        elif method == "trig":
            reports = trig_roots(g)
        else:
            roots = oracle_roots((c1, c2, c3))
            reports = [RootReport(value=r, method="oracle", residual=abs(((r + c1) * r + c2) * r + c3)) for r in roots]
        if method != "oracle":
            reports = [shifted(r) for r in reports]
    except RealRootError as exc:
        payload["status"] = "refused"
        payload["reason"] = str(exc)
        _emit(payload, args.format, f"refused: {exc}")
        return EXIT_REFUSED
    payload["roots"] = [_root_dict(r) for r in reports]
    text = "\n".join(
        f"{r.method}\t{_fmt_value(r.value)}\tterms={r.terms_used}\tresidual={_num(r.residual)}" for r in reports
    )
    _emit(payload, args.format, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# expand-generic


def cmd_expand_generic(args) -> int:
    from .disc_adic import (
        LiftConfig,
        NoResidueRootError,
        generic_depressed,
        generic_general,
        generic_root,
        verify_root,
    )

    f = generic_depressed(args.char) if args.form == "depressed" else generic_general(args.char)
    cfg = LiftConfig(args.order)
    payload = {"command": "expand-generic", "char": args.char, "form": args.form, "order": args.order, "engine": args.engine}
    engines = ["series", "hensel"] if args.engine == "both" else [args.engine]
    try:
        results = {name: generic_root(f, cfg, name) for name in engines}
    except NoResidueRootError as exc:
        payload["status"] = "refused"
        payload["reason"] = str(exc)
        cert = exc.certificate
        if cert is not None:
            payload["certificate"] = {"pi": cert.pi, "residue_cubic": cert.residue_cubic, "radicand": cert.radicand, "reason": cert.reason}
        _emit(payload, args.format, f"refused: {exc}")
        return EXIT_REFUSED
    any_el = next(iter(results.values()))
    payload.update(pi=str(any_el.pi), variable=any_el.ring.variable, prime=any_el.ring.prime_reason)
    ok = True
    lines = []
    payload["engines"] = {}
    for name, el in results.items():
        v = verify_root(f, el)
        ok &= v > args.order
        payload["engines"][name] = {"digits": [str(a) for a in el.digits], "text": str(el), "verify_valuation": _valuation(v)}
        lines.append(f"{name}: {el}")
        lines.append(f"{name}: v(f(alpha)) = {_valuation(v)}")
    if len(results) == 2:
        s, h = results["series"], results["hensel"]
        comparison = [{"k": k, "match": a == b} for k, (a, b) in enumerate(zip(s.digits, h.digits))]
        payload["comparison"] = comparison
        payload["match"] = all(c["match"] for c in comparison)
        ok &= payload["match"]
        for c in comparison:
            lines.append(f"π^{c['k']}: {'match' if c['match'] else 'MISMATCH'}")
        lines.append(f"verdict: {'match' if payload['match'] else 'mismatch'} through π^{args.order}")
    payload["status"] = "ok" if ok else "failed"
    _emit(payload, args.format, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------
# factor-quartic


def cmd_factor_quartic(args) -> int:
    from .disc_adic import LiftConfig, render_element
    from .quartic import QuarticError, generic_quartic, ramified_factor, rho_constant

    g = generic_quartic()
    payload = {"command": "factor-quartic", "order": args.order}
    try:
        r = ramified_factor(g, LiftConfig(args.order))
    except QuarticError as exc:
        payload["status"] = "failed"
        payload["reason"] = str(exc)
        _emit(payload, args.format, f"failed: {exc}")
        return EXIT_FAILED
    payload.update(r.to_dict())
    payload["rho_constant"] = str(rho_constant(g))
    payload["r"] = r.render()
    payload["status"] = "ok" if r.divides() else "failed"
    text = "\n".join(
        [
            f"r(t) = {r.render()}",
            f"s = {render_element(r.s)}",
            f"rho = {render_element(r.rho)}",
            f"v(g - r*u) = {payload['remainder_valuation']}",
            f"v(disc r) = {payload['disc_r_valuation']}",
            f"v(disc u) = {payload['disc_u_valuation']}",
            f"divides: {'yes' if r.divides() else 'no'}",
        ]
    )
    _emit(payload, args.format, text)
    return EXIT_OK if r.divides() else EXIT_FAILED


# ---------------------------------------------------------------------------
# census


def cmd_census(args) -> int:
    from .census import CensusConfig, curves_csv, max_height_trend, quartic_census_sample, quilt_csv, quilt_data, region_areas

    mode = {"naive": "naive_height", "max": "max_height"}[args.mode]
    try:
        cfg = CensusConfig(mode, args.h, args.samples, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.what in ("quilt", "curves"):
        if args.grid < 2:
            raise UsageError("--grid must be at least 2")
        rows, curves = quilt_data(cfg, args.grid)
        sys.stdout.write(quilt_csv(rows) if args.what == "quilt" else curves_csv(curves))
        return EXIT_OK
    if args.what == "areas":
        payload = {"command": "census", "what": "areas", **region_areas(cfg)}
    elif args.what == "trend":
        payload = {"command": "census", "what": "trend", "trend": max_height_trend(tuple(args.hs))}
    else:
        payload = {"command": "census", "what": "quartic", **quartic_census_sample(cfg, tuple(args.scales))}
    print(to_json(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-identities


def _parse_ring(name: str):
    from .rings import GF, QQ, ZZ

    if name == "QQ":
        return QQ
    if name == "ZZ":
        return ZZ
    if name.startswith("GF"):
        try:
            return GF(int(name[2:].strip("()")))
        except ValueError as exc:
            raise UsageError(f"bad ring {name!r}") from exc
    raise UsageError(f"unknown ring {name!r} (QQ, ZZ or GFp)")


def cmd_verify_identities(args) -> int:
    from .series import IDENTITIES, standard_identity_suite, verify_char2_congruence, verify_identity

    if args.all == bool(args.identity):
        raise UsageError("give either --all or at least one --identity")
    if args.all:
        checks = standard_identity_suite(args.order)
    else:
        params = {}
        for item in args.param:
            k, _, v = item.partition("=")
            try:
                params[k] = int(v)
            except ValueError as exc:
                raise UsageError(f"bad --param {item!r}") from exc
        ring = _parse_ring(args.ring)
        for name in args.identity:
            if name not in IDENTITIES and name != "char2_congruence":
                raise UsageError(f"unknown identity {name!r}; known: {', '.join(sorted(IDENTITIES))}, char2_congruence")
        checks = [(name, params, args.order or 100, ring) for name in args.identity]
    results = []
    for name, params, order, ring in checks:
        if name == "char2_congruence":
            rep = verify_char2_congruence(order)
        else:
            rep = verify_identity(name, order, ring, **params)
        results.append(rep)
    if args.all:
        results.append(verify_char2_congruence(args.order or 200))
    rows = [
        {
            "name": r.name,
            "params": {k: v for k, v in r.params},
            "order": r.order,
            "ring": r.ring,
            "holds": r.holds,
            "first_mismatch": r.first_mismatch,
        }
        for r in results
    ]
    all_hold = all(r.holds for r in results)
    payload = {"command": "verify-identities", "results": rows, "all_hold": all_hold}
    text = "\n".join(
        f"{'ok  ' if r['holds'] else 'FAIL'} {r['name']}{r['params'] or ''} order={r['order']} ring={r['ring']}"
        + ("" if r["holds"] else f" first_mismatch={r['first_mismatch']}")
        for r in rows
    )
    _emit(payload, args.format, text)
    return EXIT_OK if all_hold else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="discroot", description="Series roots of cubics and quartics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve-cubic", help="numeric roots of a real cubic")
    for name in ("p", "q", "c1", "c2", "c3"):
        sp.add_argument(f"--{name}", type=float)
    sp.add_argument("--method", choices=["discriminant", "trinomial", "trig", "oracle", "auto"], default="auto")
    sp.add_argument("--tol", type=float, default=1e-16)
    sp.add_argument("--max-terms", type=int, default=10**6)
    sp.add_argument("--margin", type=float, default=1e-6)
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.set_defaults(func=cmd_solve_cubic)

    sp = sub.add_parser("expand-generic", help="the generic root as a series in the discriminant")
    sp.add_argument("--char", type=int, choices=[0, 2, 3], default=0)
    sp.add_argument("--order", type=int, default=8)
    sp.add_argument("--form", choices=["depressed", "general"], default="depressed")
    sp.add_argument("--engine", choices=["series", "hensel", "both"], default="series")
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.set_defaults(func=cmd_expand_generic)

    sp = sub.add_parser("factor-quartic", help="ramified quadratic factor of the generic quartic")
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.set_defaults(func=cmd_factor_quartic)

    sp = sub.add_parser("census", help="convergence-region census")
    sp.add_argument("--mode", choices=["naive", "max"], default="naive")
    sp.add_argument("--h", type=float, default=10.0)
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--what", choices=["areas", "quilt", "curves", "trend", "quartic"], default="areas")
    sp.add_argument("--grid", type=int, default=50)
    sp.add_argument("--scales", type=float, nargs="+", default=[1, 10, 100])
    sp.add_argument("--hs", type=float, nargs="+", default=[10, 100, 1000])
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify-identities", help="check the series identities coefficientwise")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--identity", action="append", default=[])
    sp.add_argument("--param", action="append", default=[], metavar="NAME=INT")
    sp.add_argument("--order", type=int)
    sp.add_argument("--ring", default="QQ")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.set_defaults(func=cmd_verify_identities)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 1:
        parser.error("--order must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
