"""Command line interface; every subcommand prints (or writes) one JSON report."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import mpmath

from . import __version__
from .chartypes import (base_change, combinatorial_window, critical_set, parse_type, purity_check, width)
from .config import CounterexampleConfig, RunConfig, run_counterexample
from .errors import HeckeRatioError
from .numfield import (abs_discriminant, abs_discriminant_tower, embeddings, galois_closure, load_field,
                       maximal_subfields, rel_discriminant)
from .qi import HeckeCharacterSpec


def _load_char(arg: str) -> HeckeCharacterSpec:
    p = Path(arg)
    text = p.read_text() if p.exists() else arg
    return HeckeCharacterSpec.from_json(text)


def _cmd_field_info(a):
    F = load_field(a.field)
    emb = embeddings(F, a.bits)
    ctx = galois_closure(F)
    out = {"field": a.field, "layers": F.to_json(), "degree": F.degree, "r1": emb.r1, "r2": emb.r2,
           "minpoly_theta": [str(c) for c in F.minpoly], "closure_degree": ctx.order,
           "embeddings": [mpmath.nstr(z, 20) for z in emb.theta_values]}
    if not (emb.r1 and emb.r2):
        sub = maximal_subfields(F, ctx)
        out["F0_degree"] = sub.f0.degree
        out["F1_degree"] = sub.f1.degree
        out["D"] = None if sub.D is None else F.format(sub.f0.to_parent(sub.D))
    return out


def _cmd_disc(a):
    from .verify import discriminant_identity_check

    F = load_field(a.field)
    out = {"field": a.field, "abs_discriminant": str(abs_discriminant(F))}
    if a.depth is not None:
        out["rel_discriminant"] = F.format(rel_discriminant(F, a.depth))
        out["tower_formula"] = str(abs_discriminant_tower(F, a.depth))
    if embeddings(F).r1 == 0:
        out["identity"] = discriminant_identity_check(a.field).to_json()
    return out


def _cmd_purity(a):
    F = load_field(a.field)
    n = parse_type(F, a.type, a.parities)
    res = purity_check(n)
    out = {"field": a.field, "type": list(n.exponents), "pure": res.pure, "weight": res.weight,
           "witness": res.witness}
    if res.pure and embeddings(F).r1 == 0:
        out["width"] = width(n)
        out["window"] = combinatorial_window(n)
    return out


def _cmd_crit(a):
    F = load_field(a.field)
    t = parse_type(F, a.type, a.parities)
    return {"field": a.field, "analytic_type": list(t.exponents), "critical_set": critical_set(t).to_json()}


def _cmd_signatures(a):
    from .chartypes import InfinityType
    from .verify import cm_structure, reciprocity_table

    F = load_field(a.field)
    if a.base_type:
        sub = maximal_subfields(F, galois_closure(F))
        n = base_change(parse_type(sub.f1.tower, a.base_type), sub)
    else:
        n = parse_type(F, a.type)
    table = reciprocity_table(InfinityType(F, n.exponents), cm_structure(F))
    return {"field": a.field, "type": list(n.exponents), **table.to_json()}


def _cmd_lvalue(a):
    from .lseries import completed, dirichlet_sum, euler_product
    from .qi import coefficients

    chi = _load_char(a.char)
    s = mpmath.mpmathify(a.s)
    if a.route == "afe":
        from .afe import afe_lfinite
        res = afe_lfinite(chi, s, a.iota, a.bits)
    elif a.route == "euler":
        res = euler_product(chi, s, a.X or 10 ** 5, a.iota, a.bits)
    elif a.completed:
        res = completed(chi, a.iota, int(a.s), a.tail, a.X, a.bits, a.workers)
    else:
        from .lseries import choose_X
        X = a.X or choose_X(chi.weight, s.real if isinstance(s, mpmath.mpc) else s, a.tail,
                             lattice=chi.base.lattice_constants())
        res = dirichlet_sum(coefficients(chi, X), s, a.tail, a.iota, a.bits, a.workers)
    return {"char": chi.to_json(), "iota": a.iota, "route": a.route, **res.to_json()}


def _cmd_ratio(a):
    from .lseries import ratio

    chi = _load_char(a.char)
    if a.route == "afe":
        from .afe import afe_ratio
        res = afe_ratio(chi, a.iota, a.m, a.bits)
    else:
        res = ratio(chi, a.iota, a.m, a.tail, a.X, a.bits, a.workers)
    return {"char": chi.to_json(), "iota": a.iota, "route": a.route, **res.to_json()}


def _cmd_counterexample(a):
    run = RunConfig(a.bits, a.tail, a.workers, a.X)
    cfg = CounterexampleConfig("Q(i)", a.k, a.d, a.m, a.qmax, a.tol, a.route, run)
    return run_counterexample(cfg).to_json()


def _common(suppress: bool) -> argparse.ArgumentParser:
    # flags are accepted before and after the subcommand; the subcommand copies
    # must not overwrite values given before it
    c = argparse.ArgumentParser(add_help=False)

    def add(flag, default, **kw):
        c.add_argument(flag, default=argparse.SUPPRESS if suppress else default, **kw)

    add("--bits", 192, type=int, help="working precision in bits")
    add("--tail", 1e-10, type=float, help="required tail bound")
    add("--qmax", 10 ** 4, type=int, help="q-bound for rational recognition")
    add("--tol", 5e-8, type=float, help="recognition tolerance")
    add("--workers", 1, type=int)
    add("--X", None, type=int, help="truncation point (default: from --tail)")
    add("--out", None, type=Path, help="write the JSON report here")
    return c


def build_parser() -> argparse.ArgumentParser:
    top, common = _common(False), _common(True)
    p = argparse.ArgumentParser(prog="heckeratio", parents=[top], description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    fld = sub.add_parser("field", parents=[common], help="field commands")
    fsub = fld.add_subparsers(dest="fcmd", required=True)
    info = fsub.add_parser("info", parents=[common], help="degree, embeddings, closure, CM data")
    info.add_argument("field", help="catalog name, JSON file or JSON string")
    info.set_defaults(func=_cmd_field_info)

    d = sub.add_parser("disc", parents=[common], help="discriminants and the identity check")
    d.add_argument("field")
    d.add_argument("--depth", type=int, default=None, help="relative to the sub-tower of this depth")
    d.set_defaults(func=_cmd_disc)

    for name, fn in (("purity", _cmd_purity), ("crit", _cmd_crit)):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("field")
        q.add_argument("--type", required=True, help="comma-separated exponents in embedding order")
        q.add_argument("--parities", default=None, help="comma-separated real parity bits")
        q.set_defaults(func=fn)

    sg = sub.add_parser("signatures", parents=[common], help="reciprocity sign table")
    sg.add_argument("field")
    g = sg.add_mutually_exclusive_group(required=True)
    g.add_argument("--type")
    g.add_argument("--base-type", help="type on F1, base-changed to the field")
    sg.set_defaults(func=_cmd_signatures)

    lv = sub.add_parser("lvalue", parents=[common], help="L-value of a character")
    lv.add_argument("--char", required=True, help="character JSON (file or string)")
    lv.add_argument("--s", required=True)
    lv.add_argument("--iota", type=int, default=0)
    lv.add_argument("--route", choices=("dirichlet", "euler", "afe"), default="dirichlet")
    lv.add_argument("--completed", action="store_true", help="include the archimedean factor")
    lv.set_defaults(func=_cmd_lvalue)

    r = sub.add_parser("ratio", parents=[common], help="L(m)/L(m+1)")
    r.add_argument("--char", required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--iota", type=int, default=0)
    r.add_argument("--route", choices=("dirichlet", "afe"), default="dirichlet")
    r.set_defaults(func=_cmd_ratio)

    c = sub.add_parser("counterexample", parents=[common], help="ratio rationality asymmetry")
    c.add_argument("--k", type=int, default=8)
    c.add_argument("--d", default="4+i")
    c.add_argument("--m", type=int, default=7)
    c.add_argument("--route", choices=("dirichlet", "afe"), default="dirichlet")
    c.set_defaults(func=_cmd_counterexample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (HeckeRatioError, ValueError, KeyError) as exc:
        out = {"error": type(exc).__name__, "message": str(exc)}
        code = 2
    else:
        code = 0
    out = {"version": __version__, "command": args.cmd, **out}
    text = json.dumps(out, indent=2, default=str)
    if args.out:
        args.out.write_text(text + "\n")
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
