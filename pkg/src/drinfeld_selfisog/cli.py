"""Command-line front end: ``python -m drinfeld_selfisog <command> ...``.

Exit codes: 0 success, 1 mathematical error (error class on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .algebra_core.fields import FieldCtx
from .algebra_core.mpoly import PolyRing
from .errors import AlgebraError, InvalidInput


class UsageError(Exception):
    pass


# -- argument helpers -----------------------------------------------------------------

def _field(args) -> FieldCtx:
    modulus = None
    if getattr(args, "modulus", None):
        modulus = [int(c) for c in args.modulus.split(",")]
    return FieldCtx.of_order(int(args.q), modulus)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(";", ",").split(",") if t.strip()]


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(args, payload, text: str | None = None, dot: str | None = None) -> None:
    fmt = args.format or args.default_format
    if fmt == "dot":
        if dot is None:
            raise UsageError(f"--format dot is not available for {args.command}")
        out = dot
    elif fmt == "text":
        out = text if text is not None else ser.dumps(payload)
    else:
        out = ser.dumps(payload)
    if not out.endswith("\n"):
        out += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# -- commands ---------------------------------------------------------------------------

def cmd_jinv(args) -> None:
    from .selfisog_modpoly import enumerate_basic_j

    js = enumerate_basic_j(args.q, args.r)
    _emit(args, {"q": args.q, "r": args.r,
                 "tuples": [{"deltas": list(j.deltas), "delta_r": j.delta_r} for j in js]},
          text="\n".join(str(j) for j in js))


def cmd_selfisog_t(args) -> None:
    from .selfisog_modpoly import JTuple, modular_poly_g, phi_self_T

    ctx = _field(args)
    if args.delta == "all":
        deltas = [ctx.elem(c) for c in ctx.nonzero_ordered()]
    else:
        try:
            deltas = [PolyRing(ctx, ()).parse(args.delta).coeff(())]
        except AlgebraError as exc:
            raise UsageError(f"bad --delta: {exc}") from None
    payload: dict = {"q": args.q, "r": args.r}
    lines = []
    if args.j is not None:
        try:
            jt = JTuple.parse(args.q, args.r, args.j)
        except InvalidInput as exc:
            raise UsageError(str(exc)) from None
        res = phi_self_T(args.q, args.r, jt, "all" if args.delta == "all" else deltas[0], ctx)
        payload["j"] = jt.as_list()
        payload["deltas"] = [ctx.format_code(d.v) for d, _ in res.per_delta]
        payload["phi"] = ser.poly_to_json(res.phi)
        payload["degree"] = res.degree
        payload["shared_factors"] = [{"deltas": [i, j], "factor": ser.poly_to_json(g)}
                                     for i, j, g in res.shared_factors]
        lines.append(f"Phi = {ser.format_grouped(res.phi)}")
        datas = res.data
    else:
        datas = None
    if args.emit_g or args.j is None:
        if datas is None:
            datas = [modular_poly_g(args.q, args.r, d, ctx) for d in deltas]
        payload["g"] = [{"delta": ctx.format_code(d.delta.v), "poly": ser.poly_to_json(d.g_poly),
                         "constant_roots_ok": d.constant_roots_ok} for d in datas]
        for d in datas:
            lines.append(f"g({ctx.format_code(d.delta.v)}, X) = {ser.format_grouped(d.g_poly)}")
    _emit(args, payload, text="\n".join(lines))


def cmd_bound(args) -> None:
    from .level_reduction import bound_Nq, bound_Nq_cases, bound_pairs

    if args.which == "pairs":
        value = bound_pairs(args.q, args.allow_small_p)
    elif args.which == "Nq":
        value = bound_Nq(args.q, args.allow_small_p)
    else:
        cases = bound_Nq_cases(args.q, args.allow_small_p)
        _emit(args, {"which": args.which, "q": args.q, **cases},
              text="\n".join(f"{k} {v}" for k, v in cases.items()))
        return
    _emit(args, {"which": args.which, "q": args.q, "value": value}, text=str(value))


def _relations_payload(rels, ring_q, ctx):
    out, lines = [], []
    for rel in rels:
        sides = rel.sides
        if ctx is not None:
            pr = PolyRing(ctx, sides[0].parent.vars)
            sides = tuple(s.specialize(pr) for s in sides)
        strs = [str(s) for s in sides]
        out.append({"index": rel.index, "sides": strs})
        lines.append(" = ".join(strs))
    return out, lines


def cmd_phi_a(args) -> None:
    from .level_reduction import lift_constraints
    from .skew_drinfeld import (DrinfeldModule, FormalRing, commutation_system,
                                drinfeld_image, _parse_a)

    formal = args.q == "any"
    if not formal and not args.q.isdigit():
        raise UsageError('--q must be a prime power or "any"')
    ctx = None if formal else FieldCtx.of_order(int(args.q))
    try:
        a_list = _parse_a(args.a, "T")
    except AlgebraError as exc:
        raise UsageError(f"bad --a: {exc}") from None
    if args.symbolic:
        if args.isogeny_degree is not None:
            system = commutation_system(args.r, None, args.isogeny_degree, a_list)
            rels = system.relations
            extra = {"kind": "commutation", "isogeny_degree": args.isogeny_degree}
        else:
            system = lift_constraints(a=a_list, q=None if formal else int(args.q), rank=args.r)
            rels = system.relations
            extra = {"kind": "lift", "unknowns": list(system.unknowns),
                     "shapes": [list(s) for s in system.shapes],
                     "constraints": system.constraints, "choice_bound": system.choice_bound}
        body, lines = _relations_payload(rels, args.q, ctx)
        _emit(args, {"q": args.q, "r": args.r, "a": args.a, **extra, "relations": body},
              text="\n".join(lines))
        return
    names = ["T"] + [f"g{i}" for i in range(1, args.r)] + ["Delta"]
    if args.coeffs:
        if formal:
            raise UsageError("--coeffs needs a numeric --q")
        ring = PolyRing(ctx, ("T",))
        try:
            cs = [ring.parse(c) for c in args.coeffs.split(",")]
        except AlgebraError as exc:
            raise UsageError(f"bad --coeffs: {exc}") from None
        if len(cs) != args.r:
            raise UsageError(f"--coeffs needs {args.r} entries")
    else:
        ring = FormalRing(tuple(names)) if formal else PolyRing(ctx, tuple(names))
        cs = [ring.gen(n) for n in names[1:]]
    phi = DrinfeldModule(cs, parent=ring)
    pa = drinfeld_image(phi, a_list)
    text = "\n".join(f"x^(q^{k}): {c}" for k, c in reversed(list(enumerate(pa.coeffs))))
    _emit(args, ser.skew_to_json(pa), text=text)


def cmd_gamma(args) -> None:
    from .cm_orders import gamma_count

    spec = ser.order_from_json(_load_json(args.order))
    res = gamma_count(spec, args.a, args.bound, certified=args.certified)
    ring = PolyRing(spec.ctx, ("T",))
    wit = [[ser.poly_to_json(ring.zero.from_dense("T", c)) for c in w] for w in res.witnesses]
    text = [f"gamma = {res.count} ({res.tag}, B = {res.bound})"]
    text += ["(" + ", ".join(str(ring.zero.from_dense("T", c)) for c in w) + ")"
             for w in res.witnesses]
    _emit(args, {"count": res.count, "tag": res.tag, "bound": res.bound, "witnesses": wit},
          text="\n".join(text))


def cmd_fitnorm(args) -> None:
    from .cm_orders import a_to_mpoly, fitting_norm

    spec = ser.order_from_json(_load_json(args.order))
    ideal = ser.ideal_from_json(spec, _load_json(args.ideal))
    n = a_to_mpoly(spec.ctx, fitting_norm(ideal))
    _emit(args, ser.poly_to_json(n), text=str(n))


def _graph_out(args, graph, meta: dict) -> None:
    _emit(args, {**meta, **graph.to_json()}, dot=graph.to_dot())


def cmd_volcano(args) -> None:
    from .volcano import (CraterSpec, VolcanoGraph, branching_factor, build_volcano,
                          crater_graph, preset_volcano, validate_volcano)

    if args.action == "preset":
        p, g = preset_volcano(args.name, args.depth)
        _graph_out(args, g, {"preset": p.name, "q": p.q, "r": p.r, "deg_l": p.deg_l,
                             "b": p.b, "g1": p.g1, "note": p.note})
    elif args.action == "gen":
        try:
            inv = _int_list(args.group)
            images = [tuple(_int_list(x)) for x in args.images.split(";")]
        except ValueError:
            raise UsageError("--group and --images take comma-separated integers") from None
        crater = CraterSpec(tuple(inv), tuple(images))
        b = branching_factor(args.q, args.r, args.degl)
        branching = _int_list(args.branching) if args.branching else None
        g = build_volcano(crater_graph(crater), b, args.depth, branching)
        _graph_out(args, g, {"q": args.q, "r": args.r, "deg_l": args.degl, "b": b,
                             "g1": len(crater.images)})
    else:
        graph = VolcanoGraph.from_json(_load_json(args.graph))
        branching = _int_list(args.branching) if args.branching else None
        rep = validate_volcano(graph, args.r, args.g1, args.b, branching)
        text = ["ok" if rep.ok else "FAILED"] + rep.violations + [f"note: {n}" for n in rep.notes]
        _emit(args, {"ok": rep.ok, "violations": rep.violations, "notes": rep.notes},
              text="\n".join(text))


def cmd_points(args) -> None:
    from .volcano import count_affine_points, count_projective_points

    ctx = _field(args)
    fn = count_projective_points if args.projective else count_affine_points
    n = fn(args.q, args.rexp, args.f, ctx)
    _emit(args, {"q": args.q, "rexp": args.rexp, "f": args.f,
                 "model": "projective" if args.projective else "affine", "count": n}, text=str(n))


def cmd_check_hom(args) -> None:
    from .skew_drinfeld import homomorphism_check

    rep = homomorphism_check(args.q, args.r, args.trials, args.seed)
    _emit(args, {"q": args.q, "r": args.r, "trials": rep.trials, "seed": args.seed,
                 "failures": [list(f) for f in rep.failures]},
          text=f"{rep.trials} trials, {len(rep.failures)} failures")
    if not rep.ok:
        raise AlgebraError("homomorphism property failed")


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "dot", "text"])
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="drinfeld-selfisog",
                                     description="Self-isogenous Drinfeld modular polynomials and volcanoes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, default_format="json", **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func, default_format=default_format)
        return p

    p = add("jinv", cmd_jinv, help="list basic J-invariant exponent tuples")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("selfisog-t", cmd_selfisog_t, help="g(Delta, X) and Phi_{J,T}(X, X)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--modulus", help="coefficients of the F_q modulus, low to high")
    p.add_argument("--j", help='exponents "d1,...,dr" including d_r')
    p.add_argument("--delta", default="all", help='"all" or one nonzero element of F_q')
    p.add_argument("--emit-g", action="store_true")

    p = add("bound", cmd_bound, default_format="text", help="counting bounds for level T^2+T+1")
    p.add_argument("--which", choices=["pairs", "Nq", "Nq-cases"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--allow-small-p", action="store_true")

    p = add("phi-a", cmd_phi_a, default_format="text", help="phi_a or its symbolic systems")
    p.add_argument("--q", required=True, help='field size or "any" for formal q')
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", required=True, help="element of F_q[T]")
    p.add_argument("--coeffs", help="g1,...,g_r as polynomials in T")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--isogeny-degree", type=int,
                   help="with --symbolic: commutation system for a monic u of this tau-degree")

    p = add("gamma", cmd_gamma, help="count primitive elements of norm c*a")
    p.add_argument("--order", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--certified", action="store_true",
                   help="declare the bound sufficient, tagging the count exact")

    p = add("fitnorm", cmd_fitnorm, default_format="text", help="norm of an ideal")
    p.add_argument("--order", required=True)
    p.add_argument("--ideal", required=True)

    p = sub.add_parser("volcano", help="generate or validate volcano graphs")
    p.set_defaults(func=cmd_volcano, default_format="json")
    vs = p.add_subparsers(dest="action", required=True)
    g = vs.add_parser("gen", parents=[common])
    g.add_argument("--group", required=True, help='invariant factors "n1,n2,..."')
    g.add_argument("--images", required=True, help='images of the degree-one primes, ";"-separated')
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--degl", type=int, required=True)
    g.add_argument("--depth", type=int, default=1)
    g.add_argument("--branching", help="per-level override, comma-separated")
    v = vs.add_parser("validate", parents=[common])
    v.add_argument("graph")
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--g1", type=int, required=True)
    v.add_argument("--b", type=int, required=True)
    v.add_argument("--branching")
    pr = vs.add_parser("preset", parents=[common])
    pr.add_argument("name", choices=["r3-cycle", "r3-loop"])
    pr.add_argument("--depth", type=int, default=1)

    p = add("points", cmd_points, default_format="text", help="rational points of y^r = f(x)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus")
    p.add_argument("--rexp", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--projective", action="store_true",
                   help="add the rational points at infinity of the smooth model")

    p = add("check-hom", cmd_check_hom, default_format="text",
            help="randomized phi_{ab} = phi_a phi_b, phi_{a+b} = phi_a + phi_b")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
