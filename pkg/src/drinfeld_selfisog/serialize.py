"""Canonical JSON and text encodings shared by the library and the command line."""
from __future__ import annotations

import json

from .algebra_core.fields import FieldCtx, FqElem
from .algebra_core.mpoly import MPoly, PolyRing
from .algebra_core.ratfunc import RatFunc
from .cm_orders import OrderSpec, a_from, a_to_mpoly
from .errors import InvalidInput
from .skew_drinfeld import SkewPoly


def dumps(obj) -> str:
    """Deterministic compact JSON with a trailing newline."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


# -- fields and polynomials -----------------------------------------------------

def field_to_json(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "e": ctx.e, "modulus": list(ctx.modulus)}


def field_from_json(d: dict) -> FieldCtx:
    try:
        return FieldCtx(int(d["p"]), int(d.get("e", 1)), tuple(d.get("modulus", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed field JSON: {exc}") from None


def poly_to_json(f: MPoly) -> dict:
    ctx = f.ctx
    return {
        "field": field_to_json(ctx),
        "vars": list(f.ring.vars),
        "terms": [{"c": list(ctx.to_coeffs(c)), "e": list(e)} for e, c in f.sorted_terms()],
    }


def poly_from_json(d: dict, ring: PolyRing | None = None) -> MPoly:
    try:
        ctx = field_from_json(d["field"]) if ring is None else ring.ctx
        ring = ring or PolyRing(ctx, tuple(d["vars"]))
        if list(ring.vars) != list(d["vars"]):
            raise InvalidInput(f"variables {d['vars']} do not match ring {ring.vars}")
        terms = {}
        for t in d["terms"]:
            code = ctx.from_coeffs(t["c"])
            if code:
                terms[ring.pack(t["e"])] = code
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed polynomial JSON: {exc}") from None
    return MPoly(ring, terms)


def ratfunc_to_json(f: RatFunc) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfunc_from_json(d: dict) -> RatFunc:
    num = poly_from_json(d["num"])
    return RatFunc(num, poly_from_json(d["den"], num.ring))


# -- skew polynomials ---------------------------------------------------------------

def skew_to_json(u: SkewPoly) -> dict:
    """Terms c * m * x^(q^k), ordered by k then by the coefficient's canonical order (both descending)."""
    parent = u.parent
    if isinstance(parent, FieldCtx):
        return {"field": field_to_json(parent), "vars": [],
                "terms": [{"c": list(parent.to_coeffs(c.v)), "e": [], "tau_degs": k}
                          for k, c in reversed(list(enumerate(u.coeffs))) if not c.is_zero()]}
    if isinstance(parent, PolyRing):
        terms = []
        for k in range(len(u.coeffs) - 1, -1, -1):
            for e, c in u.coeffs[k].sorted_terms():
                terms.append({"c": list(parent.ctx.to_coeffs(c)), "e": list(e), "tau_degs": k})
        return {"field": field_to_json(parent.ctx), "vars": list(parent.vars), "terms": terms}
    # formal q: coefficients only have a textual form
    return {"q": "any", "vars": list(parent.vars),
            "terms": [{"c": str(c), "tau_degs": k}
                      for k, c in reversed(list(enumerate(u.coeffs))) if not c.is_zero()]}


def skew_from_json(d: dict) -> SkewPoly:
    if d.get("q") == "any":
        from .skew_drinfeld import FormalRing
        ring = FormalRing(tuple(d["vars"]))
        n = max((t["tau_degs"] for t in d["terms"]), default=-1) + 1
        cs = [ring.zero] * n
        for t in d["terms"]:
            cs[t["tau_degs"]] = cs[t["tau_degs"]] + ring.parse(t["c"])
        return SkewPoly(cs, ring)
    ctx = field_from_json(d["field"])
    n = max((t["tau_degs"] for t in d["terms"]), default=-1) + 1
    if not d["vars"]:
        cs = [FqElem(ctx, 0) for _ in range(n)]
        for t in d["terms"]:
            cs[t["tau_degs"]] = FqElem(ctx, ctx.from_coeffs(t["c"]))
        return SkewPoly(cs, ctx)
    ring = PolyRing(ctx, tuple(d["vars"]))
    buckets: list[dict] = [{} for _ in range(n)]
    for t in d["terms"]:
        code = ctx.from_coeffs(t["c"])
        if code:
            buckets[t["tau_degs"]][ring.pack(t["e"])] = code
    return SkewPoly([MPoly(ring, b) for b in buckets], ring)


# -- orders and ideals --------------------------------------------------------------------

def _a_elem(ctx: FieldCtx, v):
    if isinstance(v, dict):
        return a_from(ctx, poly_from_json(v))
    if isinstance(v, (str, int, list)):
        return a_from(ctx, v)
    raise InvalidInput(f"cannot read {v!r} as an element of A")


def order_to_json(spec: OrderSpec) -> dict:
    ctx = spec.ctx
    ring = PolyRing(ctx, ("T",))
    out = {
        "minpoly": poly_to_json(spec.minpoly),
        "basis": [[poly_to_json(a_to_mpoly(ctx, x, ring)) for x in row] for row in spec.basis],
        "imaginary": spec.imaginary,
    }
    if list(spec.den) != [1]:
        out["denominator"] = poly_to_json(a_to_mpoly(ctx, spec.den, ring))
    return out


def order_from_json(d: dict) -> OrderSpec:
    """Accepts poly-JSON entries, or strings together with a top-level "field"."""
    try:
        mp = d["minpoly"]
        if isinstance(mp, dict):
            minpoly = poly_from_json(mp)
            if set(minpoly.ring.vars) != {"T", "y"}:
                minpoly = minpoly.change_ring(PolyRing(minpoly.ctx, ("T", "y")))
        else:
            ctx = field_from_json(d["field"])
            minpoly = PolyRing(ctx, ("T", "y")).parse(str(mp))
        ctx = minpoly.ctx
        r = minpoly.degree("y")
        if "basis" in d:
            basis = [[_a_elem(ctx, x) for x in row] for row in d["basis"]]
        else:
            basis = [[[1] if i == j else [] for j in range(r)] for i in range(r)]
        den = _a_elem(ctx, d["denominator"]) if "denominator" in d else [1]
        return OrderSpec(minpoly, basis, den, d.get("imaginary"))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed order JSON: {exc}") from None


def ideal_from_json(spec: OrderSpec, d: dict):
    """{"generators": [[coords...], ...]} (O-generators) or {"matrix": rows} (A-generators as columns)."""
    from .cm_orders import IdealPresentation, ideal_from_generators

    ctx = spec.ctx
    try:
        if "generators" in d:
            gens = [[_a_elem(ctx, x) for x in g] for g in d["generators"]]
            if any(len(g) != spec.r for g in gens):
                raise InvalidInput(f"each generator needs {spec.r} coordinates")
            return ideal_from_generators(spec, gens)
        rows = [[_a_elem(ctx, x) for x in row] for row in d["matrix"]]
        if len(rows) != spec.r or len({len(r) for r in rows}) != 1:
            raise InvalidInput(f"ideal matrix must have {spec.r} rows of equal length")
        return IdealPresentation(spec, rows)
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed ideal JSON: {exc}") from None


# -- text ------------------------------------------------------------------------

def format_grouped(f: MPoly, var: str = "X") -> str:
    """Human-readable form collecting coefficients by powers of ``var``, highest first."""
    if var not in f.ring.vars:
        return str(f)
    parts = []
    for k, c in sorted(f.coeffs_in(var).items(), reverse=True):
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = str(c)
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif len(c.terms) > 1:
            parts.append(f"({cs})*{mon}")
        else:
            parts.append(f"{cs}*{mon}")
    return " + ".join(parts) if parts else "0"
