"""Generalized l-cyclic isogeny volcanoes: horizontal types, craters, generation, validation."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .errors import InvalidInput, TooLarge


# -- splitting data and horizontal isogeny types -----------------------------

@dataclass(frozen=True)
class SplitData:
    """Factorization data {(e_i, f_i)} of a prime l of A in O_K."""

    deg_l: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if self.deg_l < 1:
            raise InvalidInput("deg_l must be positive")
        if not self.pairs or any(e < 1 or f < 1 for e, f in self.pairs):
            raise InvalidInput("ramification and inertia degrees must be positive")

    @property
    def r(self) -> int:
        return sum(e * f for e, f in self.pairs)

    @property
    def g1(self) -> int:
        return sum(1 for _, f in self.pairs if f == 1)

    @property
    def inertia(self) -> tuple[int, ...]:
        return tuple(f for _, f in self.pairs)


@dataclass(frozen=True)
class HorizontalType:
    exponents: tuple[int, ...]
    cyclic: bool
    kernel_shape: tuple[int, ...]   # exponents k in (+) A / l^k


def horizontal_types(m: int, split: SplitData) -> list[HorizontalType]:
    """All (m_1..m_g) >= 0 with sum f_i m_i = m, in lexicographically decreasing order."""
    if m < 1:
        raise InvalidInput("m must be at least 1")
    fs = split.inertia
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == len(fs):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(remaining // fs[i], -1, -1):
            acc.append(k)
            rec(i + 1, remaining - k * fs[i], acc)
            acc.pop()

    rec(0, m, [])
    types = []
    for ms in out:
        shape = tuple(f * k for f, k in zip(fs, ms) if k)
        types.append(HorizontalType(ms, sum(1 for k in ms if k) == 1, shape))
    return types


def branching_factor(q: int, r: int, deg_l: int) -> int:
    """|A/l|^(r-1) = q^(deg_l (r-1))."""
    if q < 2 or r < 1 or deg_l < 1:
        raise InvalidInput("q, r and deg_l must be positive (q >= 2)")
    return q ** (deg_l * (r - 1))


def ascend_target(level_vector) -> tuple[int, ...]:
    if any(t < 0 for t in level_vector):
        raise InvalidInput("level entries must be nonnegative")
    return tuple(max(t - 1, 0) for t in level_vector)


# -- crater ------------------------------------------------------------------

@dataclass(frozen=True)
class CraterSpec:
    """Finite abelian group Z/n_1 x ... x Z/n_k with images of the degree-one primes."""

    invariants: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        inv = tuple(int(n) for n in self.invariants)
        if any(n < 1 for n in inv):
            raise InvalidInput("invariant factors must be positive")
        imgs = []
        for x in self.images:
            x = tuple(int(c) for c in x)
            if len(x) != len(inv):
                raise InvalidInput("image has the wrong number of coordinates")
            imgs.append(tuple(c % n for c, n in zip(x, inv)))
        object.__setattr__(self, "invariants", inv)
        object.__setattr__(self, "images", tuple(imgs))

    @property
    def order(self) -> int:
        n = 1
        for k in self.invariants:
            n *= k
        return n

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.invariants)))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariants))

    def element_order(self, x) -> int:
        k, cur = 1, tuple(x)
        zero = tuple(0 for _ in self.invariants)
        while cur != zero:
            cur = self.add(cur, x)
            k += 1
        return k


# -- graphs --------------------------------------------------------------------

@dataclass
class VolcanoGraph:
    """Leveled directed multigraph; ``levels[v]`` is the level vector of vertex v."""

    levels: dict[str, tuple[int, ...]] = field(default_factory=dict)
    edges: list[tuple[str, str, str]] = field(default_factory=list)

    def add_vertex(self, vid: str, level) -> None:
        if vid in self.levels:
            raise InvalidInput(f"duplicate vertex {vid}")
        self.levels[vid] = tuple(level)

    def add_edge(self, src: str, dst: str, kind: str) -> None:
        self.edges.append((src, dst, kind))

    def level(self, vid: str) -> int:
        return max(self.levels[vid])

    def vertices_at(self, t: int) -> list[str]:
        return [v for v, lv in self.levels.items() if max(lv) == t]

    @property
    def depth(self) -> int:
        return max((max(lv) for lv in self.levels.values()), default=0)

    def out_degree(self) -> Counter:
        return Counter(s for s, _, _ in self.edges)

    def in_degree(self) -> Counter:
        return Counter(d for _, d, _ in self.edges)

    def copy(self) -> "VolcanoGraph":
        return VolcanoGraph(dict(self.levels), list(self.edges))

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "level": list(lv)} for v, lv in self.levels.items()],
            "edges": [{"src": s, "dst": d, "kind": k} for s, d, k in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VolcanoGraph":
        try:
            g = cls()
            for v in data["vertices"]:
                lv = v["level"]
                g.add_vertex(str(v["id"]), lv if isinstance(lv, list) else [lv])
            for e in data["edges"]:
                g.add_edge(str(e["src"]), str(e["dst"]), str(e["kind"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed graph JSON: {exc}") from None
        return g

    def to_dot(self, name: str = "volcano") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        by_level: dict[int, list[str]] = {}
        for v in self.levels:
            by_level.setdefault(self.level(v), []).append(v)
        for t in sorted(by_level):
            lines.append(f"  subgraph cluster_level{t} {{")
            lines.append(f'    label="level {t}";')
            for v in by_level[t]:
                lines.append(f'    "{v}";')
            lines.append("  }")
        for s, d, k in self.edges:
            lines.append(f'  "{s}" -> "{d}" [kind="{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _vid(x: tuple[int, ...]) -> str:
    return "c" + ("" if not x else "_" + "_".join(map(str, x)))


def crater_graph(spec: CraterSpec) -> VolcanoGraph:
    """Cayley-type graph: v -> v + x_i for every image x_i."""
    g = VolcanoGraph()
    for v in spec.elements():
        g.add_vertex(_vid(v), (0,))
    for v in spec.elements():
        for x in spec.images:
            g.add_edge(_vid(v), _vid(spec.add(v, x)), "horizontal")
    return g


def build_volcano(crater: VolcanoGraph, b: int, depth: int,
                  branching: list[int] | None = None) -> VolcanoGraph:
    """Attach b children per vertex at every level 1..depth; children ascend to their parent.

    ``branching`` optionally overrides b per level (index t-1 for level t).
    """
    if b < 1 or depth < 0:
        raise InvalidInput("branching must be >= 1 and depth >= 0")
    if branching is not None and len(branching) < depth:
        raise InvalidInput("per-level branching list is shorter than the depth")
    g = crater.copy()
    prev = list(crater.levels)
    for t in range(1, depth + 1):
        bt = branching[t - 1] if branching is not None else b
        cur = []
        for parent in prev:
            for k in range(bt):
                vid = f"{parent}/{k}"
                g.add_vertex(vid, (t,))
                g.add_edge(vid, parent, "ascending")
                cur.append(vid)
        prev = cur
    return g


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]
    notes: list[str]


def validate_volcano(graph: VolcanoGraph, r: int, g1: int, b: int,
                     branching: list[int] | None = None) -> ValidationReport:
    """Check the generalized-volcano axioms; self-loops count once as in and once as out."""
    for v, lv in graph.levels.items():
        if not lv or any((not isinstance(t, int)) or t < 0 for t in lv):
            raise InvalidInput(f"malformed level tag on {v}")
    crater = graph.vertices_at(0)
    if not crater:
        raise InvalidInput("graph has no level-0 vertices")
    depth = graph.depth
    out_deg, in_deg = graph.out_degree(), graph.in_degree()
    bad: list[str] = []
    notes: list[str] = []

    def b_at(t: int) -> int:
        return branching[t - 1] if branching is not None and t - 1 < len(branching) else b

    for s, d, k in graph.edges:
        if s not in graph.levels or d not in graph.levels:
            bad.append(f"edge {s}->{d} has an unknown endpoint")
            continue
        ts, td = graph.level(s), graph.level(d)
        if ts == 0 and td == 0:
            if k != "horizontal":
                bad.append(f"crater edge {s}->{d} not marked horizontal")
        elif td == ts - 1:
            if k != "ascending":
                bad.append(f"edge {s}->{d} ascends but is marked {k}")
            lv_s, lv_d = graph.levels[s], graph.levels[d]
            if len(lv_s) > 1 and ascend_target(lv_s) != lv_d:
                bad.append(f"edge {s}->{d} does not reach ascend_target{lv_s}")
        elif td >= ts and ts == 0:
            bad.append(f"descending edge {s}->{d} from the crater")
        elif td > ts:
            bad.append(f"descending edge {s}->{d} below the crater")
        elif td == ts:
            bad.append(f"horizontal edge {s}->{d} below the crater")
        else:
            bad.append(f"edge {s}->{d} skips levels")
    if g1 > r:
        bad.append(f"crater degree g1={g1} exceeds r={r}")
    if any(s == d for s, d, _ in graph.edges):
        notes.append("self-loops present; each counts as one in-edge and one out-edge")
    for v in crater:
        if out_deg[v] != g1:
            bad.append(f"crater vertex {v} has out-degree {out_deg[v]}, expected {g1}")
        want = g1 + (b_at(1) if depth >= 1 else 0)
        if in_deg[v] != want:
            bad.append(f"crater vertex {v} has in-degree {in_deg[v]}, expected {want}")
    for v, lv in graph.levels.items():
        t = max(lv)
        if t == 0:
            continue
        if out_deg[v] == 0:
            bad.append(f"out-degree 0 below crater at {v}")
        elif out_deg[v] != 1:
            bad.append(f"out-degree {out_deg[v]} below crater at {v}")
        want = b_at(t + 1) if t < depth else 0
        if in_deg[v] != want:
            bad.append(f"vertex {v} at level {t} has in-degree {in_deg[v]}, expected {want}")
    return ValidationReport(not bad, bad, notes)


def mutate(graph: VolcanoGraph, rng: random.Random) -> tuple[VolcanoGraph, str]:
    """Apply one random edge deletion, insertion or redirection."""
    g = graph.copy()
    verts = list(g.levels)
    op = rng.choice(["delete", "add", "redirect"])
    if op == "delete" and g.edges:
        i = rng.randrange(len(g.edges))
        e = g.edges.pop(i)
        return g, f"delete {e}"
    if op == "redirect" and g.edges:
        i = rng.randrange(len(g.edges))
        s, d, k = g.edges[i]
        choices = [v for v in verts if v != d]
        if choices:
            nd = rng.choice(choices)
            g.edges[i] = (s, nd, k)
            return g, f"redirect {s}->{d} to {nd}"
    s, d = rng.choice(verts), rng.choice(verts)
    ts, td = g.level(s), g.level(d)
    kind = "horizontal" if ts == td == 0 else "ascending"
    g.add_edge(s, d, kind)
    return g, f"add {s}->{d}"


# -- point counts and presets -----------------------------------------------------------

def count_affine_points(q: int, r_exp: int, f, ctx=None) -> int:
    """#{(x, y) in F_q^2 : y^r_exp = f(x)} by exhaustive enumeration."""
    from .algebra_core.fields import FieldCtx
    from .cm_orders import a_from
    from .algebra_core import upoly

    if q > 2 ** 16:
        raise TooLarge("brute-force point count limited to q <= 2^16")
    if r_exp < 1:
        raise InvalidInput("exponent must be positive")
    ctx = ctx or FieldCtx.of_order(q)
    fa = a_from(ctx, f)
    powers = Counter(ctx.pow(y, r_exp) for y in range(q))
    return sum(powers[upoly.evaluate(ctx, fa, x)] for x in range(q))


def count_projective_points(q: int, r_exp: int, f, ctx=None) -> int:
    """Rational points of the smooth model of y^r_exp = f(x): affine points plus those at infinity.

    Supported when deg f == r_exp (points [1 : y : 0] with y^r = lc f) or
    gcd(deg f, r_exp) == 1 (a single rational place at infinity). For
    f squarefree with p not dividing r_exp this equals the class number when
    the curve has genus 1.
    """
    from math import gcd
    from .algebra_core.fields import FieldCtx
    from .cm_orders import a_from
    from .algebra_core import upoly

    ctx = ctx or FieldCtx.of_order(q)
    fa = upoly.trim(a_from(ctx, f))
    n = len(fa) - 1
    if n < 1:
        raise InvalidInput("f must be nonconstant")
    affine = count_affine_points(q, r_exp, f, ctx)
    if n == r_exp:
        lc = fa[-1]
        return affine + sum(1 for y in range(q) if ctx.pow(y, r_exp) == lc)
    if gcd(n, r_exp) == 1:
        return affine + 1
    raise InvalidInput("points at infinity only handled for deg f == r or gcd(deg f, r) == 1")


@dataclass(frozen=True)
class Preset:
    name: str
    q: int
    r: int
    deg_l: int
    crater: CraterSpec
    note: str

    @property
    def b(self) -> int:
        return branching_factor(self.q, self.r, self.deg_l)

    @property
    def g1(self) -> int:
        return len(self.crater.images)


PRESETS = {
    "r3-cycle": Preset(
        "r3-cycle", 5, 3, 1, CraterSpec((6,), ((1,),)),
        "Y^3 = X^3 + X + 1 is genus 1 with 6 rational points over F_5 (5 affine, 1 at infinity); "
        "the degree-one prime above l = (T) generates a class group of order 6"),
    "r3-loop": Preset(
        "r3-loop", 5, 3, 1, CraterSpec((), ((),)),
        "genus 0 case: trivial class group, so the crater is a single self-loop"),
}


def preset_volcano(name: str, depth: int = 1) -> tuple[Preset, VolcanoGraph]:
    try:
        p = PRESETS[name]
    except KeyError:
        raise InvalidInput(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return p, build_volcano(crater_graph(p.crater), p.b, depth)
