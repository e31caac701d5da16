"""Rank-rd reduction psi_theta = phi_a, lift systems, and counting bounds for level T^2+T+1."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .algebra_core.fields import prime_power
from .errors import (AlgebraError, HypothesisViolation, HypothesisWarning,
                     InvalidInput, NotAnIsogeny)
from .skew_drinfeld import (DrinfeldModule, FormalRing, Relation, SkewPoly,
                            _a_coeffs, _parse_a, drinfeld_image, skew_mul)


@dataclass
class ReductionCert:
    source_rank: int
    a: object
    d: int
    target_rank: int
    psi: SkewPoly
    commutes: bool | None = None

    @property
    def coefficients(self):
        return self.psi.coeffs


def _a_degree_and_monic(phi: DrinfeldModule, a) -> int:
    cs = _a_coeffs(a, phi.parent)
    while cs and cs[-1].is_zero():
        cs.pop()
    if not cs:
        raise InvalidInput("a must be nonzero")
    if cs[-1] != phi.parent.one:
        raise InvalidInput("a must be monic")
    d = len(cs) - 1
    if d < 1:
        raise InvalidInput("a must have positive degree")
    return d


def rank_reduction(phi: DrinfeldModule, a, u: SkewPoly | None = None) -> ReductionCert:
    """psi_theta := phi_a, a Drinfeld F_q[theta]-module of rank r*deg(a).

    When ``u`` is given it must commute with phi_T; it is then checked to
    commute with psi_theta as well.
    """
    d = _a_degree_and_monic(phi, a)
    psi = drinfeld_image(phi, a)
    if psi.degree != phi.rank * d:
        raise AlgebraError(f"phi_a has tau-degree {psi.degree}, expected {phi.rank * d}")
    cert = ReductionCert(phi.rank, a, d, phi.rank * d, psi)
    if u is not None:
        if skew_mul(u, phi.phi_T) != skew_mul(phi.phi_T, u):
            raise NotAnIsogeny("u does not commute with phi_T")
        cert.commutes = skew_mul(u, psi) == skew_mul(psi, u)
        if not cert.commutes:
            raise AlgebraError("u commutes with phi_T but not with phi_a")
    return cert


# -- bounds ----------------------------------------------------------------

def _check_hypothesis(q: int, allow: bool) -> None:
    p, _ = prime_power(q)
    if p <= 3:
        msg = f"the level-(T^2+T+1) bounds assume p > 3, got p = {p}"
        if not allow:
            raise HypothesisViolation(msg)
        warnings.warn(msg, HypothesisWarning, stacklevel=3)


def bound_pairs(q: int, allow_small_p: bool = False) -> int:
    """Upper bound 30 q^9 - 5 q^8 on the number of pairs (a0, a1) for a fixed g6."""
    _check_hypothesis(q, allow_small_p)
    return (6 * q ** 4 - q ** 3) * 5 * q ** 5


def bound_Nq(q: int, allow_small_p: bool = False) -> int:
    """The closed-form degree bound N_q for Phi_{J, T^2+T+1}(X, X)."""
    _check_hypothesis(q, allow_small_p)
    bracket = (30 * q ** 15 - 4 * q ** 14 + q ** 12 + 2 * q ** 11
               - q ** 10 - 2 * q ** 9 - q ** 8)
    return (q ** 3 + 1) * (q ** 2 - 1) * bracket


def bound_Nq_cases(q: int, allow_small_p: bool = False) -> dict[str, int]:
    """The three case counts whose sum the closed form is meant to equal."""
    _check_hypothesis(q, allow_small_p)
    generic = 5 * q ** 14 * (6 * q - 1) * (q ** 2 - 1) * (q ** 3 + 1)
    cubic = q ** 9 * (q ** 3 + 1) * (q ** 2 - 1) ** 2 * (q ** 2 + q + 1)
    quartic = q ** 8 * (q ** 3 + 1) * (q ** 2 - 1) ** 2 * (q ** 4 + q ** 2 + q + 1)
    return {"generic": generic, "a0_in_Fq3": cubic, "a0_in_Fq4": quartic,
            "total": generic + cubic + quartic}


def lift_choice_bound(q: int) -> int:
    """At most (q^3+1) q^6 triples (h1, h2, Delta) per rank-6 module psi."""
    return (q ** 3 + 1) * q ** 6


def a0_field_guards(q: int | None = None) -> list[dict]:
    """Cases for the constant a0 of a rank-6 self theta-isogeny a0 x + a1 x^q + x^(q^2)."""
    def val(f):
        return f(q) if q is not None else None
    return [
        {"case": "a0 in F_q^*", "possible": False},
        {"case": "a0 in F_{q^2}^* minus F_q^*", "possible": False},
        {"case": "a0 in F_{q^3}^* minus F_q^*", "possible": True,
         "a1_degree": "q^2+q+1", "a1_degree_value": val(lambda t: t * t + t + 1)},
        {"case": "a0 in F_{q^4}^* minus F_{q^2}^*", "possible": True,
         "a1_degree": "q^4+q^2+q+1", "a1_degree_value": val(lambda t: t ** 4 + t * t + t + 1)},
    ]


# -- lift system --------------------------------------------------------------

@dataclass
class LiftSystem:
    relations: list[Relation]
    unknowns: tuple[str, ...]
    shapes: list[tuple[str, str]]
    constraints: list[str]
    choice_bound: int | str
    ring: object = field(repr=False, default=None)


def lift_constraints(psi_coeffs=None, a="T^2+T+1", q: int | None = None,
                     rank: int = 3) -> LiftSystem:
    """Equations phi_a = psi_theta for phi_T = T x + h1 x^q + h2 x^(q^2) + Delta x^(q^3).

    ``psi_coeffs`` names the rank-r*deg(a) coefficients (default g1..g6).
    The system is formal in q; ``q`` only fills in the numeric choice bound.
    """
    a_list = _parse_a(a, "T")
    n = rank * (len(a_list) - 1)
    if psi_coeffs is None:
        psi_coeffs = [f"g{i}" for i in range(1, n + 1)]
    psi_coeffs = [str(c) for c in psi_coeffs]
    if len(psi_coeffs) != n:
        raise InvalidInput(f"expected {n} psi coefficients, got {len(psi_coeffs)}")
    hs = [f"h{i}" for i in range(1, rank)]
    names = ["T", *hs, "Delta", *psi_coeffs]
    ring = FormalRing(tuple(dict.fromkeys(names)))
    phi = DrinfeldModule([ring.gen(h) for h in hs] + [ring.gen("Delta")], parent=ring)
    phi_a = drinfeld_image(phi, a_list)
    rels = [Relation(j, (phi_a.coeff(j), ring.gen(psi_coeffs[j - 1]))) for j in range(1, n + 1)]
    shapes, constraints = [], []
    if rank == 3 and n == 6:
        shapes = [
            ("Delta", "X^(q^3+1) - g6"),
            ("h2", "Delta*X^(q^3) + Delta^(q^2)*X - g5"),
            ("h1", "Delta*X^(q^3) + Delta^q*X + h2^(q^2+1) - g4"),
        ]
        constraints = ["g6 in F_{q^2}^*"]
    bound = lift_choice_bound(q) if q is not None else "(q^3+1)*q^6"
    return LiftSystem(rels, (*hs, "Delta"), shapes, constraints, bound, ring)
