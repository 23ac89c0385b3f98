"""
Assemble ``H^1(G, Pic X)`` from the exact sequence

    Pic(X)^G -> H^2(G, k^x) -> Br([X/G]) -> H^1(G, Pic X) -> H^3(G, k^x)

whose outer maps (``delta_2`` on the left, ``delta_3`` on the right)
vanish whenever ``G`` fixes a point of ``X``.  In that case ``H^2`` injects
into ``Br`` and ``H^1`` is the quotient; its order is always determined,
its structure only when group theory forces it.

Without a fixed point nothing is claimed about ``H^1``.  If the caller
knows ``H^1`` from elsewhere, the report can certify that ``delta_3`` is
nonzero by comparing orders, using the ramification of the image of
``H^2`` as a lower bound for that image.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .brauer import BrauerResult, ResidueSystem, build_system, solve
from .config import ActionConfig
from .finabelian import FinAbGroup, Subgroup, quotient
from .groupcoh import cohomology

__all__ = [
    "InconsistencyError",
    "Exact",
    "OrderOnly",
    "Undetermined",
    "Zero",
    "Nontrivial",
    "Unknown",
    "InvariantReport",
    "ResidueCharacter",
    "compute_report",
    "h2_basis",
    "pairing",
    "h2_residue_character",
    "h2_ramification_image",
    "quotient_types",
    "subgroups_isomorphic_to",
]

SUBGROUP_SEARCH_LIMIT = 10**6


class InconsistencyError(ValueError):
    """The inputs contradict the exact sequence; the configuration is wrong."""


@dataclass(frozen=True)
class Exact:
    group: FinAbGroup


@dataclass(frozen=True)
class OrderOnly:
    order: int
    candidates: tuple[FinAbGroup, ...]


@dataclass(frozen=True)
class Undetermined:
    reason: str


@dataclass(frozen=True)
class Zero:
    reason: str


@dataclass(frozen=True)
class Nontrivial:
    evidence: str


@dataclass(frozen=True)
class Unknown:
    pass


@dataclass(frozen=True)
class InvariantReport:
    brauer: FinAbGroup
    h2: FinAbGroup
    h3: FinAbGroup
    h1_pic: Exact | OrderOnly | Undetermined
    amitsur: Zero | Unknown
    delta3: Zero | Nontrivial | Unknown
    notes: tuple[str, ...] = ()
    brauer_result: BrauerResult | None = field(default=None, compare=False, repr=False)

    def to_json_dict(self) -> dict:
        h1 = self.h1_pic
        if isinstance(h1, Exact):
            h1_doc = {"exact": h1.group.to_json()}
        elif isinstance(h1, OrderOnly):
            h1_doc = {"order": h1.order, "candidates": [c.to_json() for c in h1.candidates]}
        else:
            h1_doc = {"undetermined": h1.reason}
        return {
            "brauer": self.brauer.to_json(),
            "h2": self.h2.to_json(),
            "h3": self.h3.to_json(),
            "h1_pic": h1_doc,
            "amitsur": _status_json(self.amitsur),
            "delta3": _status_json(self.delta3),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _status_json(s):
    if isinstance(s, Zero):
        return {"zero": s.reason}
    if isinstance(s, Nontrivial):
        return {"nontrivial": s.evidence}
    return "unknown"


# ---------------------------------------------------------------------------
# H^2 classes as alternating pairings

def h2_basis(moduli: tuple[int, ...]) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, of the generators ``e_ij`` of ``H^2(+ Z/m_i, Q/Z)``.

    ``e_ij`` has order ``gcd(m_i, m_j)``; pairs with coprime moduli give 0
    and are still listed, so coefficient vectors align with ``combinations``.
    """
    return list(combinations(range(len(moduli)), 2))


def pairing(moduli, beta, x, y) -> Fraction:
    """Alternating bicharacter of ``beta = {(i, j): b_ij}`` evaluated at ``(x, y)``, in ``[0, 1)``.

    ``e_ij(x, y) = (x_i y_j - x_j y_i) / gcd(m_i, m_j)``.
    """
    total = Fraction(0)
    for (i, j), b in _beta_items(moduli, beta):
        d = gcd(moduli[i], moduli[j])
        total += Fraction(b * (x[i] * y[j] - x[j] * y[i]), d)
    return total % 1


def _beta_items(moduli, beta):
    if isinstance(beta, dict):
        return list(beta.items())
    pairs = h2_basis(moduli)
    if len(beta) != len(pairs):
        raise ValueError(f"expected {len(pairs)} coefficients (one per pair i<j), got {len(beta)}")
    return [(p, b) for p, b in zip(pairs, beta) if b]


@dataclass(frozen=True)
class ResidueCharacter:
    """Residue of an ``H^2`` class on one curve, as a character of ``D/I``.

    ``character`` maps each decomposition generator (coordinates) to its
    value in ``Q/Z``; ``ramification`` maps point ids to the value at that
    point's monodromy, when monodromy data was supplied.
    """

    curve_id: str
    d: int
    character: tuple[tuple[tuple[int, ...], Fraction], ...]
    ramification: tuple[tuple[str, Fraction], ...] = ()

    def is_trivial(self) -> bool:
        return all(v == 0 for _, v in self.character)


def distinguished_inertia(c: ActionConfig, curve_id: str) -> tuple[int, ...]:
    """The inertia generator acting on the normal direction by the primitive root of unity."""
    cv = c.curve(curve_id)
    if cv.decomposition is None:
        raise ValueError(f"curve {curve_id!r} has no decomposition data")
    gamma = cv.decomposition.inertia
    if cv.normal_character is not None:
        k = pow(cv.normal_character, -1, cv.d)
        gamma = tuple((k * x) % m for x, m in zip(gamma, c.group.abelian))
    return gamma


def h2_residue_character(c: ActionConfig, beta, curve_id: str) -> ResidueCharacter:
    """Restrict ``beta`` to the decomposition group of a curve and pair with inertia.

    The result is the character ``x -> beta(gamma, x)`` of ``D/I``, where
    ``gamma`` is the distinguished inertia generator.
    """
    if not c.group.is_abelian:
        raise ValueError("residue characters are only implemented for abelian groups")
    cv = c.curve(curve_id)
    if cv.decomposition is None:
        raise ValueError(f"curve {curve_id!r} has no decomposition data")
    m = c.group.abelian
    gamma = distinguished_inertia(c, curve_id)
    char = tuple((g, pairing(m, beta, gamma, g)) for g in cv.decomposition.generators)
    ram = ()
    if cv.monodromy:
        order = {p.id: k for k, p in enumerate(c.points)}
        ram = tuple(
            (pid, pairing(m, beta, gamma, x))
            for pid, x in sorted(cv.monodromy.items(), key=lambda kv: order[kv[0]])
        )
    return ResidueCharacter(curve_id, cv.d, char, ram)


def h2_ramification_image(c: ActionConfig, s: ResidueSystem | None = None) -> Subgroup | None:
    """Ramification vectors of the image of ``H^2(G)`` in ``Br``, as a subgroup.

    Returns ``None`` unless the group is abelian and every curve carrying
    unknowns has decomposition and monodromy data at each of its points.
    Each vector is checked against the residue system; a failure means the
    configuration contradicts itself.
    """
    if not c.group.is_abelian:
        return None
    s = s or build_system(c)
    for u in s.unknowns:
        cv = c.curve(u.curve)
        if cv.decomposition is None or not cv.monodromy or u.point not in cv.monodromy:
            return None
    m = c.group.abelian
    vectors = []
    for pair in h2_basis(m):
        beta = {pair: 1}
        vec = []
        for u in s.unknowns:
            gamma = distinguished_inertia(c, u.curve)
            value = pairing(m, beta, gamma, c.curve(u.curve).monodromy[u.point])
            scaled = value * u.modulus
            if scaled.denominator != 1:
                raise InconsistencyError(f"residue of e{pair} on {u.curve!r} is not {u.modulus}-torsion")
            vec.append(int(scaled) % u.modulus)
        if not s.satisfies(vec):
            raise InconsistencyError(
                f"the image of e{pair} violates the residue constraints; check monodromy data"
            )
        vectors.append(vec)
    return Subgroup(s.moduli, vectors)


# ---------------------------------------------------------------------------
# quotient structure

def subgroups_isomorphic_to(g: FinAbGroup, h: FinAbGroup):
    """Yield each subgroup of ``g`` isomorphic to ``h`` once (brute force)."""
    moduli = g.invariant_factors
    k = h.rank
    if g.order ** k > SUBGROUP_SEARCH_LIMIT:
        raise ValueError(f"subgroup search in {g} too large")
    elems = list(product(*(range(d) for d in moduli)))
    seen = set()
    for gens in product(elems, repeat=k):
        sub = Subgroup(moduli, gens)
        if sub.group() != h:
            continue
        key = frozenset(_elements_of(sub))
        if key in seen:
            continue
        seen.add(key)
        yield sub


def _elements_of(sub: Subgroup):
    out = {tuple(0 for _ in sub.ambient)}
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for gen in sub.generators:
            y = tuple((a + b) % m for a, b, m in zip(x, gen, sub.ambient))
            if y not in out:
                out.add(y)
                frontier.append(y)
    return out


def quotient_types(g: FinAbGroup, h: FinAbGroup) -> tuple[FinAbGroup, ...]:
    """All isomorphism types of ``g/S`` over subgroups ``S`` of ``g`` with ``S = h``."""
    types = {quotient(g, s) for s in subgroups_isomorphic_to(g, h)}
    return tuple(sorted(types, key=lambda t: (t.rank, t.invariant_factors)))


def _forced_quotient(b: FinAbGroup, h2: FinAbGroup) -> FinAbGroup | None:
    """The quotient ``b/h2`` when its structure is determined by orders alone."""
    if h2.is_trivial():
        return b
    if h2.order == b.order:
        return FinAbGroup()
    primary = b.primary_decomposition()
    if all(set(v) == {p} for p, v in primary.items()):
        # squarefree exponent: every subgroup and quotient is a sum of (Z/p)'s
        orders = []
        for p, v in primary.items():
            k = h2.p_part(p).rank if h2.p_part(p).order > 1 else 0
            orders += [p] * (len(v) - k)
        return FinAbGroup.from_orders(orders)
    return None


# ---------------------------------------------------------------------------

def compute_report(c: ActionConfig, known_h1: FinAbGroup | None = None) -> InvariantReport:
    system = build_system(c)
    result = solve(system)
    br = result.group
    coh = cohomology(c.group)
    h2, h3 = coh.h2, coh.h3
    notes = [f"Br([X/G]) from {len(system.unknowns)} ramification unknowns, "
             f"{len(system.constraints)} constraints, unramified part {system.free_part}"]

    if c.is_cyclic or c.has_fixed_point:
        why = "G is cyclic" if c.is_cyclic else "G has a fixed point"
        if br.order % h2.order:
            raise InconsistencyError(
                f"{why}, so H^2 = {h2} must inject into Br = {br}, but |H^2| does not divide |Br|"
            )
        image = h2_ramification_image(c, system)
        if image is not None and br.order % image.order():
            raise InconsistencyError("ramified image of H^2 does not fit in Br")
        forced = _forced_quotient(br, h2)
        if forced is not None:
            h1 = Exact(forced)
            notes.append(f"{why}: delta_2 = delta_3 = 0, H^1 = Br / H^2 and its structure is forced")
        else:
            h1 = OrderOnly(br.order // h2.order, quotient_types(br, h2))
            notes.append(f"{why}: |H^1| = |Br| / |H^2|; the extension is not determined")
        if known_h1 is not None and known_h1.order * h2.order != br.order:
            raise InconsistencyError(
                f"supplied H^1 = {known_h1} contradicts |Br| / |H^2| = {br.order // h2.order}"
            )
        return InvariantReport(br, h2, h3, h1, Zero(why), Zero(why), tuple(notes), result)

    h1 = Undetermined("no fixed point: delta_2 and delta_3 are not controlled")
    delta3: Nontrivial | Unknown = Unknown()
    if known_h1 is not None:
        image = h2_ramification_image(c, system)
        lower = image.order() if image is not None else 1
        src = "ramification of H^2 classes" if image is not None else "no ramification data"
        bound = br.order // lower
        notes.append(f"image of H^2 in Br has order >= {lower} ({src}), so |ker delta_3| <= {bound}")
        if known_h1.order > bound:
            delta3 = Nontrivial(
                f"|H^1| = {known_h1.order} exceeds |Br| / |im H^2| <= {bound}, "
                "so delta_3 cannot vanish"
            )
    return InvariantReport(br, h2, h3, h1, Unknown(), delta3, tuple(notes), result)
