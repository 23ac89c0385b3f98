"""
Br([X/G]) from residues along curves with nontrivial inertia.

A class is recorded by its residues.  On a curve orbit with inertia order
``d`` the residue is a character of the function field of the quotient
curve, killed by ``d``.  Such a character splits into

* an unramified part, ``(Z/d)^(2 g')`` for a quotient curve of genus ``g'``,
  which no constraint touches, and
* one ramification value ``a`` in ``Z/d`` for every branch of the quotient
  curve over a marked point orbit.

The values must satisfy

* **curve reciprocity**: on each curve they sum to 0 mod ``d``, and
* **point sums**: at each point orbit ``sum a / d = 0`` in ``Q/Z``; this is
  scaled to ``sum (L/d) a = 0 mod L`` with ``L`` the lcm of the incident
  inertia orders, so everything stays integral.

:func:`solve` computes the solution group with the exact kernel machinery
of :mod:`equicohom.finabelian`; :func:`brute_force` enumerates it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm, prod

import numpy as np

from .config import ActionConfig
from .finabelian import (
    FinAbGroup,
    IntMatrixHom,
    classify_by_census,
    direct_sum,
    kernel,
)

__all__ = [
    "Unknown",
    "Congruence",
    "ResidueSystem",
    "Generator",
    "BrauerResult",
    "SystemTooLargeError",
    "build_system",
    "solve",
    "brute_force",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 10**6


class SystemTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class Unknown:
    curve: str
    point: str
    branch: int
    modulus: int


@dataclass(frozen=True)
class Congruence:
    """``sum coefficients[u] * x[u] = 0 (mod modulus)``.

    ``kind`` is ``"curve"`` (reciprocity) or ``"point"`` (point sum) and
    ``owner`` the id of the curve or point.
    """

    kind: str
    owner: str
    modulus: int
    coefficients: tuple[tuple[int, int], ...]  # (unknown index, coefficient)


@dataclass(frozen=True)
class ResidueSystem:
    unknowns: tuple[Unknown, ...]
    constraints: tuple[Congruence, ...]
    free_part: FinAbGroup
    free_tags: tuple[tuple[str, int], ...] = ()  # (curve id, d) per unramified generator

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(u.modulus for u in self.unknowns)

    def constraint_hom(self) -> IntMatrixHom:
        n = len(self.unknowns)
        rows = []
        for c in self.constraints:
            row = [0] * n
            for j, a in c.coefficients:
                row[j] = (row[j] + a) % c.modulus
            rows.append(row)
        return IntMatrixHom(rows, self.moduli, [c.modulus for c in self.constraints])

    def satisfies(self, values) -> bool:
        return all(
            sum(a * values[j] for j, a in c.coefficients) % c.modulus == 0
            for c in self.constraints
        )


@dataclass(frozen=True)
class Generator:
    """One generator of Br: residues per unknown, or an unramified class on a curve."""

    order: int
    residues: tuple[int, ...]
    tag: str | None = None


@dataclass(frozen=True)
class BrauerResult:
    group: FinAbGroup
    generators: tuple[Generator, ...]
    ramified: FinAbGroup  # the part seen by the ramification values


def build_system(c: ActionConfig) -> ResidueSystem:
    """Unknowns ordered by curve (config order), then point (config order), then branch."""
    unknowns: list[Unknown] = []
    by_curve: dict[str, list[int]] = {}
    for cv in c.curves:
        for inc in c.incidences_of_curve(cv.id):
            for b in range(inc.branches):
                by_curve.setdefault(cv.id, []).append(len(unknowns))
                unknowns.append(Unknown(cv.id, inc.point, b, cv.d))
    constraints: list[Congruence] = []
    for cv in c.curves:
        idx = by_curve.get(cv.id)
        if idx:
            constraints.append(Congruence("curve", cv.id, cv.d, tuple((j, 1) for j in idx)))
    for p in c.points:
        idx = [j for j, u in enumerate(unknowns) if u.point == p.id]
        if not idx:
            continue
        L = reduce(lcm, (unknowns[j].modulus for j in idx))
        coeffs = tuple((j, (L // unknowns[j].modulus) % L) for j in idx)
        constraints.append(Congruence("point", p.id, L, coeffs))
    free, tags = [], []
    for cv in c.curves:
        for _ in range(2 * cv.g_quotient):
            free.append(cv.d)
            tags.append((cv.id, cv.d))
    return ResidueSystem(tuple(unknowns), tuple(constraints), FinAbGroup.from_orders(free), tuple(tags))


def solve(s: ResidueSystem) -> BrauerResult:
    if s.unknowns:
        ker, sub = kernel(s.constraint_hom())
        gens = [Generator(_element_order(v, s.moduli), v) for v in sub.generators]
    else:
        ker, gens = FinAbGroup(), []
    k = {}
    for curve, d in s.free_tags:
        k[curve] = k.get(curve, 0) + 1
        gens.append(Generator(d, (0,) * len(s.unknowns), f"unramified:{curve}:{k[curve]}"))
    result = BrauerResult(direct_sum(ker, s.free_part), tuple(gens), ker)
    for g in result.generators:
        if not s.satisfies(g.residues):
            raise AssertionError(f"solver produced a non-solution {g}")
    return result


def _element_order(vec, moduli) -> int:
    return reduce(lcm, (m // gcd(m, x) for x, m in zip(vec, moduli)), 1)


def brute_force(s: ResidueSystem) -> FinAbGroup:
    """Enumerate every tuple of ramification values and classify the solutions."""
    moduli = s.moduli
    total = prod(moduli)
    if total > BRUTE_FORCE_LIMIT:
        raise SystemTooLargeError(f"{total} tuples exceeds the enumeration limit {BRUTE_FORCE_LIMIT}")
    if not moduli:
        return s.free_part
    grids = np.indices(moduli, dtype=np.int64).reshape(len(moduli), -1)
    ok = np.ones(grids.shape[1], dtype=bool)
    for c in s.constraints:
        acc = np.zeros(grids.shape[1], dtype=np.int64)
        for j, a in c.coefficients:
            acc += a * grids[j]
        ok &= acc % c.modulus == 0
    sols = grids[:, ok]
    m = np.array(moduli, dtype=np.int64)[:, None]
    orders = np.lcm.reduce(m // np.gcd(m, sols), axis=0)
    values, counts = np.unique(orders, return_counts=True)
    census = Counter({int(v): int(n) for v, n in zip(values, counts)})
    return direct_sum(classify_by_census(census), s.free_part)
