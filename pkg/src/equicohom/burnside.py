"""
Divisorial Burnside symbols of a surface action and the invariants built on them.

A curve orbit with inertia ``H`` (cyclic of order ``d``) contributes the
symbol ``(H, Z acting on K, beta)``: ``Z = D/H`` is the residual group acting
on the function field ``K`` of the curve and ``beta`` is the character by
which ``H`` acts on the normal direction.  A surface symbol is
*incompressible* when ``K`` has positive genus or ``Z`` is noncyclic; the
incompressible symbols of an action form :class:`IncClass`, compared as a
multiset without any relations.

For cyclic ``G = <g>`` of order ``m``, :func:`nfca` records for each
``r = 1 .. m-1`` the positive-genus curve fixed pointwise by ``g^r`` (there is
at most one), together with a label for the residual action of ``g``.

Geometric comparison of residual actions is not attempted: ``Z`` and ``K``
are carried as labels supplied by the configuration author.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from math import gcd

from .config import ActionConfig, CurveClass
from .finabelian import Subgroup

__all__ = [
    "BurnsideError",
    "ResidualType",
    "CurveType",
    "BurnsideSymbol",
    "IncClass",
    "NFCEntry",
    "NFCA",
    "is_incompressible",
    "curve_symbol",
    "inc_class",
    "nfca",
    "compare_inc",
    "compare_nfca",
]


class BurnsideError(ValueError):
    pass


@dataclass(frozen=True)
class ResidualType:
    order: int
    cyclic: bool
    label: str = ""


@dataclass(frozen=True)
class CurveType:
    genus: int
    label: str = ""


@dataclass(frozen=True)
class BurnsideSymbol:
    """``(H, Z acting on K, beta)`` with ``H`` given by its order and a canonical generator."""

    d: int
    h_generator: tuple[int, ...]
    Z: ResidualType
    K: CurveType
    beta: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("H must be nontrivial")
        if gcd(self.beta, self.d) != 1:
            raise ValueError(f"beta = {self.beta} is not a faithful character of Z/{self.d}")
        object.__setattr__(self, "beta", self.beta % self.d)

    def to_json_dict(self) -> dict:
        return {
            "H": self.d,
            "Z": {"order": self.Z.order, "cyclic": self.Z.cyclic, "label": self.Z.label},
            "K": {"genus": self.K.genus, "label": self.K.label},
            "beta": self.beta,
        }

    def __str__(self) -> str:
        z = f"Z/{self.Z.order}" if self.Z.cyclic else f"noncyclic({self.Z.order})"
        return f"(Z/{self.d}, {z} on genus {self.K.genus}, beta={self.beta})"


def is_incompressible(s: BurnsideSymbol) -> bool:
    return s.K.genus > 0 or not s.Z.cyclic


@dataclass(frozen=True)
class IncClass:
    symbols: tuple[BurnsideSymbol, ...]

    def __post_init__(self):
        bad = [s for s in self.symbols if not is_incompressible(s)]
        if bad:
            raise ValueError(f"compressible symbols in an IncClass: {bad}")
        key = lambda s: json.dumps(s.to_json_dict(), sort_keys=True) + repr(s.h_generator)
        object.__setattr__(self, "symbols", tuple(sorted(self.symbols, key=key)))

    def multiset(self) -> Counter:
        return Counter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def to_json(self) -> list[dict]:
        return [s.to_json_dict() for s in self.symbols]


def _canonical_generator(moduli, gen) -> tuple[tuple[int, ...], int]:
    """Smallest generator ``h0`` (lexicographic) of ``<gen>``, and ``k`` with ``h0 = k gen``."""
    d = Subgroup(moduli, [gen]).order()
    best = None
    for k in range(1, d):
        if gcd(k, d) != 1:
            continue
        h = tuple((k * x) % m for x, m in zip(gen, moduli))
        if best is None or h < best[0]:
            best = (h, k)
    return best


def curve_symbol(c: ActionConfig, cv: CurveClass) -> BurnsideSymbol:
    """The divisorial symbol of one curve class; every optional field must be present."""
    missing = [name for name, v in (("decomposition", cv.decomposition), ("residual", cv.residual),
                                    ("g_upstairs", cv.g_upstairs),
                                    ("normal_character", cv.normal_character)) if v is None]
    if missing:
        raise BurnsideError(f"curve {cv.id!r} is missing {', '.join(missing)}")
    h0, k = _canonical_generator(c.group.abelian, cv.decomposition.inertia)
    r = cv.residual
    return BurnsideSymbol(
        d=cv.d,
        h_generator=h0,
        Z=ResidualType(r.order, r.cyclic, r.label),
        K=CurveType(cv.g_upstairs, r.curve_label),
        beta=(k * cv.normal_character) % cv.d,
    )


def inc_class(c: ActionConfig) -> IncClass:
    """Incompressible part of the divisorial symbols of ``c``.

    A curve known to be rational with cyclic residual group is skipped
    without further data; any other curve needs its full symbol.
    """
    out = []
    for cv in c.curves:
        if cv.g_upstairs is None or cv.residual is None:
            raise BurnsideError(f"curve {cv.id!r}: g_upstairs and residual are needed to decide compressibility")
        if cv.g_upstairs == 0 and cv.residual.cyclic:
            continue
        if not c.group.is_abelian:
            raise BurnsideError("symbols with decomposition data need an abelian group")
        out.append(curve_symbol(c, cv))
    return IncClass(tuple(out))


def compare_inc(a: IncClass, b: IncClass) -> bool:
    return a.multiset() == b.multiset()


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NFCEntry:
    curve: str
    genus: int
    label: str


@dataclass(frozen=True)
class NFCA:
    """Entries ``r = 1 .. m-1``; ``entries[r - 1]`` is ``None`` when ``g^r`` fixes no curve of positive genus."""

    m: int
    generator: tuple[int, ...]
    entries: tuple[NFCEntry | None, ...]

    def __getitem__(self, r: int) -> NFCEntry | None:
        if not 1 <= r < self.m:
            raise IndexError(r)
        return self.entries[r - 1]

    def labels(self) -> tuple:
        return tuple(None if e is None else (e.genus, e.label) for e in self.entries)

    def to_json(self) -> list:
        return [None if e is None else {"genus": e.genus, "label": e.label} for e in self.entries]


def _default_generator(moduli) -> tuple[int, ...]:
    return tuple(1 for _ in moduli)


def nfca(c: ActionConfig, generator: tuple[int, ...] | None = None) -> NFCA:
    if not c.is_cyclic:
        raise BurnsideError("NFCA is defined for cyclic groups only")
    moduli = c.group.abelian
    m = c.group.order
    g = tuple(x % q for x, q in zip(generator, moduli)) if generator is not None else _default_generator(moduli)
    if len(g) != len(moduli) or Subgroup(moduli, [g]).order() != m:
        raise BurnsideError(f"{list(g)} does not generate the group")
    entries: list[NFCEntry | None] = []
    for r in range(1, m):
        # g^r lies in the unique subgroup of order d iff its order divides d
        order = m // gcd(m, r)
        hits = []
        for cv in c.curves:
            if cv.d % order:
                continue
            if cv.g_upstairs is None:
                raise BurnsideError(f"curve {cv.id!r} is fixed by g^{r} but has no g_upstairs")
            if cv.g_upstairs > 0:
                hits.append(cv)
        if len(hits) > 1:
            names = ", ".join(repr(cv.id) for cv in hits)
            raise BurnsideError(f"g^{r} fixes more than one curve of positive genus: {names}")
        if hits:
            cv = hits[0]
            label = cv.residual.label if cv.residual is not None else ""
            entries.append(NFCEntry(cv.id, cv.g_upstairs, label))
        else:
            entries.append(None)
    return NFCA(m, g, tuple(entries))


def compare_nfca(a: NFCA, b: NFCA) -> bool:
    if a.m != b.m:
        raise ValueError(f"NFCA of groups of different orders ({a.m} and {b.m})")
    return a.labels() == b.labels()
