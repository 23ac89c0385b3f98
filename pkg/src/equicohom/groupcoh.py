"""
Cohomology of finite groups with coefficients in ``k^x`` (trivial action).

For ``i > 0`` the groups ``H^i(G, k^x)`` only see the roots of unity, so we
compute with ``Q/Z`` coefficients throughout and never touch a field.

:func:`cohomology` is the closed form used by the rest of the package.
:func:`bar_oracle` recomputes the same groups from cochains, using
``H^i(G, Q/Z) = H^(i+1)(G, Z)`` for ``i >= 1``: the integral group is the
torsion of the cokernel of a coboundary map, read off from elementary
divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from math import gcd, prod

import numpy as np

from .finabelian import FinAbGroup, factorize, snf

__all__ = [
    "FiniteGroupSpec",
    "CohomologyTable",
    "UnknownGroupError",
    "GroupTooLargeError",
    "cohomology",
    "bar_oracle",
    "sylow_check",
    "bar_feasible",
    "abelian",
    "named",
    "NAMED_GROUPS",
]

MAX_ORACLE_ORDER = 32
# (rows * cols * rank bound) of the dense bar coboundary we are willing to eliminate
BAR_WORK_LIMIT = 4 * 10**8


class UnknownGroupError(ValueError):
    pass


class GroupTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroupSpec:
    """Either an abelian group ``+ Z/m_i`` (any factor list) or a named group."""

    abelian: tuple[int, ...] | None = None
    name: str | None = None

    def __post_init__(self):
        if (self.abelian is None) == (self.name is None):
            raise ValueError("give exactly one of an abelian factor list or a group name")
        if self.abelian is not None:
            f = tuple(int(m) for m in self.abelian)
            if not f or any(m < 2 for m in f):
                raise ValueError(f"abelian factors must be a nonempty list of integers >= 2, got {list(f)}")
            object.__setattr__(self, "abelian", f)
        elif self.name not in NAMED_GROUPS:
            raise UnknownGroupError(f"unknown named group {self.name!r}; known: {sorted(NAMED_GROUPS)}")

    @property
    def order(self) -> int:
        if self.abelian is not None:
            return prod(self.abelian)
        return NAMED_GROUPS[self.name].order

    @property
    def is_abelian(self) -> bool:
        return self.abelian is not None

    @property
    def is_cyclic(self) -> bool:
        return self.abelian is not None and FinAbGroup.from_orders(self.abelian).is_cyclic()

    def structure(self) -> FinAbGroup:
        if self.abelian is None:
            raise ValueError(f"{self.name} is not abelian")
        return FinAbGroup.from_orders(self.abelian)

    def elements(self) -> list:
        if self.abelian is not None:
            return list(product(*(range(m) for m in self.abelian)))
        return list(range(NAMED_GROUPS[self.name].order))

    def multiply(self, x, y):
        if self.abelian is not None:
            return tuple((a + b) % m for a, b, m in zip(x, y, self.abelian))
        return NAMED_GROUPS[self.name].table[x][y]

    def identity(self):
        if self.abelian is not None:
            return (0,) * len(self.abelian)
        return 0

    def __str__(self) -> str:
        if self.abelian is not None:
            return " + ".join(f"Z/{m}" for m in self.abelian)
        return self.name


def abelian(*factors: int) -> FiniteGroupSpec:
    return FiniteGroupSpec(abelian=tuple(factors))


def named(name: str) -> FiniteGroupSpec:
    return FiniteGroupSpec(name=name)


@dataclass(frozen=True)
class CohomologyTable:
    h1: FinAbGroup
    h2: FinAbGroup
    h3: FinAbGroup

    def __getitem__(self, i: int) -> FinAbGroup:
        return {1: self.h1, 2: self.h2, 3: self.h3}[i]


@dataclass(frozen=True)
class _NamedGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    cohomology: CohomologyTable


def _dihedral8() -> _NamedGroup:
    # element r^a s^b is encoded as a + 4b; s r s = r^-1
    def mul(x, y):
        a1, b1 = x % 4, x // 4
        a2, b2 = y % 4, y // 4
        a = (a1 + (-a2 if b1 else a2)) % 4
        return a + 4 * ((b1 + b2) % 2)

    table = tuple(tuple(mul(x, y) for y in range(8)) for x in range(8))
    coh = CohomologyTable(
        h1=FinAbGroup((2, 2)),
        h2=FinAbGroup((2,)),
        h3=FinAbGroup.from_orders([2, 2, 4]),
    )
    return _NamedGroup(8, table, coh)


NAMED_GROUPS = {"D8": _dihedral8()}


def cohomology(g: FiniteGroupSpec) -> CohomologyTable:
    """``H^i(G, k^x)`` for ``i = 1, 2, 3``.

    For ``G = + Z/m_i`` (any factor list, not necessarily normalized)::

        H^1 = + Z/m_i
        H^2 = + Z/gcd(m_i, m_j)                     over i < j
        H^3 = H^1 + H^2 + (+ Z/gcd(m_i, m_j, m_k))  over i < j < k

    >>> cohomology(abelian(3, 3, 3)).h3
    FinAbGroup(invariant_factors=(3, 3, 3, 3, 3, 3, 3))
    """
    if g.name is not None:
        return NAMED_GROUPS[g.name].cohomology
    m = g.abelian
    pairs = [gcd(a, b) for a, b in combinations(m, 2)]
    triples = [reduce(gcd, t) for t in combinations(m, 3)]
    return CohomologyTable(
        h1=FinAbGroup.from_orders(m),
        h2=FinAbGroup.from_orders(pairs),
        h3=FinAbGroup.from_orders(list(m) + pairs + triples),
    )


# ---------------------------------------------------------------------------
# oracle

def bar_oracle(g: FiniteGroupSpec, i: int, method: str = "auto") -> FinAbGroup:
    """Recompute ``H^i(G, Q/Z)`` from an explicit cochain complex.

    ``method="bar"`` uses the normalized inhomogeneous bar complex and works
    for any group in the registry; it is only feasible when the coboundary
    ``C^i -> C^(i+1)`` is small.  ``method="kunneth"`` (abelian groups only)
    uses the tensor product of the 2-periodic resolutions of the cyclic
    factors, whose cochains in degree ``n`` are indexed by compositions of
    ``n``.  ``"auto"`` picks the bar complex whenever it fits the work limit.
    """
    if i < 1:
        raise ValueError("only positive degrees are supported")
    n = g.order
    if n > MAX_ORACLE_ORDER:
        raise GroupTooLargeError(f"|G| = {n} exceeds the oracle limit {MAX_ORACLE_ORDER}")
    if n == 1:
        return FinAbGroup()
    if method == "auto":
        method = "bar" if (not g.is_abelian or bar_feasible(n, i)) else "kunneth"
    if method == "bar":
        return _bar_h_integral(g, i + 1)
    if method == "kunneth":
        if not g.is_abelian:
            raise ValueError("the Kunneth complex needs an abelian group")
        return _kunneth_h_integral(g.abelian, i + 1)
    raise ValueError(f"unknown method {method!r}")


def bar_feasible(order: int, i: int) -> bool:
    cols = (order - 1) ** i
    rows = (order - 1) ** (i + 1)
    return rows * cols * cols <= BAR_WORK_LIMIT


def _bar_h_integral(g: FiniteGroupSpec, k: int) -> FinAbGroup:
    """``H^k(G, Z)`` as the torsion of ``coker(C^(k-1) -> C^k)``, normalized cochains."""
    elems = [x for x in g.elements() if x != g.identity()]
    index = {x: t for t, x in enumerate(elems)}
    e = len(elems)
    src = list(product(range(e), repeat=k - 1))
    src_index = {s: t for t, s in enumerate(src)}
    mat = np.zeros((e ** k, len(src)), dtype=np.int64)
    for row, tup in enumerate(product(range(e), repeat=k)):
        gs = [elems[t] for t in tup]
        # (df)(g_1..g_k) = f(g_2..g_k) + sum_j (-1)^j f(.., g_j g_{j+1}, ..) + (-1)^k f(g_1..g_{k-1})
        mat[row, src_index[tup[1:]]] += 1
        for j in range(k - 1):
            prod_ = g.multiply(gs[j], gs[j + 1])
            if prod_ == g.identity():
                continue
            face = tup[:j] + (index[prod_],) + tup[j + 2:]
            mat[row, src_index[face]] += (-1) ** (j + 1)
        mat[row, src_index[tup[:-1]]] += (-1) ** k
    powers: dict[int, list[int]] = {}
    for p, v in factorize(g.order).items():
        powers[p] = _local_torsion(mat, p, v + 1)
    return FinAbGroup.from_orders([q for qs in powers.values() for q in qs])


def _local_torsion(mat: np.ndarray, p: int, e: int) -> list[int]:
    """p-parts of the torsion elementary divisors of ``mat``, valid below ``p^e``.

    Elimination over ``Z/p^e``: any entry of minimal valuation is a pivot.
    Divisors divisible by ``p^e`` are indistinguishable from 0 and are
    dropped; callers choose ``e`` above the known exponent bound.
    """
    q = p ** e
    dtype = np.int32 if q * q < 2**31 else np.int64
    a = np.mod(mat, q).astype(dtype)
    out = []
    while a.size:
        piv = None
        scaled = a
        for v in range(e):
            hits = np.flatnonzero(scaled % p)
            if len(hits):
                piv = (v, *divmod(int(hits[0]), a.shape[1]))
                break
            scaled = scaled // p
        if piv is None:
            break
        v, r, c = piv
        pv = p ** v
        inv = pow(int(a[r, c] // pv), -1, q)
        if v:
            out.append(pv)
        # move the pivot to (0, 0), clear its column, then drop its row and column
        a[[0, r]] = a[[r, 0]]
        a[:, [0, c]] = a[:, [c, 0]]
        col = (a[1:, 0] // pv) * inv % q
        rest = a[1:, 1:]
        rest -= np.outer(col, a[0, 1:]).astype(dtype)
        np.mod(rest, q, out=rest)
        a = rest
    return out


def _compositions(n: int, s: int):
    if s == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, s - 1):
            yield (first,) + rest


def _kunneth_h_integral(moduli: tuple[int, ...], k: int) -> FinAbGroup:
    """``H^k(+ Z/m_i, Z)`` from the tensor product of periodic resolutions.

    Dualizing the resolution of ``Z/m`` gives ``Z -0-> Z -m-> Z -0-> Z -m-> ...``;
    the cochain complex of the product group is the tensor product of these,
    with the Koszul sign.
    """
    s = len(moduli)
    src = list(_compositions(k - 1, s))
    tgt = list(_compositions(k, s))
    tindex = {t: r for r, t in enumerate(tgt)}
    mat = [[0] * len(src) for _ in tgt]
    for c, a in enumerate(src):
        sign_deg = 0
        for j in range(s):
            if a[j] % 2 == 1:
                b = a[:j] + (a[j] + 1,) + a[j + 1:]
                mat[tindex[b]][c] += (-1) ** sign_deg * moduli[j]
            sign_deg += a[j]
    diag = snf(mat, ncols=len(src))[0]
    return FinAbGroup.from_orders([d for d in diag if d > 1])


def sylow_check(g: FiniteGroupSpec, i: int) -> bool:
    """Check that each l-primary part of ``H^i(G)`` is ``H^i`` of the l-Sylow subgroup."""
    if not g.is_abelian:
        raise ValueError("sylow_check needs an abelian group")
    whole = cohomology(g)[i]
    for p in factorize(g.order):
        sylow = [p ** factorize(m).get(p, 0) for m in g.abelian]
        sylow = [q for q in sylow if q > 1]
        if cohomology(abelian(*sylow))[i] != whole.p_part(p):
            return False
    return True
