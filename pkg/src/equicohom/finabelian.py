"""
Exact arithmetic for finitely generated and finite abelian groups.

Everything here works with Python integers, so there is no overflow to
detect: entries grow as needed.  The backbone is :func:`snf`, the Smith
normal form of an integer matrix with explicit unimodular transforms.
Kernels, images, cokernels and quotients are all reduced to it.

A homomorphism between groups of the form ``Z/m_1 + ... + Z/m_k`` is
presented by an :class:`IntMatrixHom`; a modulus of 0 marks a free
coordinate.

>>> FinAbGroup.from_orders([2, 3, 4])
FinAbGroup(invariant_factors=(2, 12))
>>> h = IntMatrixHom([[2]], source_moduli=[6], target_moduli=[6])
>>> kernel(h)[0]
FinAbGroup(invariant_factors=(2,))
>>> image(h)
FinAbGroup(invariant_factors=(3,))
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Sequence

__all__ = [
    "FinAbGroup",
    "IntMatrixHom",
    "Subgroup",
    "InfiniteGroupError",
    "MalformedHomError",
    "snf",
    "kernel",
    "image",
    "cokernel",
    "quotient",
    "direct_sum",
    "is_elementary_abelian",
    "order",
    "factorize",
    "classify_by_census",
    "element_order_census",
]


class InfiniteGroupError(ValueError):
    """Raised when a computation that must return a finite group meets a free summand."""


class MalformedHomError(ValueError):
    """Raised when a matrix does not define a homomorphism between the given groups."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Smith normal form

def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _Reducer:
    """Row/column reduction that tracks both transforms and their inverses."""

    def __init__(self, matrix: Sequence[Sequence[int]]):
        self.a = [[int(x) for x in row] for row in matrix]
        self.m = len(self.a)
        self.n = len(self.a[0]) if self.m else 0
        if any(len(row) != self.n for row in self.a):
            raise ValueError("ragged matrix")
        self.u = _identity(self.m)
        self.u_inv = _identity(self.m)
        self.v = _identity(self.n)
        self.v_inv = _identity(self.n)

    # row operations act on a and u from the left; u_inv gets the inverse on the right
    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for row in self.u_inv:
            row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, c: int) -> None:
        """row[target] += c * row[source]"""
        if c == 0:
            return
        for mat in (self.a, self.u):
            rt, rs = mat[target], mat[source]
            for k in range(len(rt)):
                if rs[k]:
                    rt[k] += c * rs[k]
        for row in self.u_inv:
            if row[target]:
                row[source] -= c * row[target]

    def negate_row(self, i: int) -> None:
        for mat in (self.a, self.u):
            mat[i] = [-x for x in mat[i]]
        for row in self.u_inv:
            row[i] = -row[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def add_col(self, target: int, source: int, c: int) -> None:
        """col[target] += c * col[source]"""
        if c == 0:
            return
        for mat in (self.a, self.v):
            for row in mat:
                if row[source]:
                    row[target] += c * row[source]
        rs, rt = self.v_inv[source], self.v_inv[target]
        for k in range(len(rs)):
            if rt[k]:
                rs[k] -= c * rt[k]

    def _pick_pivot(self, t: int) -> tuple[int, int] | None:
        # smallest |entry|; ties go to the leftmost column, then the topmost row
        best = None
        for j in range(t, self.n):
            for i in range(t, self.m):
                x = self.a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return None if best is None else (best[1], best[2])

    def run(self) -> list[int]:
        a = self.a
        diag: list[int] = []
        for t in range(min(self.m, self.n)):
            pivot = self._pick_pivot(t)
            if pivot is None:
                diag.extend([0] * (min(self.m, self.n) - t))
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            while True:
                p = a[t][t]
                for i in range(t + 1, self.m):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // p))
                for j in range(t + 1, self.n):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // p))
                # a nonzero remainder is smaller than the pivot: promote it
                best = None
                for i in range(t + 1, self.m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), "row", i)
                for j in range(t + 1, self.n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), "col", j)
                if best is not None:
                    if best[1] == "row":
                        self.swap_rows(t, best[2])
                    else:
                        self.swap_cols(t, best[2])
                    continue
                bad = next(
                    (i for i in range(t + 1, self.m)
                     if any(a[i][j] % p for j in range(t + 1, self.n))),
                    None,
                )
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)
            diag.append(a[t][t])
        return diag


def snf(matrix: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form ``left @ matrix @ right == diag``.

    Returns ``(diagonal, left, right)`` where ``diagonal`` has length
    ``min(rows, cols)``, is nonnegative and satisfies ``d_1 | d_2 | ...``
    (zeros last).  Both transforms are unimodular.  Pivoting is
    deterministic, so repeated calls return identical transforms.

    ``ncols`` is only needed for matrices with zero rows.
    """
    r = _Reducer(matrix)
    if r.m == 0 and ncols:
        r.n = ncols
        r.v = r.v_inv = _identity(ncols)
    diag = r.run()
    return diag, r.u, r.v


def _snf_full(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> _Reducer:
    r = _Reducer(matrix)
    if r.m == 0 and ncols:
        r.n = ncols
        r.v = _identity(ncols)
        r.v_inv = _identity(ncols)
    r.diag = r.run()
    return r


def _transpose(cols: Sequence[Sequence[int]], nrows: int) -> list[list[int]]:
    return [[c[i] for c in cols] for i in range(nrows)]


def _lattice_quotient(
    basis: list[list[int]], relations: list[list[int]], dim: int
) -> tuple[list[int], list[list[int]]]:
    """Structure of ``span(basis) / span(relations)``, both given as column lists.

    ``relations`` must lie in the span of ``basis`` and ``basis`` must be
    linearly independent.  Returns the invariant factors (0 for free
    summands, 1s dropped) and one generator per factor, in ambient
    coordinates.
    """
    k = len(basis)
    if k == 0:
        return [], []
    # express each relation in the basis: solve B c = rel via the SNF of B
    red = _snf_full(_transpose(basis, dim), ncols=k)
    coords: list[list[int]] = []
    for rel in relations:
        y = [sum(red.u[i][j] * rel[j] for j in range(dim)) for i in range(dim)]
        z = []
        for i in range(dim):
            d = red.diag[i] if i < len(red.diag) else 0
            if d == 0:
                if y[i]:
                    raise ValueError("relation outside the lattice")
                if i < k:
                    z.append(0)
            else:
                if y[i] % d:
                    raise ValueError("relation outside the lattice")
                z.append(y[i] // d)
        c = [sum(red.v[i][j] * z[j] for j in range(k)) for i in range(k)]
        coords.append(c)
    if coords:
        rel_red = _snf_full(_transpose(coords, k), ncols=len(coords))
        diag = rel_red.diag + [0] * (k - len(rel_red.diag))
        p_inv = rel_red.u_inv
    else:
        diag = [0] * k
        p_inv = _identity(k)
    factors, gens = [], []
    for i in range(k):
        if diag[i] == 1:
            continue
        # new generator: basis combination given by column i of P^{-1}
        vec = [sum(basis[j][t] * p_inv[j][i] for j in range(k)) for t in range(dim)]
        factors.append(diag[i])
        gens.append(vec)
    return factors, gens


def _integer_kernel(rows: list[list[int]], n: int) -> list[list[int]]:
    """A Z-basis of ``{x in Z^n : rows @ x = 0}`` as column vectors."""
    if not rows:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    red = _snf_full(rows, ncols=n)
    rank = sum(1 for d in red.diag if d)
    return [[red.v[i][j] for i in range(n)] for j in range(rank, n)]


# ---------------------------------------------------------------------------
# groups

@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group ``Z/d_1 + ... + Z/d_r`` with ``d_1 | ... | d_r``.

    The factor list is canonical: two groups are isomorphic iff their
    factor lists are equal.  The trivial group has no factors.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        for d in f:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {f}")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain, got {f}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Normal form of ``Z/m_1 + ... + Z/m_k`` for arbitrary orders ``m_i >= 1``."""
        powers: dict[int, list[int]] = {}
        for m in orders:
            m = int(m)
            if m == 0:
                raise InfiniteGroupError("Z/0 is infinite")
            if m < 0:
                raise ValueError(f"negative order {m}")
            for p, e in factorize(m).items():
                powers.setdefault(p, []).append(p ** e)
        return cls(_combine_primary(powers))

    @classmethod
    def cyclic(cls, m: int) -> "FinAbGroup":
        return cls.from_orders([m])

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(())

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def is_cyclic(self) -> bool:
        return self.rank <= 1

    def primary_decomposition(self) -> dict[int, tuple[int, ...]]:
        """Elementary divisors grouped by prime, each tuple ascending."""
        out: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p, e in factorize(d).items():
                out.setdefault(p, []).append(p ** e)
        return {p: tuple(sorted(v)) for p, v in sorted(out.items())}

    def p_part(self, p: int) -> "FinAbGroup":
        return FinAbGroup.from_orders(self.primary_decomposition().get(p, ()))

    def is_elementary_abelian(self) -> bool:
        """True for ``(Z/p)^r`` with ``r >= 1``."""
        if not self.invariant_factors:
            return False
        return list(factorize(self.exponent).values()) == [1]

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return direct_sum(self, other)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        parts = []
        for d, count in Counter(self.invariant_factors).items():
            parts.append(f"(Z/{d})^{count}" if count > 1 else f"Z/{d}")
        return " + ".join(parts)

    def to_json(self) -> list[int]:
        return list(self.invariant_factors)


def _combine_primary(powers: dict[int, list[int]]) -> tuple[int, ...]:
    columns = [sorted(v, reverse=True) for v in powers.values()]
    r = max((len(c) for c in columns), default=0)
    factors = []
    for i in range(r):
        factors.append(prod(c[i] for c in columns if i < len(c)))
    return tuple(reversed(factors))


def direct_sum(*groups: FinAbGroup) -> FinAbGroup:
    return FinAbGroup.from_orders([d for g in groups for d in g.invariant_factors])


def order(g: FinAbGroup) -> int:
    return g.order


def is_elementary_abelian(g: FinAbGroup) -> bool:
    return g.is_elementary_abelian()


# ---------------------------------------------------------------------------
# homomorphisms and subgroups

def _as_moduli(x) -> tuple[int, ...]:
    if isinstance(x, FinAbGroup):
        return x.invariant_factors
    return tuple(int(m) for m in x)


@dataclass(frozen=True)
class IntMatrixHom:
    """Homomorphism ``+_j Z/s_j -> +_i Z/t_i`` given by an integer matrix.

    Column ``j`` is the image of the ``j``-th source generator.  A modulus
    of 0 is a free coordinate.  Entries are reduced modulo the target
    moduli on construction.
    """

    matrix: tuple[tuple[int, ...], ...]
    source_moduli: tuple[int, ...]
    target_moduli: tuple[int, ...]

    def __init__(self, matrix, source_moduli, target_moduli):
        src = _as_moduli(source_moduli)
        tgt = _as_moduli(target_moduli)
        rows = [list(map(int, r)) for r in matrix]
        if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
            raise MalformedHomError(
                f"matrix shape does not match {len(tgt)} target x {len(src)} source coordinates"
            )
        if any(m < 0 for m in src + tgt):
            raise MalformedHomError("moduli must be nonnegative")
        for i, t in enumerate(tgt):
            if t:
                rows[i] = [x % t for x in rows[i]]
        for j, s in enumerate(src):
            for i, t in enumerate(tgt):
                x = rows[i][j]
                if t == 0:
                    # a torsion generator can only map to 0 in a free coordinate
                    bad = s != 0 and x != 0
                else:
                    bad = (s * x) % t != 0
                if bad:
                    raise MalformedHomError(
                        f"not well defined: column {j} (modulus {s}) row {i} (modulus {t}) entry {x}"
                    )
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "source_moduli", src)
        object.__setattr__(self, "target_moduli", tgt)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_moduli), len(self.source_moduli)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        out = []
        for row, t in zip(self.matrix, self.target_moduli):
            v = sum(a * b for a, b in zip(row, x))
            out.append(v % t if t else v)
        return tuple(out)

    def compose(self, other: "IntMatrixHom") -> "IntMatrixHom":
        """``self o other`` (apply ``other`` first)."""
        if other.target_moduli != self.source_moduli:
            raise MalformedHomError("incompatible moduli for composition")
        m, k = self.shape
        _, n = other.shape
        mat = [[sum(self.matrix[i][l] * other.matrix[l][j] for l in range(k)) for j in range(n)]
               for i in range(m)]
        return IntMatrixHom(mat, other.source_moduli, self.target_moduli)

    def __matmul__(self, other: "IntMatrixHom") -> "IntMatrixHom":
        return self.compose(other)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``+_i Z/m_i`` generated by coordinate vectors."""

    ambient: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...] = field(default=())

    def __init__(self, ambient, generators=()):
        amb = _as_moduli(ambient)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != len(amb):
                raise ValueError(f"generator {g} has wrong length for ambient {amb}")
            gens.append(tuple(x % m if m else x for x, m in zip(g, amb)))
        object.__setattr__(self, "ambient", amb)
        object.__setattr__(self, "generators", tuple(gens))

    def _lattice_columns(self) -> list[list[int]]:
        n = len(self.ambient)
        cols = [list(g) for g in self.generators]
        cols += [[m if i == j else 0 for i in range(n)] for j, m in enumerate(self.ambient) if m]
        return cols

    def contains(self, x: Sequence[int]) -> bool:
        x = [int(v) for v in x]
        n = len(self.ambient)
        if len(x) != n:
            raise ValueError("element has wrong length")
        cols = self._lattice_columns()
        if not cols:
            return all(v == 0 for v in x)
        red = _snf_full(_transpose(cols, n), ncols=len(cols))
        y = [sum(red.u[i][j] * x[j] for j in range(n)) for i in range(n)]
        for i in range(n):
            d = red.diag[i] if i < len(red.diag) else 0
            if (d == 0 and y[i]) or (d and y[i] % d):
                return False
        return True

    def group(self) -> FinAbGroup:
        """Isomorphism type of the subgroup."""
        return _finite(*self._structure()[:1])

    def order(self) -> int:
        return self.group().order

    def _structure(self):
        n = len(self.ambient)
        gens_lattice = self._lattice_columns()
        basis = _column_basis(gens_lattice, n)
        rels = [[m if i == j else 0 for i in range(n)] for j, m in enumerate(self.ambient) if m]
        return _lattice_quotient(basis, rels, n)


def _column_basis(cols: list[list[int]], n: int) -> list[list[int]]:
    """A Z-basis of the lattice spanned by ``cols``."""
    if not cols:
        return []
    red = _snf_full(_transpose(cols, n), ncols=len(cols))
    basis = []
    for i, d in enumerate(red.diag):
        if d == 0:
            break
        basis.append([red.u_inv[t][i] * d for t in range(n)])
    return basis


def _finite(factors: list[int]) -> FinAbGroup:
    if any(d == 0 for d in factors):
        raise InfiniteGroupError(f"group has a free summand: factors {factors}")
    return FinAbGroup.from_orders(factors)


def kernel(h: IntMatrixHom) -> tuple[FinAbGroup, Subgroup]:
    """Kernel of ``h`` as an isomorphism type plus generators inside the source.

    The generators correspond one-to-one to the invariant factors of the
    returned group.
    """
    m, n = h.shape
    src, tgt = h.source_moduli, h.target_moduli
    # x in Z^n with A x in tgt-lattice  <=>  [A | diag(t)] (x, y) = 0
    extra = [j for j, t in enumerate(tgt) if t]
    rows = [list(h.matrix[i]) + [tgt[i] if j == i else 0 for j in extra] for i in range(m)]
    ker = _integer_kernel(rows, n + len(extra))
    lattice = _column_basis([c[:n] for c in ker], n)
    rels = [[s if i == j else 0 for i in range(n)] for j, s in enumerate(src) if s]
    factors, gens = _lattice_quotient(lattice, rels, n)
    group = _finite(factors)
    sub = Subgroup(src, gens)
    return group, sub


def image(h: IntMatrixHom) -> FinAbGroup:
    m, n = h.shape
    tgt = h.target_moduli
    rels = [[t if i == j else 0 for i in range(m)] for j, t in enumerate(tgt) if t]
    cols = [[h.matrix[i][j] for i in range(m)] for j in range(n)] + rels
    basis = _column_basis(cols, m)
    factors, _ = _lattice_quotient(basis, rels, m)
    return _finite(factors)


def cokernel(h: IntMatrixHom) -> FinAbGroup:
    m, n = h.shape
    tgt = h.target_moduli
    cols = [[h.matrix[i][j] for i in range(m)] for j in range(n)]
    cols += [[t if i == j else 0 for i in range(m)] for j, t in enumerate(tgt) if t]
    if not cols:
        return _finite([0] * m)
    diag = snf(_transpose(cols, m), ncols=len(cols))[0]
    diag = diag + [0] * (m - len(diag))
    return _finite([d for d in diag if d != 1])


def quotient(g, s: Subgroup) -> FinAbGroup:
    """``g / s`` where ``g`` is a group with its standard basis (or a moduli list)."""
    amb = _as_moduli(g)
    if amb != s.ambient:
        raise ValueError(f"subgroup lives in {s.ambient}, not in {amb}")
    n = len(amb)
    cols = [list(x) for x in s.generators]
    cols += [[m if i == j else 0 for i in range(n)] for j, m in enumerate(amb) if m]
    if not cols:
        return _finite([0] * n)
    diag = snf(_transpose(cols, n), ncols=len(cols))[0]
    diag = diag + [0] * (n - len(diag))
    return _finite([d for d in diag if d != 1])


# ---------------------------------------------------------------------------
# enumeration oracle

def element_order_census(moduli: Sequence[int]) -> Counter:
    """Count elements of ``+ Z/m_i`` by order, by enumerating all of them."""
    census: Counter = Counter()
    for x in product(*(range(m) for m in moduli)):
        census[reduce(lcm, (m // gcd(m, a) for a, m in zip(x, moduli)), 1)] += 1
    return census


def classify_by_census(census: Counter) -> FinAbGroup:
    """Recover the isomorphism type of a finite abelian group from its order census.

    For each prime ``p`` the number of elements killed by ``p^j`` is
    ``p^(sum_i min(e_i, j))``; successive differences of the exponents give
    the conjugate partition of ``(e_i)``.
    """
    total = sum(census.values())
    powers: dict[int, list[int]] = {}
    for p, top in factorize(total).items() if total > 1 else []:
        c_prev, j, counts = 0, 0, []
        while c_prev < top:
            j += 1
            killed = sum(v for k, v in census.items() if (p ** j) % k == 0)
            c = _exact_log(killed, p)
            counts.append(c - c_prev)
            c_prev = c
        # counts[j-1] = #{i : e_i >= j}
        exps = []
        for j, cnt in enumerate(counts, start=1):
            nxt = counts[j] if j < len(counts) else 0
            exps += [j] * (cnt - nxt)
        powers[p] = [p ** e for e in exps]
    return FinAbGroup(_combine_primary(powers))


def _exact_log(x: int, p: int) -> int:
    e = 0
    while x > 1:
        if x % p:
            raise ValueError("census is not that of an abelian group")
        x //= p
        e += 1
    return e
