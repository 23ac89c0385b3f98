from fractions import Fraction
from itertools import combinations, product
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from equicohom.finabelian import (
    FinAbGroup,
    IntMatrixHom,
    MalformedHomError,
    Subgroup,
    classify_by_census,
    cokernel,
    direct_sum,
    element_order_census,
    image,
    is_elementary_abelian,
    kernel,
    order,
    quotient,
    snf,
)


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det(m):
    """Exact determinant by rational elimination; independent of the SNF code."""
    a = [[Fraction(x) for x in row] for row in m]
    n, sign, out = len(a), 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(sign * out)


def determinantal_divisors(m):
    """``D_k`` = gcd of all k x k minors; the elementary divisors are ``D_k / D_(k-1)``."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        out.append(g)
    return out


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


class TestSnf:
    def test_identity(self):
        eye = [[int(i == j) for j in range(3)] for i in range(3)]
        diag, left, right = snf(eye)
        assert diag == [1, 1, 1]
        assert left == eye and right == eye

    def test_coprime_diagonal_merges(self):
        assert snf([[2, 0], [0, 3]])[0] == [1, 6]

    def test_two_by_two(self):
        assert snf([[2, 4], [6, 8]])[0] == [2, 4]

    def test_empty(self):
        diag, left, right = snf([], ncols=2)
        assert diag == [] and right == [[1, 0], [0, 1]]

    def test_deterministic(self):
        m = [[4, 6, 2], [8, 3, 5]]
        assert snf(m) == snf(m)

    def test_big_entries_stay_exact(self):
        big = 10**40 + 7
        diag = snf([[big, 0], [0, big * 3]])[0]
        assert diag == [big, 3 * big]

    @settings(max_examples=150, deadline=None)
    @given(matrices)
    def test_transforms_and_chain(self, m):
        diag, left, right = snf(m)
        rows, cols = len(m), len(m[0])
        d = matmul(matmul(left, m), right)
        for i in range(rows):
            for j in range(cols):
                assert d[i][j] == (diag[i] if i == j else 0)
        assert abs(det(left)) == 1 and abs(det(right)) == 1
        assert all(x >= 0 for x in diag)
        nz = [x for x in diag if x]
        assert diag[: len(nz)] == nz
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))

    @settings(max_examples=100, deadline=None)
    @given(matrices)
    def test_determinantal_divisor_oracle(self, m):
        diag = snf(m)[0]
        dk = determinantal_divisors(m)
        running = 1
        for k, x in enumerate(diag):
            running *= x
            assert running == dk[k]


class TestFinAbGroup:
    def test_normal_form(self):
        assert FinAbGroup.from_orders([2, 3, 4]).invariant_factors == (2, 12)
        assert FinAbGroup.from_orders([1, 1]) == FinAbGroup()
        assert FinAbGroup.from_orders([4, 2]) == FinAbGroup((2, 4))

    def test_rejects_non_chain(self):
        with pytest.raises(ValueError):
            FinAbGroup((3, 2))

    def test_str(self):
        assert str(FinAbGroup.from_orders([2, 2, 12])) == "(Z/2)^2 + Z/12"
        assert str(FinAbGroup()) == "0"

    def test_primary_view(self):
        g = FinAbGroup.from_orders([12, 18])
        assert g.primary_decomposition() == {2: (2, 4), 3: (3, 9)}
        assert g.p_part(3) == FinAbGroup((3, 9))

    def test_direct_sum(self):
        assert direct_sum(FinAbGroup((2,)), FinAbGroup((4,))).invariant_factors == (2, 4)

    def test_elementary(self):
        assert is_elementary_abelian(FinAbGroup((3, 3)))
        assert not is_elementary_abelian(FinAbGroup((2, 4)))
        assert order(FinAbGroup((2, 4))) == 8

    @given(st.lists(st.integers(1, 30), max_size=5))
    def test_normalizing_twice_is_identity(self, orders):
        g = FinAbGroup.from_orders(orders)
        assert FinAbGroup.from_orders(g.invariant_factors) == g
        assert g.order == prod(orders)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(2, 12), min_size=1, max_size=4).filter(lambda o: prod(o) <= 200))
    def test_census_oracle(self, orders):
        g = FinAbGroup.from_orders(orders)
        assert classify_by_census(element_order_census(orders)) == g
        assert classify_by_census(element_order_census(g.invariant_factors)) == g


class TestHoms:
    def test_reduction_map(self):
        ker, sub = kernel(IntMatrixHom([[1]], [4], [2]))
        assert ker == FinAbGroup((2,))
        assert sub.generators == ((2,),)

    def test_times_two_on_z6(self):
        h = IntMatrixHom([[2]], [6], [6])
        ker, sub = kernel(h)
        assert ker == FinAbGroup((2,)) and sub.generators == ((3,),)
        assert image(h) == FinAbGroup((3,))
        assert cokernel(h) == FinAbGroup((2,))

    def test_malformed(self):
        with pytest.raises(MalformedHomError):
            IntMatrixHom([[1]], [3], [2])

    def test_apply_and_compose(self):
        f = IntMatrixHom([[1], [1]], [6], [2, 3])
        g = IntMatrixHom([[3, 2]], [2, 3], [6])
        assert (g @ f)([1]) == (5,)
        assert kernel(g @ f)[0] == FinAbGroup()

    def test_quotient(self):
        s = Subgroup((3, 3), [(1, 2)])
        assert quotient(FinAbGroup((3, 3)), s) == FinAbGroup((3,))

    def test_quotient_ambient_mismatch(self):
        with pytest.raises(ValueError):
            quotient(FinAbGroup((3,)), Subgroup((3, 3), [(1, 0)]))

    def test_subgroup_membership(self):
        s = Subgroup((4, 6), [(2, 3)])
        assert s.contains((0, 0)) and s.contains((2, 3))
        assert not s.contains((1, 0))
        assert s.order() == 2


@st.composite
def homs(draw):
    src = draw(st.lists(st.integers(2, 8), min_size=1, max_size=3))
    tgt = draw(st.lists(st.integers(2, 8), min_size=1, max_size=3))
    rows = []
    for t in tgt:
        row = []
        for s in src:
            # entries a with s*a = 0 mod t are the multiples of t/gcd(s,t)
            step = t // gcd(s, t)
            row.append(step * draw(st.integers(0, t)))
        rows.append(row)
    return IntMatrixHom(rows, src, tgt)


def _brute_kernel_order(h):
    return sum(
        1 for x in product(*(range(s) for s in h.source_moduli))
        if all(v == 0 for v in h(x))
    )


@settings(max_examples=100, deadline=None)
@given(homs())
def test_order_identities(h):
    src, tgt = prod(h.source_moduli), prod(h.target_moduli)
    k, im, co = kernel(h)[0], image(h), cokernel(h)
    assert src == k.order * im.order
    assert tgt == im.order * co.order
    assert k.order == _brute_kernel_order(h)


@settings(max_examples=60, deadline=None)
@given(homs())
def test_kernel_generators_lie_in_kernel(h):
    group, sub = kernel(h)
    for g in sub.generators:
        assert all(v == 0 for v in h(g))
    assert sub.group() == group
