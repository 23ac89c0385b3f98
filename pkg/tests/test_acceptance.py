"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import json
import random
import time
from functools import reduce
from itertools import combinations
from math import gcd

from equicohom.brauer import brute_force, build_system, solve, BRUTE_FORCE_LIMIT
from equicohom.burnside import (
    BurnsideSymbol,
    CurveType,
    ResidualType,
    compare_inc,
    compare_nfca,
    inc_class,
    is_incompressible,
    nfca,
)
from equicohom.cli import main
from equicohom.config import load, parse
from equicohom.finabelian import FinAbGroup
from equicohom.groupcoh import abelian, bar_oracle, cohomology, named
from equicohom.report import Exact, InconsistencyError, Nontrivial, Undetermined, compute_report
from equicohom.suite import dj_grid, generate_dj, random_config

from conftest import FIXTURES, fixture

G = FinAbGroup.from_orders


def invariant_chains(n):
    """All ``d_1 | d_2 | ...`` with product ``n``: one per abelian group of order ``n``."""
    out = []

    def rec(rest, acc):
        if rest == 1:
            out.append(tuple(acc))
            return
        for d in range(2, rest + 1):
            if rest % d == 0 and (not acc or d % acc[-1] == 0):
                rec(rest // d, acc + [d])

    rec(n, [])
    return [c for c in out if all(b % a == 0 for a, b in zip(c, c[1:]))]


def test_1_cohomology_tables(criterion):
    for m in range(2, 13):
        t = cohomology(abelian(m))
        assert t.h2 == G([]) and t.h3 == G([m])
    for m in range(2, 9):
        for n in range(2, 9):
            d = gcd(m, n)
            t = cohomology(abelian(m, n))
            assert t.h2 == G([d]) and t.h3 == G([m, d, n])
    for ms in ((a, b, c) for a in range(2, 5) for b in range(2, 5) for c in range(2, 5)):
        dij = [gcd(x, y) for x, y in combinations(ms, 2)]
        d = reduce(gcd, ms)
        t = cohomology(abelian(*ms))
        assert t.h2 == G(dij) and t.h3 == G(list(ms) + dij + [d])
    d8 = cohomology(named("D8"))
    assert d8.h2 == G([2]) and d8.h3 == G([2, 2, 4])

    start, checked = time.perf_counter(), 0
    for order in range(2, 33):
        for chain in invariant_chains(order):
            for i in (2, 3):
                assert bar_oracle(abelian(*chain), i) == cohomology(abelian(*chain))[i], (chain, i)
                checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed <= 60
    criterion["detail"] = f"closed forms match; bar oracle agrees on {checked} (group, degree) pairs in {elapsed:.1f}s"


def test_2_de_jonquieres_grid(criterion):
    start, count = time.perf_counter(), 0
    for n, r, fixed in dj_grid(5, 6):
        h1 = compute_report(parse(generate_dj(n, r, fixed))).h1_pic
        rank = {4: r - 2, 2: r - 1, 0: r}[fixed]
        assert h1 == Exact(G([2] * rank)), (n, r, fixed)
        count += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 1
    criterion["detail"] = f"{count} admissible (n, r, fixed) in {elapsed * 1000:.0f} ms"


def test_3_bogomolov_prokhorov_shape(criterion):
    count = 0
    for p in (2, 3, 5):
        for genus in range(4):
            for npoints in range(3):
                pts = [f"q{k}" for k in range(npoints)]
                c = parse({
                    "group": {"abelian": [p]}, "has_fixed_point": True,
                    "curves": [{"id": "C", "d": p, "g_quotient": genus}],
                    "points": [{"id": q} for q in pts],
                    "incidences": [[q, "C", 1] for q in pts],
                })
                assert compute_report(c).h1_pic == Exact(G([p] * (2 * genus)))
                count += 1
    criterion["detail"] = f"H^1 = (Z/p)^(2g) on {count} single-curve configurations"


def _timed(f):
    start = time.perf_counter()
    out = f()
    assert time.perf_counter() - start < 1
    return out


def test_4_named_fixtures(criterion):
    rep = _timed(lambda: compute_report(fixture("case_3_6_1")))
    assert rep.brauer == G([])
    rep = _timed(lambda: compute_report(fixture("case_2_6")))
    assert rep.brauer == G([3, 3]) and rep.h1_pic == Exact(G([3, 3]))
    rep = _timed(lambda: compute_report(fixture("case_3_33_1")))
    assert rep.brauer == G([3, 3]) and rep.h1_pic == Exact(G([3]))
    rep = _timed(lambda: compute_report(fixture("case_3_333")))
    assert rep.brauer == G([3, 3, 3]) and rep.h2 == G([3, 3, 3]) and rep.h3 == G([3] * 7)
    assert isinstance(rep.h1_pic, Undetermined)
    rep = _timed(lambda: compute_report(fixture("case_3_333"), known_h1=G([3])))
    assert isinstance(rep.delta3, Nontrivial)
    rep = _timed(lambda: compute_report(fixture("case_D8")))
    assert rep.brauer == G([2, 2]) and rep.h1_pic == Exact(G([2]))
    criterion["detail"] = "case_3_6_1, case_2_6, case_3_33_1, case_3_333 (with delta_3 diagnosis) and case_D8 reproduced"


def test_5_oracle_equivalence(criterion):
    start = time.perf_counter()
    rng = random.Random(20240601)
    for _ in range(200):
        s = build_system(random_config(rng))
        assert len(s.unknowns) <= 6 and max(s.moduli, default=2) <= 6
        assert solve(s).group == brute_force(s)
    enumerated = 0
    for path in sorted(FIXTURES.glob("*.json")):
        s = build_system(load(path))
        total = 1
        for m in s.moduli:
            total *= m
        if total <= BRUTE_FORCE_LIMIT:
            assert solve(s).group == brute_force(s), path.stem
            enumerated += 1
    elapsed = time.perf_counter() - start
    assert elapsed <= 30
    criterion["detail"] = f"200 random systems and {enumerated} fixtures agree in {elapsed:.1f}s"


def test_6_burnside(criterion):
    table = [(2, True, True), (0, True, False), (0, False, True)]
    for genus, cyclic, expected in table:
        s = BurnsideSymbol(2, (1,), ResidualType(2 if cyclic else 4, cyclic), CurveType(genus), 1)
        assert is_incompressible(s) is expected

    a, b = fixture("iota"), fixture("iota_prime")
    assert compare_inc(inc_class(a), inc_class(b))
    assert a.annotations["embedding_class"] != b.annotations["embedding_class"]
    assert a.annotations["conjugate_to_pair"] is False

    dj = [load(p) for p in sorted(FIXTURES.glob("dj_*.json"))]
    assert dj
    for c in dj:
        n, r, _ = c.annotations["dj"]
        entry = nfca(c)[n]
        assert entry is not None and entry.genus == (r * n - 2) // 2

    cyclic = {p.stem: load(p) for p in sorted(FIXTURES.glob("*.json"))}
    cyclic = {k: c for k, c in cyclic.items() if c.is_cyclic}
    pairs = 0
    for x, y in combinations(sorted(cyclic), 2):
        cx, cy = cyclic[x], cyclic[y]
        if cx.group.order == cy.group.order and compare_inc(inc_class(cx), inc_class(cy)):
            assert compare_nfca(nfca(cx), nfca(cy))
            pairs += 1
    criterion["detail"] = f"truth table, iota pair, {len(dj)} dJ NFCA entries, {pairs} inc-equal cyclic pair(s)"


def test_7_consistency_guards(criterion, tmp_path, capsys):
    checked = 0
    for path in sorted(FIXTURES.glob("*.json")):
        c = load(path)
        if c.has_fixed_point:
            rep = compute_report(c)
            assert isinstance(rep.h1_pic, Exact)
            assert rep.h1_pic.group.order * rep.h2.order == rep.brauer.order
            checked += 1

    bad = {"group": {"abelian": [3, 3]}, "has_fixed_point": True,
           "curves": [{"id": "E", "d": 3, "g_quotient": 0}], "points": [], "incidences": []}
    try:
        compute_report(parse(bad))
        raised = False
    except InconsistencyError:
        raised = True
    assert raised
    p = tmp_path / "inconsistent.json"
    p.write_text(json.dumps(bad))
    assert main(["report", str(p)]) == 3
    capsys.readouterr()
    criterion["detail"] = f"exactness on {checked} fixed-point fixtures; inconsistent config exits 3"
