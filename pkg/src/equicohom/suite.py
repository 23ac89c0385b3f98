"""
Fixture checks, the de Jonquieres family generator and randomized cross-checks.

Fixtures state what they should produce in ``@expect.<name>`` metadata
annotations; :func:`paper_suite` recomputes each one.  :func:`oracle`
compares the exact solvers with their enumeration oracles on random input.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from .brauer import brute_force, build_system, solve
from .burnside import compare_inc, compare_nfca, inc_class, nfca
from .config import ActionConfig, ConfigError, load, parse, validate_standard_form
from .finabelian import FinAbGroup
from .groupcoh import abelian, bar_feasible, bar_oracle, cohomology
from .report import Exact, Nontrivial, compute_report

__all__ = [
    "CheckResult",
    "fixture_dir",
    "load_fixtures",
    "generate_dj",
    "dj_grid",
    "dj_expected",
    "check_config",
    "paper_suite",
    "random_config",
    "oracle",
]

FIXTURE_ENV = "EQUICOHOM_FIXTURES"


@dataclass(frozen=True)
class CheckResult:
    case: str
    check: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.case:<22} {self.check:<10} expected {self.expected}, got {self.actual}"


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(str(files("equicohom") / "fixtures"))


def load_fixtures(directory: Path | None = None) -> dict[str, ActionConfig]:
    """Every ``*.json`` in the fixture directory, keyed by file stem, sorted."""
    directory = Path(directory) if directory is not None else fixture_dir()
    if not directory.is_dir():
        raise ConfigError(f"fixture directory not found: {directory}")
    paths = sorted(directory.glob("*.json"))
    if not paths:
        raise ConfigError(f"no fixtures in {directory}")
    return {p.stem: load(p) for p in paths}


# ---------------------------------------------------------------------------
# de Jonquieres family

_DJ_QUOTIENT_GENUS = {4: lambda r: (r - 2) // 2, 2: lambda r: (r - 1) // 2, 0: lambda r: r // 2}


def _dj_check(n: int, r: int, fixed: int) -> None:
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive")
    if fixed not in _DJ_QUOTIENT_GENUS:
        raise ValueError("fixed must be 0, 2 or 4")
    if fixed == 2 and r % 2 == 0:
        raise ValueError(f"two fixed points need r odd, got r = {r}")
    if fixed in (0, 4) and r % 2:
        raise ValueError(f"{fixed} fixed points need r even, got r = {r}")
    if (r * n) % 2:
        raise ValueError(f"the branch locus has rn = {r * n} points, which must be even")
    if r * n < 2:
        raise ValueError("rn must be at least 2")


def dj_expected(n: int, r: int, fixed: int) -> FinAbGroup:
    _dj_check(n, r, fixed)
    return FinAbGroup.from_orders([2] * (2 * _DJ_QUOTIENT_GENUS[fixed](r)))


def generate_dj(n: int, r: int, fixed: int) -> dict:
    """Configuration document for ``C_2n = <alpha>`` with ``alpha^n`` fixing a hyperelliptic curve.

    The curve has genus ``(rn - 2)/2`` and ``alpha`` has ``fixed`` fixed points
    on it, each recorded as a point orbit met by no other curve.
    """
    _dj_check(n, r, fixed)
    gq = _DJ_QUOTIENT_GENUS[fixed](r)
    genus = (r * n - 2) // 2
    expect = [2] * (2 * gq)
    curve = {
        "id": "C",
        "d": 2,
        "g_quotient": gq,
        "g_upstairs": genus,
        "normal_character": 1,
        "decomposition": {"generators": [[1]], "inertia": [n]},
        "residual": {
            "order": n,
            "cyclic": True,
            "label": f"C{n} on the hyperelliptic curve, {fixed} fixed points",
            "curve_label": f"hyperelliptic, genus {genus}",
        },
    }
    points = [{"id": f"f{k}", "fixed_by_G": True} for k in range(1, fixed + 1)]
    return {
        "group": {"abelian": [2 * n]},
        "has_fixed_point": True,
        "curves": [curve],
        "points": points,
        "incidences": [[p["id"], "C", 1] for p in points],
        "metadata": "\n".join([
            f"de Jonquieres family: n = {n}, r = {r}, {fixed} fixed points of alpha on C.",
            f"alpha^{n} fixes C pointwise; C/G has genus {gq}.",
            f"@dj: [{n}, {r}, {fixed}]",
            f"@expect.brauer: {expect}",
            f"@expect.h1_pic: {expect}",
        ]),
    }


def dj_grid(max_n: int = 5, max_r: int = 6):
    """Every admissible ``(n, r, fixed)`` with ``n <= max_n`` and ``r <= max_r``."""
    for n in range(1, max_n + 1):
        for r in range(1, max_r + 1):
            for fixed in (0, 2, 4):
                try:
                    _dj_check(n, r, fixed)
                except ValueError:
                    continue
                yield n, r, fixed


# ---------------------------------------------------------------------------

def _h1_value(h1):
    return list(h1.group.invariant_factors) if isinstance(h1, Exact) else h1


def check_config(name: str, c: ActionConfig) -> list[CheckResult]:
    exp = c.expectations
    known = c.annotations.get("known_h1")
    known_h1 = FinAbGroup.from_orders(known) if known is not None else None
    out = []
    rep = compute_report(c, known_h1)
    actual = {
        "brauer": list(rep.brauer.invariant_factors),
        "h2": list(rep.h2.invariant_factors),
        "h3": list(rep.h3.invariant_factors),
        "h1_pic": _h1_value(rep.h1_pic),
        "delta3": "nontrivial" if isinstance(rep.delta3, Nontrivial) else type(rep.delta3).__name__.lower(),
        "warnings": [w.code for w in validate_standard_form(c)],
    }
    if "warnings" not in exp:
        exp = {**exp, "warnings": []}
    for key in sorted(exp):
        if key not in actual:
            raise ConfigError(f"{name}: unknown expectation {key!r}")
        expected = exp[key]
        if key in ("brauer", "h2", "h3", "h1_pic") and isinstance(expected, list):
            expected = list(FinAbGroup.from_orders(expected).invariant_factors)
        out.append(CheckResult(name, key, expected, actual[key]))
    if (c.has_fixed_point or c.is_cyclic) and isinstance(rep.h1_pic, Exact):
        lhs = rep.h1_pic.group.order * rep.h2.order
        out.append(CheckResult(name, "exactness", rep.brauer.order, lhs))
    return out


def paper_suite(directory: Path | None = None, max_n: int = 5, max_r: int = 6) -> list[CheckResult]:
    results = []
    fixtures = load_fixtures(directory)
    for name, c in fixtures.items():
        results += check_config(name, c)
    cyclic = {k: c for k, c in fixtures.items() if c.is_cyclic}
    incs, nfcas = {}, {}
    for k, c in cyclic.items():
        try:
            incs[k], nfcas[k] = inc_class(c), nfca(c)
        except ValueError:
            continue
    names = sorted(incs)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if nfcas[a].m == nfcas[b].m and compare_inc(incs[a], incs[b]):
                results.append(CheckResult(f"{a}~{b}", "inc=>nfca", True, compare_nfca(nfcas[a], nfcas[b])))
    for n, r, fixed in dj_grid(max_n, max_r):
        c = parse(generate_dj(n, r, fixed))
        h1 = compute_report(c).h1_pic
        results.append(CheckResult(f"dJ(n={n},r={r},f={fixed})", "h1_pic",
                                   list(dj_expected(n, r, fixed).invariant_factors), _h1_value(h1)))
    return results


# ---------------------------------------------------------------------------
# randomized cross-checks

def random_config(rng: random.Random, max_unknowns: int = 6, max_modulus: int = 6) -> ActionConfig:
    """A random configuration over ``Z/60`` with a small residue system."""
    ncurves = rng.randint(1, 3)
    npoints = rng.randint(0, 4)
    curves = [{"id": f"c{k}", "d": rng.randint(2, max_modulus), "g_quotient": rng.choice([0, 0, 1])}
              for k in range(ncurves)]
    points = [{"id": f"p{k}"} for k in range(npoints)]
    incidences, budget = [], max_unknowns
    pairs = [(p["id"], cv["id"]) for p in points for cv in curves]
    rng.shuffle(pairs)
    for pid, cid in pairs:
        if budget == 0:
            break
        if rng.random() < 0.6:
            b = rng.randint(1, min(2, budget))
            incidences.append([pid, cid, b])
            budget -= b
    return parse({"group": {"abelian": [60]}, "has_fixed_point": True, "curves": curves,
                  "points": points, "incidences": incidences})


def _random_abelian(rng: random.Random, max_order: int = 32) -> tuple[int, ...]:
    while True:
        factors = [rng.randint(2, 8) for _ in range(rng.randint(1, 3))]
        order = 1
        for m in factors:
            order *= m
        if order <= max_order:
            return tuple(factors)


def oracle(seed: int = 0, count: int = 200) -> list[CheckResult]:
    """``count`` residue-system trials and ``count // 10`` cohomology trials."""
    rng = random.Random(seed)
    out = []
    for t in range(count):
        c = random_config(rng)
        s = build_system(c)
        out.append(CheckResult(f"system[{t}]", "solve", brute_force(s), solve(s).group))
    for t in range(max(1, count // 10)):
        m = _random_abelian(rng)
        i = rng.choice([2, 3])
        g = abelian(*m)
        method = "bar" if bar_feasible(g.order, i) and g.order <= 6 else "kunneth"
        out.append(CheckResult(f"H^{i}(Z/{'+Z/'.join(map(str, m))})", method,
                               cohomology(g)[i], bar_oracle(g, i, method)))
    return out
