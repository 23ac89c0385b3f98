import json
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from equicohom.config import parse, to_document
from equicohom.finabelian import FinAbGroup, Subgroup, quotient
from equicohom.report import (
    Exact,
    InconsistencyError,
    Nontrivial,
    OrderOnly,
    Undetermined,
    Unknown,
    Zero,
    _forced_quotient,
    compute_report,
    h2_residue_character,
    pairing,
    quotient_types,
)
from equicohom.suite import random_config

from conftest import fixture

G = FinAbGroup.from_orders


def test_case_2_6():
    rep = compute_report(fixture("case_2_6"))
    assert rep.h1_pic == Exact(G([3, 3]))
    assert isinstance(rep.amitsur, Zero) and isinstance(rep.delta3, Zero)


def test_case_3_33_1():
    rep = compute_report(fixture("case_3_33_1"))
    assert rep.brauer == G([3, 3]) and rep.h2 == G([3])
    assert rep.h1_pic == Exact(G([3]))


def test_case_d8():
    rep = compute_report(fixture("case_D8"))
    assert rep.brauer == G([2, 2]) and rep.h2 == G([2])
    assert rep.h1_pic == Exact(G([2]))


def test_case_3_333_without_known_h1():
    rep = compute_report(fixture("case_3_333"))
    assert isinstance(rep.h1_pic, Undetermined)
    assert rep.brauer == G([3, 3, 3]) and rep.h3 == G([3] * 7)
    assert isinstance(rep.amitsur, Unknown) and isinstance(rep.delta3, Unknown)


def test_case_3_333_with_known_h1():
    rep = compute_report(fixture("case_3_333"), known_h1=G([3]))
    assert isinstance(rep.delta3, Nontrivial)
    assert "exceeds" in rep.delta3.evidence


def test_known_h1_that_fits_is_inconclusive():
    # without monodromy the image of H^2 could be trivial, so |H^1| = 3 proves nothing
    d = json.loads(json.dumps(_doc_3_333_without_monodromy()))
    rep = compute_report(parse(d), known_h1=G([3]))
    assert isinstance(rep.delta3, Unknown)


def _doc_3_333_without_monodromy():
    d = to_document(fixture("case_3_333"))
    for cv in d["curves"]:
        cv.pop("monodromy")
    return d


def _inconsistent():
    return parse({
        "group": {"abelian": [2, 2]},
        "has_fixed_point": True,
        "curves": [{"id": "A", "d": 2, "g_quotient": 0}],
        "points": [], "incidences": [],
    })


def test_inconsistency():
    with pytest.raises(InconsistencyError, match="inject"):
        compute_report(_inconsistent())


def test_known_h1_contradiction_with_fixed_point():
    with pytest.raises(InconsistencyError):
        compute_report(fixture("case_3_33_1"), known_h1=G([3, 3]))


def test_bad_monodromy_is_reported():
    d = to_document(fixture("case_3_33_1"))
    d["curves"][0]["monodromy"]["p1"] = [0, 2]
    with pytest.raises(InconsistencyError, match="monodromy"):
        compute_report(parse(d))


def test_order_only_lists_candidates():
    c = parse({
        "group": {"abelian": [2, 4]},
        "has_fixed_point": True,
        "curves": [{"id": "A", "d": 2, "g_quotient": 1}, {"id": "B", "d": 4, "g_quotient": 1}],
        "points": [], "incidences": [],
    })
    rep = compute_report(c)
    assert rep.brauer == G([2, 2, 4, 4]) and rep.h2 == G([2])
    assert isinstance(rep.h1_pic, OrderOnly)
    assert rep.h1_pic.order == 32
    assert set(rep.h1_pic.candidates) == {G([2, 4, 4]), G([2, 2, 2, 4])}


def test_json_shape():
    doc = json.loads(compute_report(fixture("case_3_33_1")).to_json())
    assert list(doc) == ["brauer", "h2", "h3", "h1_pic", "amitsur", "delta3", "notes"]
    assert doc["h1_pic"] == {"exact": [3]}
    doc = compute_report(fixture("case_3_333")).to_json_dict()
    assert "undetermined" in doc["h1_pic"]


# ---------------------------------------------------------------------------
# residue characters

def _pairing_doc(d):
    return parse({
        "group": {"abelian": [d, d]},
        "has_fixed_point": True,
        "curves": [{"id": "C", "d": d, "g_quotient": 0,
                    "decomposition": {"generators": [[1, 0], [0, 1]], "inertia": [1, 0]}}],
    })


@pytest.mark.parametrize("d", [2, 3, 5])
def test_projection_character(d):
    rc = h2_residue_character(_pairing_doc(d), [1], "C")
    assert dict(rc.character) == {(1, 0): 0, (0, 1): Fraction(1, d)}


def test_zero_class():
    assert h2_residue_character(_pairing_doc(3), [0], "C").is_trivial()


def test_3_33_1_e1():
    rc = h2_residue_character(fixture("case_3_33_1"), [1], "E1")
    assert dict(rc.character)[(0, 1)] == Fraction(1, 3)
    assert [v for _, v in rc.ramification] == [Fraction(1, 3)] * 3


def test_pairing_matches_cocycle_commutator():
    # c(x, y) = x_1 y_2 / 3 is the standard cocycle of e_12 on (Z/3)^2; its
    # commutator c(x, y) - c(y, x) is the alternating pairing
    m = (3, 3)
    els = list(product(range(3), repeat=2))
    add = lambda x, y: tuple((a + b) % 3 for a, b in zip(x, y))
    c = lambda x, y: Fraction(x[0] * y[1], 3)
    for x, y, z in product(els, repeat=3):
        assert (c(y, z) - c(add(x, y), z) + c(x, add(y, z)) - c(x, y)) % 1 == 0
    for x, y in product(els, repeat=2):
        assert pairing(m, [1], x, y) == (c(x, y) - c(y, x)) % 1


def test_missing_decomposition():
    with pytest.raises(ValueError, match="decomposition"):
        h2_residue_character(_inconsistent(), [1], "A")


def test_nonabelian_unsupported():
    with pytest.raises(ValueError, match="abelian"):
        h2_residue_character(fixture("case_D8"), {}, "E")


coeffs = st.lists(st.integers(0, 5), min_size=3, max_size=3)


@given(coeffs, coeffs)
def test_residue_character_is_additive(a, b):
    c = fixture("case_3_333")
    for cid in ("E1", "E4"):
        ra = dict(h2_residue_character(c, a, cid).character)
        rb = dict(h2_residue_character(c, b, cid).character)
        rab = dict(h2_residue_character(c, [x + y for x, y in zip(a, b)], cid).character)
        assert all(rab[k] == (ra[k] + rb[k]) % 1 for k in rab)


@given(st.integers(0, 5))
def test_vanishes_when_restriction_is_trivial(k):
    # D = <g1> only: every pairing restricted to a cyclic group is zero
    c = parse({
        "group": {"abelian": [3, 3, 3]},
        "has_fixed_point": True,
        "curves": [{"id": "C", "d": 3, "g_quotient": 0,
                    "decomposition": {"generators": [[1, 0, 0]], "inertia": [1, 0, 0]}}],
    })
    assert h2_residue_character(c, [k, 2 * k, 0], "C").is_trivial()


# ---------------------------------------------------------------------------
# exactness and structure forcing

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_cyclic_reports_are_exact(seed):
    c = random_config(random.Random(seed))
    rep = compute_report(c)
    assert rep.h1_pic == Exact(rep.brauer)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (3, 3), (2, 6), (6, 6)]))
def test_exactness_arithmetic(seed, moduli):
    d = to_document(random_config(random.Random(seed)))
    d["group"] = {"abelian": list(moduli)}
    order = moduli[0] * moduli[1]
    divisors = [x for x in (2, 3, 6) if order % x == 0]
    for cv in d["curves"]:
        cv["d"] = divisors[cv["d"] % len(divisors)]
    c = parse(d)
    try:
        rep = compute_report(c)
    except InconsistencyError:
        return
    h1 = rep.h1_pic
    if isinstance(h1, Exact):
        assert h1.group.order * rep.h2.order == rep.brauer.order
    else:
        assert h1.order == rep.brauer.order // rep.h2.order
        for cand in h1.candidates:
            assert cand.order == h1.order


@pytest.mark.parametrize("p, r, k", [(2, 3, 1), (2, 4, 2), (3, 3, 1), (3, 2, 2), (5, 2, 1), (2, 2, 0)])
def test_forcing_rule_against_all_subgroups(p, r, k):
    br, h2 = G([p] * r), G([p] * k)
    forced = _forced_quotient(br, h2)
    assert forced == G([p] * (r - k))
    elems = list(product(range(p), repeat=r))
    seen = set()
    for gens in product(elems, repeat=k):
        s = Subgroup((p,) * r, gens)
        if s.order() == p ** k:
            seen.add(quotient(br, s))
    assert seen == {forced}
    assert quotient_types(br, h2) == (forced,)


def test_forcing_rule_mixed_primes():
    assert _forced_quotient(G([6, 6]), G([2])) == G([2, 3, 3])
    assert _forced_quotient(G([2, 4]), G([2])) is None
