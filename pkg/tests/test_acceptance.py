"""Acceptance checks: exact integer comparisons only.

Criteria 1-10 run by default. 11-14 are long-running and only run with
TURAN3_EXTENDED=1. A summary line per criterion is printed at the end of
the pytest run.
"""

from math import comb

import pytest

import oracles
from turan3.iso import are_isomorphic
from turan3.patterns import clique_union, comet, complete, contains, h0, star
from turan3.ramsey import Verdict, check_coloring, r6_partition_check, search_coloring, verify_deduction
from turan3.search import ConstraintSet, SearchConfig, Status, max_edges
from turan3.turan import conditional_turan, turan, turan_order

ENUM = SearchConfig(enumerate_all=True)
crit = pytest.mark.criterion


def _only_witness(cv):
    assert len(cv.witnesses) == 1
    return cv.witnesses[0]


@crit(1, "ex(n;P)=20,20,21 (n=6,7,8, unique); ex(n;C)=10,15; ex(n;M)=10,15 (n=6,7)")
@pytest.mark.parametrize("n,value,extremal", [(6, 20, complete(6)), (7, 20, clique_union([6, 1])), (8, 21, star(8))])
def test_c1_path(n, value, extremal):
    cv = turan(n, ["P"])
    assert cv.status == Status.EXACT and cv.value == value
    assert are_isomorphic(_only_witness(cv), extremal)


@crit(1, "ex(n;P)=20,20,21 (n=6,7,8, unique); ex(n;C)=10,15; ex(n;M)=10,15 (n=6,7)")
@pytest.mark.parametrize("F,n,value", [("C", 6, 10), ("C", 7, 15), ("M", 6, 10), ("M", 7, 15)])
def test_c1_triangle_and_matching(F, n, value):
    cv = turan(n, [F])
    assert cv.status == Status.EXACT and cv.value == value


@crit(2, "ex2(7;M)=13 via intersecting + no_common_vertex")
def test_c2():
    out = max_edges(7, ConstraintSet(("M",), flags=frozenset({"intersecting", "no_common_vertex"})), ENUM)
    assert out.status == Status.EXACT and out.value == 13 == 3 * 7 - 8


@crit(3, "ex2(7;P)=15 with unique witness S7")
def test_c3():
    cv = turan_order(7, ["P"], 2)
    assert cv.status == Status.EXACT and cv.value == 15
    assert are_isomorphic(_only_witness(cv), star(7))


@crit(4, "ex({P,C}|M)=8,10,12,14 (n=6..9); ex({P,C,P2uK3}|M)=2n-4 (n=6..8)")
@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_c4_pcm(n):
    cv = conditional_turan(n, ["P", "C"], "M")
    assert cv.status == Status.EXACT and cv.value == [8, 10, 12, 14][n - 6]


@crit(4, "ex({P,C}|M)=8,10,12,14 (n=6..9); ex({P,C,P2uK3}|M)=2n-4 (n=6..8)")
@pytest.mark.parametrize("n", [6, 7, 8])
def test_c4_pcppm(n):
    cv = conditional_turan(n, ["P", "C", "P2uK3"], "M")
    assert cv.status == Status.EXACT and cv.value == 2 * n - 4


@crit(5, "connected P-free 7-vertex graph containing C has at most 13 edges")
def test_c5():
    out = max_edges(7, ConstraintSet(("P",), "C", flags=frozenset({"connected"})), ENUM)
    assert out.status == Status.EXACT and out.value <= 13 == 3 * 7 - 8


@crit(6, "construction sizes and freeness certificates for n <= 20")
@pytest.mark.parametrize("n", range(6, 21))
def test_c6(n):
    co, st, hz = comet(n), star(n), h0(n)
    cu = clique_union([6, n - 6]) if n > 6 else complete(6)
    assert co.m == 4 + comb(n - 4, 2)
    assert st.m == comb(n - 1, 2)
    assert hz.m == 2 * n - 4
    assert cu.m == 20 + comb(n - 6, 3)
    assert contains(co, "P") is None and contains(co, "C") is None
    assert contains(hz, "C") is None and contains(hz, "P2uK3") is None
    assert contains(co, "M") is not None and contains(hz, "M") is not None
    if n <= 12:
        assert contains(cu, "P") is None
    else:
        # the second clique has 7+ vertices and so contains P
        assert contains(cu, "P") is not None


@crit(7, "max_edges = brute force over all 2^20 graphs at n=6")
@pytest.mark.parametrize("forbidden", [("P",), ("C",), ("M",), ("P", "C")])
@pytest.mark.parametrize("flags", [(), ("connected",), ("intersecting",), ("no_common_vertex",),
                                   ("intersecting", "no_common_vertex")])
def test_c7(forbidden, flags):
    out = max_edges(6, ConstraintSet(forbidden, flags=frozenset(flags)), ENUM)
    value, classes = oracles.brute_max(6, forbidden, None, flags)
    assert out.status == Status.EXACT and out.value == value
    got = sorted(set(oracles.canon(6, [oracles.to_mask(6, H.triples()) for H in out.witnesses])))
    assert got == classes


@crit(8, "R(P;r) <= r+6 deduction valid for r=2..7 with the exact step constants")
@pytest.mark.parametrize("r,big,ex,extra", [
    (2, 28, 21, []),
    (3, 28, 28, ["StarTilingImpossible"]),
    (4, 30, 24, ["StarDeletion"]),
    (5, 33, 30, ["StarDeletion"]),
    (6, 37, 32, ["StarDeletion", "PartitionArgument"]),
    (7, 41, 40, ["StarDeletion"]),
])
def test_c8(r, big, ex, extra):
    proof = verify_deduction(r)
    assert proof.valid
    assert [s.kind for s in proof.steps] == ["Pigeonhole", "TuranLookup"] + extra
    assert proof.steps[0].params["value"] == big
    assert proof.steps[1].params["constant"] == ex
    if r == 3:
        assert proof.steps[2].params["uncovered_triples"] == 20


@crit(9, "r=6 partition: 200 classes, 36 B-edges each, |B|=180, max disjoint family 2")
def test_c9():
    rep = r6_partition_check()
    assert rep["class_count"] == 200
    assert rep["per_class_b_edges"] == [36]
    assert rep["b_edges"] == 180
    assert rep["max_disjoint_family"] == 2


@crit(10, "search_coloring(7,2,P) = Found, re-verified")
def test_c10():
    verdict, col = search_coloring(7, 2, "P")
    assert verdict == Verdict.FOUND
    assert check_coloring(col, "P") is None


# --- extended ---------------------------------------------------------------


@pytest.mark.extended
@crit(11, "ex(9;P)=28 and ex(10;P)=36 by exact search")
@pytest.mark.parametrize("n,value", [(9, 28), (10, 36)])
def test_c11(n, value):
    cv = turan(n, ["P"])
    assert cv.status == Status.EXACT and cv.value == value


@pytest.mark.extended
@crit(12, "ex(10;{P,C}|M)=20 with K5 u K5 among the optima")
def test_c12():
    cv = conditional_turan(10, ["P", "C"], "M")
    assert cv.status == Status.EXACT and cv.value == 20
    assert any(are_isomorphic(w, clique_union([5, 5])) for w in cv.witnesses)


@pytest.mark.extended
@crit(13, "ex2(10;P)=24 by search excluding Star(10)")
def test_c13():
    out = max_edges(10, ConstraintSet(("P",), excluded_supergraphs=(star(10),)), ENUM)
    assert out.status == Status.EXACT and out.value == 24


@pytest.mark.extended
@crit(14, "search_coloring(8,2,P) = NoneExists")
def test_c14():
    verdict, _ = search_coloring(8, 2, "P")
    assert verdict == Verdict.NONE_EXISTS
