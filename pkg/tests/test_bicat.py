from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from hobicat.bicat import (
    BackendError, FiniteBicategory, LimitWitness, PresentedBicategory, TableError,
    check_bicategory, check_quasiequivalence, find_equivalence_witness, induced_arrow,
    induced_cell, nabla, search_limit, verify_limit_witness,
)
from hobicat.cells import generator_term, horizontal, vertical, whisker_left, whisker_right
from hobicat.fixtures import fix_g, fix_n, fix_p2, fix_t, lattice_of_subsets, poset

from term_gen import connected_computad


@pytest.mark.parametrize("make", [fix_t, fix_n, fix_g, fix_p2])
def test_fixtures_are_bicategories(make):
    assert check_bicategory(make()).ok


def corrupted_fix_n():
    b = fix_n()
    hcomp = dict(b.hcomp)
    assert hcomp[("t_u", "t_u")] == "1_id"
    hcomp[("t_u", "t_u")] = "t_id"
    return FiniteBicategory("FIX-N*", b.objects, b.arrows, b.cells, b.comp, b.unit,
                            b.vcomp, hcomp, b.id2)


def test_corrupted_hcomp_flags_h2_at_the_quadruple():
    b = corrupted_fix_n()
    rep = check_bicategory(b)
    h2 = rep["H2"]
    assert h2.status == "fail"
    q = h2.counterexample
    assert (q["delta"], q["beta"]) == ("t_u", "t_u") or (q["gamma"], q["alpha"]) == ("t_u", "t_u") \
        or (b.v(q["delta"], q["gamma"]), b.v(q["beta"], q["alpha"])) == ("t_u", "t_u")
    # exact first quadruple in enumeration order, frozen from the exhaustive check
    assert q == {"alpha": "1_u", "beta": "t_u", "gamma": "t_u", "delta": "1_u"}
    for inst in h2.instances:
        used = {(inst["delta"], inst["beta"]), (inst["gamma"], inst["alpha"]),
                (b.v(inst["delta"], inst["gamma"]), b.v(inst["beta"], inst["alpha"]))}
        assert ("t_u", "t_u") in used


def test_partial_tables_rejected():
    b = fix_n()
    hcomp = dict(b.hcomp)
    del hcomp[("t_u", "t_u")]
    with pytest.raises(TableError):
        FiniteBicategory("broken", b.objects, b.arrows, b.cells, b.comp, b.unit, b.vcomp, hcomp, b.id2)


def test_equivalence_witnesses():
    n = fix_n()
    w = find_equivalence_witness(n, "id")
    assert (w.quasiinverse, w.unit, w.counit) == ("id", "1_id", "1_id")
    w = find_equivalence_witness(n, "u")
    assert w.quasiinverse == "u" and w.triangles
    assert find_equivalence_witness(fix_p2(), "a") is None


def test_quasiequivalences():
    p = fix_p2()
    assert check_quasiequivalence(p, "id0")
    # thin homs make every arrow a quasiequivalence; see the decisions ledger
    assert check_quasiequivalence(p, "a")
    assert all(check_quasiequivalence(fix_n(), f) for f in ("id", "u"))


def collapsing_arrow() -> FiniteBicategory:
    """``a: 0 -> 1`` where whiskering by ``a`` kills the twist ``t`` on ``id0``."""
    arrows = {"id0": ("0", "0"), "id1": ("1", "1"), "a": ("0", "1")}
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("a", "id0"): "a", ("id1", "a"): "a"}
    cells = {"1_id0": ("id0", "id0"), "t": ("id0", "id0"), "1_id1": ("id1", "id1"),
             "1_a": ("a", "a")}
    vcomp = {("1_id0", "1_id0"): "1_id0", ("1_id0", "t"): "t", ("t", "1_id0"): "t",
             ("t", "t"): "1_id0", ("1_id1", "1_id1"): "1_id1", ("1_a", "1_a"): "1_a"}
    hcomp = {("1_id0", "1_id0"): "1_id0", ("1_id0", "t"): "t", ("t", "1_id0"): "t",
             ("t", "t"): "1_id0", ("1_id1", "1_id1"): "1_id1", ("1_a", "1_id0"): "1_a",
             ("1_a", "t"): "1_a", ("1_id1", "1_a"): "1_a"}
    id2 = {"id0": "1_id0", "id1": "1_id1", "a": "1_a"}
    return FiniteBicategory("C", ("0", "1"), arrows, cells, comp, {"0": "id0", "1": "id1"},
                            vcomp, hcomp, id2)


def test_quasiequivalence_detects_non_faithful():
    from hobicat.bicat import quasiequivalence_failure
    b = collapsing_arrow()
    assert check_bicategory(b).ok
    assert not check_quasiequivalence(b, "a")
    assert quasiequivalence_failure(b, "a") == ("post", "0", "id0", "id0", "not faithful")
    with pytest.raises(BackendError):
        check_quasiequivalence(PresentedBicategory(connected_computad()), "f")


def test_terminal_and_initial_in_p2():
    p = fix_p2()
    assert verify_limit_witness(p, LimitWitness("Terminal", (), "1")).ok
    bad = verify_limit_witness(p, LimitWitness("Initial", (), "1"))
    assert bad["factorization-exists"].status == "fail"
    assert bad["factorization-exists"].counterexample == {"vertex": "0", "cone": ()}


def test_join_is_coproduct_with_fold():
    lat = lattice_of_subsets("L", ["x", "y"])
    w = search_limit(lat, "coProduct", ("{x}", "{y}"))
    assert w.apex == "{x,y}"
    rep = verify_limit_witness(lat, w)
    assert rep.ok and rep["binom-naturality"].ok
    fold = search_limit(lat, "coProduct", ("{x}", "{x}"))
    arrow, comps = nabla(lat, fold)
    assert arrow == lat.unit["{x}"] and fold.apex == "{x}"


def test_binom_then_inclusions_recovers_arrows():
    lat = lattice_of_subsets("L", ["x", "y"])
    w = search_limit(lat, "coProduct", ("{x}", "{y}"))
    f = lat.hom("{x}", "{x,y}")[0]
    g = lat.hom("{y}", "{x,y}")[0]
    k, (c0, c1) = induced_arrow(lat, w, (f, g))
    assert lat.cells[c0] == (f, lat.c(k, w.legs[0]))
    assert lat.cells[c1] == (g, lat.c(k, w.legs[1]))
    assert lat.is_invertible(c0) and lat.is_invertible(c1)


def test_induced_cell_in_fix_n_pushout():
    n = fix_n()
    w = search_limit(n, "Pushout", ("id", "id"))
    assert w is not None and verify_limit_witness(n, w).ok
    h = w.legs[0]
    cell = induced_cell(n, w, h, h, ("t_id", "t_id"))
    assert cell == "t_id"


def test_fix_g_lacks_initial_and_coproducts():
    g = fix_g()
    assert search_limit(g, "Initial") is None
    assert search_limit(g, "Terminal") is None
    assert search_limit(g, "coProduct", ("*", "*")) is None
    assert search_limit(g, "Pullback", ("u", "id")) is not None


def test_presented_backend_bounded_equality():
    cd = connected_computad()
    r = generator_term(cd, "r")
    rr = vertical(r, r)
    pres = PresentedBicategory(cd, ((rr, r),), search_bound=3)
    rrr = vertical(rr, r)
    assert pres.equal(rrr, r) == "Equal"
    assert PresentedBicategory(cd, (), 3).equal(rrr, r) == "NotEqualWithinBound"
    # the relation applies under whiskers too
    f = cd.path("X", ["h"])
    assert pres.equal(whisker_left(f, rrr), whisker_left(f, r)) == "Equal"
    assert pres.equal(whisker_right(rrr, f), whisker_right(r, f)) == "Equal"


# --- properties -------------------------------------------------------------


def random_poset(seed: int) -> FiniteBicategory:
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    elems = [str(k) for k in range(n)]
    rel = {(x, x) for x in elems}
    for x in elems:
        for y in elems:
            if x < y and rng.random() < 0.5:
                rel.add((x, y))
    changed = True
    while changed:
        changed = False
        for (x, y) in list(rel):
            for (y2, z) in list(rel):
                if y == y2 and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    return poset(f"P{seed}", elems, lambda x, y: (x, y) in rel)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_equivalence_implies_quasiequivalence(seed):
    for b in (random_poset(seed), fix_n(), fix_g()):
        for f in sorted(b.arrows):
            if find_equivalence_witness(b, f) is not None:
                assert check_quasiequivalence(b, f)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_duals_stay_bicategories(seed):
    b = random_poset(seed)
    assert check_bicategory(b).ok
    assert check_bicategory(b.op()).ok and check_bicategory(b.co()).ok
    assert b.op().op() is b


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_found_limits_reproduce_every_test_cone(seed):
    b = random_poset(seed)
    objs = b.objects
    for kind in ("coProduct", "Product"):
        w = search_limit(b, kind, (objs[0], objs[-1]))
        if w is None:
            continue
        for cone, (arrow, comps) in w.factorizations.items():
            assert all(b.is_invertible(c) for c in comps)
        assert verify_limit_witness(b, w).ok
