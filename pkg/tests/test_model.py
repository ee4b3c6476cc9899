from __future__ import annotations

import itertools
import threading

import pytest
from hypothesis import given, settings, strategies as st

from hobicat.fixtures import fix_g, fix_n, fix_p2, fix_t, join_monoid, poset
from hobicat.model import (
    Filler, LiftingSquare, ModelBicategory, ModelError, all_fillers, check_model_axioms,
    extension_property, factor_weq_as_wsplit, factorizations, find_filler, find_filler_delta,
    replace, squares, verify_factorization, verify_filler,
)

from poset_model_oracle import poset_axioms

M_AXIOMS = ("M0", "M1", "M2", "M3", "M4", "M5")


def p2(weak, fib=None, cof=None, name=None):
    b = fix_p2()
    every = list(b.arrows)
    return ModelBicategory(b, weak, every if fib is None else fib, every if cof is None else cof, name)


P2_ISOS = lambda: p2(["id0", "id1"], name="P2-isos")
P2_WALL = lambda: p2(["id0", "id1", "a"], name="P2-wall")
P2_FIBS_ISOS = lambda: p2(["id0", "id1", "a"], fib=["id0", "id1"], name="P2-R")
P2_COFS_ISOS = lambda: p2(["id0", "id1", "a"], cof=["id0", "id1"], name="P2-Q")

# every model structure on P2 whose axioms all pass, found by exhaustive search
VALID_P2 = [P2_ISOS, P2_FIBS_ISOS, P2_COFS_ISOS]


def test_identity_square_fills_with_top_arrow():
    b = fix_p2()
    sq = LiftingSquare("id0", "id1", "a", "a", "1_a")
    assert find_filler(b, sq) == Filler("a", "1_a", "1_a")


def test_ill_formed_square_rejected():
    with pytest.raises(ModelError):
        find_filler(fix_p2(), LiftingSquare("a", "a", "id0", "id0", "1_id0"))


def test_p2_isos_every_eligible_square_has_a_verified_filler():
    m = P2_ISOS()
    seen = 0
    for i in m.C:
        for p in m.F:
            if m.is_w(i) or m.is_w(p):
                for sq in squares(m.base, i, p):
                    fl = find_filler(m.base, sq)
                    assert fl is not None and verify_filler(m.base, sq, fl)
                    seen += 1
    # i=id0 against all three p, id1 against id1, a against id1
    assert seen == 5


def test_wall_square_has_no_filler():
    b = fix_p2()
    sq = LiftingSquare("a", "a", "id0", "id1", "1_a")
    assert all_fillers(b, sq) == []
    assert b.hom("1", "0") == ()


def test_delta_identity_case():
    b = fix_n()
    sq = LiftingSquare("id", "id", "u", "u", "1_u")
    fl = find_filler(b, sq)
    assert find_filler_delta(b, sq, sq, fl, fl, "1_u", "1_u") == "1_u"


def test_delta_with_twisted_alpha_in_fix_n():
    b = fix_n()
    sq1 = LiftingSquare("id", "id", "u", "u", "1_u")
    sq2 = LiftingSquare("id", "id", "u", "u", "t_u")
    # gamma2 + alpha = beta + gamma1 in Z/2
    delta = find_filler_delta(b, sq1, sq2, find_filler(b, sq1), find_filler(b, sq2), "t_u", "1_u")
    assert find_filler(b, sq2) == Filler("u", "1_u", "t_u") and delta == "t_u"
    fl2 = Filler("u", "t_u", "1_u")
    assert verify_filler(b, sq2, fl2)
    assert find_filler_delta(b, sq1, sq2, find_filler(b, sq1), fl2, "t_u", "1_u") == "1_u"


def test_delta_rejects_incompatible_alpha_beta():
    b = fix_n()
    sq = LiftingSquare("id", "id", "u", "u", "1_u")
    fl = find_filler(b, sq)
    with pytest.raises(ModelError, match="compatibility"):
        find_filler_delta(b, sq, sq, fl, fl, "t_u", "1_u")


def test_exactly_three_model_structures_on_p2():
    b = fix_p2()
    subsets = [c for r in range(4) for c in itertools.combinations(sorted(b.arrows), r)]
    found = []
    for weak, fib, cof in itertools.product(subsets, repeat=3):
        if check_model_axioms(ModelBicategory(b, weak, fib, cof)).ok:
            found.append((weak, fib, cof))
    assert sorted(found) == sorted(
        (tuple(sorted(m().W)), tuple(sorted(m().F)), tuple(sorted(m().C))) for m in VALID_P2)


def test_wall_fails_only_m1_at_documented_square():
    rep = check_model_axioms(P2_WALL())
    assert [c.name for c in rep.checks if not c.ok] == ["M1"]
    assert rep["M1"].counterexample == {"LP1": "no filler", "i": "a", "p": "a", "a": "id0",
                                        "b": "id1", "gamma": "1_a"}


def test_trivial_structures_without_initial_object():
    for make in (fix_g, fix_n):
        rep = check_model_axioms(ModelBicategory.with_equivalences(make()), M_AXIOMS)
        assert [c.name for c in rep.checks if not c.ok] == ["M0"]
        assert rep["M0"].counterexample == {"shape": "Initial"}
    assert check_model_axioms(ModelBicategory.with_equivalences(fix_t())).ok


def test_mm_axioms_short_circuit_only_when_all_cells_invertible():
    rep = check_model_axioms(P2_ISOS(), ["MM0", "MM3"])
    assert rep["MM0"].ok and "invertible" in rep["MM0"].note
    rep = check_model_axioms(ModelBicategory.with_equivalences(join_monoid()), ["MM0", "MM3", "MM4"])
    assert rep["MM0"].counterexample == {"shape": "Comma", "diagram": ("e", "e")}
    assert rep["MM3"].ok and rep["MM4"].ok


def test_unknown_axiom_name():
    with pytest.raises(ValueError):
        check_model_axioms(P2_ISOS(), ["M9"])


def test_poset_oracle_agrees_on_all_p2_triples():
    b = fix_p2()
    names = {("0", "0"): "id0", ("1", "1"): "id1", ("0", "1"): "a"}
    subsets = [c for r in range(4) for c in itertools.combinations(sorted(b.arrows), r)]
    for weak, fib, cof in itertools.product(subsets, repeat=3):
        rep = check_model_axioms(ModelBicategory(b, weak, fib, cof), M_AXIOMS)
        ours = {c.name for c in rep.checks if not c.ok}
        assert ours == poset_axioms("01", lambda x, y: names[(x, y)], weak, fib, cof)


chain3 = poset("C3", "012", lambda x, y: x <= y)
chain3_arrows = sorted(chain3.arrows)
arrow_sets = st.sets(st.sampled_from(chain3_arrows))


def chain3_name(x, y):
    return f"id{x}" if x == y else f"{x}<{y}"


@settings(max_examples=60, deadline=None)
@given(arrow_sets, arrow_sets, arrow_sets)
def test_poset_oracle_agrees_on_random_chain3_triples(weak, fib, cof):
    ids = {"id0", "id1", "id2"}
    weak, fib, cof = weak | ids, fib | ids, cof | ids
    rep = check_model_axioms(ModelBicategory(chain3, weak, fib, cof), M_AXIOMS)
    ours = {c.name for c in rep.checks if not c.ok} - {"M0"}
    assert ours == poset_axioms("012", chain3_name, weak, fib, cof)


def test_fibrancy_from_witnesses():
    assert P2_ISOS().fibrancy_status("0") == {"fibrant": True, "cofibrant": True}
    m = P2_COFS_ISOS()
    assert m.fibrancy_status("1") == {"fibrant": True, "cofibrant": False}
    assert P2_FIBS_ISOS().fibrancy_status("0") == {"fibrant": False, "cofibrant": True}
    assert ModelBicategory.with_equivalences(fix_g()).fibrancy_status("*") == {
        "fibrant": True, "cofibrant": True}
    with pytest.raises(ModelError):
        P2_ISOS().fibrancy_status("2")


def test_fibrancy_lifting_characterization_matches_witnesses():
    for make in VALID_P2:
        m = make()
        for x in m.base.objects:
            assert extension_property(m, x) == m.is_fibrant(x)
            assert extension_property(m.op(), x) == m.is_cofibrant(x)


def test_factorizations_verify_and_prefer_degenerate_choices():
    for make in VALID_P2:
        m = make()
        for f in m.base.arrows:
            for mode in ("acyclic-cofibration", "acyclic-fibration"):
                fac = m.factor(f, mode)
                assert verify_factorization(m, fac, mode)
    fac = P2_ISOS().factor("a", "acyclic-cofibration")
    assert (fac.i, fac.p) == ("id0", "a")


def test_custom_oracles_are_verified():
    bad_lift = lambda b, sq: Filler(sq.a, "1_a", "1_a")
    m = ModelBicategory(fix_p2(), ["id0", "id1"], fix_p2().arrows, fix_p2().arrows,
                        lifter=bad_lift)
    with pytest.raises(ModelError, match="invalid filler"):
        m.fill(LiftingSquare("id0", "a", "id0", "id1", "1_a"))
    good_factor = lambda m, f, mode: next(factorizations(m, f, mode))
    m = ModelBicategory(fix_p2(), ["id0", "id1"], fix_p2().arrows, fix_p2().arrows,
                        factorizer=good_factor)
    assert check_model_axioms(m, ["M2"]).ok


def test_wsplit_of_identity_is_trivial():
    ws = factor_weq_as_wsplit(P2_ISOS(), "id0")
    assert (ws.i, ws.p, ws.middle, ws.retraction, ws.section) == ("id0", "id0", "0", "id0", "id0")


def test_wsplit_of_u_in_fix_g():
    m = ModelBicategory.with_equivalences(fix_g())
    ws = factor_weq_as_wsplit(m, "u")
    b = m.base
    assert ws.middle == "*"
    assert b.cells[ws.sigma] == ("u", b.c(ws.p, ws.i))
    assert b.cells[ws.retraction_iso] == ("id", b.c(ws.retraction, ws.i))
    assert b.cells[ws.section_iso] == (b.c(ws.p, ws.section), "id")
    assert m.is_w(ws.i) and m.is_w(ws.p)


def test_wsplit_preconditions():
    with pytest.raises(ModelError, match="not fibrant"):
        factor_weq_as_wsplit(P2_FIBS_ISOS(), "id0")
    with pytest.raises(ModelError, match="not a weak equivalence"):
        factor_weq_as_wsplit(P2_ISOS(), "a")


def test_wsplit_on_fc_objects_stays_fc():
    for make in VALID_P2:
        m = make()
        fc = m.fc_objects()
        for f in m.W:
            x, y = m.base.arrows[f]
            if x in fc and y in fc:
                assert factor_weq_as_wsplit(m, f).middle in fc


def model_family():
    return [make() for make in VALID_P2] + [
        ModelBicategory.with_equivalences(fix_t()), ModelBicategory.with_equivalences(fix_g()),
        ModelBicategory.with_equivalences(fix_n()), ModelBicategory.with_equivalences(join_monoid())]


def test_replacement_equations_and_weak_equivalences():
    for m in model_family():
        rep, b = m.replacement, m.base
        for x in b.objects:
            q, r = rep.Q_object(x), rep.R_object(x)
            assert m.is_cofibrant(q.replaced) and m.is_fibrant(r.replaced)
            assert q.comparison in m.F & m.W and r.comparison in m.C & m.W
            if m.is_cofibrant(x):
                assert q == replace(m, "Q", x) and (q.replaced, q.comparison) == (x, b.unit[x])
        for mu in b.cells:
            assert rep.check_cell_equation(mu) and rep.check_r_cell_equation(mu)
        for f in m.W:
            assert rep.Q_arrow(f).replaced in m.W and rep.R_arrow(f).replaced in m.W


def test_q_replacement_on_p2_with_cofibrations_isos():
    m = P2_COFS_ISOS()
    assert replace(m, "Q", "1").replaced == "0"
    assert replace(m, "Q", "a").replaced == "id0"
    assert replace(m, "Q", "1_a") == "1_id0"
    assert replace(m, "R", "a").replaced == "a"


def test_replace_rejects_unknown_inputs():
    with pytest.raises(ValueError):
        replace(P2_ISOS(), "P", "0")
    with pytest.raises(ModelError):
        replace(P2_ISOS(), "Q", "nope")


def test_replacement_memo_is_stable_under_threads():
    m = P2_COFS_ISOS()
    results = []

    def worker():
        results.append(tuple(replace(m, "Q", x) for x in ("a", "1", "1_a", "id1")))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["id", "u"]), st.sampled_from(["id", "u"]),
       st.sampled_from(["1", "t"]), st.sampled_from(["1", "t"]))
def test_fix_n_fillers_satisfy_lp1(a, bb, g, alpha_twist):
    b = fix_n()
    for i, p in itertools.product(b.arrows, repeat=2):
        if b.c(p, a) != b.c(bb, i):
            continue
        sq = LiftingSquare(i, p, a, bb, f"{g}_{b.c(p, a)}")
        for fl in all_fillers(b, sq):
            assert verify_filler(b, sq, fl)
