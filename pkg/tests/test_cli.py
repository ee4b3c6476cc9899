from __future__ import annotations

import pathlib

import pytest
from click.testing import CliRunner

from hobicat.cli import main
from hobicat.presentation import parse

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def run(*args):
    args = [str(FIXTURES / a) if a.startswith("fix") or a == "zigzag" else a for a in args]
    result = CliRunner().invoke(main, args)
    return result.exit_code, result.output


def test_check_trivial_fixture_passes():
    code, out = run("check", "fix-t")
    assert code == 0
    assert out.splitlines()[-1] == "RESULT: pass"


def test_wall_fails_m1_with_the_square():
    code, out = run("model", "check", "fix-p2-wall", "--axioms", "M1")
    assert code == 1
    assert "M1.counterexample: LP1=no filler i=a p=a a=id0 b=id1 gamma=1_a" in out


def test_universal_verify_on_fix_g_passes_item_by_item():
    code, out = run("universal", "verify", "fix-g")
    assert code == 0
    for target in ("FIX-T", "FIX-P2", "FIX-N", "FIX-G"):
        for item in (1, 2, 3):
            assert f"{target} item {item}: pass" in out


def test_universal_verify_with_small_bound_is_inconclusive():
    code, out = run("universal", "verify", "fix-n", "--targets", "FIX-N", "--bound", "1")
    assert code == 3
    assert "FIX-N item 1.note: more than 1 functors into FIX-N" in out


def test_unknown_target_is_a_usage_error():
    code, out = run("universal", "verify", "fix-g", "--targets", "FIX-Q")
    assert code == 2 and "unknown fixture" in out


def test_corrupted_hcomp_entry_is_reported_as_h2(tmp_path):
    text = (FIXTURES / "fix-n").read_text()
    assert "  t_u * t_u = 1_id\n" in text
    text = text.replace("  t_u * t_u = 1_id\n", "  t_u * t_u = t_id\n")
    path = tmp_path / "fix-n-bad"
    path.write_text(text)
    code, out = run("check", str(path))
    assert code == 1
    assert "bicategory H2: fail" in out
    assert "bicategory H2.counterexample:" in out


def test_parse_errors_exit_2(tmp_path):
    path = tmp_path / "broken"
    path.write_text("BICATEGORY T\nOBJECTS\n  *\nARROWS\n  id: * => *\n")
    code, out = run("check", str(path))
    assert code == 2
    assert "line 5" in out
    code, _ = run("check", str(tmp_path / "missing"))
    assert code == 2


def test_missing_classes_is_a_parse_level_error():
    code, out = run("model", "check", "zigzag")
    assert code == 2 and "BICATEGORY" in out


def test_unknown_axiom_and_flag_are_rejected():
    assert run("model", "check", "fix-t", "--axioms", "M9")[0] == 2
    assert run("check", "fix-t", "--frobnicate")[0] == 2
    assert run("check", "fix-t", "--bound", "-1")[0] == 2


@pytest.mark.parametrize("args", [
    ("check", "fix-n"),
    ("model", "check", "fix-g"),
    ("replace", "fix-p2-q"),
    ("localize", "fix-n", "--scope", "sigma"),
    ("homotopy", "to-w", "fix-n", "L"),
])
def test_reports_are_byte_identical_across_runs(args):
    assert run(*args) == run(*args)


def test_record_format_has_one_record_per_check():
    code, out = run("model", "check", "fix-p2", "--axioms", "M1,M2", "--format", "record")
    assert code == 0
    lines = out.splitlines()
    assert lines == [
        "record\tcheck=model FIX-P2\titem=M1\tstatus=pass\tcount=0",
        "record\tcheck=model FIX-P2\titem=M2\tstatus=pass\tcount=0",
        "record\tcheck=model FIX-P2\titem=RESULT\tstatus=pass",
    ]


def test_check_covers_witnesses_functors_and_homotopies():
    code, out = run("check", "fix-n")
    assert code == 0
    for key in ("witness Pullback * factorization-exists: pass", "functor Id P3: pass",
                "transformation id PN2: pass", "modification one", "homotopy R: pass"):
        assert key in out


def test_replace_dumps_both_directions():
    code, out = run("replace", "fix-p2-q")
    assert code == 0
    assert "Q 1: 0 via a" in out and "R 1: 1 via id1" in out


def test_fix_g_model_check_fails_only_at_m0():
    code, out = run("model", "check", "fix-g")
    assert code == 1
    failing = [l for l in out.splitlines() if l.endswith(")") and ": fail" in l]
    assert failing == ["M0: fail (2 violations)"]


def test_localize_emits_tables_that_check_clean(tmp_path):
    code, out = run("localize", "fix-n", "--emit", "tables")
    assert code == 0
    ho = parse(out)
    assert sorted(ho.bicat.cells) == ["[1_id]", "[1_u]", "[t_id]", "[t_u]"]
    path = tmp_path / "ho"
    path.write_text(out)
    assert run("check", str(path))[0] == 0


def test_vcomp_without_cocomma_fails_with_the_missing_shape():
    code, out = run("homotopy", "vcomp", "fix-j", "E", "E")
    assert code == 1
    assert "construction.counterexample: no coComma of (id, id)" in out


def test_homotopy_commands():
    assert run("homotopy", "check", "fix-n")[0] == 0
    code, out = run("homotopy", "vcomp", "fix-n", "H", "K")
    assert code == 0 and "hat of composite: pass" in out
    code, out = run("homotopy", "class-eq", "fix-n", "H", "H")
    assert code == 0 and "verdict: Equal" in out
    code, out = run("homotopy", "class-eq", "fix-n", "H", "K")
    assert code == 1 and "same class.counterexample: functor=" in out
    code, out = run("homotopy", "to-w", "fix-n", "R")
    assert code == 0 and "result side: right" in out
    assert run("homotopy", "to-w", "fix-n", "nobody")[0] == 2


def test_class_eq_on_fix_g_passes_by_enumeration():
    code, out = run("homotopy", "class-eq", "fix-g", "H", "L")
    assert code == 0
    assert "verdict: EqualByEnumeration" in out
    assert "same class.note: hats agree" in out


def test_render_elevator_draws_grids():
    code, out = run("render-elevator", "zigzag", "slide", "swap")
    assert code == 0
    assert out == ("term: slide\n f   g   f   g\n   sw    |   |\n |   |     sw\n f   g   f   g\n"
                   "\nterm: swap\n   f      g\n      sw\n    sw^-1\n   f      g\n")
    code, out = run("render-elevator", "zigzag", "swap", "--normal")
    assert out == "term: swap\n f  g\n f  g\n"
    assert run("render-elevator", "zigzag", "nothing")[0] == 2


def test_check_on_a_computad_summarizes_terms():
    code, out = run("check", "zigzag")
    assert code == 0
    assert "term swap: x:f,g => x:f,g, 2 layers, 0 after normalization" in out
