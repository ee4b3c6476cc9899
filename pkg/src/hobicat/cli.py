"""Command line entry point.

Every command prints a line-oriented report and exits with 0 (pass),
1 (a check failed, with counterexample), 2 (the input or the command line
could not be parsed) or 3 (a search bound made a check inconclusive).
"""

from __future__ import annotations

import sys

import click

from .bicat import BoundaryError, check_bicategory, verify_limit_witness
from .cells import normalize, render
from .fixtures import fixture_by_name
from .functors import check_modification, check_pseudofunctor, check_pseudonatural
from .homotopy import (
    HomotopyError, admissible_functors, class_equal, flags, hat, homotopy_problems,
    is_fibrant, is_w_homotopy, sigma_to_fibrant_w, vcompose_w, verify_certificate,
)
from .localization import SCOPES, LocalizationError, build_ho, verify_localization
from .model import AXIOMS, ModelError, check_model_axioms
from .presentation import PresentationError, dump, from_bicategory, load
from .report import FAIL, INCONCLUSIVE, Report

EXIT = {"pass": 0, FAIL: 1, INCONCLUSIVE: 3}
FAILURES = (BoundaryError, HomotopyError, LocalizationError, ModelError)


class Abort(Exception):
    """Parse-level failure after click has accepted the arguments."""


def _load(path: str):
    try:
        return load(path)
    except PresentationError as exc:
        raise Abort(str(exc)) from None


def _model(pres):
    try:
        return pres.model()
    except (PresentationError, ModelError) as exc:
        raise Abort(str(exc)) from None


def _homotopy(pres, name: str):
    if name not in pres.homotopies:
        raise Abort(f"no HOMOTOPY named {name!r}")
    return pres.homotopies[name]


def _emit(rep: Report, fmt: str) -> int:
    lines = rep.records() if fmt == "record" else rep.lines()
    click.echo("\n".join(lines))
    return EXIT[rep.status]


def _run(body) -> None:
    try:
        code = body()
    except Abort as exc:
        click.echo(f"error: {exc}", err=True)
        code = 2
    sys.exit(code)


common = [
    click.option("--bound", type=click.IntRange(min=0), default=None,
                 help="Search bound; exceeding it makes a check inconclusive."),
    click.option("--format", "fmt", type=click.Choice(["text", "record"]), default="text",
                 show_default=True, help="Report layout."),
]


def with_common(fn):
    for opt in reversed(common):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Finite bicategories with model structures: checks, replacement and localization."""


# ---------------------------------------------------------------------------
# check


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@with_common
def check(path, bound, fmt):
    """Check bicategory, witness and functor axioms of a presentation."""
    def body():
        pres = _load(path)
        rep = Report(f"check {pres.name}")
        if pres.presented is not None:
            _check_computad(rep, pres, bound)
            return _emit(rep, fmt)
        b = pres.bicat
        rep.extend(check_bicategory(b), "bicategory ")
        for w in pres.witnesses:
            rep.extend(verify_limit_witness(b, w, bound), f"witness {w.kind} {w.apex} ")
        for name, fn in pres.functors.items():
            rep.extend(check_pseudofunctor(fn), f"functor {name} ")
        for name, t in pres.transformations.items():
            rep.extend(check_pseudonatural(t), f"transformation {name} ")
        for name, mod in pres.modifications.items():
            rep.extend(check_modification(mod), f"modification {name} ")
        if pres.homotopies:
            m = _model(pres)
            for name, hom in pres.homotopies.items():
                chk = rep.check(f"homotopy {name}")
                for problem in homotopy_problems(m, hom):
                    chk.violate(problem)
        return _emit(rep, fmt)
    _run(body)


def _check_computad(rep: Report, pres, bound) -> None:
    p = pres.presented
    cd = p.computad
    rep.fact("objects", len(cd.objects))
    rep.fact("1-cell generators", len(cd.gen1))
    rep.fact("2-cell generators", len(cd.gen2))
    rep.fact("relations", len(p.relations))
    chk = rep.check("relation boundaries")
    for lhs, rhs in p.relations:
        if (lhs.source, lhs.target) != (rhs.source, rhs.target):
            chk.violate((str(lhs.source), str(rhs.source)))
    for name, t in pres.terms.items():
        rep.fact(f"term {name}", f"{t.source} => {t.target}, {len(t)} layers, "
                                 f"{len(normalize(t))} after normalization")


# ---------------------------------------------------------------------------
# model


@main.group()
def model():
    """Model structure commands."""


@model.command("check")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--axioms", default=",".join(AXIOMS), show_default=True,
              help="Comma-separated subset of the axioms.")
@with_common
def model_check(path, axioms, bound, fmt):
    """Check the model axioms of the CLASSES block."""
    which = [a.strip() for a in axioms.split(",") if a.strip()]
    unknown = [a for a in which if a not in AXIOMS]
    if unknown:
        raise click.BadParameter(f"unknown axioms {', '.join(unknown)}", param_hint="--axioms")

    def body():
        m = _model(_load(path))
        rep = check_model_axioms(m, which)
        for x in m.base.objects:
            status = m.fibrancy_status(x)
            rep.fact(f"object {x}", " ".join(k for k, v in status.items() if v) or "neither")
        return _emit(rep, fmt)
    _run(body)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@with_common
def replace(path, bound, fmt):
    """Dump the cofibrant (Q) and fibrant (R) replacements with their equation checks."""
    def body():
        m = _model(_load(path))
        b = m.base
        rep = Report(f"replacement {m.name}")
        rq = m.replacement
        try:
            for x in b.objects:
                q, r = rq.Q_object(x), rq.R_object(x)
                rep.fact(f"Q {x}", f"{q.replaced} via {q.comparison}")
                rep.fact(f"R {x}", f"{r.replaced} via {r.comparison}")
            for f in b.arrows:
                q, r = rq.Q_arrow(f), rq.R_arrow(f)
                rep.fact(f"Q {f}", f"{q.replaced} with {q.cell}")
                rep.fact(f"R {f}", f"{r.replaced} with {r.cell}")
            q_eq, r_eq = rep.check("Q cell equation"), rep.check("R cell equation")
            for mu in b.cells:
                rep.fact(f"Q {mu}", rq.Q_cell(mu))
                rep.fact(f"R {mu}", rq.R_cell(mu))
                if not rq.check_cell_equation(mu):
                    q_eq.violate(mu)
                if not rq.check_r_cell_equation(mu):
                    r_eq.violate(mu)
            keeps = rep.check("replacement keeps W")
            for f in sorted(m.W):
                for d, item in (("Q", rq.Q_arrow(f)), ("R", rq.R_arrow(f))):
                    if not m.is_w(item.replaced):
                        keeps.violate({"direction": d, "arrow": f, "replaced": item.replaced})
        except FAILURES as exc:
            rep.check("construction").violate(str(exc))
        return _emit(rep, fmt)
    _run(body)


# ---------------------------------------------------------------------------
# homotopy


@main.group()
def homotopy():
    """Homotopy commands over HOMOTOPY blocks."""


def _describe(rep: Report, m, label: str, hom) -> None:
    c = hom.cylinder
    rep.fact(f"{label} side", hom.side)
    rep.fact(f"{label} cylinder", f"W={c.middle} Z={c.base} d0={c.d0} d1={c.d1} "
                                  f"x={c.base_map} s={c.collapse}")
    rep.fact(f"{label} data", f"h={hom.h} eta={hom.eta} eps={hom.eps}")
    rep.fact(f"{label} flags", " ".join(k for k, v in flags(m, hom).items() if v) or "none")


def _limit(bound):
    return None if bound is None else max(bound, 1)


@homotopy.command("check")
@click.argument("path", type=click.Path(dir_okay=False))
@with_common
def homotopy_check(path, bound, fmt):
    """Type-check every homotopy and list its flags."""
    def body():
        pres = _load(path)
        m = _model(pres)
        rep = Report(f"homotopies {pres.name}")
        for name, hom in pres.homotopies.items():
            chk = rep.check(f"homotopy {name}")
            problems = homotopy_problems(m, hom)
            for problem in problems:
                chk.violate(problem)
            if not problems:
                _describe(rep, m, name, hom)
        return _emit(rep, fmt)
    _run(body)


@homotopy.command("to-w")
@click.argument("path", type=click.Path(dir_okay=False))
@click.argument("name")
@with_common
def homotopy_to_w(path, name, bound, fmt):
    """Replace a homotopy by a fibrant w-homotopy in the same class."""
    def body():
        pres = _load(path)
        m = _model(pres)
        hom = _homotopy(pres, name)
        rep = Report(f"to-w {name}")
        try:
            out, cert = sigma_to_fibrant_w(m, hom)
        except FAILURES as exc:
            rep.check("construction").violate(str(exc))
            return _emit(rep, fmt)
        _describe(rep, m, "result", out)
        rep.fact("moves", " ".join(mv.kind for mv in cert.moves) or "none")
        chk = rep.check("certificate")
        for problem in verify_certificate(m, cert):
            chk.violate(problem)
        chk = rep.check("fibrant w-homotopy")
        if not (is_w_homotopy(m, out) and is_fibrant(m, out)):
            chk.violate(name)
        functors = admissible_functors(m, limit_per_target=_limit(bound))
        chk = rep.check("hats preserved")
        for fn in functors:
            if hat(fn, out) != hat(fn, hom):
                chk.violate({"functor": fn.name, "before": hat(fn, hom), "after": hat(fn, out)})
        return _emit(rep, fmt)
    _run(body)


@homotopy.command("vcomp")
@click.argument("path", type=click.Path(dir_okay=False))
@click.argument("first")
@click.argument("second")
@with_common
def homotopy_vcomp(path, first, second, bound, fmt):
    """Compose two homotopies vertically (first, then second) into one w-homotopy."""
    def body():
        pres = _load(path)
        m = _model(pres)
        one, two = _homotopy(pres, first), _homotopy(pres, second)
        rep = Report(f"vcomp {first} {second}")
        try:
            ws = [h if is_w_homotopy(m, h) else sigma_to_fibrant_w(m, h)[0] for h in (one, two)]
            out, cert = vcompose_w(m, *ws)
        except FAILURES as exc:
            rep.check("construction").violate(str(exc))
            return _emit(rep, fmt)
        _describe(rep, m, "result", out)
        chk = rep.check("certificate")
        for problem in verify_certificate(m, cert):
            chk.violate(problem)
        chk = rep.check("hat of composite")
        for fn in admissible_functors(m, limit_per_target=_limit(bound)):
            d = fn.target
            want = d.v(hat(fn, two), hat(fn, one))
            if hat(fn, out) != want:
                chk.violate({"functor": fn.name, "got": hat(fn, out), "want": want})
        return _emit(rep, fmt)
    _run(body)


@homotopy.command("class-eq")
@click.argument("path", type=click.Path(dir_okay=False))
@click.argument("one")
@click.argument("other")
@with_common
def homotopy_class_eq(path, one, other, bound, fmt):
    """Decide whether two homotopies have the same class.

    A certificate or agreement under every enumerated functor passes; a
    functor separating the hats is a counterexample.
    """
    def body():
        pres = _load(path)
        m = _model(pres)
        h1, h2 = _homotopy(pres, one), _homotopy(pres, other)
        rep = Report(f"class-eq {one} {other}")
        chk = rep.check("same class")
        try:
            functors = admissible_functors(m, limit_per_target=_limit(bound))
            res = class_equal(m, h1, h2, functors)
        except FAILURES as exc:
            chk.violate(str(exc))
            return _emit(rep, fmt)
        rep.fact("verdict", res.verdict)
        if res.certificate is not None:
            rep.fact("moves", " ".join(mv.kind for mv in res.certificate.moves) or "identical")
        if res.verdict == "Unknown":
            if res.evidence:
                chk.violate({"functor": res.evidence[0], "hats": res.evidence[1:]})
            else:
                chk.inconclusive(res.note)
        elif res.note:
            chk.note = res.note
        return _emit(rep, fmt)
    _run(body)


# ---------------------------------------------------------------------------
# localization


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--scope", type=click.Choice(SCOPES), default="fc", show_default=True)
@click.option("--emit", type=click.Choice(["report", "tables"]), default="report",
              show_default=True, help="A check report or the tables of the homotopy bicategory.")
@with_common
def localize(path, scope, emit, bound, fmt):
    """Build the homotopy bicategory and check it."""
    def body():
        m = _model(_load(path))
        rep = Report(f"localize {m.name} scope={scope}")
        try:
            ho = build_ho(m, scope)
        except FAILURES as exc:
            rep.check("construction").violate(str(exc))
            return _emit(rep, fmt)
        b = ho.bicat
        rep.fact("objects", " ".join(b.objects))
        rep.fact("arrows", len(b.arrows))
        rep.fact("classes", len(b.cells))
        rep.fact("functors", len(ho.functors))
        rep.extend(check_bicategory(b), "Ho ")
        rep.extend(check_pseudofunctor(ho.projection), "projection ")
        if emit == "tables":
            click.echo(dump(from_bicategory(b)), nl=False)
            return EXIT[rep.status]
        return _emit(rep, fmt)
    _run(body)


@main.group()
def universal():
    """Universal property of the localization."""


def _targets(ctx, param, value):
    if value is None:
        return None
    out = []
    for name in filter(None, (v.strip() for v in value.split(","))):
        d = fixture_by_name(name)
        if d is None:
            raise click.BadParameter(f"unknown fixture {name!r}")
        out.append(d)
    return out


@universal.command("verify")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--targets", callback=_targets, default=None,
              help="Comma-separated fixture names (default: every fixture and its 2-cell dual).")
@with_common
def universal_verify(path, targets, bound, fmt):
    """Check the universal property against a family of target bicategories."""
    def body():
        m = _model(_load(path))
        limits = {} if bound is None else {"functor_limit": bound, "transformation_limit": bound}
        rep = verify_localization(m, targets, **limits)
        return _emit(rep, fmt)
    _run(body)


# ---------------------------------------------------------------------------
# elevators


@main.command("render-elevator")
@click.argument("path", type=click.Path(dir_okay=False))
@click.argument("names", nargs=-1)
@click.option("--normal", is_flag=True, help="Render the normal form instead of the term.")
def render_elevator(path, names, normal):
    """Draw TERMS of a computad as fixed-width elevator grids."""
    def body():
        pres = _load(path)
        chosen = list(names) or list(pres.terms)
        for name in chosen:
            if name not in pres.terms:
                raise Abort(f"no term named {name!r}")
        for k, name in enumerate(chosen):
            t = pres.terms[name]
            if k:
                click.echo("")
            click.echo(f"term: {name}")
            click.echo(render(normalize(t) if normal else t), nl=False)
        return 0
    _run(body)


if __name__ == "__main__":  # pragma: no cover
    main()
