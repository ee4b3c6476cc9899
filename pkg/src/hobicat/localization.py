"""Homotopy bicategories, the replacement pseudofunctor and the universal property.

A 2-cell of ``Ho`` is a class of homotopies.  Classes are stored by their
signature: the tuple of hats over a fixed basis of admissible strict
2-functors.  Composition acts componentwise, so ``Ho`` is built as a finite
bicategory embedded in the product of the basis targets, and every generic
checker (pseudofunctor, pseudonatural, modification) applies to it directly.
Two homotopies with equal signatures are identified, which is exact only as far
as the basis reaches (see ``SOUNDNESS_CAVEAT``).
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace as dc_replace
from typing import Iterable, Sequence

from .bicat import FiniteBicategory, check_bicategory, find_equivalence_witness
from .fixtures import target_family
from .functors import (
    Modification, Pseudofunctor, PseudonaturalTransformation, check_modification,
    check_pseudofunctor, check_pseudonatural, compose_functors, enumerate_strict_functors,
)
from .homotopy import (
    LEFT, RIGHT, SOUNDNESS_CAVEAT, Homotopy, HomotopyError, HomotopySequence,
    admissible_functors, cell_homotopy, context, enumerate_homotopies, hat, is_fibrant,
    is_w_homotopy, left_to_right, phi_Q, sigma_to_fibrant_w, signature, vcompose_w,
    whisker_homotopy, xi_Q,
)
from .model import ModelBicategory, ModelError
from .report import Report

SCOPES = ("sigma", "fc")


class LocalizationError(ValueError):
    """A construction step failed; the message names the step."""


@dataclass
class HoBicategory:
    scope: str
    model: ModelBicategory
    bicat: FiniteBicategory
    functors: tuple[Pseudofunctor, ...]
    signature_of: dict[str, tuple]
    representative: dict[str, object]
    projection: Pseudofunctor | None = None
    _by_key: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def class_name(self, f: str, g: str, sig: tuple) -> str:
        try:
            return self._by_key[(f, g, sig)]
        except KeyError:
            raise LocalizationError(f"no class {f} => {g} with that signature") from None

    def class_of(self, hom) -> str:
        return self.class_name(hom.source, hom.target, signature(self.model, hom, self.functors))

    def cell_class(self, mu: str) -> str:
        """The class of a 2-cell of the base between arrows of ``Ho``."""
        b = self.model.base
        f, g = b.cells[mu]
        return self.class_name(f, g, tuple(fn(mu) for fn in self.functors))

    def remember(self, name: str, hom) -> None:
        with self._lock:
            self.representative.setdefault(name, hom)


# ---------------------------------------------------------------------------
# Ho(C, W) and Ho(C)


def build_ho(m: ModelBicategory, scope: str = "fc", functors: Sequence[Pseudofunctor] | None = None,
             objects: Iterable[str] | None = None) -> HoBicategory:
    """``Ho(C, W)`` (``scope="sigma"``) or ``Ho(C)`` (``scope="fc"``) with its projection.

    ``objects`` restricts the carrier (and the cylinders) to a full
    sub-bicategory; the fc scope always uses the fibrant-cofibrant objects.
    """
    if scope not in SCOPES:
        raise LocalizationError(f"unknown scope {scope!r}")
    b = m.base
    functors = tuple(admissible_functors(m) if functors is None else functors)
    if scope == "fc":
        objs = tuple(x for x in b.objects if x in set(m.fc_objects()))
    else:
        objs = tuple(b.objects if objects is None else [x for x in b.objects if x in set(objects)])
    inside = set(objs)
    arrows = {f: xy for f, xy in b.arrows.items() if xy[0] in inside and xy[1] in inside}
    sig = lambda hom: signature(m, hom, functors)

    found: dict[tuple, object] = {}

    def add(f, g, s, rep):
        found.setdefault((f, g, s), rep)

    for f in sorted(arrows):
        for g in b.hom(*arrows[f]):
            for mu in b.cells_between(f, g):
                add(f, g, tuple(fn(mu) for fn in functors), cell_homotopy(m, mu))
            for hom in enumerate_homotopies(m, f, g):
                c = hom.cylinder
                if scope == "sigma":
                    if c.middle in inside and c.base in inside:
                        add(f, g, sig(hom), hom)
                    continue
                try:
                    rep, _ = sigma_to_fibrant_w(m, hom)
                except (ModelError, HomotopyError) as exc:
                    raise LocalizationError(f"fibrant representative of {hom}: {exc}") from exc
                add(f, g, sig(hom), rep)
    # cells of the base get fibrant w-representatives in the fc scope too
    if scope == "fc":
        for key, rep in list(found.items()):
            if not (is_w_homotopy(m, rep) and is_fibrant(m, rep)):
                found[key], _ = sigma_to_fibrant_w(m, rep)

    d_by = {fn.name: fn.target for fn in functors}

    def vsig(s2, s1):
        return tuple(d_by[fn.name].v(a, c) for fn, a, c in zip(functors, s2, s1))

    def hsig(s2, s1):
        return tuple(d_by[fn.name].h(a, c) for fn, a, c in zip(functors, s2, s1))

    # vertical closure
    changed = True
    while changed:
        changed = False
        for (f, g, s1), r1 in list(found.items()):
            for (g2, h, s2), r2 in list(found.items()):
                if g2 != g:
                    continue
                key = (f, h, vsig(s2, s1))
                if key in found:
                    continue
                found[key] = _vertical_rep(m, scope, r1, r2)
                changed = True

    names: dict[tuple, str] = {}
    per_hom: dict[tuple, int] = {}
    base_name = {}
    for mu in sorted(b.cells):
        f, g = b.cells[mu]
        if f in arrows:
            base_name.setdefault((f, g, tuple(fn(mu) for fn in functors)), f"[{mu}]")
    for key in sorted(found, key=lambda k: (k[0], k[1], k[2])):
        if key in base_name:
            names[key] = base_name[key]
        else:
            k = per_hom.get(key[:2], 0)
            per_hom[key[:2]] = k + 1
            names[key] = f"[{key[0]}~{key[1]}#{k}]"

    cells = {name: (f, g) for (f, g, _), name in names.items()}
    id2 = {f: names[(f, f, tuple(fn.target.id2[fn(f)] for fn in functors))] for f in arrows}
    vcomp, hcomp = {}, {}
    keys = list(names)
    for k1 in keys:
        for k2 in keys:
            if k2[0] == k1[1]:
                vcomp[(names[k2], names[k1])] = names[(k1[0], k2[1], vsig(k2[2], k1[2]))]
            if arrows[k2[0]][0] == arrows[k1[0]][1]:
                key = (b.c(k2[0], k1[0]), b.c(k2[1], k1[1]), hsig(k2[2], k1[2]))
                if key not in names:
                    raise LocalizationError(f"horizontal composite of {names[k2]} and {names[k1]} "
                                            "has no class")
                hcomp[(names[k2], names[k1])] = names[key]
    comp = {(g, f): h for (g, f), h in b.comp.items() if f in arrows and g in arrows}
    label = "Ho" if scope == "fc" else "HoW"
    table = FiniteBicategory(f"{label}({m.name})", objs, arrows, cells, comp,
                             {x: b.unit[x] for x in objs}, vcomp, hcomp, id2)
    ho = HoBicategory(scope, m, table, functors, {n: k[2] for k, n in names.items()},
                      {n: found[k] for k, n in names.items()}, None,
                      {k: n for k, n in names.items()})
    ho.projection = _projection(ho, objs, arrows)
    return ho


def _vertical_rep(m, scope, first, second):
    if scope == "sigma":
        steps = lambda h: h.steps if isinstance(h, HomotopySequence) else (h,)
        return HomotopySequence(steps(first) + steps(second))
    try:
        out, _ = vcompose_w(m, first, second)
        if not is_fibrant(m, out):
            out, _ = sigma_to_fibrant_w(m, out)
    except ModelError as exc:
        raise LocalizationError(f"vertical composition: {exc}") from exc
    return out


def _projection(ho: HoBicategory, objs, arrows) -> Pseudofunctor:
    b = ho.model.base
    src = _full_sub(b, objs, arrows, f"{b.name}|{ho.scope}")
    cell = {mu: ho.cell_class(mu) for mu in src.cells}
    return Pseudofunctor(src, ho.bicat, {x: x for x in objs}, {f: f for f in arrows}, cell,
                         name="i")


def _full_sub(b: FiniteBicategory, objs, arrows, name) -> FiniteBicategory:
    if set(objs) == set(b.objects):
        return b
    cells = {a: fg for a, fg in b.cells.items() if fg[0] in arrows}
    return FiniteBicategory(
        name, tuple(objs), arrows, cells,
        {k: v for k, v in b.comp.items() if k[0] in arrows and k[1] in arrows},
        {x: b.unit[x] for x in objs},
        {k: v for k, v in b.vcomp.items() if k[0] in cells and k[1] in cells},
        {k: v for k, v in b.hcomp.items() if k[0] in cells and k[1] in cells},
        {f: b.id2[f] for f in arrows})


def horizontal_representative(ho: HoBicategory, outer: str, inner: str):
    """A representative of ``outer * inner`` built from whiskers and vertical composition."""
    m, b = ho.model, ho.bicat
    k, h = ho.representative[outer], ho.representative[inner]
    f, g = b.cells[inner]
    f2, _ = b.cells[outer]
    left = whisker_homotopy(m, "post", h, f2) if isinstance(h, Homotopy) else HomotopySequence(
        tuple(whisker_homotopy(m, "post", s, f2) for s in h.steps))
    right = whisker_homotopy(m, "pre", k, g) if isinstance(k, Homotopy) else HomotopySequence(
        tuple(whisker_homotopy(m, "pre", s, g) for s in k.steps))
    if ho.scope == "sigma":
        return _vertical_rep(m, "sigma", left, right)
    left, _ = sigma_to_fibrant_w(m, left)
    right, _ = sigma_to_fibrant_w(m, right)
    return _vertical_rep(m, "fc", left, right)


def comparison(source: HoBicategory, target: HoBicategory, name: str = "#") -> Pseudofunctor:
    """Identity on objects and arrows, re-classing on 2-cells (``#`` or ``inc``).

    Both sides share the signature basis, so a class maps to the class with
    the same signature; this is well defined because the basis functors
    restrict along the inclusion.
    """
    if [fn.name for fn in source.functors] != [fn.name for fn in target.functors]:
        raise LocalizationError("comparison needs a shared signature basis")
    s, t = source.bicat, target.bicat
    missing = set(s.objects) - set(t.objects)
    if missing:
        raise LocalizationError(f"objects {sorted(missing)} are not in {t.name}")
    cell = {c: target.class_name(*s.cells[c], source.signature_of[c]) for c in s.cells}
    return Pseudofunctor(s, t, {x: x for x in s.objects}, {f: f for f in s.arrows}, cell, name=name)


def reflect(ho: HoBicategory) -> dict[tuple[str, str], list[frozenset]]:
    """Hom-sets of the category obtained by identifying arrows joined by a 2-cell."""
    b = ho.bicat
    out = {}
    for x in b.objects:
        for y in b.objects:
            parts: list[set] = []
            for f in b.hom(x, y):
                linked = [p for p in parts if any(b.cells_between(f, g) or b.cells_between(g, f)
                                                  for g in p)]
                merged = {f}.union(*linked) if linked else {f}
                parts = [p for p in parts if p not in linked] + [merged]
            out[(x, y)] = sorted((frozenset(p) for p in parts), key=sorted)
    return out


# ---------------------------------------------------------------------------
# the replacement pseudofunctor r


def _xi_homotopy(m: ModelBicategory, x: str) -> Homotopy:
    b = m.base
    ux = b.unit[x]
    stage = xi_Q(m, cell_homotopy(m, b.id2[ux]), ux)
    qf = m.replacement.Q_arrow(ux).replaced
    return _through_dual(m, stage, lambda op, h: xi_Q(op, h, qf))


def _phi_homotopy(m: ModelBicategory, f: str, g: str) -> Homotopy:
    b = m.base
    gf = b.c(g, f)
    stage = phi_Q(m, cell_homotopy(m, b.id2[gf]), f, g, gf)
    rep = m.replacement
    qf, qg, ql = (rep.Q_arrow(a).replaced for a in (f, g, gf))
    # in the dual, Qg * Qf reads as Qf composed after Qg
    return _through_dual(m, stage, lambda op, h: phi_Q(op, h, qg, qf, ql))


def _through_dual(m, stage: Homotopy, dual_step) -> Homotopy:
    """Switch a left homotopy to the right and apply the dual construction."""
    right = left_to_right(m, stage)
    as_left = dc_replace(right, side=LEFT)
    return dc_replace(dual_step(m.op(), as_left), side=RIGHT)


@dataclass
class ReplacementPseudofunctor:
    functor: Pseudofunctor
    ho: HoBicategory
    report: Report


def build_r(m: ModelBicategory, ho: HoBicategory | None = None) -> ReplacementPseudofunctor:
    """``r: C -> Ho(C)``: ``X -> RQX``, ``f -> RQf``, ``mu -> i(RQmu)``."""
    ho = ho or build_ho(m, "fc")
    b = m.base
    rep = m.replacement
    try:
        obj = {x: rep.R_object(rep.Q_object(x).replaced).replaced for x in b.objects}
        qa = {f: rep.Q_arrow(f).replaced for f in b.arrows}
        arr = {f: rep.R_arrow(qa[f]).replaced for f in b.arrows}
        cell = {mu: ho.cell_class(rep.R_cell(rep.Q_cell(mu))) for mu in b.cells}
    except ModelError as exc:
        raise LocalizationError(f"replacement: {exc}") from exc
    xi, phi = {}, {}
    try:
        for x in b.objects:
            xi[x] = ho.class_of(_xi_homotopy(m, x))
        for (g, f) in b.comp:
            phi[(g, f)] = ho.class_of(_phi_homotopy(m, f, g))
    except (ModelError, HomotopyError) as exc:
        raise LocalizationError(f"structure cells of r: {exc}") from exc
    fn = Pseudofunctor(b, ho.bicat, obj, arr, cell, xi, phi, name="r")
    report = check_pseudofunctor(fn)
    return ReplacementPseudofunctor(fn, ho, report)


# ---------------------------------------------------------------------------
# extensions along the projection


@dataclass
class Extension:
    kind: str
    value: object
    report: Report


def extend(kind: str, item, ho: HoBicategory) -> Extension:
    """Extend a functor, transformation or modification out of ``C`` to ``ho``."""
    rep = Report(f"extension of {getattr(item, 'name', kind)}")
    if kind == "functor":
        fn = item
        d = fn.target
        rep.check("weak-to-equivalence")
        for w in sorted(ho.model.W):
            if find_equivalence_witness(d, fn(w)) is None:
                rep["weak-to-equivalence"].violate(w)
        if not rep.ok:
            return Extension(kind, None, rep)
        h = ho.bicat
        cell = {}
        for name, hom in ho.representative.items():
            cell[name] = hat(fn, hom)
        ext = Pseudofunctor(h, d, {x: fn.obj[x] for x in h.objects},
                            {f: fn.arr[f] for f in h.arrows}, cell,
                            {x: fn.xi[x] for x in h.objects},
                            {k: fn.phi[k] for k in h.comp}, name=fn.name + "'")
        rep.extend(check_pseudofunctor(ext), "extension ")
        rep.check("restricts-to-F")
        proj = ho.projection
        for mu in proj.source.cells:
            if ext.cell[proj.cell[mu]] != fn.cell[mu]:
                rep["restricts-to-F"].violate(mu)
        return Extension(kind, ext, rep)
    if kind == "transformation":
        t, src, tgt = item
        h = src.source
        ext = PseudonaturalTransformation(src, tgt, {x: t.comp[x] for x in h.objects},
                                          {f: t.cells[f] for f in h.arrows}, name=t.name + "'")
        rep.extend(check_pseudonatural(ext), "extension ")
        return Extension(kind, ext, rep)
    if kind == "modification":
        mod, src, tgt = item
        h = src.source.source
        ext = Modification(src, tgt, {x: mod.comp[x] for x in h.objects}, name=mod.name + "'")
        rep.extend(check_modification(ext), "extension ")
        return Extension(kind, ext, rep)
    raise LocalizationError(f"unknown extension kind {kind!r}")


# ---------------------------------------------------------------------------
# the counit e^F: Fbar r => F


def build_counit(fn: Pseudofunctor, fbar: Pseudofunctor, r: ReplacementPseudofunctor
                 ) -> PseudonaturalTransformation:
    """``e^F_X = Fp_X * (Fi_QX)^-1`` with ``e^F_f`` pasted from the two replacement squares."""
    m = r.ho.model
    b, d = m.base, fn.target
    rep = m.replacement
    phi = lambda g, f: fn.phi[(g, f)]
    tilde = lambda cell, g_out, f_in, h_out, l_in: d.v(
        d.inv(phi(h_out, l_in)), fn(cell), phi(g_out, f_in))
    comp, inverse, witnesses = {}, {}, {}
    for x in b.objects:
        qx = rep.Q_object(x)
        ix = rep.R_object(qx.replaced)
        w = find_equivalence_witness(d, fn(ix.comparison))
        if w is None:
            raise LocalizationError(f"F{ix.comparison} has no equivalence witness")
        witnesses[x] = w
        comp[x] = d.c(fn(qx.comparison), w.quasiinverse)
    cells = {}
    for f, (x, y) in b.arrows.items():
        qx, qy = rep.Q_object(x), rep.Q_object(y)
        qf = rep.Q_arrow(f)
        ix, iy = rep.R_object(qx.replaced), rep.R_object(qy.replaced)
        rqf = rep.R_arrow(qf.replaced)
        wx, wy = witnesses[x], witnesses[y]
        px, py = qx.comparison, qy.comparison
        # rho_f: p_Y * Qf => f * p_X and lambda: i_QY * Qf => RQf * i_QX
        rho = tilde(qf.cell, py, qf.replaced, f, px)
        lam = tilde(rqf.cell, iy.comparison, qf.replaced, rqf.replaced, ix.comparison)
        fpy, fqf, finv_x, finv_y = fn(py), fn(qf.replaced), wx.quasiinverse, wy.quasiinverse
        cells[f] = d.v(
            d.w(fpy, finv_y, fn(rqf.replaced), wx.counit),
            d.w(fpy, finv_y, lam, finv_x),
            d.w(fpy, wy.unit, fqf, finv_x),
            d.w(d.inv(rho), finv_x),
        )
    return PseudonaturalTransformation(compose_functors(fbar, r.functor), fn, comp, cells,
                                       name=f"e^{fn.name}")


# ---------------------------------------------------------------------------
# the universal property


def enumerate_transformations(src: Pseudofunctor, tgt: Pseudofunctor, limit: int | None = None):
    """Pseudonatural transformations ``src => tgt`` passing every check, in name order."""
    s, d = src.source, src.target
    objs = list(s.objects)
    arrows = sorted(s.arrows)
    count = 0
    for comps in itertools.product(*[d.hom(src.obj[x], tgt.obj[x]) for x in objs]):
        comp = dict(zip(objs, comps))
        options = [d.isos(d.c(tgt.arr[f], comp[s.src(f)]), d.c(comp[s.tgt(f)], src.arr[f]))
                   for f in arrows]
        for choice in itertools.product(*options):
            t = PseudonaturalTransformation(src, tgt, comp, dict(zip(arrows, choice)),
                                            name=f"t{count}")
            if check_pseudonatural(t).ok:
                yield t
                count += 1
                if limit is not None and count >= limit:
                    return


def enumerate_modifications(src: PseudonaturalTransformation, tgt: PseudonaturalTransformation):
    s, d = src.source.source, src.source.target
    objs = list(s.objects)
    for comps in itertools.product(*[d.cells_between(src.comp[x], tgt.comp[x]) for x in objs]):
        mod = Modification(src, tgt, dict(zip(objs, comps)))
        if check_modification(mod).ok:
            yield mod


def whisker_transformation(t: PseudonaturalTransformation, r: Pseudofunctor
                           ) -> PseudonaturalTransformation:
    """``t r``: components at ``rX`` and cells at ``rf`` pasted with the structure of ``r``."""
    src, tgt = compose_functors(t.source, r), compose_functors(t.target, r)
    return PseudonaturalTransformation(src, tgt, {x: t.comp[r.obj[x]] for x in r.source.objects},
                                       {f: t.cells[r.arr[f]] for f in r.source.arrows},
                                       name=f"{t.name}r")


def whisker_modification(mod: Modification, r: Pseudofunctor, src, tgt) -> Modification:
    return Modification(src, tgt, {x: mod.comp[r.obj[x]] for x in r.source.objects},
                        name=f"{mod.name}r")


def verify_localization(m: ModelBicategory, targets: Sequence[FiniteBicategory] | None = None,
                        functor_limit: int = 6, transformation_limit: int = 4,
                        workers: int = 1) -> Report:
    """Every step of the universal property, checked over a family of targets."""
    rep = Report(f"localization of {m.name}")
    try:
        ho = build_ho(m, "fc")
        r = build_r(m, ho)
    except LocalizationError as exc:
        rep.check("construction").violate(str(exc))
        return rep
    rep.extend(check_bicategory(ho.bicat), "Ho ")
    rep.extend(r.report, "r ")
    b = m.base
    chk = rep.check("r maps W to equivalences")
    for w in sorted(m.W):
        if find_equivalence_witness(ho.bicat, r.functor(w)) is None:
            chk.violate(w)
    chk = rep.check("r restricted to fc equals i")
    proj = ho.projection
    for f in proj.source.arrows:
        if r.functor.arr[f] != f:
            chk.violate(f)
    for mu in proj.source.cells:
        if r.functor.cell[mu] != proj.cell[mu]:
            chk.violate(mu)
    for x in proj.source.objects:
        if r.functor.xi[x] != ho.bicat.id2[ho.bicat.unit[x]]:
            chk.violate(("xi", x))
    for key in proj.source.comp:
        g, f = key
        if r.functor.phi[key] != ho.bicat.id2[b.c(g, f)]:
            chk.violate(("phi",) + key)
    _check_fc_weak_equivalences(rep, ho)
    _check_r_prime_inc(rep, m, ho, r)
    rep.fact("soundness", SOUNDNESS_CAVEAT)
    rep.fact("uniqueness", "bounded search, complete for finite backends")

    targets = list(target_family() if targets is None else targets)

    def per_target(d):
        sub = Report(d.name)
        _verify_target(sub, m, ho, r, d, functor_limit, transformation_limit)
        return sub

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            subs = list(pool.map(per_target, targets))
    else:
        subs = [per_target(d) for d in targets]
    for d, sub in zip(targets, subs):
        rep.extend(sub, f"{d.name} ")
    return rep


def _check_fc_weak_equivalences(rep: Report, ho: HoBicategory) -> None:
    chk = rep.check("i sends fc weak equivalences to equivalences")
    for w in sorted(ho.model.W):
        if w in ho.bicat.arrows and find_equivalence_witness(ho.bicat, w) is None:
            chk.violate(w)


def _check_r_prime_inc(rep: Report, m: ModelBicategory, ho: HoBicategory,
                       r: ReplacementPseudofunctor) -> None:
    """``r' inc`` is the identity of ``Ho(C)``: objects, arrows and representatives."""
    chk = rep.check("r' inc is the identity")
    h = ho.bicat
    for x in h.objects:
        if r.functor.obj[x] != x:
            chk.violate(x)
    for f in h.arrows:
        if r.functor.arr[f] != f:
            chk.violate(f)
    if not chk.ok:
        return
    for name, hom in sorted(ho.representative.items()):
        try:
            value = hat(r.functor, hom)
        except HomotopyError as exc:
            chk.violate((name, str(exc)))
            continue
        if value != name:
            chk.violate((name, value))


def _verify_target(rep: Report, m, ho, r, d, functor_limit, transformation_limit) -> None:
    b = m.base
    keep = lambda f, ff: not m.is_w(f) or find_equivalence_witness(d, ff) is not None
    fns = list(enumerate_strict_functors(b, d, keep, None if functor_limit is None
                                         else functor_limit + 1))
    item1 = rep.check("item 1")
    if functor_limit is not None and len(fns) > functor_limit:
        fns = fns[:functor_limit]
        item1.inconclusive(f"more than {functor_limit} functors into {d.name}")
    rep.fact("functors", len(fns))
    bars = []
    for k, fn in enumerate(fns):
        fn.name = f"F{k}"
        ext = extend("functor", fn, ho)
        if not ext.report.ok:
            item1.violate((fn.name, "extension", _first_failure(ext.report)))
            continue
        fbar = ext.value
        try:
            e = build_counit(fn, fbar, r)
        except LocalizationError as exc:
            item1.violate((fn.name, str(exc)))
            continue
        pn = check_pseudonatural(e)
        if not pn.ok:
            item1.violate((fn.name, "e^F", _first_failure(pn)))
        elif dict(pn.facts).get("equivalence") != "yes":
            item1.violate((fn.name, "e^F is not an equivalence"))
        bars.append(fbar)
    item2, item3 = rep.check("item 2"), rep.check("item 3")
    pairs = [(x, y) for x in bars for y in bars][: transformation_limit * transformation_limit]
    tested = {"transformations": 0, "modifications": 0}
    for fbar, gbar in pairs:
        fr, gr = compose_functors(fbar, r.functor), compose_functors(gbar, r.functor)
        thetas = list(enumerate_transformations(fr, gr, transformation_limit))
        tested["transformations"] += len(thetas)
        for theta in thetas:
            tbar = extend("transformation", (theta, fbar, gbar), ho)
            if not tbar.report.ok:
                item2.violate((fbar.name, gbar.name, theta.name, _first_failure(tbar.report)))
                continue
            back = whisker_transformation(tbar.value, r.functor)
            iso = next((mm for mm in enumerate_modifications(back, _retype(theta, back))
                        if all(d.is_invertible(c) for c in mm.comp.values())), None)
            if iso is None:
                item2.violate((fbar.name, gbar.name, theta.name, "no invertible modification"))
        for t1, t2 in itertools.product(thetas[:2], repeat=2):
            b1 = extend("transformation", (t1, fbar, gbar), ho).value
            b2 = extend("transformation", (t2, fbar, gbar), ho).value
            if b1 is None or b2 is None:
                continue
            w1, w2 = whisker_transformation(b1, r.functor), whisker_transformation(b2, r.functor)
            for rho in enumerate_modifications(w1, w2):
                tested["modifications"] += 1
                sols = [mm for mm in enumerate_modifications(b1, b2)
                        if whisker_modification(mm, r.functor, w1, w2).comp == rho.comp]
                if len(sols) != 1:
                    item3.violate((t1.name, t2.name, f"{len(sols)} extensions"))
    for key, value in tested.items():
        rep.fact(key, value)


def _retype(t: PseudonaturalTransformation, like: PseudonaturalTransformation):
    return PseudonaturalTransformation(like.source, like.target, t.comp, t.cells, t.name)


def _first_failure(rep: Report):
    for c in rep.checks:
        if not c.ok:
            return (c.name, c.counterexample)
    return None
