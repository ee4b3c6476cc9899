"""Pseudofunctors, pseudonatural transformations and modifications between finite backends.

Structure cells use the composition-table key order: ``phi[(g, f)]`` is the
comparison ``Fg * Ff => F(g * f)`` and ``xi[X]`` is ``id_FX => F(id_X)``.
A transformation ``theta: F => G`` has components ``theta.comp[X]: FX -> GX``
and invertible cells ``theta.cells[f]: Gf * theta_X => theta_Y * Ff``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .bicat import FiniteBicategory, find_equivalence_witness
from .cells import Computad, ElevatorTerm, Gen2, Layer, Path
from .report import Report


class FunctorError(ValueError):
    """Raised for unmapped items or ill-typed functor data."""


@dataclass
class Pseudofunctor:
    source: FiniteBicategory
    target: FiniteBicategory
    obj: Mapping[str, str]
    arr: Mapping[str, str]
    cell: Mapping[str, str]
    xi: Mapping[str, str] = field(default_factory=dict)
    phi: Mapping[tuple[str, str], str] = field(default_factory=dict)
    name: str = "F"

    def __post_init__(self):
        d = self.target
        if not self.xi:
            self.xi = {x: d.id2[d.unit[self.obj[x]]] for x in self.source.objects}
        if not self.phi:
            s = self.source
            self.phi = {(g, f): d.id2[d.c(self.arr[g], self.arr[f])]
                        for (g, f) in s.comp}

    def __call__(self, item: str) -> str:
        for table in (self.cell, self.arr, self.obj):
            if item in table:
                return table[item]
        raise FunctorError(f"{self.name} does not map {item!r}")

    @property
    def is_strict(self) -> bool:
        d = self.target
        return (all(self.xi[x] == d.id2[d.unit[self.obj[x]]] for x in self.source.objects)
                and all(d.cells[c][0] == d.cells[c][1] and c == d.id2[d.cells[c][0]]
                        for c in self.phi.values()))


def identity_functor(b: FiniteBicategory) -> Pseudofunctor:
    return Pseudofunctor(b, b, {x: x for x in b.objects}, {f: f for f in b.arrows},
                         {a: a for a in b.cells}, name="Id")


def compose_functors(g: Pseudofunctor, f: Pseudofunctor) -> Pseudofunctor:
    """``G ∘ F`` with the usual composite structure cells."""
    if f.target is not g.source and f.target.name != g.source.name:
        raise FunctorError("functors are not composable")
    d = g.target
    obj = {x: g.obj[f.obj[x]] for x in f.source.objects}
    arr = {a: g.arr[f.arr[a]] for a in f.source.arrows}
    cell = {c: g.cell[f.cell[c]] for c in f.source.cells}
    xi = {x: d.v(g.cell[f.xi[x]], g.xi[f.obj[x]]) for x in f.source.objects}
    phi = {(k, h): d.v(g.cell[f.phi[(k, h)]], g.phi[(f.arr[k], f.arr[h])])
           for (k, h) in f.source.comp}
    return Pseudofunctor(f.source, d, obj, arr, cell, xi, phi, name=f"{g.name}{f.name}")


def check_pseudofunctor(fn: Pseudofunctor) -> Report:
    """Typing, hom functoriality, invertibility and P1, P2, P3, Nφ, exhaustively."""
    s, d = fn.source, fn.target
    rep = Report(f"pseudofunctor {fn.name}")
    for n in ("typing", "hom-functorial", "invertible", "P1", "P2", "P3", "Nphi"):
        rep.check(n)
    try:
        for f, (x, y) in s.arrows.items():
            if d.arrows[fn.arr[f]] != (fn.obj[x], fn.obj[y]):
                rep["typing"].violate(f)
        for a, (f, g) in s.cells.items():
            if d.cells[fn.cell[a]] != (fn.arr[f], fn.arr[g]):
                rep["typing"].violate(a)
        for x in s.objects:
            if d.cells[fn.xi[x]] != (d.unit[fn.obj[x]], fn.arr[s.unit[x]]):
                rep["typing"].violate(("xi", x))
        for (g, f) in s.comp:
            want = (d.c(fn.arr[g], fn.arr[f]), fn.arr[s.comp[(g, f)]])
            if d.cells[fn.phi[(g, f)]] != want:
                rep["typing"].violate(("phi", g, f))
    except KeyError as exc:
        rep["typing"].violate(("unmapped", str(exc)))
    if not rep["typing"].ok:
        return rep

    for (b, a), c in sorted(s.vcomp.items()):
        if d.v(fn.cell[b], fn.cell[a]) != fn.cell[c]:
            rep["hom-functorial"].violate(("vcomp", b, a))
    for f in sorted(s.arrows):
        if fn.cell[s.id2[f]] != d.id2[fn.arr[f]]:
            rep["hom-functorial"].violate(("identity", f))

    for x in s.objects:
        if not d.is_invertible(fn.xi[x]):
            rep["invertible"].violate(("xi", x))
    for key in sorted(fn.phi):
        if not d.is_invertible(fn.phi[key]):
            rep["invertible"].violate(("phi",) + key)

    for f in sorted(s.arrows):
        x, y = s.arrows[f]
        ff = fn.arr[f]
        if d.v(fn.phi[(f, s.unit[x])], d.w(ff, fn.xi[x])) != d.id2[ff]:
            rep["P1"].violate(f)
        if d.v(fn.phi[(s.unit[y], f)], d.w(fn.xi[y], ff)) != d.id2[ff]:
            rep["P2"].violate(f)

    arrows = sorted(s.arrows)
    for f in arrows:
        for g in arrows:
            if s.src(g) != s.tgt(f):
                continue
            for h in arrows:
                if s.src(h) != s.tgt(g):
                    continue
                lhs = d.v(fn.phi[(h, s.comp[(g, f)])], d.w(fn.arr[h], fn.phi[(g, f)]))
                rhs = d.v(fn.phi[(s.comp[(h, g)], f)], d.w(fn.phi[(h, g)], fn.arr[f]))
                if lhs != rhs:
                    rep["P3"].violate((f, g, h))

    cells = sorted(s.cells)
    for alpha in cells:
        for beta in cells:
            f1, f2 = s.cells[alpha]
            g1, g2 = s.cells[beta]
            if s.src(g1) != s.tgt(f1):
                continue
            lhs = d.v(fn.cell[s.hcomp[(beta, alpha)]], fn.phi[(g1, f1)])
            rhs = d.v(fn.phi[(g2, f2)], d.h(fn.cell[beta], fn.cell[alpha]))
            if lhs != rhs:
                rep["Nphi"].violate((alpha, beta))
    return rep


# ---------------------------------------------------------------------------
# transformations and modifications


@dataclass
class PseudonaturalTransformation:
    source: Pseudofunctor
    target: Pseudofunctor
    comp: Mapping[str, str]
    cells: Mapping[str, str]
    name: str = "theta"


@dataclass
class Modification:
    source: PseudonaturalTransformation
    target: PseudonaturalTransformation
    comp: Mapping[str, str]
    name: str = "rho"


def identity_transformation(fn: Pseudofunctor) -> PseudonaturalTransformation:
    d = fn.target
    comp = {x: d.unit[fn.obj[x]] for x in fn.source.objects}
    cells = {f: d.id2[fn.arr[f]] for f in fn.source.arrows}
    return PseudonaturalTransformation(fn, fn, comp, cells, name="id")


def check_pseudonatural(t: PseudonaturalTransformation) -> Report:
    """PN0, PN1, PN2 plus invertibility; reports whether every component is an equivalence."""
    fn, gn = t.source, t.target
    s, d = fn.source, fn.target
    rep = Report(f"pseudonatural {t.name}")
    for n in ("typing", "invertible", "PN0", "PN1", "PN2"):
        rep.check(n)
    for x in s.objects:
        if d.arrows.get(t.comp.get(x)) != (fn.obj[x], gn.obj[x]):
            rep["typing"].violate(x)
    if rep["typing"].ok:
        for f, (x, y) in s.arrows.items():
            want = (d.c(gn.arr[f], t.comp[x]), d.c(t.comp[y], fn.arr[f]))
            if d.cells.get(t.cells.get(f)) != want:
                rep["typing"].violate(f)
    if not rep["typing"].ok:
        return rep
    for f in sorted(s.arrows):
        if not d.is_invertible(t.cells[f]):
            rep["invertible"].violate(f)
    for x in s.objects:
        lhs = d.w(t.comp[x], fn.xi[x])
        rhs = d.v(t.cells[s.unit[x]], d.w(gn.xi[x], t.comp[x]))
        if lhs != rhs:
            rep["PN0"].violate(x)
    arrows = sorted(s.arrows)
    for f in arrows:
        x = s.src(f)
        for g in arrows:
            if s.src(g) != s.tgt(f):
                continue
            z = s.tgt(g)
            lhs = d.v(d.w(t.comp[z], fn.phi[(g, f)]), d.w(t.cells[g], fn.arr[f]),
                      d.w(gn.arr[g], t.cells[f]))
            rhs = d.v(t.cells[s.comp[(g, f)]], d.w(gn.phi[(g, f)], t.comp[x]))
            if lhs != rhs:
                rep["PN1"].violate((f, g))
    for alpha in sorted(s.cells):
        f, f2 = s.cells[alpha]
        x, y = s.arrows[f]
        lhs = d.v(t.cells[f2], d.w(gn.cell[alpha], t.comp[x]))
        rhs = d.v(d.w(t.comp[y], fn.cell[alpha]), t.cells[f])
        if lhs != rhs:
            rep["PN2"].violate(alpha)
    equivalence = all(find_equivalence_witness(d, t.comp[x]) is not None for x in s.objects)
    rep.fact("equivalence", "yes" if equivalence else "no")
    return rep


def is_equivalence(t: PseudonaturalTransformation) -> bool:
    d = t.source.target
    return all(find_equivalence_witness(d, t.comp[x]) is not None for x in t.source.source.objects)


def check_modification(m: Modification) -> Report:
    t, e = m.source, m.target
    fn, gn = t.source, t.target
    s, d = fn.source, fn.target
    rep = Report(f"modification {m.name}")
    rep.check("typing")
    rep.check("PM")
    for x in s.objects:
        if d.cells.get(m.comp.get(x)) != (t.comp[x], e.comp[x]):
            rep["typing"].violate(x)
    if not rep["typing"].ok:
        return rep
    for f in sorted(s.arrows):
        x, y = s.arrows[f]
        lhs = d.v(d.w(m.comp[y], fn.arr[f]), t.cells[f])
        rhs = d.v(e.cells[f], d.w(gn.arr[f], m.comp[x]))
        if lhs != rhs:
            rep["PM"].violate(f)
    return rep


# ---------------------------------------------------------------------------
# strict 2-functor enumeration


def enumerate_strict_functors(source: FiniteBicategory, target: FiniteBicategory,
                              arrow_filter: Callable[[str, str], bool] | None = None,
                              limit: int | None = None) -> Iterator[Pseudofunctor]:
    """Every strict 2-functor ``source -> target`` in a fixed order.

    ``arrow_filter(f, Ff)`` prunes arrow images early (used to demand that
    weak equivalences land in quasiequivalences).
    """
    s, d = source, target
    objs = list(s.objects)
    # identities first, then by name, so unit constraints fix arrows early
    unit_arrows = [s.unit[x] for x in objs]
    arrows = unit_arrows + sorted(f for f in s.arrows if f not in unit_arrows)
    cells = sorted(s.cells)
    count = 0

    def assign_objects(k, om):
        if k == len(objs):
            yield from assign_arrows(0, om, {})
            return
        for y in d.objects:
            om[objs[k]] = y
            yield from assign_objects(k + 1, om)
        del om[objs[k]]

    def arrow_ok(f, am, om):
        x, y = s.arrows[f]
        ff = am[f]
        if d.arrows[ff] != (om[x], om[y]):
            return False
        if arrow_filter is not None and not arrow_filter(f, ff):
            return False
        for (g, h), gh in s.comp.items():
            if g in am and h in am and gh in am and f in (g, h, gh):
                if d.comp[(am[g], am[h])] != am[gh]:
                    return False
        return True

    def assign_arrows(k, om, am):
        if k == len(arrows):
            yield from assign_cells(0, om, am, {})
            return
        f = arrows[k]
        x, y = s.arrows[f]
        if f in unit_arrows and s.unit[x] == f:
            options = [d.unit[om[x]]]
        else:
            options = d.hom(om[x], om[y])
        for ff in options:
            am[f] = ff
            if arrow_ok(f, am, om):
                yield from assign_arrows(k + 1, om, am)
            del am[f]

    def cell_ok(a, cm, am):
        if d.cells[cm[a]] != (am[s.dom(a)], am[s.cod(a)]):
            return False
        for table, op in ((s.vcomp, d.vcomp), (s.hcomp, d.hcomp)):
            for (b, c), bc in table.items():
                if b in cm and c in cm and bc in cm and a in (b, c, bc):
                    if op[(cm[b], cm[c])] != cm[bc]:
                        return False
        return True

    def assign_cells(k, om, am, cm):
        nonlocal count
        if k == len(cells):
            count += 1
            yield Pseudofunctor(s, d, dict(om), dict(am), dict(cm),
                                name=f"F{count}:{s.name}->{d.name}")
            return
        a = cells[k]
        f = s.dom(a)
        if a == s.id2[f]:
            options = [d.id2[am[f]]]
        else:
            options = d.cells_between(am[s.dom(a)], am[s.cod(a)])
        for c in options:
            cm[a] = c
            if cell_ok(a, cm, am):
                yield from assign_cells(k + 1, om, am, cm)
            del cm[a]

    for fn in assign_objects(0, {}):
        yield fn
        if limit is not None and count >= limit:
            return


# ---------------------------------------------------------------------------
# terms


def computad_of(b: FiniteBicategory) -> Computad:
    """Every arrow as a 1-cell generator and every 2-cell as a 2-cell generator."""
    gen1 = {f: b.arrows[f] for f in b.arrows}
    gen2 = {}
    for a, (f, g) in b.cells.items():
        x, y = b.arrows[f]
        gen2[a] = Gen2(a, Path(x, y, (f,)), Path(x, y, (g,)), b.is_invertible(a))
    return Computad(b.objects, gen1, gen2)


def path_value(b: FiniteBicategory, path: Path) -> str:
    if not path.gens:
        return b.unit[path.source]
    return b.c(*reversed(path.gens))


def term_value(b: FiniteBicategory, t: ElevatorTerm) -> str:
    """Evaluate a term over ``computad_of(b)`` (or a relabeling of it) in ``b``."""
    out = b.id2[path_value(b, t.source)]
    for layer in t.layers:
        if layer.gen is None:
            continue
        cell = b.inv(layer.gen) if layer.inverse else layer.gen
        step = b.h(b.id2[path_value(b, layer.right)], cell, b.id2[path_value(b, layer.left)])
        out = b.v(step, out)
    return out


def evaluate_functor(fn: Pseudofunctor, t: ElevatorTerm) -> ElevatorTerm:
    """Image of ``t`` as a term over ``computad_of(fn.target)``.

    Each layer is relabeled generator by generator; the boundary paths of the
    image are the relabeled paths, so the comparison with ``F`` of the
    composite is :func:`path_comparison` on either side.
    """
    cd = computad_of(fn.target)

    def image(p: Path) -> Path:
        try:
            gens = tuple(fn.arr[g] for g in p.gens)
        except KeyError as exc:
            raise FunctorError(f"unmapped generator {exc}") from None
        return Path(fn.obj[p.source], fn.obj[p.target], gens)

    layers = []
    for layer in t.layers:
        if layer.gen is None:
            layers.append(Layer(image(layer.left), None, False, image(layer.right)))
            continue
        if layer.gen not in fn.cell:
            raise FunctorError(f"unmapped generator {layer.gen}")
        layers.append(Layer(image(layer.left), fn.cell[layer.gen], layer.inverse,
                            image(layer.right)))
    return ElevatorTerm(image(t.source), image(t.target), tuple(layers), cd)


def path_comparison(fn: Pseudofunctor, p: Path) -> str:
    """The coherent cell ``F(g_n) * ... * F(g_1) => F(g_n * ... * g_1)`` built from φ and ξ."""
    s, d = fn.source, fn.target
    if not p.gens:
        return fn.xi[p.source]
    acc_arrow = p.gens[0]
    acc_cell = d.id2[fn.arr[acc_arrow]]
    for g in p.gens[1:]:
        step = d.v(fn.phi[(g, acc_arrow)], d.w(fn.arr[g], acc_cell))
        acc_cell = step
        acc_arrow = s.comp[(g, acc_arrow)]
    return acc_cell
