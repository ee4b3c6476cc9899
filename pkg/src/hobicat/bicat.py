"""Finite and presented bicategory backends.

A :class:`FiniteBicategory` is a strict 2-category given by total tables.  All
composition keys follow the usual right-to-left notation: ``comp[(g, f)]`` is
``g * f`` (first ``f``, then ``g``), ``vcomp[(b, a)]`` is ``b ∘ a`` and
``hcomp[(b, a)]`` is ``b * a``.  Bicategories met in practice are replaced by
strict ones via coherence, so nothing is lost for the checks done here.

Limit witnesses are verified by enumerating cones: the comparison functor
from arrows into (or out of) the apex to cones must be an equivalence of
categories.  Only the limit-shaped kinds are implemented directly; colimit
kinds are checked in the opposite bicategory.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cells import BoundaryError, Computad, ElevatorTerm, Layer, normalize
from .report import Report


class TableError(ValueError):
    """Raised for partial or ill-typed composition tables."""


class BackendError(ValueError):
    """Raised when an operation is not supported by a backend."""


class FiniteBicategory:
    def __init__(self, name: str, objects: Iterable[str], arrows: Mapping[str, tuple[str, str]],
                 cells: Mapping[str, tuple[str, str]], comp: Mapping, unit: Mapping, vcomp: Mapping,
                 hcomp: Mapping, id2: Mapping):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.cells = dict(cells)
        self.comp = dict(comp)
        self.unit = dict(unit)
        self.vcomp = dict(vcomp)
        self.hcomp = dict(hcomp)
        self.id2 = dict(id2)
        self._check_total()
        self._homs: dict[tuple[str, str], tuple[str, ...]] = {}
        for f in sorted(self.arrows):
            self._homs.setdefault(self.arrows[f], ())
            self._homs[self.arrows[f]] += (f,)
        self._between: dict[tuple[str, str], tuple[str, ...]] = {}
        for a in sorted(self.cells):
            self._between.setdefault(self.cells[a], ())
            self._between[self.cells[a]] += (a,)
        self._inverse: dict[str, str | None] = {}
        for a in sorted(self.cells):
            f, g = self.cells[a]
            self._inverse[a] = next(
                (b for b in self._between.get((g, f), ())
                 if self.vcomp[(b, a)] == self.id2[f] and self.vcomp[(a, b)] == self.id2[g]), None)

    # -- construction checks -------------------------------------------------

    def _check_total(self) -> None:
        if set(self.arrows) & set(self.cells):
            raise TableError("arrow and 2-cell names must be distinct")
        for x in self.objects:
            if x not in self.unit:
                raise TableError(f"no identity arrow for {x}")
            if self.arrows.get(self.unit[x]) != (x, x):
                raise TableError(f"identity of {x} is not an endo-arrow of {x}")
        for f, (x, y) in self.arrows.items():
            if x not in self.objects or y not in self.objects:
                raise TableError(f"arrow {f} has unknown endpoints")
            if f not in self.id2:
                raise TableError(f"no identity 2-cell for {f}")
        for a, (f, g) in self.cells.items():
            if f not in self.arrows or g not in self.arrows or self.arrows[f] != self.arrows[g]:
                raise TableError(f"2-cell {a} has ill-typed boundary")
        for f, (x, y) in self.arrows.items():
            for g, (y2, z) in self.arrows.items():
                if y2 == y and (g, f) not in self.comp:
                    raise TableError(f"comp missing {g} * {f}")
        for a, (f, g) in self.cells.items():
            for b, (g2, h) in self.cells.items():
                if g2 == g and (b, a) not in self.vcomp:
                    raise TableError(f"vcomp missing {b} ∘ {a}")
            for b, (k, _) in self.cells.items():
                if self.arrows[f][1] == self.arrows[k][0] and (b, a) not in self.hcomp:
                    raise TableError(f"hcomp missing {b} * {a}")

    # -- basic queries -------------------------------------------------------

    def src(self, f: str) -> str:
        return self.arrows[f][0]

    def tgt(self, f: str) -> str:
        return self.arrows[f][1]

    def dom(self, a: str) -> str:
        return self.cells[a][0]

    def cod(self, a: str) -> str:
        return self.cells[a][1]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._homs.get((x, y), ())

    def cells_between(self, f: str, g: str) -> tuple[str, ...]:
        return self._between.get((f, g), ())

    def inverse(self, a: str) -> str | None:
        return self._inverse[a]

    def is_invertible(self, a: str) -> bool:
        return self._inverse[a] is not None

    def inv(self, a: str) -> str:
        b = self._inverse[a]
        if b is None:
            raise BoundaryError(f"2-cell {a} is not invertible")
        return b

    def isos(self, f: str, g: str) -> tuple[str, ...]:
        return tuple(a for a in self.cells_between(f, g) if self.is_invertible(a))

    def all_cells_invertible(self) -> bool:
        return all(self.is_invertible(a) for a in self.cells)

    def c(self, *arrows: str) -> str:
        """Composite ``arrows[0] * arrows[1] * ...`` (the last one acts first)."""
        if not arrows:
            raise BoundaryError("empty composite has no object")
        out = arrows[-1]
        for g in reversed(arrows[:-1]):
            if self.src(g) != self.tgt(out):
                raise BoundaryError(f"cannot compose {g} * {out}")
            out = self.comp[(g, out)]
        return out

    def v(self, *cells: str) -> str:
        """Vertical composite ``cells[0] ∘ cells[1] ∘ ...``."""
        out = cells[-1]
        for b in reversed(cells[:-1]):
            if self.dom(b) != self.cod(out):
                raise BoundaryError(f"cannot compose {b} ∘ {out}")
            out = self.vcomp[(b, out)]
        return out

    def h(self, *cells: str) -> str:
        """Horizontal composite ``cells[0] * cells[1] * ...``."""
        out = cells[-1]
        for b in reversed(cells[:-1]):
            if self.src(self.dom(b)) != self.tgt(self.dom(out)):
                raise BoundaryError(f"cannot compose {b} * {out}")
            out = self.hcomp[(b, out)]
        return out

    def w(self, *parts: str) -> str:
        """Horizontal composite where arrows stand for their identity 2-cells."""
        return self.h(*[self.id2[p] if p in self.arrows else p for p in parts])

    def is_cell(self, x: str) -> bool:
        return x in self.cells

    # -- dualities -----------------------------------------------------------

    def op(self) -> FiniteBicategory:
        """Reverse 1-cells, keep 2-cells."""
        if getattr(self, "_op", None) is None:
            self._op = self._make_op()
            self._op._op = self
        return self._op

    def co(self) -> FiniteBicategory:
        """Reverse 2-cells, keep 1-cells."""
        if getattr(self, "_co", None) is None:
            self._co = self._make_co()
            self._co._co = self
        return self._co

    def _make_op(self) -> FiniteBicategory:
        return FiniteBicategory(
            self.name + "^op", self.objects,
            {f: (y, x) for f, (x, y) in self.arrows.items()},
            self.cells,
            {(f, g): h for (g, f), h in self.comp.items()},
            self.unit, self.vcomp,
            {(a, b): c for (b, a), c in self.hcomp.items()},
            self.id2)

    def _make_co(self) -> FiniteBicategory:
        return FiniteBicategory(
            self.name + "^co", self.objects, self.arrows,
            {a: (g, f) for a, (f, g) in self.cells.items()},
            self.comp, self.unit,
            {(a, b): c for (b, a), c in self.vcomp.items()},
            self.hcomp, self.id2)

    def __repr__(self) -> str:
        return (f"FiniteBicategory({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.arrows)} arrows, {len(self.cells)} 2-cells)")


# ---------------------------------------------------------------------------
# bicategory axioms


def check_bicategory(b: FiniteBicategory) -> Report:
    """Exhaustive check of the hom-category laws, strict units and associativity, H1 and H2.

    Every violated instance is recorded in ``Check.instances``.
    """
    rep = Report(f"bicategory {b.name}")
    names = ["vcomp-boundary", "vcomp-unit", "vcomp-assoc", "comp-unit", "comp-assoc",
             "hcomp-boundary", "hcomp-unit", "hcomp-assoc", "H1", "H2"]
    for n in names:
        rep.check(n)
    cells = sorted(b.cells)

    for (y, x), c in sorted(b.vcomp.items()):
        if b.cells[c] != (b.dom(x), b.cod(y)):
            rep["vcomp-boundary"].violate((y, x), keep_all=True)
    for a in cells:
        f, g = b.cells[a]
        if b.vcomp[(a, b.id2[f])] != a or b.vcomp[(b.id2[g], a)] != a:
            rep["vcomp-unit"].violate(a, keep_all=True)
    for a in cells:
        for c2 in cells:
            if b.dom(c2) != b.cod(a):
                continue
            for c3 in cells:
                if b.dom(c3) != b.cod(c2):
                    continue
                if b.vcomp[(c3, b.vcomp[(c2, a)])] != b.vcomp[(b.vcomp[(c3, c2)], a)]:
                    rep["vcomp-assoc"].violate((a, c2, c3), keep_all=True)

    arrows = sorted(b.arrows)
    for f in arrows:
        x, y = b.arrows[f]
        if b.comp[(f, b.unit[x])] != f or b.comp[(b.unit[y], f)] != f:
            rep["comp-unit"].violate(f, keep_all=True)
    for f in arrows:
        for g in arrows:
            if b.src(g) != b.tgt(f):
                continue
            if b.arrows[b.comp[(g, f)]] != (b.src(f), b.tgt(g)):
                rep["comp-assoc"].violate(("type", g, f), keep_all=True)
                continue
            for k in arrows:
                if b.src(k) != b.tgt(g):
                    continue
                if b.comp[(k, b.comp[(g, f)])] != b.comp[(b.comp[(k, g)], f)]:
                    rep["comp-assoc"].violate((k, g, f), keep_all=True)

    for (y, x), c in sorted(b.hcomp.items()):
        want = (b.comp[(b.dom(y), b.dom(x))], b.comp[(b.cod(y), b.cod(x))])
        if b.cells[c] != want:
            rep["hcomp-boundary"].violate((y, x), keep_all=True)
    for a in cells:
        x, y = b.arrows[b.dom(a)]
        if b.hcomp[(a, b.id2[b.unit[x]])] != a or b.hcomp[(b.id2[b.unit[y]], a)] != a:
            rep["hcomp-unit"].violate(a, keep_all=True)
    for a in cells:
        for c2 in cells:
            if b.src(b.dom(c2)) != b.tgt(b.dom(a)):
                continue
            for c3 in cells:
                if b.src(b.dom(c3)) != b.tgt(b.dom(c2)):
                    continue
                if b.hcomp[(c3, b.hcomp[(c2, a)])] != b.hcomp[(b.hcomp[(c3, c2)], a)]:
                    rep["hcomp-assoc"].violate((c3, c2, a), keep_all=True)

    for f in arrows:
        for g in arrows:
            if b.src(g) == b.tgt(f) and b.hcomp[(b.id2[g], b.id2[f])] != b.id2[b.comp[(g, f)]]:
                rep["H1"].violate((g, f), keep_all=True)

    # (delta * beta) ∘ (gamma * alpha) = (delta ∘ gamma) * (beta ∘ alpha), with
    # alpha: f1 => f2, beta: f2 => f3 in one hom and gamma, delta in the next
    for alpha in cells:
        for beta in cells:
            if b.dom(beta) != b.cod(alpha):
                continue
            for gamma in cells:
                if b.src(b.dom(gamma)) != b.tgt(b.dom(alpha)):
                    continue
                for delta in cells:
                    if b.dom(delta) != b.cod(gamma):
                        continue
                    lhs = b.vcomp[(b.hcomp[(delta, beta)], b.hcomp[(gamma, alpha)])]
                    rhs = b.hcomp[(b.vcomp[(delta, gamma)], b.vcomp[(beta, alpha)])]
                    if lhs != rhs:
                        rep["H2"].violate({"alpha": alpha, "beta": beta, "gamma": gamma,
                                           "delta": delta}, keep_all=True)
    return rep


# ---------------------------------------------------------------------------
# equivalences


@dataclass(frozen=True)
class EquivalenceWitness:
    arrow: str
    quasiinverse: str
    unit: str      # id_X => g * f
    counit: str    # f * g => id_Y
    triangles: bool


def triangle_identities(b: FiniteBicategory, f: str, g: str, unit: str, counit: str) -> bool:
    one = b.v(b.w(counit, f), b.w(f, unit)) == b.id2[f]
    two = b.v(b.w(g, counit), b.w(unit, g)) == b.id2[g]
    return one and two


def verify_equivalence_witness(b: FiniteBicategory, w: EquivalenceWitness) -> bool:
    f, g = w.arrow, w.quasiinverse
    x, y = b.arrows[f]
    if b.arrows.get(g) != (y, x):
        return False
    if b.cells.get(w.unit) != (b.unit[x], b.c(g, f)) or not b.is_invertible(w.unit):
        return False
    if b.cells.get(w.counit) != (b.c(f, g), b.unit[y]) or not b.is_invertible(w.counit):
        return False
    return triangle_identities(b, f, g, w.unit, w.counit) or not w.triangles


def find_equivalence_witness(b, f: str, witness: EquivalenceWitness | None = None):
    """Search (finite backend) or verify (supplied witness) an adjoint equivalence."""
    if witness is not None:
        return witness if verify_equivalence_witness(b, witness) else None
    if not isinstance(b, FiniteBicategory):
        raise BackendError("presented backend needs a supplied witness")
    x, y = b.arrows[f]
    fallback = None
    for g in b.hom(y, x):
        for unit in b.isos(b.unit[x], b.c(g, f)):
            for counit in b.isos(b.c(f, g), b.unit[y]):
                if triangle_identities(b, f, g, unit, counit):
                    return EquivalenceWitness(f, g, unit, counit, True)
                fallback = fallback or EquivalenceWitness(f, g, unit, counit, False)
    return fallback


def quasiequivalence_failure(b: FiniteBicategory, f: str):
    """First instance where post- or pre-composition with ``f`` is not full and faithful."""
    x, y = b.arrows[f]
    for z in b.objects:
        for a1 in b.hom(z, x):
            for a2 in b.hom(z, x):
                image = [b.w(f, c) for c in b.cells_between(a1, a2)]
                target = b.cells_between(b.c(f, a1), b.c(f, a2))
                if len(set(image)) != len(image):
                    return ("post", z, a1, a2, "not faithful")
                if set(image) != set(target):
                    return ("post", z, a1, a2, "not full")
        for b1 in b.hom(y, z):
            for b2 in b.hom(y, z):
                image = [b.w(c, f) for c in b.cells_between(b1, b2)]
                target = b.cells_between(b.c(b1, f), b.c(b2, f))
                if len(set(image)) != len(image):
                    return ("pre", z, b1, b2, "not faithful")
                if set(image) != set(target):
                    return ("pre", z, b1, b2, "not full")
    return None


def check_quasiequivalence(b, f: str) -> bool:
    if not isinstance(b, FiniteBicategory):
        raise BackendError("quasiequivalence check needs a finite backend")
    return quasiequivalence_failure(b, f) is None


# ---------------------------------------------------------------------------
# limits

LIMIT_KINDS = ("Terminal", "Product", "Pullback", "Comma")
COLIMIT_OF = {"Initial": "Terminal", "coProduct": "Product", "Pushout": "Pullback",
              "coComma": "Comma"}
KINDS = LIMIT_KINDS + tuple(COLIMIT_OF)


@dataclass(frozen=True)
class LimitWitness:
    """A proposed (co)limit.

    ``diagram`` is ``()`` for Terminal/Initial, a pair of objects for
    (co)Products and a pair of arrows for the square shapes.  For limits
    ``legs`` are the projections out of the apex; for colimits they are the
    inclusions into it.  ``cell`` is the square's 2-cell: ``f*p0 => g*p1`` for
    Pullback/Comma and ``i0*f => i1*g`` for Pushout/coComma.
    ``factorizations`` maps a cone to ``(arrow, components)`` where the
    components form an invertible cone morphism from the cone to the image
    of the arrow.
    """

    kind: str
    diagram: tuple
    apex: str
    legs: tuple = ()
    cell: str | None = None
    factorizations: Mapping = field(default_factory=dict, compare=False, hash=False)


def _as_limit(b: FiniteBicategory, kind: str) -> tuple[FiniteBicategory, str]:
    if kind in COLIMIT_OF:
        return b.op(), COLIMIT_OF[kind]
    if kind not in LIMIT_KINDS:
        raise ValueError(f"unknown limit kind {kind!r}")
    return b, kind


def _diagram_ok(b: FiniteBicategory, kind: str, diagram: tuple) -> bool:
    if kind == "Terminal":
        return diagram == ()
    if kind == "Product":
        return len(diagram) == 2 and all(x in b.objects for x in diagram)
    f, g = diagram
    return b.tgt(f) == b.tgt(g)


def _legs_typed(b, kind, diagram, apex, legs, cell) -> bool:
    if kind == "Terminal":
        return legs == () and cell is None
    if len(legs) != 2 or any(l not in b.arrows or b.src(l) != apex for l in legs):
        return False
    if kind == "Product":
        return tuple(b.tgt(l) for l in legs) == tuple(diagram) and cell is None
    f, g = diagram
    if b.tgt(legs[0]) != b.src(f) or b.tgt(legs[1]) != b.src(g):
        return False
    if cell is None or b.cells.get(cell) != (b.c(f, legs[0]), b.c(g, legs[1])):
        return False
    return kind == "Comma" or b.is_invertible(cell)


def cones(b: FiniteBicategory, kind: str, diagram: tuple, t: str):
    """Every cone with vertex ``t`` over the diagram (limit kinds only)."""
    if kind == "Terminal":
        yield ()
        return
    if kind == "Product":
        for a in b.hom(t, diagram[0]):
            for c in b.hom(t, diagram[1]):
                yield (a, c)
        return
    f, g = diagram
    for a in b.hom(t, b.src(f)):
        for c in b.hom(t, b.src(g)):
            pool = b.cells_between(b.c(f, a), b.c(g, c))
            for theta in pool:
                if kind == "Comma" or b.is_invertible(theta):
                    yield (a, c, theta)


def cone_morphisms(b: FiniteBicategory, kind: str, diagram: tuple, c1: tuple, c2: tuple):
    if kind == "Terminal":
        yield ()
        return
    for x in b.cells_between(c1[0], c2[0]):
        for y in b.cells_between(c1[1], c2[1]):
            if kind == "Product":
                yield (x, y)
                continue
            f, g = diagram
            if b.v(c2[2], b.w(f, x)) == b.v(b.w(g, y), c1[2]):
                yield (x, y)


def image_cone(b: FiniteBicategory, kind: str, w_legs: tuple, w_cell, h: str) -> tuple:
    if kind == "Terminal":
        return ()
    legs = (b.c(w_legs[0], h), b.c(w_legs[1], h))
    if kind == "Product":
        return legs
    return legs + (b.w(w_cell, h),)


def image_morphism(b: FiniteBicategory, kind: str, w_legs: tuple, alpha: str) -> tuple:
    if kind == "Terminal":
        return ()
    return (b.w(w_legs[0], alpha), b.w(w_legs[1], alpha))


def _cone_iso(b, kind, diagram, c1, c2):
    for m in cone_morphisms(b, kind, diagram, c1, c2):
        if all(b.is_invertible(x) for x in m):
            return m
    return None


def verify_limit_witness(b: FiniteBicategory, w: LimitWitness, bound: int | None = None) -> Report:
    """Universal-cone check by enumeration of all test cones.

    ``bound`` caps the number of cones examined; exceeding it makes the
    report inconclusive rather than failed.
    """
    rep = Report(f"{w.kind} witness apex={w.apex}")
    base, kind = _as_limit(b, w.kind)
    typed = rep.check("typing")
    exists = rep.check("factorization-exists")
    unique = rep.check("essential-uniqueness")
    stable = rep.check("stored-factorizations")
    if not _diagram_ok(base, kind, w.diagram) or not _legs_typed(
            base, kind, w.diagram, w.apex, tuple(w.legs), w.cell):
        typed.violate({"witness": w.kind, "apex": w.apex})
        return rep
    seen = 0
    for t in base.objects:
        arrows = base.hom(t, w.apex)
        images = {h: image_cone(base, kind, w.legs, w.cell, h) for h in arrows}
        for cone in cones(base, kind, w.diagram, t):
            seen += 1
            if bound is not None and seen > bound:
                exists.inconclusive(f"more than {bound} cones")
                return rep
            stored = w.factorizations.get(cone)
            if stored is not None:
                h, comps = stored
                ok = (h in images and tuple(comps) in set(
                    cone_morphisms(base, kind, w.diagram, cone, images[h]))
                    and all(base.is_invertible(x) for x in comps))
                if not ok:
                    stable.violate({"vertex": t, "cone": cone})
            if not any(_cone_iso(base, kind, w.diagram, cone, images[h]) is not None
                       for h in arrows):
                exists.violate({"vertex": t, "cone": cone})
        for h1 in arrows:
            for h2 in arrows:
                cells = base.cells_between(h1, h2)
                mapped = [image_morphism(base, kind, w.legs, a) for a in cells]
                wanted = set(cone_morphisms(base, kind, w.diagram, images[h1], images[h2]))
                if len(set(mapped)) != len(mapped) or set(mapped) != wanted:
                    unique.violate({"vertex": t, "arrows": (h1, h2)})
    if w.kind == "coProduct" and rep.ok:
        rep.extend(_binom_bookkeeping(b, w))
    return rep


def _binom_bookkeeping(b: FiniteBicategory, w: LimitWitness) -> Report:
    """``h * binom(f, g)`` and ``binom(h * f, h * g)`` agree up to an invertible 2-cell."""
    rep = Report("binom")
    chk = rep.check("binom-naturality")
    exact = True
    for t in b.objects:
        for f in b.hom(w.diagram[0], t):
            for g in b.hom(w.diagram[1], t):
                k, _ = induced_arrow(b, w, (f, g))
                for h in sorted(b.arrows):
                    if b.src(h) != t:
                        continue
                    k2, _ = induced_arrow(b, w, (b.c(h, f), b.c(h, g)))
                    lhs = b.c(h, k)
                    if lhs != k2:
                        exact = False
                    if not b.isos(lhs, k2):
                        chk.violate({"h": h, "f": f, "g": g})
    rep.fact("binom-naturality-strict", "yes" if exact else "up to iso")
    return rep


def induced_arrow(b: FiniteBicategory, w: LimitWitness, cone: tuple):
    """The chosen factorization of ``cone`` and its comparison cells.

    For a coProduct and cone ``(f, g)`` this returns ``binom(f, g)`` with the
    invertible cells ``f => binom(f, g) * i0`` and ``g => binom(f, g) * i1``.
    """
    cone = tuple(cone)
    if cone in w.factorizations:
        return w.factorizations[cone]
    base, kind = _as_limit(b, w.kind)
    t = _cone_vertex(base, kind, w.diagram, cone)
    for h in base.hom(t, w.apex):
        m = _cone_iso(base, kind, w.diagram, cone, image_cone(base, kind, w.legs, w.cell, h))
        if m is not None:
            return h, m
    raise BackendError(f"no factorization of {cone} through the {w.kind} witness")


def induced_cell(b: FiniteBicategory, w: LimitWitness, h1: str, h2: str, components: tuple) -> str:
    """The unique 2-cell ``h1 => h2`` whose image is the cone morphism ``components``."""
    base, kind = _as_limit(b, w.kind)
    hits = [a for a in base.cells_between(h1, h2)
            if image_morphism(base, kind, w.legs, a) == tuple(components)]
    if len(hits) != 1:
        raise BackendError(f"{len(hits)} cells induce {components}")
    return hits[0]


def _cone_vertex(b, kind, diagram, cone) -> str:
    if kind == "Terminal":
        raise BackendError("the terminal cone does not determine its vertex")
    return b.src(cone[0])


def binom(b: FiniteBicategory, w: LimitWitness, f: str, g: str):
    return induced_arrow(b, w, (f, g))


def nabla(b: FiniteBicategory, w: LimitWitness):
    x = w.diagram[0]
    return induced_arrow(b, w, (b.unit[x], b.unit[x]))


def search_limit(b: FiniteBicategory, kind: str, diagram: tuple = ()) -> LimitWitness | None:
    """First witness (in name order) passing :func:`verify_limit_witness`."""
    base, lkind = _as_limit(b, kind)
    if not _diagram_ok(base, lkind, diagram):
        raise BoundaryError(f"diagram {diagram} does not fit {kind}")
    for apex in base.objects:
        for legs, cell in _candidate_legs(base, lkind, diagram, apex):
            w = LimitWitness(kind, tuple(diagram), apex, legs, cell)
            if verify_limit_witness(b, w).ok:
                return _with_factorizations(b, w)
    return None


def _candidate_legs(b, kind, diagram, apex):
    if kind == "Terminal":
        yield (), None
        return
    if kind == "Product":
        for p0 in b.hom(apex, diagram[0]):
            for p1 in b.hom(apex, diagram[1]):
                yield (p0, p1), None
        return
    for cone in cones(b, kind, diagram, apex):
        yield cone[:2], cone[2]


def _with_factorizations(b: FiniteBicategory, w: LimitWitness) -> LimitWitness:
    base, kind = _as_limit(b, w.kind)
    table = {}
    for t in base.objects:
        if kind == "Terminal":
            continue
        for cone in cones(base, kind, w.diagram, t):
            table[cone] = induced_arrow(b, w, cone)
    return LimitWitness(w.kind, w.diagram, w.apex, w.legs, w.cell, table)


def terminal_object(b: FiniteBicategory) -> LimitWitness | None:
    return search_limit(b, "Terminal")


def initial_object(b: FiniteBicategory) -> LimitWitness | None:
    return search_limit(b, "Initial")


def unique_arrow(b: FiniteBicategory, w: LimitWitness, x: str) -> str:
    """The essentially unique arrow ``x -> *`` (Terminal) or ``0 -> x`` (Initial)."""
    if w.kind == "Terminal":
        return b.hom(x, w.apex)[0]
    if w.kind == "Initial":
        return b.hom(w.apex, x)[0]
    raise BackendError(f"{w.kind} witness has no unique arrows")


# ---------------------------------------------------------------------------
# presented backend


@dataclass(frozen=True)
class PresentedBicategory:
    computad: Computad
    relations: tuple[tuple[ElevatorTerm, ElevatorTerm], ...] = ()
    search_bound: int = 0

    def __post_init__(self):
        for lhs, rhs in self.relations:
            if (lhs.source, lhs.target) != (rhs.source, rhs.target):
                raise BoundaryError("relation sides have different boundaries")

    def equal(self, t1: ElevatorTerm, t2: ElevatorTerm) -> str:
        """``"Equal"`` or ``"NotEqualWithinBound"`` by bounded rewriting both ways."""
        if (t1.source, t1.target) != (t2.source, t2.target):
            raise BoundaryError("terms have different boundaries")
        goal = normalize(t2).layers
        start = normalize(t1)
        if start.layers == goal:
            return "Equal"
        seen = {start.layers}
        frontier = deque([(start, 0)])
        while frontier:
            term, depth = frontier.popleft()
            if depth >= self.search_bound:
                continue
            for nxt in self._rewrites(term):
                n = normalize(nxt)
                if n.layers == goal:
                    return "Equal"
                if n.layers not in seen:
                    seen.add(n.layers)
                    frontier.append((n, depth + 1))
        return "NotEqualWithinBound"

    def _rewrites(self, term: ElevatorTerm):
        cd = self.computad
        rules = [(l, r) for l, r in self.relations] + [(r, l) for l, r in self.relations]
        for lhs, rhs in rules:
            pattern = normalize(lhs).layers
            replacement = normalize(rhs).layers
            k = len(pattern)
            if k == 0:
                continue
            for start in range(len(term.layers) - k + 1):
                whiskers = _uniform_whiskers(term.layers[start:start + k], pattern, cd)
                if whiskers is None:
                    continue
                pre, post = whiskers
                repl = tuple(Layer(pre + l.left, l.gen, l.inverse, l.right + post)
                             for l in replacement)
                layers = term.layers[:start] + repl + term.layers[start + k:]
                try:
                    yield ElevatorTerm(term.source, term.target, layers, cd)
                except BoundaryError:
                    continue


def _uniform_whiskers(window, pattern, cd):
    """``(pre, post)`` paths if every window layer is its pattern layer whiskered by them."""
    found = None
    for got, want in zip(window, pattern):
        if got.gen != want.gen or got.inverse != want.inverse:
            return None
        n = len(got.left) - len(want.left)
        m = len(want.right)
        if n < 0 or len(got.right) < m:
            return None
        if got.left.gens[n:] != want.left.gens or got.right.gens[:m] != want.right.gens:
            return None
        pre = got.left.slice(0, n, cd)
        post = got.right.slice(m, len(got.right), cd)
        if found is None:
            found = (pre, post)
        elif found != (pre, post):
            return None
    return found
