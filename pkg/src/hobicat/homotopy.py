"""Cylinders, homotopies between arrows, their induced 2-cells and class certificates.

A left cylinder for ``X`` is ``(W, Z, d0, d1, x, s, alpha0, alpha1)`` with
``d0, d1: X -> W``, ``x: X -> Z``, ``s: W -> Z`` a weak equivalence and
invertible ``alpha_j: s * d_j => x``.  A left homotopy ``f ~> g`` adds
``h: W -> Y``, ``eta: f => h * d0`` and ``eps: h * d1 => g``.

Right homotopies are left homotopies of the 1-cell dual: their data is typed
in ``base.op()`` and every construction runs unchanged on ``model.op()``.

Where the bicategory lacks the coproduct ``X ⊔ X`` (or the product
``Y × Y``), "the pair ``(d0, d1)`` is a cofibration" means the pair has the
joint lifting property against every trivial fibration, which is what the
coproduct formulation amounts to when the coproduct exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace as dc_replace
from typing import Iterable, Sequence

from .bicat import FiniteBicategory, binom, check_quasiequivalence, induced_arrow
from .fixtures import target_family
from .functors import Pseudofunctor, enumerate_strict_functors
from .model import ModelBicategory, ModelError, family_fillers

LEFT, RIGHT = "left", "right"

SOUNDNESS_CAVEAT = (
    "hats agree for every admissible strict 2-functor into the target family; class "
    "equality quantifies over all bicategories, so this is a necessary check and exact "
    "only as far as the target family reaches")


class HomotopyError(ValueError):
    """Ill-typed homotopy data or a failed hypothesis of a construction."""


@dataclass(frozen=True)
class Cylinder:
    obj: str
    middle: str       # W
    base: str         # Z
    d0: str
    d1: str
    base_map: str     # x: X -> Z
    collapse: str     # s: W -> Z
    alpha0: str | None
    alpha1: str | None

    def alpha_tilde(self, b: FiniteBicategory) -> str:
        return b.v(b.inv(self.alpha1), self.alpha0)


@dataclass(frozen=True)
class Homotopy:
    source: str       # f
    target: str       # g
    cylinder: Cylinder
    h: str
    eta: str
    eps: str
    side: str = LEFT


@dataclass(frozen=True)
class HomotopySequence:
    steps: tuple[Homotopy, ...]

    def __post_init__(self):
        if not self.steps:
            raise HomotopyError("a homotopy sequence needs at least one step")
        for a, b in zip(self.steps, self.steps[1:]):
            if a.target != b.source:
                raise HomotopyError(f"sequence breaks between {a.target} and {b.source}")

    @property
    def source(self) -> str:
        return self.steps[0].source

    @property
    def target(self) -> str:
        return self.steps[-1].target


@dataclass(frozen=True)
class CylinderMorphism:
    """``k: W1 -> W2``, ``ell: Z1 -> Z2``, ``gamma_j: d2_j => k * d1_j``,
    ``mu: s2 * k => ell * s1`` and ``nu: ell * x1 => x2``."""

    k: str
    ell: str
    gamma0: str
    gamma1: str
    mu: str
    nu: str


@dataclass(frozen=True)
class Move:
    kind: str
    before: object
    after: object
    data: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ClassCertificate:
    start: object
    end: object
    moves: tuple[Move, ...] = ()


@dataclass(frozen=True)
class ClassResult:
    verdict: str                  # Equal | EqualByEnumeration | Unknown
    certificate: ClassCertificate | None = None
    note: str = ""
    evidence: tuple = ()


# ---------------------------------------------------------------------------
# context and verification


def context(m: ModelBicategory, side: str) -> ModelBicategory:
    if side not in (LEFT, RIGHT):
        raise HomotopyError(f"unknown side {side!r}")
    return m if side == LEFT else m.op()


def cylinder_problems(b: FiniteBicategory, m: ModelBicategory | None, c: Cylinder) -> list[str]:
    out = []
    x, w, z = c.obj, c.middle, c.base
    for name, arrow, (src, tgt) in (("d0", c.d0, (x, w)), ("d1", c.d1, (x, w)),
                                    ("x", c.base_map, (x, z)), ("s", c.collapse, (w, z))):
        if b.arrows.get(arrow) != (src, tgt):
            out.append(f"{name}={arrow} is not an arrow {src} -> {tgt}")
    if out:
        return out
    for name, a, d in (("alpha0", c.alpha0, c.d0), ("alpha1", c.alpha1, c.d1)):
        if b.cells.get(a) != (b.c(c.collapse, d), c.base_map):
            out.append(f"{name} has the wrong boundary")
        elif not b.is_invertible(a):
            out.append(f"{name} is not invertible")
    if m is not None and not m.is_w(c.collapse):
        out.append(f"s={c.collapse} is not a weak equivalence")
    return out


def homotopy_problems(m: ModelBicategory, hom: Homotopy) -> list[str]:
    ctx = context(m, hom.side)
    b = ctx.base
    c = hom.cylinder
    out = cylinder_problems(b, ctx, c)
    if out:
        return out
    f, g = hom.source, hom.target
    if b.arrows.get(f) is None or b.arrows.get(g) is None or b.arrows[f] != b.arrows[g]:
        return [f"{f} and {g} are not parallel arrows"]
    if b.src(f) != c.obj:
        out.append(f"cylinder is for {c.obj}, arrows start at {b.src(f)}")
    if b.arrows.get(hom.h) != (c.middle, b.tgt(f)):
        out.append(f"h={hom.h} is not an arrow {c.middle} -> {b.tgt(f)}")
        return out
    if b.cells.get(hom.eta) != (f, b.c(hom.h, c.d0)):
        out.append("eta has the wrong boundary")
    if b.cells.get(hom.eps) != (b.c(hom.h, c.d1), g):
        out.append("eps has the wrong boundary")
    return out


def check_homotopy(m: ModelBicategory, hom: Homotopy) -> None:
    problems = homotopy_problems(m, hom)
    if problems:
        raise HomotopyError("; ".join(problems))


def cofibration_pair(m: ModelBicategory, x: str, d0: str, d1: str) -> bool:
    """Whether ``binom(d0, d1): X ⊔ X -> W`` is a cofibration."""
    b = m.base
    w = m.witness("coProduct", (x, x))
    if w is not None:
        return m.is_cof(binom(b, w, d0, d1)[0])
    mid = b.tgt(d0)
    for p in m.trivial_fibrations():
        y, bb = b.arrows[p]
        for a0 in b.hom(x, y):
            for a1 in b.hom(x, y):
                for top in b.hom(mid, bb):
                    for g0 in b.isos(b.c(p, a0), b.c(top, d0)):
                        for g1 in b.isos(b.c(p, a1), b.c(top, d1)):
                            sols = family_fillers(b, [(d0, a0), (d1, a1)], [(p, top)], mid, y,
                                                  {(0, 0): g0, (1, 0): g1})
                            if next(sols, None) is None:
                                return False
    return True


def is_w_cylinder(m: ModelBicategory, c: Cylinder) -> bool:
    b = m.base
    return (c.base == c.obj and c.base_map == b.unit[c.obj]
            and cofibration_pair(m, c.obj, c.d0, c.d1))


def is_w_homotopy(m: ModelBicategory, hom: Homotopy) -> bool:
    return is_w_cylinder(context(m, hom.side), hom.cylinder)


def is_fibrant(m: ModelBicategory, hom: Homotopy) -> bool:
    return context(m, hom.side).is_fib(hom.cylinder.collapse)


def has_invertible_cells(m: ModelBicategory, hom: Homotopy) -> bool:
    b = context(m, hom.side).base
    return b.is_invertible(hom.eta) and b.is_invertible(hom.eps)


def flags(m: ModelBicategory, hom: Homotopy) -> dict[str, bool]:
    return {"w": is_w_homotopy(m, hom), "fibrant": is_fibrant(m, hom),
            "invertible-cells": has_invertible_cells(m, hom)}


# ---------------------------------------------------------------------------
# hats


def op_functor(fn: Pseudofunctor) -> Pseudofunctor:
    """The same assignment read between the 1-cell duals."""
    phi = {(f, g): cell for (g, f), cell in fn.phi.items()}
    return Pseudofunctor(fn.source.op(), fn.target.op(), fn.obj, fn.arr, fn.cell, dict(fn.xi),
                         phi, name=fn.name + "^op")


def cylinder_hat(fn: Pseudofunctor, c: Cylinder) -> str:
    """The unique ``Fd0 => Fd1`` with ``phi ∘ (Fs * (-)) ∘ phi⁻¹ = F(alpha_tilde)``."""
    d, b = fn.target, fn.source
    fs = fn(c.collapse)
    if not check_quasiequivalence(d, fs):
        raise HomotopyError(f"{fn.name} sends {c.collapse} to {fs}, not a quasiequivalence")
    want = fn(c.alpha_tilde(b))
    into, out_of = fn.phi[(c.collapse, c.d1)], d.inv(fn.phi[(c.collapse, c.d0)])
    sols = [a for a in d.cells_between(fn(c.d0), fn(c.d1))
            if d.v(into, d.w(fs, a), out_of) == want]
    if len(sols) != 1:
        raise HomotopyError(f"{len(sols)} solutions for the cylinder 2-cell: backend inconsistent")
    return sols[0]


def hat(fn: Pseudofunctor, hom: Homotopy | HomotopySequence) -> str:
    """The 2-cell of the target induced by a homotopy (or a composable sequence)."""
    if isinstance(hom, HomotopySequence):
        cells = [hat(fn, step) for step in hom.steps]
        return fn.target.v(*reversed(cells))
    if hom.side == RIGHT:
        fn = op_functor(fn)
    d = fn.target
    c = hom.cylinder
    chat = cylinder_hat(fn, c)
    return d.v(fn(hom.eps), fn.phi[(hom.h, c.d1)], d.w(fn(hom.h), chat),
               d.inv(fn.phi[(hom.h, c.d0)]), fn(hom.eta))


def admissible_functors(m: ModelBicategory, targets: Iterable[FiniteBicategory] | None = None,
                        limit_per_target: int | None = None) -> list[Pseudofunctor]:
    """Strict 2-functors out of ``m.base`` sending W to quasiequivalences."""
    key = ("admissible", None if targets is None else tuple(t.name for t in targets),
           limit_per_target)
    cache = m.cache
    if key in cache:
        return cache[key]
    targets = list(target_family() if targets is None else targets)
    out = []
    for d in targets:
        keep = lambda f, ff, d=d: not m.is_w(f) or check_quasiequivalence(d, ff)
        for k, fn in enumerate(enumerate_strict_functors(m.base, d, keep, limit_per_target)):
            fn.name = f"{d.name}#{k}"
            out.append(fn)
    cache[key] = out
    return out


def signature(m: ModelBicategory, hom, functors: Sequence[Pseudofunctor] | None = None) -> tuple:
    functors = admissible_functors(m) if functors is None else functors
    return tuple(hat(fn, hom) for fn in functors)


# ---------------------------------------------------------------------------
# basic constructions


def make_fibrant_cylinder(m: ModelBicategory, x: str) -> Cylinder:
    """A w-cylinder for ``x`` whose collapse map is a trivial fibration."""
    key = ("fibrant-cylinder", x)
    if key in m.cache:
        return m.cache[key]
    b = m.base
    cw = m.witness("coProduct", (x, x))
    cyl = None
    if cw is not None:
        nabla, (c0, c1) = binom(b, cw, b.unit[x], b.unit[x])
        fac = m.factor(nabla, "acyclic-fibration")
        inj0, inj1 = cw.legs
        d0, d1 = b.c(fac.i, inj0), b.c(fac.i, inj1)
        back = b.inv(fac.sigma)
        a0 = b.v(b.inv(c0), b.w(back, inj0))
        a1 = b.v(b.inv(c1), b.w(back, inj1))
        cyl = Cylinder(x, b.tgt(fac.i), x, d0, d1, b.unit[x], fac.p, a0, a1)
    else:
        cyl = _search_fibrant_cylinder(m, x)
    if cyl is None:
        raise ModelError(f"no fibrant w-cylinder for {x}")
    problems = cylinder_problems(b, m, cyl)
    if problems or not is_w_cylinder(m, cyl) or not m.is_fib(cyl.collapse):
        raise ModelError(f"constructed cylinder for {x} fails verification: {problems}")
    m.cache[key] = cyl
    return cyl


def _search_fibrant_cylinder(m: ModelBicategory, x: str) -> Cylinder | None:
    b = m.base
    mids = [x] + [w for w in b.objects if w != x]
    for w in mids:
        for s in sorted(b.hom(w, x), key=lambda a: (a != b.unit[x], a)):
            if not (m.is_fib(s) and m.is_w(s)):
                continue
            for d0 in b.hom(x, w):
                for d1 in b.hom(x, w):
                    a0s, a1s = b.isos(b.c(s, d0), b.unit[x]), b.isos(b.c(s, d1), b.unit[x])
                    if a0s and a1s and cofibration_pair(m, x, d0, d1):
                        return Cylinder(x, w, x, d0, d1, b.unit[x], s, a0s[0], a1s[0])
    return None


def make_cofibrant_pathobject(m: ModelBicategory, y: str) -> Cylinder:
    """A w-path-object for ``y`` (typed in the 1-cell dual)."""
    return make_fibrant_cylinder(m.op(), y)


def homotopy_from_2cell(m: ModelBicategory, mu: str, side: str = LEFT) -> Homotopy:
    """A fibrant w-homotopy with invertible cells whose hat is the image of ``mu``."""
    b = context(m, side).base
    if mu in b.cells and not b.is_invertible(mu):
        raise HomotopyError(f"{mu} is not invertible")
    return cell_homotopy(m, mu, side)


def cell_homotopy(m: ModelBicategory, mu: str, side: str = LEFT) -> Homotopy:
    """The fibrant w-homotopy of a 2-cell; its end cell is invertible only when ``mu`` is."""
    ctx = context(m, side)
    b = ctx.base
    if mu not in b.cells:
        raise HomotopyError(f"unknown 2-cell {mu}")
    f, g = b.cells[mu]
    c = make_fibrant_cylinder(ctx, b.src(f))
    return Homotopy(f, g, c, b.c(f, c.collapse), b.w(f, b.inv(c.alpha0)),
                    b.v(mu, b.w(f, c.alpha1)), side)


def retarget(m: ModelBicategory, hom: Homotopy, which: int) -> Homotopy:
    """Replace the cylinder's base map by ``s * d_which`` keeping ``alpha_tilde``."""
    b = context(m, hom.side).base
    c = hom.cylinder
    at = c.alpha_tilde(b)
    if which == 0:
        x = b.c(c.collapse, c.d0)
        nc = dc_replace(c, base_map=x, alpha0=b.id2[x], alpha1=b.inv(at))
    elif which == 1:
        x = b.c(c.collapse, c.d1)
        nc = dc_replace(c, base_map=x, alpha0=at, alpha1=b.id2[x])
    else:
        raise ValueError("which must be 0 or 1")
    return dc_replace(hom, cylinder=nc)


def whisker_homotopy(m: ModelBicategory, position: str, hom: Homotopy, arrow: str) -> Homotopy:
    """``arrow * H`` (``position="post"``) or the σ-homotopy ``H * arrow`` (``"pre"``).

    For a right homotopy the roles swap, since it is a left homotopy of the dual.
    """
    check_homotopy(m, hom)
    if position not in ("post", "pre"):
        raise HomotopyError(f"unknown whisker position {position!r}")
    if hom.side == RIGHT:
        position = "pre" if position == "post" else "post"
    b = context(m, hom.side).base
    c = hom.cylinder
    if position == "post":
        if b.src(arrow) != b.tgt(hom.source):
            raise HomotopyError(f"{arrow} does not start at the target of {hom.source}")
        return Homotopy(b.c(arrow, hom.source), b.c(arrow, hom.target), c, b.c(arrow, hom.h),
                        b.w(arrow, hom.eta), b.w(arrow, hom.eps), hom.side)
    if b.tgt(arrow) != c.obj:
        raise HomotopyError(f"{arrow} does not end at {c.obj}")
    nc = Cylinder(b.src(arrow), c.middle, c.base, b.c(c.d0, arrow), b.c(c.d1, arrow),
                  b.c(c.base_map, arrow), c.collapse, b.w(c.alpha0, arrow), b.w(c.alpha1, arrow))
    return Homotopy(b.c(hom.source, arrow), b.c(hom.target, arrow), nc, hom.h,
                    b.w(hom.eta, arrow), b.w(hom.eps, arrow), hom.side)


def adjust_ends(m: ModelBicategory, hom: Homotopy, before: str | None = None,
                after: str | None = None) -> Homotopy:
    """Precompose ``eta`` with the 2-cell ``before`` and postcompose ``eps`` with ``after``."""
    b = context(m, hom.side).base
    eta, eps, f, g = hom.eta, hom.eps, hom.source, hom.target
    if before is not None:
        eta, f = b.v(eta, before), b.dom(before)
    if after is not None:
        eps, g = b.v(after, eps), b.cod(after)
    return dc_replace(hom, source=f, target=g, eta=eta, eps=eps)


# ---------------------------------------------------------------------------
# cylinder morphisms and transfers


def morphism_problems(b: FiniteBicategory, c1: Cylinder, c2: Cylinder,
                      mor: CylinderMorphism) -> list[str]:
    out = []
    if c1.obj != c2.obj:
        return ["cylinders are for different objects"]
    if b.arrows.get(mor.k) != (c1.middle, c2.middle):
        out.append("k has the wrong boundary")
    if b.arrows.get(mor.ell) != (c1.base, c2.base):
        out.append("ell has the wrong boundary")
    if out:
        return out
    typed = {
        "gamma0": (mor.gamma0, (c2.d0, b.c(mor.k, c1.d0))),
        "gamma1": (mor.gamma1, (c2.d1, b.c(mor.k, c1.d1))),
        "mu": (mor.mu, (b.c(c2.collapse, mor.k), b.c(mor.ell, c1.collapse))),
        "nu": (mor.nu, (b.c(mor.ell, c1.base_map), c2.base_map)),
    }
    for name, (cell, bound) in typed.items():
        if b.cells.get(cell) != bound:
            out.append(f"{name} has the wrong boundary")
        elif not b.is_invertible(cell):
            out.append(f"{name} is not invertible")
    if out:
        return out
    for j, (a1, a2, d1, gam) in enumerate(((c1.alpha0, c2.alpha0, c1.d0, mor.gamma0),
                                           (c1.alpha1, c2.alpha1, c1.d1, mor.gamma1))):
        if _transported_alpha(b, c2, mor, a1, d1, gam) != a2:
            out.append(f"pasting equation fails for alpha{j}")
    return out


def _transported_alpha(b, c2, mor, a1, d1, gam):
    return b.v(mor.nu, b.w(mor.ell, a1), b.w(mor.mu, d1), b.w(c2.collapse, gam))


def transfer_problems(b: FiniteBicategory, h1: Homotopy, h2: Homotopy, mor: CylinderMorphism,
                      rho: str) -> list[str]:
    """Hypotheses under which ``h1`` and ``h2`` lie in the same class."""
    c1, c2 = h1.cylinder, h2.cylinder
    out = morphism_problems(b, c1, c2, mor)
    if out:
        return out
    if (h1.source, h1.target) != (h2.source, h2.target):
        return ["homotopies have different endpoints"]
    if b.cells.get(rho) != (b.c(h2.h, mor.k), h1.h) or not b.is_invertible(rho):
        return ["rho is not an invertible 2-cell h2 * k => h1"]
    eta = b.v(b.w(rho, c1.d0), b.w(h2.h, mor.gamma0), h2.eta)
    if eta != h1.eta:
        out.append("eta condition fails")
    eps = b.v(h2.eps, b.w(h2.h, b.inv(mor.gamma1)), b.w(b.inv(rho), c1.d1))
    if eps != h1.eps:
        out.append("eps condition fails")
    return out


def transfer_along_cylinder_morphism(m: ModelBicategory, mor: CylinderMorphism, known: Homotopy,
                                     other: Cylinder, other_h: str, rho: str,
                                     direction: str) -> tuple[Homotopy, ClassCertificate]:
    """Move ``known`` across ``mor`` to the cylinder ``other``.

    ``forward``: ``known`` lives on the morphism's source cylinder and
    ``other`` is its target; ``backward`` the other way round.  Missing
    ``alpha`` cells on ``other`` are completed uniquely (backward needs ``ell``
    to be a quasiequivalence for that).  ``rho: h2 * k => h1`` as usual.
    """
    b = context(m, known.side).base
    if direction == "forward":
        c1, c2 = known.cylinder, other
        if c2.alpha0 is None or c2.alpha1 is None:
            c2 = dc_replace(c2, alpha0=_transported_alpha(b, c2, mor, c1.alpha0, c1.d0, mor.gamma0),
                            alpha1=_transported_alpha(b, c2, mor, c1.alpha1, c1.d1, mor.gamma1))
        h2h, h1 = other_h, known
        eta = b.v(b.inv(b.w(h2h, mor.gamma0)), b.inv(b.w(rho, c1.d0)), h1.eta)
        eps = b.v(h1.eps, b.w(rho, c1.d1), b.w(h2h, mor.gamma1))
        result = Homotopy(known.source, known.target, c2, h2h, eta, eps, known.side)
        pair = (known, result)
    elif direction == "backward":
        c1, c2 = other, known.cylinder
        if c1.alpha0 is None or c1.alpha1 is None:
            if not check_quasiequivalence(b, mor.ell):
                raise HomotopyError("backward completion needs ell to be a quasiequivalence")
            c1 = dc_replace(c1, alpha0=_solve_alpha(b, c1, c2, mor, 0),
                            alpha1=_solve_alpha(b, c1, c2, mor, 1))
        h2 = known
        eta = b.v(b.w(rho, c1.d0), b.w(h2.h, mor.gamma0), h2.eta)
        eps = b.v(h2.eps, b.w(h2.h, b.inv(mor.gamma1)), b.w(b.inv(rho), c1.d1))
        result = Homotopy(known.source, known.target, c1, other_h, eta, eps, known.side)
        pair = (result, known)
    else:
        raise HomotopyError(f"unknown direction {direction!r}")
    problems = transfer_problems(b, pair[0], pair[1], mor, rho)
    if problems:
        raise HomotopyError("transfer hypotheses fail: " + "; ".join(problems))
    move = Move("cylinder-morphism", known, result,
                {"morphism": mor, "rho": rho, "first": pair[0], "second": pair[1]})
    return result, ClassCertificate(known, result, (move,))


def _solve_alpha(b, c1, c2, mor, j):
    d1 = c1.d0 if j == 0 else c1.d1
    gam = mor.gamma0 if j == 0 else mor.gamma1
    want = c2.alpha0 if j == 0 else c2.alpha1
    sols = [a for a in b.isos(b.c(c1.collapse, d1), c1.base_map)
            if _transported_alpha(b, c2, mor, a, d1, gam) == want]
    if len(sols) != 1:
        raise HomotopyError(f"{len(sols)} completions for alpha{j}")
    return sols[0]


def same_cylinder_problems(b: FiniteBicategory, h1: Homotopy, h2: Homotopy, rho: str) -> list[str]:
    if h1.cylinder != h2.cylinder:
        return ["cylinders differ"]
    c = h1.cylinder
    mor = CylinderMorphism(b.unit[c.middle], b.unit[c.base], b.id2[c.d0], b.id2[c.d1],
                           b.id2[c.collapse], b.id2[c.base_map])
    return transfer_problems(b, h1, h2, mor, rho)


def same_alpha_tilde(b: FiniteBicategory, h1: Homotopy, h2: Homotopy) -> bool:
    c1, c2 = h1.cylinder, h2.cylinder
    return (h1.side == h2.side and (h1.source, h1.target, h1.h, h1.eta, h1.eps)
            == (h2.source, h2.target, h2.h, h2.eta, h2.eps)
            and (c1.obj, c1.middle, c1.base, c1.d0, c1.d1, c1.collapse)
            == (c2.obj, c2.middle, c2.base, c2.d0, c2.d1, c2.collapse)
            and c1.alpha_tilde(b) == c2.alpha_tilde(b))


def verify_certificate(m: ModelBicategory, cert: ClassCertificate) -> list[str]:
    """Replay every move's hypotheses; an empty list means the certificate is sound."""
    out = []
    here = cert.start
    for k, mv in enumerate(cert.moves):
        if mv.before != here:
            out.append(f"move {k} does not start where the previous one ended")
        here = mv.after
        if mv.kind == "vertical-fitting":
            out += [f"move {k}: {p}" for p in _fitting_problems(m, mv)]
            continue
        b = context(m, mv.after.side).base
        if mv.kind == "cylinder-morphism":
            probs = transfer_problems(b, mv.data["first"], mv.data["second"], mv.data["morphism"],
                                      mv.data["rho"])
            if {mv.before, mv.after} != {mv.data["first"], mv.data["second"]}:
                probs.append("move endpoints are not the transferred pair")
        elif mv.kind == "same-cylinder":
            probs = same_cylinder_problems(b, mv.data["first"], mv.data["second"], mv.data["rho"])
            if {mv.before, mv.after} != {mv.data["first"], mv.data["second"]}:
                probs.append("move endpoints are not the compared pair")
        elif mv.kind == "alpha-retarget":
            probs = [] if same_alpha_tilde(b, mv.before, mv.after) else ["alpha_tilde differs"]
        else:
            probs = [f"unknown move kind {mv.kind}"]
        out += [f"move {k}: {p}" for p in probs]
    if here != cert.end:
        out.append("certificate does not end at its declared endpoint")
    return out


def chain(*certs: ClassCertificate) -> ClassCertificate:
    certs = [c for c in certs if c is not None]
    moves = tuple(mv for c in certs for mv in c.moves)
    return ClassCertificate(certs[0].start, certs[-1].end, moves)


# ---------------------------------------------------------------------------
# from σ-homotopies to fibrant w-homotopies


def sigma_to_fibrant_w(m: ModelBicategory, hom: Homotopy) -> tuple[Homotopy, ClassCertificate]:
    """A fibrant w-homotopy in the class of ``hom`` (target of the arrows fibrant).

    Four stages run in order, each skipped when its conclusion already holds:
    fibrant middle and base objects, fibrant collapse map, base equal to the
    source object, and a cofibration pair of faces.
    """
    check_homotopy(m, hom)
    ctx = context(m, hom.side)
    b = ctx.base
    if not ctx.is_fibrant(b.tgt(hom.source)):
        raise HomotopyError(f"target {b.tgt(hom.source)} is not fibrant")
    cert = ClassCertificate(hom, hom)
    current = hom
    for stage in (_stage_fibrant_objects, _stage_fibrant_collapse, _stage_base_is_source,
                  _stage_cofibration_pair):
        try:
            step = stage(m, current)
        except ModelError as exc:
            raise ModelError(f"{stage.__name__[7:]}: {exc}") from exc
        if step is not None:
            current, c = step
            cert = chain(cert, c)
    if not (is_w_homotopy(m, current) and is_fibrant(m, current)):
        raise HomotopyError("pipeline output is not a fibrant w-homotopy")
    return current, cert


def _stage_fibrant_objects(model: ModelBicategory, hom: Homotopy):
    m = context(model, hom.side)
    b = m.base
    c = hom.cylinder
    if m.is_fibrant(c.middle) and m.is_fibrant(c.base):
        return None
    rz = m.replacement.R_object(c.base)
    ell, z2 = rz.comparison, rz.replaced
    fac = m.factor(hom.h, "acyclic-cofibration")
    k, h2, w2 = fac.i, fac.p, b.tgt(fac.i)
    ext = next(family_fillers(b, [(k, b.c(ell, c.collapse))], [], w2, z2), None)
    if ext is None:
        raise ModelError("no extension of ell * s along k")
    s2, (lam,), _ = ext
    if not m.is_w(s2):
        raise ModelError(f"extended collapse {s2} is not a weak equivalence")
    mor = CylinderMorphism(k, ell, b.id2[b.c(k, c.d0)], b.id2[b.c(k, c.d1)], b.inv(lam),
                           b.id2[b.c(ell, c.base_map)])
    target = Cylinder(c.obj, w2, z2, b.c(k, c.d0), b.c(k, c.d1), b.c(ell, c.base_map), s2,
                      None, None)
    return transfer_along_cylinder_morphism(model, mor, hom, target, h2, b.inv(fac.sigma), "forward")


def _stage_fibrant_collapse(model: ModelBicategory, hom: Homotopy):
    m = context(model, hom.side)
    b = m.base
    c = hom.cylinder
    if m.is_fib(c.collapse):
        return None
    fac = m.factor(c.collapse, "acyclic-cofibration")
    k, s2, w2 = fac.i, fac.p, b.tgt(fac.i)
    if not m.is_w(s2):
        raise ModelError(f"factored collapse {s2} is not a weak equivalence")
    ext = next(family_fillers(b, [(k, b.unit[c.middle])], [], w2, c.middle), None)
    if ext is None:
        raise ModelError(f"no retraction of {k}: is {c.middle} fibrant?")
    back, (lam,), _ = ext
    mor = CylinderMorphism(k, b.unit[c.base], b.id2[b.c(k, c.d0)], b.id2[b.c(k, c.d1)],
                           b.inv(fac.sigma), b.id2[c.base_map])
    target = Cylinder(c.obj, w2, c.base, b.c(k, c.d0), b.c(k, c.d1), c.base_map, s2, None, None)
    rho = b.w(hom.h, b.inv(lam))
    return transfer_along_cylinder_morphism(model, mor, hom, target, b.c(hom.h, back), rho, "forward")


def _stage_base_is_source(model: ModelBicategory, hom: Homotopy):
    m = context(model, hom.side)
    b = m.base
    c = hom.cylinder
    x = c.obj
    if c.base == x and c.base_map == b.unit[x]:
        return None
    sd1 = b.c(c.collapse, c.d1)
    pw = m.witness("Pullback", (c.collapse, sd1))
    if pw is None:
        raise ModelError(f"no Pullback of ({c.collapse}, {sd1})")
    k, s2 = pw.legs
    faces, gammas, alphas = [], [], []
    for theta in (c.alpha_tilde(b), b.id2[sd1]):
        d, (gam, back) = induced_arrow(b, pw, (c.d0 if not faces else c.d1, b.unit[x], theta))
        faces.append(d)
        gammas.append(gam)
        alphas.append(b.inv(back))
    if not (m.is_fib(s2) and m.is_w(s2)):
        raise ModelError(f"pullback leg {s2} is not a trivial fibration")
    retargeted = retarget(model, hom, 1)
    move0 = Move("alpha-retarget", hom, retargeted)
    mor = CylinderMorphism(k, sd1, gammas[0], gammas[1], pw.cell, b.id2[sd1])
    target = Cylinder(x, pw.apex, x, faces[0], faces[1], b.unit[x], s2, alphas[0], alphas[1])
    hk = b.c(hom.h, k)
    result, cert = transfer_along_cylinder_morphism(model, mor, retargeted, target, hk, b.id2[hk],
                                                    "backward")
    return result, ClassCertificate(hom, result, (move0,) + cert.moves)


def _stage_cofibration_pair(model: ModelBicategory, hom: Homotopy):
    m = context(model, hom.side)
    b = m.base
    c = hom.cylinder
    x = c.obj
    if cofibration_pair(m, x, c.d0, c.d1):
        return None
    found = _factor_face_pair(m, c)
    if found is None:
        raise ModelError("no cofibration/trivial-fibration factorization of the face pair")
    w2, e0, e1, k, g0, g1 = found
    mor = CylinderMorphism(k, b.unit[x], g0, g1, b.id2[b.c(c.collapse, k)], b.id2[b.unit[x]])
    target = Cylinder(x, w2, x, e0, e1, b.unit[x], b.c(c.collapse, k), None, None)
    hk = b.c(hom.h, k)
    return transfer_along_cylinder_morphism(model, mor, hom, target, hk, b.id2[hk], "backward")


def _factor_face_pair(m: ModelBicategory, c: Cylinder):
    """``(W', e0, e1, k, gamma0, gamma1)`` with ``k`` a trivial fibration and
    ``gamma_j: d_j => k * e_j`` invertible, ``(e0, e1)`` a cofibration pair."""
    b = m.base
    x = c.obj
    cw = m.witness("coProduct", (x, x))
    if cw is not None:
        pair, (c0, c1) = binom(b, cw, c.d0, c.d1)
        fac = m.factor(pair, "acyclic-fibration")
        inj0, inj1 = cw.legs
        g0 = b.v(b.w(fac.sigma, inj0), c0)
        g1 = b.v(b.w(fac.sigma, inj1), c1)
        return b.tgt(fac.i), b.c(fac.i, inj0), b.c(fac.i, inj1), fac.p, g0, g1
    mids = [c.middle] + [w for w in b.objects if w != c.middle]
    for w2 in mids:
        for k in b.hom(w2, c.middle):
            if not (m.is_fib(k) and m.is_w(k)):
                continue
            for e0 in b.hom(x, w2):
                for e1 in b.hom(x, w2):
                    g0s, g1s = b.isos(c.d0, b.c(k, e0)), b.isos(c.d1, b.c(k, e1))
                    if g0s and g1s and cofibration_pair(m, x, e0, e1):
                        return w2, e0, e1, k, g0s[0], g1s[0]
    return None


# ---------------------------------------------------------------------------
# vertical composition


def vcompose_w(m: ModelBicategory, first: Homotopy, second: Homotopy
               ) -> tuple[Homotopy, ClassCertificate]:
    """A single w-homotopy in the class of ``second ∘ first``."""
    for hom in (first, second):
        check_homotopy(m, hom)
        if not is_w_homotopy(m, hom):
            raise HomotopyError("vertical composition needs w-homotopies")
    if first.side != second.side:
        raise HomotopyError("cannot compose a left with a right homotopy")
    if first.target != second.source:
        raise HomotopyError(f"{first.target} != {second.source}")
    ctx = context(m, first.side)
    b = ctx.base
    c1, c2 = first.cylinder, second.cylinder
    x = c1.obj
    cw = ctx.witness("coComma", (c1.d1, c2.d0))
    if cw is None:
        raise ModelError(f"no coComma of ({c1.d1}, {c2.d0})")
    b1, b2 = cw.legs
    theta_s = b.v(b.inv(c2.alpha0), c1.alpha1)
    s, (nu1, nu2_inv) = induced_arrow(b, cw, (c1.collapse, c2.collapse, theta_s))
    theta_h = b.v(second.eta, first.eps)
    h, (gam1, gam2_inv) = induced_arrow(b, cw, (first.h, second.h, theta_h))
    nu2, gam2 = b.inv(nu2_inv), b.inv(gam2_inv)
    d0, d1 = b.c(b1, c1.d0), b.c(b2, c2.d1)
    a0 = b.v(c1.alpha0, b.inv(b.w(nu1, c1.d0)))
    a1 = b.v(c2.alpha1, b.w(nu2, c2.d1))
    cyl = Cylinder(x, cw.apex, x, d0, d1, b.unit[x], s, a0, a1)
    eta = b.v(b.w(gam1, c1.d0), first.eta)
    eps = b.v(second.eps, b.w(gam2, c2.d1))
    result = Homotopy(first.source, second.target, cyl, h, eta, eps, first.side)
    seq = HomotopySequence((first, second))
    mv = Move("vertical-fitting", seq, result,
              {"witness": cw, "nu": (nu1, nu2), "gamma": (gam1, gam2)})
    problems = _fitting_problems(m, mv)
    if problems:
        raise HomotopyError("fitting hypotheses fail: " + "; ".join(problems))
    if not ctx.is_w(s):
        raise ModelError(f"induced collapse {s} is not a weak equivalence")
    if not is_w_cylinder(ctx, cyl):
        raise ModelError("composite faces do not form a cofibration pair")
    return result, ClassCertificate(seq, result, (mv,))


def _fitting_problems(m: ModelBicategory, mv: Move) -> list[str]:
    seq, result = mv.before, mv.after
    first, second = seq.steps
    b = context(m, result.side).base
    cw = mv.data["witness"]
    nu1, nu2 = mv.data["nu"]
    gam1, gam2 = mv.data["gamma"]
    c1, c2 = first.cylinder, second.cylinder
    delta = cw.cell
    out = []
    s, h = result.cylinder.collapse, result.h
    lhs = b.v(second.eta, first.eps)
    rhs = b.v(b.w(gam2, c2.d0), b.w(h, delta), b.w(gam1, c1.d1))
    if lhs != rhs:
        out.append("fitting condition on eta/eps fails")
    lhs = b.v(b.inv(c2.alpha0), c1.alpha1)
    rhs = b.v(b.w(nu2, c2.d0), b.w(s, delta), b.w(nu1, c1.d1))
    if lhs != rhs:
        out.append("fitting condition on the alphas fails")
    out += homotopy_problems(m, result)
    return out


# ---------------------------------------------------------------------------
# homotopies with invertible cells


def lift_homotopy_through_fibration(m: ModelBicategory, p: str, hom: Homotopy, f: str, g: str
                                    ) -> tuple[Homotopy, ClassCertificate]:
    """From ``H: p*f ~> p*g`` to ``H': f ~> g`` with ``[p * H'] = [H]``."""
    check_homotopy(m, hom)
    ctx = context(m, hom.side)
    b = ctx.base
    if not has_invertible_cells(m, hom):
        raise HomotopyError("the homotopy must have invertible cells")
    if not (ctx.is_fib(p) and ctx.is_w(p)):
        raise HomotopyError(f"{p} is not a trivial fibration")
    if (hom.source, hom.target) != (b.c(p, f), b.c(p, g)):
        raise HomotopyError("homotopy endpoints are not p * f and p * g")
    c = hom.cylinder
    sols = family_fillers(b, [(c.d0, f), (c.d1, g)], [(p, hom.h)], c.middle, b.src(p),
                          {(0, 0): hom.eta, (1, 0): b.inv(hom.eps)})
    lift = next(sols, None)
    if lift is None:
        raise ModelError("no lift of the homotopy through the trivial fibration")
    h2, (lam0, lam1), (rho,) = lift
    result = Homotopy(f, g, c, h2, lam0, b.inv(lam1), hom.side)
    whiskered = whisker_homotopy(m, "post" if hom.side == LEFT else "pre", result, p)
    move = Move("same-cylinder", whiskered, hom,
                {"first": whiskered, "second": hom, "rho": b.inv(rho)})
    return result, ClassCertificate(whiskered, hom, (move,))


def left_to_right(m: ModelBicategory, hom: Homotopy, path_object: Cylinder | None = None
                  ) -> Homotopy:
    """A right w-homotopy with invertible cells in the class of the left one."""
    check_homotopy(m, hom)
    if hom.side != LEFT:
        raise HomotopyError("expected a left homotopy")
    if not has_invertible_cells(m, hom):
        raise HomotopyError("the homotopy must have invertible cells")
    b = m.base
    c = hom.cylinder
    x, f = c.obj, hom.source
    if not m.is_cofibrant(x):
        raise HomotopyError(f"{x} is not cofibrant")
    if c.base != x or c.base_map != b.unit[x]:
        raise HomotopyError("expected a w-cylinder")
    y = b.tgt(f)
    po = path_object or make_cofibrant_pathobject(m, y)
    # path-object data read in the original bicategory: e_j: W' -> Y, t: Y -> W'
    e0, e1, t, pa0, pa1 = po.d0, po.d1, po.collapse, po.alpha0, po.alpha1
    gam0 = b.v(b.w(f, b.inv(c.alpha0)), b.w(pa0, f))
    gam1 = b.v(hom.eta, b.w(pa1, f))
    sols = family_fillers(b, [(c.d0, b.c(t, f))], [(e0, b.c(f, c.collapse)), (e1, hom.h)],
                          c.middle, po.middle, {(0, 0): gam0, (0, 1): gam1})
    lift = next(sols, None)
    if lift is None:
        raise ModelError("no lift for the left-to-right switch")
    k, (lam,), (rho0, rho1) = lift
    eta = b.v(b.w(b.inv(rho0), c.d1), b.w(f, b.inv(c.alpha1)))
    eps = b.v(hom.eps, b.w(rho1, c.d1))
    result = Homotopy(f, hom.target, po, b.c(k, c.d1), eta, eps, RIGHT)
    check_homotopy(m, result)
    return result


def w_whisker_pre(m: ModelBicategory, hom: Homotopy, arrow: str
                  ) -> tuple[Homotopy, ClassCertificate]:
    """A w-homotopy in the class of ``H * arrow`` when ``H`` is fibrant.

    Lifts the whiskered cylinder's faces against the collapse map of ``H`` to
    get a morphism from a fibrant w-cylinder on the new source object.
    """
    check_homotopy(m, hom)
    ctx = context(m, hom.side)
    b = ctx.base
    c = hom.cylinder
    if not (ctx.is_fib(c.collapse) and ctx.is_w(c.collapse)):
        raise HomotopyError("w-whiskering needs a fibrant homotopy")
    sigma = whisker_homotopy(m, "pre" if hom.side == LEFT else "post", hom, arrow)
    x2 = b.src(arrow)
    c2 = make_fibrant_cylinder(ctx, x2)
    a0, a1 = b.c(c.d0, arrow), b.c(c.d1, arrow)
    top = b.c(arrow, c2.collapse)
    g0 = b.v(b.w(arrow, b.inv(c2.alpha0)), b.w(c.alpha0, arrow))
    g1 = b.v(b.w(arrow, b.inv(c2.alpha1)), b.w(c.alpha1, arrow))
    lift = next(family_fillers(b, [(c2.d0, a0), (c2.d1, a1)], [(c.collapse, top)], c2.middle,
                               c.middle, {(0, 0): g0, (1, 0): g1}), None)
    if lift is None:
        raise ModelError("no lift of the whiskered cylinder")
    k, (lam0, lam1), (rho,) = lift
    mor = CylinderMorphism(k, arrow, lam0, lam1, rho, b.id2[arrow])
    hk = b.c(hom.h, k)
    return transfer_along_cylinder_morphism(m, mor, sigma, c2, hk, b.id2[hk], "backward")


def xi_Q(m: ModelBicategory, hom: Homotopy, f: str) -> Homotopy:
    """From ``H: id_X ~> f`` to ``id_QX ~> Qf`` (left, invertible cells)."""
    b = m.base
    x = b.src(f)
    if hom.source != b.unit[x] or hom.target != f:
        raise HomotopyError(f"expected a homotopy id_{x} ~> {f}")
    rep = m.replacement
    qx, qf = rep.Q_object(x), rep.Q_arrow(f)
    if qx.replaced == x:
        return hom
    px = qx.comparison
    whiskered, _ = w_whisker_pre(m, hom, px)
    composite = adjust_ends(m, whiskered, after=b.inv(qf.cell))
    lifted, _ = lift_homotopy_through_fibration(m, px, composite, b.unit[qx.replaced], qf.replaced)
    return lifted


def phi_Q(m: ModelBicategory, hom: Homotopy, f: str, g: str, l: str) -> Homotopy:
    """From ``H: g*f ~> l`` to ``Qg*Qf ~> Ql`` (left, invertible cells)."""
    b = m.base
    if hom.source != b.c(g, f) or hom.target != l:
        raise HomotopyError(f"expected a homotopy {g}*{f} ~> {l}")
    rep = m.replacement
    x, z = b.src(f), b.tgt(g)
    qx, qz = rep.Q_object(x), rep.Q_object(z)
    qy = rep.Q_object(b.tgt(f))
    rf, rg, rl = rep.Q_arrow(f), rep.Q_arrow(g), rep.Q_arrow(l)
    if qx.replaced == x and qy.replaced == b.tgt(f) and qz.replaced == z:
        return hom
    px = qx.comparison
    whiskered, _ = w_whisker_pre(m, hom, px)
    before = b.v(b.w(g, rf.cell), b.w(rg.cell, rf.replaced))
    composite = adjust_ends(m, whiskered, before=before, after=b.inv(rl.cell))
    lifted, _ = lift_homotopy_through_fibration(m, qz.comparison, composite,
                                                b.c(rg.replaced, rf.replaced), rl.replaced)
    return lifted


def xi_phi_Q(m: ModelBicategory, kind: str, hom: Homotopy, *arrows: str) -> Homotopy:
    if kind == "xi":
        return xi_Q(m, hom, *arrows)
    if kind == "phi":
        return phi_Q(m, hom, *arrows)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# class equality


def class_equal(m: ModelBicategory, one, other,
                functors: Sequence[Pseudofunctor] | None = None) -> ClassResult:
    """Certificate first, then enumeration; never reports "not equal"."""
    if (one.source, one.target) != (other.source, other.target):
        raise HomotopyError("homotopies have different endpoints")
    if one == other:
        return ClassResult("Equal", ClassCertificate(one, other))
    if isinstance(one, Homotopy) and isinstance(other, Homotopy) and one.side == other.side:
        b = context(m, one.side).base
        if same_alpha_tilde(b, one, other):
            return ClassResult("Equal", ClassCertificate(
                one, other, (Move("alpha-retarget", one, other),)))
        if one.cylinder == other.cylinder:
            for rho in b.isos(other.h, one.h):
                if not same_cylinder_problems(b, one, other, rho):
                    mv = Move("same-cylinder", one, other,
                              {"first": one, "second": other, "rho": rho})
                    return ClassResult("Equal", ClassCertificate(one, other, (mv,)))
    functors = admissible_functors(m) if functors is None else functors
    for fn in functors:
        a, c = hat(fn, one), hat(fn, other)
        if a != c:
            return ClassResult("Unknown", note="hats disagree", evidence=(fn.name, a, c))
    return ClassResult("EqualByEnumeration", note=SOUNDNESS_CAVEAT,
                       evidence=(len(functors),))


def enumerate_cylinders(m: ModelBicategory, x: str, side: str = LEFT):
    """Every cylinder for ``x`` (collapse map in W), in name order."""
    ctx = context(m, side)
    b = ctx.base
    for s in sorted(ctx.W):
        w, z = b.arrows[s]
        for d0 in b.hom(x, w):
            for d1 in b.hom(x, w):
                for xm in b.hom(x, z):
                    for a0 in b.isos(b.c(s, d0), xm):
                        for a1 in b.isos(b.c(s, d1), xm):
                            yield Cylinder(x, w, z, d0, d1, xm, s, a0, a1)


def enumerate_homotopies(m: ModelBicategory, f: str, g: str, side: str = LEFT):
    """Every homotopy ``f ~> g`` on a side, in name order."""
    b = context(m, side).base
    x, y = b.arrows[f]
    for cyl in enumerate_cylinders(m, x, side):
        for h in b.hom(cyl.middle, y):
            for eta in b.cells_between(f, b.c(h, cyl.d0)):
                for eps in b.cells_between(b.c(h, cyl.d1), g):
                    yield Homotopy(f, g, cyl, h, eta, eps, side)
