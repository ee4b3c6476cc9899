"""Model structures on finite bicategories: lifting, factorization, axioms, replacement.

Orientation conventions for a square ``gamma: p * a => b * i`` with ``i: A -> X``
and ``p: Y -> B``: a filler is ``(f, lam, rho)`` with ``f: X -> Y``,
``lam: a => f * i`` and ``rho: p * f => b``, subject to
``(rho * i) ∘ (p * lam) = gamma``.

Fibrancy and cofibrancy use the terminal and initial objects when the
bicategory has them.  Otherwise they fall back to extension and lifting
properties against trivial (co)fibrations, which are the empty-family cases
of :func:`family_fillers`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Iterator

from .bicat import (
    FiniteBicategory, LimitWitness, find_equivalence_witness, search_limit, unique_arrow,
    verify_limit_witness, _as_limit, _candidate_legs,
)
from .report import Report


class ModelError(ValueError):
    """Oracle failure or violated precondition."""


@dataclass(frozen=True)
class ArrowClasses:
    weak: frozenset
    fib: frozenset
    cof: frozenset

    def is_w(self, f: str) -> bool:
        return f in self.weak

    def is_fib(self, f: str) -> bool:
        return f in self.fib

    def is_cof(self, f: str) -> bool:
        return f in self.cof


@dataclass(frozen=True)
class LiftingSquare:
    i: str
    p: str
    a: str
    b: str
    gamma: str


@dataclass(frozen=True)
class Filler:
    f: str
    lam: str
    rho: str


class ModelBicategory:
    """A finite bicategory with arrow classes ``W``, ``F`` (fibrations) and ``C`` (cofibrations).

    ``lifter(base, square)`` and ``factorizer(model, f, mode)`` replace the
    exhaustive searches; whatever they return is verified before use.
    """

    def __init__(self, base: FiniteBicategory, weak: Iterable[str], fib: Iterable[str],
                 cof: Iterable[str], name: str | None = None, lifter=None, factorizer=None):
        self.base = base
        self.lifter = lifter
        self.factorizer = factorizer
        self.W = frozenset(weak)
        self.F = frozenset(fib)
        self.C = frozenset(cof)
        for cls in (self.W, self.F, self.C):
            unknown = cls - set(base.arrows)
            if unknown:
                raise ModelError(f"unknown arrows in class: {sorted(unknown)}")
        self.classes = ArrowClasses(self.W, self.F, self.C)
        self.name = name or base.name
        self._witness_cache: dict = {}
        self._op: ModelBicategory | None = None
        self._replacement: Replacement | None = None
        self._lock = threading.Lock()
        self.cache: dict = {}

    # -- classes -------------------------------------------------------------

    def is_w(self, f: str) -> bool:
        return f in self.W

    def is_fib(self, f: str) -> bool:
        return f in self.F

    def is_cof(self, f: str) -> bool:
        return f in self.C

    def trivial_fibrations(self) -> list[str]:
        return sorted(self.F & self.W)

    def trivial_cofibrations(self) -> list[str]:
        return sorted(self.C & self.W)

    def op(self) -> ModelBicategory:
        """The 1-cell dual: fibrations and cofibrations swap roles.

        Custom oracles do not transfer; the dual always searches exhaustively.
        """
        if self._op is None:
            self._op = ModelBicategory(self.base.op(), self.W, self.C, self.F, self.name + "^op")
            self._op._op = self
        return self._op

    @classmethod
    def with_equivalences(cls, base: FiniteBicategory, name: str | None = None) -> ModelBicategory:
        """W the equivalences, every arrow a fibration and a cofibration."""
        weak = [f for f in base.arrows if find_equivalence_witness(base, f) is not None]
        return cls(base, weak, base.arrows, base.arrows, name)

    # -- oracles -------------------------------------------------------------

    def fill(self, sq: LiftingSquare) -> Filler | None:
        fl = (self.lifter or find_filler)(self.base, sq)
        if fl is not None and not verify_filler(self.base, sq, fl):
            raise ModelError(f"lifting oracle returned an invalid filler {fl} for {sq}")
        return fl

    def fillers(self, sq: LiftingSquare) -> list[Filler]:
        if self.lifter is None:
            return all_fillers(self.base, sq)
        fl = self.fill(sq)
        return [] if fl is None else [fl]

    def factor(self, f: str, mode: str) -> Factorization:
        if mode not in FACTOR_MODES:
            raise ValueError(f"unknown factorization mode {mode!r}")
        fac = self.factorizer(self, f, mode) if self.factorizer else _search_factor(self, f, mode)
        if fac is None:
            raise ModelError(f"no {mode} factorization of {f}")
        if not verify_factorization(self, fac, mode):
            raise ModelError(f"factorization oracle returned an invalid factorization {fac}")
        return fac

    # -- limits --------------------------------------------------------------

    def witness(self, kind: str, diagram: tuple = ()) -> LimitWitness | None:
        key = (kind, tuple(diagram))
        if key not in self._witness_cache:
            self._witness_cache[key] = search_limit(self.base, kind, diagram)
        return self._witness_cache[key]

    @property
    def initial(self) -> LimitWitness | None:
        return self.witness("Initial")

    @property
    def terminal(self) -> LimitWitness | None:
        return self.witness("Terminal")

    # -- fibrancy ------------------------------------------------------------

    def is_fibrant(self, x: str) -> bool:
        t = self.terminal
        if t is not None:
            return self.is_fib(unique_arrow(self.base, t, x))
        return extension_property(self, x)

    def is_cofibrant(self, x: str) -> bool:
        return self.op().is_fibrant(x)

    def fibrancy_status(self, x: str) -> dict[str, bool]:
        if x not in self.base.objects:
            raise ModelError(f"unknown object {x}")
        return {"fibrant": self.is_fibrant(x), "cofibrant": self.is_cofibrant(x)}

    def fc_objects(self) -> tuple[str, ...]:
        return tuple(x for x in self.base.objects if self.is_fibrant(x) and self.is_cofibrant(x))

    # -- replacement ----------------------------------------------------------

    @property
    def replacement(self) -> Replacement:
        with self._lock:
            if self._replacement is None:
                self._replacement = Replacement(self)
            return self._replacement


def extension_property(m: ModelBicategory, x: str) -> bool:
    """Every ``a: A -> x`` extends along every trivial cofibration ``i: A -> A'`` up to iso."""
    b = m.base
    for i in m.trivial_cofibrations():
        src, tgt = b.arrows[i]
        for a in b.hom(src, x):
            if next(family_fillers(b, [(i, a)], [], tgt, x), None) is None:
                return False
    return True


# ---------------------------------------------------------------------------
# lifting


def family_fillers(b: FiniteBicategory, left: list[tuple[str, str]],
                   right: list[tuple[str, str]], x: str, y: str,
                   gammas: dict | None = None) -> Iterator[tuple[str, tuple, tuple]]:
    """Fillers ``f: x -> y`` for families of squares sharing the diagonal.

    ``left`` holds pairs ``(i_j, a_j)`` with ``i_j: A_j -> x`` and ``a_j: A_j -> y``;
    ``right`` holds pairs ``(p_k, b_k)`` with ``p_k: y -> B_k`` and ``b_k: x -> B_k``.
    Yields ``(f, lams, rhos)`` with ``lams[j]: a_j => f * i_j`` and
    ``rhos[k]: p_k * f => b_k`` invertible and, for every ``(j, k)`` in
    ``gammas``, ``(rho_k * i_j) ∘ (p_k * lam_j) = gammas[(j, k)]``.
    An empty ``right`` family is an extension problem, an empty ``left``
    family a lifting problem against nothing (used where no initial object
    exists).
    """
    gammas = gammas or {}
    for f in b.hom(x, y):
        lam_opts = [b.isos(a, b.c(f, i)) for i, a in left]
        rho_opts = [b.isos(b.c(p, f), bb) for p, bb in right]
        if any(not o for o in lam_opts) or any(not o for o in rho_opts):
            continue
        yield from _choose(b, f, left, right, lam_opts, rho_opts, gammas, (), ())


def _choose(b, f, left, right, lam_opts, rho_opts, gammas, lams, rhos):
    if len(lams) < len(lam_opts):
        for lam in lam_opts[len(lams)]:
            yield from _choose(b, f, left, right, lam_opts, rho_opts, gammas, lams + (lam,), rhos)
        return
    if len(rhos) < len(rho_opts):
        k = len(rhos)
        for rho in rho_opts[k]:
            ok = True
            for j, lam in enumerate(lams):
                if (j, k) in gammas:
                    p = right[k][0]
                    i = left[j][0]
                    if b.v(b.w(rho, i), b.w(p, lam)) != gammas[(j, k)]:
                        ok = False
                        break
            if ok:
                yield from _choose(b, f, left, right, lam_opts, rho_opts, gammas, lams,
                                   rhos + (rho,))
        return
    yield f, lams, rhos


def _square_ok(b: FiniteBicategory, sq: LiftingSquare) -> bool:
    i, p, a, bb = sq.i, sq.p, sq.a, sq.b
    if b.src(a) != b.src(i) or b.tgt(a) != b.src(p) or b.src(bb) != b.tgt(i) or b.tgt(bb) != b.tgt(p):
        return False
    return b.cells.get(sq.gamma) == (b.c(p, a), b.c(bb, i)) and b.is_invertible(sq.gamma)


def find_filler(b: FiniteBicategory, sq: LiftingSquare) -> Filler | None:
    """First filler of the square in enumeration order, or ``None``."""
    if not _square_ok(b, sq):
        raise ModelError(f"ill-formed lifting square {sq}")
    for f, (lam,), (rho,) in family_fillers(b, [(sq.i, sq.a)], [(sq.p, sq.b)], b.tgt(sq.i),
                                            b.src(sq.p), {(0, 0): sq.gamma}):
        return Filler(f, lam, rho)
    return None


def all_fillers(b: FiniteBicategory, sq: LiftingSquare) -> list[Filler]:
    return [Filler(f, lam, rho) for f, (lam,), (rho,) in family_fillers(
        b, [(sq.i, sq.a)], [(sq.p, sq.b)], b.tgt(sq.i), b.src(sq.p), {(0, 0): sq.gamma})]


def verify_filler(b: FiniteBicategory, sq: LiftingSquare, fl: Filler) -> bool:
    if b.cells.get(fl.lam) != (sq.a, b.c(fl.f, sq.i)) or not b.is_invertible(fl.lam):
        return False
    if b.cells.get(fl.rho) != (b.c(sq.p, fl.f), sq.b) or not b.is_invertible(fl.rho):
        return False
    return b.v(b.w(fl.rho, sq.i), b.w(sq.p, fl.lam)) == sq.gamma


def lp2_hypothesis(b: FiniteBicategory, sq1: LiftingSquare, sq2: LiftingSquare,
                   alpha: str, beta: str) -> bool:
    return b.v(sq2.gamma, b.w(sq1.p, alpha)) == b.v(b.w(beta, sq1.i), sq1.gamma)


def find_filler_delta(b: FiniteBicategory, sq1: LiftingSquare, sq2: LiftingSquare,
                      fl1: Filler, fl2: Filler, alpha: str, beta: str) -> str:
    """The 2-cell ``delta: f1 => f2`` compatible with both fillers."""
    if not lp2_hypothesis(b, sq1, sq2, alpha, beta):
        raise ModelError("the compatibility equation between alpha, beta and the squares fails")
    for delta in b.cells_between(fl1.f, fl2.f):
        if (b.v(fl2.lam, alpha) == b.v(b.w(delta, sq1.i), fl1.lam)
                and b.v(fl2.rho, b.w(sq1.p, delta)) == b.v(beta, fl1.rho)):
            return delta
    raise ModelError("no delta satisfies the two equations")


def squares(b: FiniteBicategory, i: str, p: str) -> Iterator[LiftingSquare]:
    x0, x1 = b.arrows[i]
    y0, y1 = b.arrows[p]
    for a in b.hom(x0, y0):
        for bb in b.hom(x1, y1):
            for gamma in b.isos(b.c(p, a), b.c(bb, i)):
                yield LiftingSquare(i, p, a, bb, gamma)


# ---------------------------------------------------------------------------
# factorization

FACTOR_MODES = ("acyclic-cofibration", "acyclic-fibration")


@dataclass(frozen=True)
class Factorization:
    """``sigma: f => p * i`` invertible."""

    f: str
    i: str
    p: str
    sigma: str


def factorizations(m: ModelBicategory, f: str, mode: str) -> Iterator[Factorization]:
    """Every factorization of ``f`` in the given mode.

    ``mode`` is ``"acyclic-cofibration"`` (i ∈ C∩W, p ∈ F) or
    ``"acyclic-fibration"`` (i ∈ C, p ∈ F∩W).  Degenerate factorizations
    through the source or target are tried first.
    """
    b = m.base
    x, y = b.arrows[f]
    middles = [x, y] + [z for z in b.objects if z not in (x, y)]
    seen = set()
    for z in middles:
        if z in seen:
            continue
        seen.add(z)
        firsts = sorted(b.hom(x, z), key=lambda g: (g != b.unit[x], g))
        for i in firsts:
            if not m.is_cof(i) or (mode == "acyclic-cofibration" and not m.is_w(i)):
                continue
            for p in sorted(b.hom(z, y), key=lambda g: (g != b.unit[y], g)):
                if not m.is_fib(p) or (mode == "acyclic-fibration" and not m.is_w(p)):
                    continue
                for sigma in b.isos(f, b.c(p, i)):
                    yield Factorization(f, i, p, sigma)


def _search_factor(m: ModelBicategory, f: str, mode: str) -> Factorization | None:
    return next(factorizations(m, f, mode), None)


def verify_factorization(m: ModelBicategory, fac: Factorization, mode: str) -> bool:
    b = m.base
    if b.src(fac.i) != b.src(fac.f) or b.tgt(fac.p) != b.tgt(fac.f) or b.tgt(fac.i) != b.src(fac.p):
        return False
    if b.cells.get(fac.sigma) != (fac.f, b.c(fac.p, fac.i)) or not b.is_invertible(fac.sigma):
        return False
    if not (m.is_cof(fac.i) and m.is_fib(fac.p)):
        return False
    return m.is_w(fac.i) if mode == "acyclic-cofibration" else m.is_w(fac.p)


def factor(m: ModelBicategory, f: str, mode: str) -> Factorization:
    return m.factor(f, mode)


# ---------------------------------------------------------------------------
# axioms

AXIOMS = ("M0", "M1", "M2", "M3", "M4", "M5", "MM0", "MM3", "MM4")


def _cospans(b: FiniteBicategory):
    arrows = sorted(b.arrows)
    for f in arrows:
        for g in arrows:
            if b.tgt(f) == b.tgt(g):
                yield f, g


def _spans(b: FiniteBicategory):
    arrows = sorted(b.arrows)
    for f in arrows:
        for g in arrows:
            if b.src(f) == b.src(g):
                yield f, g


def all_limit_witnesses(b: FiniteBicategory, kind: str, diagram: tuple) -> list[LimitWitness]:
    """Every valid witness of the given shape (all apexes, legs and cells)."""
    base, lkind = _as_limit(b, kind)
    out = []
    for apex in base.objects:
        for legs, cell in _candidate_legs(base, lkind, diagram, apex):
            w = LimitWitness(kind, tuple(diagram), apex, legs, cell)
            if verify_limit_witness(b, w).ok:
                out.append(w)
    return out


def check_model_axioms(m: ModelBicategory, which: Iterable[str] = AXIOMS) -> Report:
    which = list(which)
    unknown = [a for a in which if a not in AXIOMS]
    if unknown:
        raise ValueError(f"unknown axioms {unknown}")
    rep = Report(f"model {m.name}")
    b = m.base
    for ax in which:
        rep.check(ax)
    if "M0" in which:
        _check_m0(m, rep["M0"])
    if "M1" in which:
        _check_m1(m, rep["M1"])
    if "M2" in which:
        for f in sorted(b.arrows):
            for mode in FACTOR_MODES:
                try:
                    m.factor(f, mode)
                except ModelError as exc:
                    rep["M2"].violate({"arrow": f, "mode": mode, "reason": str(exc)})
    if "M3" in which:
        _check_m3(m, rep["M3"])
    if "M4" in which:
        _check_m4(m, rep["M4"], "Pullback", "Pushout")
    if "M5" in which:
        _check_m5(m, rep["M5"])
    if b.all_cells_invertible():
        # Comma squares are Pullback squares here, so MM0/MM3/MM4 are M0/M3/M4
        for ax in ("MM0", "MM3", "MM4"):
            if ax in which:
                rep[ax].note = "every 2-cell is invertible: the Pullback/Pushout axioms cover it"
        return rep
    if "MM0" in which:
        for f, g in _cospans(b):
            if m.witness("Comma", (f, g)) is None:
                rep["MM0"].violate({"shape": "Comma", "diagram": (f, g)})
        for f, g in _spans(b):
            if m.witness("coComma", (f, g)) is None:
                rep["MM0"].violate({"shape": "coComma", "diagram": (f, g)})
    if "MM3" in which:
        _check_closure(m, rep["MM3"], "Comma", "coComma")
    if "MM4" in which:
        _check_m4(m, rep["MM4"], "Comma", "coComma")
    return rep


def _check_m0(m: ModelBicategory, chk) -> None:
    b = m.base
    if m.initial is None:
        chk.violate({"shape": "Initial"})
    if m.terminal is None:
        chk.violate({"shape": "Terminal"})
    for f, g in _cospans(b):
        if m.witness("Pullback", (f, g)) is None:
            chk.violate({"shape": "Pullback", "diagram": (f, g)})
    for f, g in _spans(b):
        if m.witness("Pushout", (f, g)) is None:
            chk.violate({"shape": "Pushout", "diagram": (f, g)})


def _check_m1(m: ModelBicategory, chk) -> None:
    b = m.base
    for i in sorted(m.C):
        for p in sorted(m.F):
            if not (m.is_w(i) or m.is_w(p)):
                continue
            sqs = list(squares(b, i, p))
            fillers = {}
            for sq in sqs:
                fl = m.fillers(sq)
                if not fl:
                    chk.violate({"LP1": "no filler", "i": i, "p": p, "a": sq.a, "b": sq.b,
                                 "gamma": sq.gamma})
                fillers[sq] = fl
            for sq1 in sqs:
                for sq2 in sqs:
                    for alpha in b.cells_between(sq1.a, sq2.a):
                        for beta in b.cells_between(sq1.b, sq2.b):
                            if not lp2_hypothesis(b, sq1, sq2, alpha, beta):
                                continue
                            for fl1 in fillers[sq1]:
                                for fl2 in fillers[sq2]:
                                    try:
                                        find_filler_delta(b, sq1, sq2, fl1, fl2, alpha, beta)
                                    except ModelError:
                                        chk.violate({"LP2": "no delta", "i": i, "p": p,
                                                     "alpha": alpha, "beta": beta})


def _check_closure(m: ModelBicategory, chk, lim: str, colim: str) -> None:
    b = m.base
    # the leg opposite to f in a square over (f, g) is the base change of f
    for f, g in _cospans(b):
        if m.is_fib(f):
            for w in all_limit_witnesses(b, lim, (f, g)):
                if not m.is_fib(w.legs[1]):
                    chk.violate({"shape": lim, "diagram": (f, g), "leg": w.legs[1]})
    for f, g in _spans(b):
        if m.is_cof(f):
            for w in all_limit_witnesses(b, colim, (f, g)):
                if not m.is_cof(w.legs[1]):
                    chk.violate({"shape": colim, "diagram": (f, g), "leg": w.legs[1]})


def _check_m3(m: ModelBicategory, chk) -> None:
    b = m.base
    for cls, label in ((m.F, "F"), (m.C, "C")):
        for f in sorted(cls):
            for g in sorted(cls):
                if b.src(g) == b.tgt(f) and b.c(g, f) not in cls:
                    chk.violate({"class": label, "composite": (g, f)})
    _check_closure(m, chk, "Pullback", "Pushout")
    for f in sorted(b.arrows):
        if find_equivalence_witness(b, f) is not None and not (m.is_fib(f) and m.is_cof(f)):
            chk.violate({"equivalence-not-in-F-and-C": f})
        for g in sorted(b.hom(*b.arrows[f])):
            if b.isos(f, g):
                if m.is_fib(f) != m.is_fib(g):
                    chk.violate({"iso-invariance": "F", "arrows": (f, g)})
                if m.is_cof(f) != m.is_cof(g):
                    chk.violate({"iso-invariance": "C", "arrows": (f, g)})


def _check_m4(m: ModelBicategory, chk, lim: str, colim: str) -> None:
    b = m.base
    for f, g in _cospans(b):
        if m.is_fib(f) and m.is_w(f):
            for w in all_limit_witnesses(b, lim, (f, g)):
                if not m.is_w(w.legs[1]):
                    chk.violate({"shape": lim, "diagram": (f, g), "leg": w.legs[1]})
    for f, g in _spans(b):
        if m.is_cof(f) and m.is_w(f):
            for w in all_limit_witnesses(b, colim, (f, g)):
                if not m.is_w(w.legs[1]):
                    chk.violate({"shape": colim, "diagram": (f, g), "leg": w.legs[1]})


def _check_m5(m: ModelBicategory, chk) -> None:
    b = m.base
    arrows = sorted(b.arrows)
    for f in arrows:
        if find_equivalence_witness(b, f) is not None and not m.is_w(f):
            chk.violate({"equivalence-not-in-W": f})
        for g in arrows:
            if b.src(g) != b.tgt(f):
                continue
            for h in b.hom(b.src(f), b.tgt(g)):
                if not b.isos(b.c(g, f), h):
                    continue
                flags = [m.is_w(f), m.is_w(g), m.is_w(h)]
                if sum(flags) == 2:
                    chk.violate({"f": f, "g": g, "h": h, "in-W": flags})


# ---------------------------------------------------------------------------
# w-split factorization


@dataclass(frozen=True)
class WSplit:
    f: str
    i: str
    middle: str
    p: str
    sigma: str          # f => p * i
    retraction: str     # r with r * i ≅ id
    retraction_iso: str  # id_X => r * i
    section: str        # s with p * s ≅ id
    section_iso: str    # p * s => id_Y


def factor_weq_as_wsplit(m: ModelBicategory, f: str) -> WSplit:
    """``f ≅ p * i`` with ``i`` a w-section and ``p`` a w-retraction, both weak equivalences."""
    b = m.base
    x, y = b.arrows[f]
    if not m.is_w(f):
        raise ModelError(f"{f} is not a weak equivalence")
    if not m.is_fibrant(x):
        raise ModelError(f"source {x} is not fibrant")
    if not m.is_cofibrant(y):
        raise ModelError(f"target {y} is not cofibrant")
    fac = factor(m, f, "acyclic-cofibration")
    z = b.tgt(fac.i)
    if not m.is_w(fac.p):
        raise ModelError(f"3-for-2 fails: {fac.p} is not a weak equivalence")
    ext = next(family_fillers(b, [(fac.i, b.unit[x])], [], z, x), None)
    if ext is None:
        raise ModelError(f"no retraction of {fac.i}: extension against a fibrant object fails")
    r, (lam,), _ = ext
    lift = next(family_fillers(b, [], [(fac.p, b.unit[y])], y, z), None)
    if lift is None:
        raise ModelError(f"no section of {fac.p}: lifting from a cofibrant object fails")
    s, _, (rho,) = lift
    return WSplit(f, fac.i, z, fac.p, fac.sigma, r, lam, s, rho)


# ---------------------------------------------------------------------------
# replacement


@dataclass(frozen=True)
class ObjectReplacement:
    obj: str
    replaced: str
    comparison: str     # Q: p_X : QX -> X   R: i_X : X -> RX


@dataclass(frozen=True)
class ArrowReplacement:
    arrow: str
    replaced: str
    cell: str           # Q: rho_f : p_Y * Qf => f * p_X   R: lambda_f : i_Y * f => Rf * i_X


class Replacement:
    """Memoized Q (cofibrant) replacement; R is Q of the 1-cell dual.

    Each entry is computed once; later calls return the stored choice.
    """

    def __init__(self, m: ModelBicategory):
        self.m = m
        self._objects: dict[str, ObjectReplacement] = {}
        self._arrows: dict[str, ArrowReplacement] = {}
        self._cells: dict[str, str] = {}
        self._lock = threading.RLock()

    def Q_object(self, x: str) -> ObjectReplacement:
        with self._lock:
            if x not in self._objects:
                self._objects[x] = self._compute_object(x)
            return self._objects[x]

    def _compute_object(self, x: str) -> ObjectReplacement:
        m, b = self.m, self.m.base
        if m.is_cofibrant(x):
            return ObjectReplacement(x, x, b.unit[x])
        if m.initial is not None:
            zero = unique_arrow(b, m.initial, x)
            fac = factor(m, zero, "acyclic-fibration")
            return ObjectReplacement(x, b.tgt(fac.i), fac.p)
        for p in sorted(m.F & m.W, key=lambda g: (b.src(g), g)):
            if b.tgt(p) == x and m.is_cofibrant(b.src(p)):
                return ObjectReplacement(x, b.src(p), p)
        raise ModelError(f"no cofibrant replacement for {x}")

    def Q_arrow(self, f: str) -> ArrowReplacement:
        with self._lock:
            if f not in self._arrows:
                self._arrows[f] = self._compute_arrow(f)
            return self._arrows[f]

    def _compute_arrow(self, f: str) -> ArrowReplacement:
        m, b = self.m, self.m.base
        x, y = b.arrows[f]
        qx, qy = self.Q_object(x), self.Q_object(y)
        if qx.replaced == x and qy.replaced == y:
            return ArrowReplacement(f, f, b.id2[f])
        # lifting from the cofibrant QX against the trivial fibration p_Y
        target = b.c(f, qx.comparison)
        lift = next(family_fillers(b, [], [(qy.comparison, target)], qx.replaced, qy.replaced),
                    None)
        if lift is None:
            raise ModelError(f"no lift for Q{f}")
        qf, _, (rho,) = lift
        return ArrowReplacement(f, qf, rho)

    def Q_cell(self, mu: str) -> str:
        with self._lock:
            if mu not in self._cells:
                self._cells[mu] = self._compute_cell(mu)
            return self._cells[mu]

    def _compute_cell(self, mu: str) -> str:
        b = self.m.base
        f, g = b.cells[mu]
        x, y = b.arrows[f]
        qx, qy = self.Q_object(x), self.Q_object(y)
        if qx.replaced == x and qy.replaced == y:
            return mu
        rf, rg = self.Q_arrow(f), self.Q_arrow(g)
        want = b.v(b.inv(rg.cell), b.w(mu, qx.comparison), rf.cell)
        for cand in b.cells_between(rf.replaced, rg.replaced):
            if b.w(qy.comparison, cand) == want:
                return cand
        raise ModelError(f"no Q{mu} satisfies the defining equation")

    def check_cell_equation(self, mu: str) -> bool:
        b = self.m.base
        f, g = b.cells[mu]
        x = b.src(f)
        qx, qy = self.Q_object(x), self.Q_object(b.tgt(f))
        rf, rg = self.Q_arrow(f), self.Q_arrow(g)
        lhs = b.w(qy.comparison, self.Q_cell(mu))
        rhs = b.v(b.inv(rg.cell), b.w(mu, qx.comparison), rf.cell)
        return lhs == rhs

    # -- R through the dual ---------------------------------------------------

    @property
    def dual(self) -> Replacement:
        return self.m.op().replacement

    def R_object(self, x: str) -> ObjectReplacement:
        return self.dual.Q_object(x)

    def R_arrow(self, f: str) -> ArrowReplacement:
        """``Rf`` with ``lambda_f: i_Y * f => Rf * i_X``."""
        q = self.dual.Q_arrow(f)
        return ArrowReplacement(f, q.replaced, self.m.base.inv(q.cell))

    def R_cell(self, mu: str) -> str:
        return self.dual.Q_cell(mu)

    def check_r_cell_equation(self, mu: str) -> bool:
        b = self.m.base
        f, g = b.cells[mu]
        ix = self.R_object(b.src(f)).comparison
        iy = self.R_object(b.tgt(f)).comparison
        lf, lg = self.R_arrow(f).cell, self.R_arrow(g).cell
        return b.w(self.R_cell(mu), ix) == b.v(lg, b.w(iy, mu), b.inv(lf))


def replace(m: ModelBicategory, direction: str, item: str):
    """Dispatch on ``direction`` (``"Q"`` or ``"R"``) and the kind of ``item``."""
    rep = m.replacement
    b = m.base
    if direction not in ("Q", "R"):
        raise ValueError(f"unknown direction {direction!r}")
    if item in b.objects:
        return rep.Q_object(item) if direction == "Q" else rep.R_object(item)
    if item in b.arrows:
        return rep.Q_arrow(item) if direction == "Q" else rep.R_arrow(item)
    if item in b.cells:
        return rep.Q_cell(item) if direction == "Q" else rep.R_cell(item)
    raise ModelError(f"unknown item {item!r}")
