"""The shipped fixture bicategories and small builders for more."""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .bicat import FiniteBicategory


def locally_discrete(name: str, objects: Iterable[str], arrows: Mapping[str, tuple[str, str]],
                     comp: Mapping[tuple[str, str], str], unit: Mapping[str, str]) -> FiniteBicategory:
    """A 1-category viewed as a bicategory with identity 2-cells only."""
    arrows = dict(arrows)
    cells = {f"1_{f}": (f, f) for f in arrows}
    id2 = {f: f"1_{f}" for f in arrows}
    vcomp = {(f"1_{f}", f"1_{f}"): f"1_{f}" for f in arrows}
    hcomp = {(f"1_{g}", f"1_{f}"): f"1_{h}" for (g, f), h in comp.items()}
    return FiniteBicategory(name, objects, arrows, cells, comp, unit, vcomp, hcomp, id2)


def poset(name: str, elements: Iterable[str], leq: Callable[[str, str], bool],
          names: Mapping[tuple[str, str], str] | None = None) -> FiniteBicategory:
    """A preorder as a bicategory: one arrow ``x -> y`` whenever ``x <= y``."""
    elements = tuple(elements)
    names = dict(names or {})
    arrow = {}
    for x in elements:
        for y in elements:
            if leq(x, y):
                arrow[(x, y)] = names.get((x, y), f"id{x}" if x == y else f"{x}<{y}")
    arrows = {f: xy for xy, f in arrow.items()}
    comp = {}
    for (x, y), f in arrow.items():
        for (y2, z), g in arrow.items():
            if y2 == y:
                comp[(g, f)] = arrow[(x, z)]
    unit = {x: arrow[(x, x)] for x in elements}
    return locally_discrete(name, elements, arrows, comp, unit)


def lattice_of_subsets(name: str, universe: Iterable[str]) -> FiniteBicategory:
    """The subsets of ``universe`` ordered by inclusion; joins are unions."""
    universe = tuple(universe)
    subsets = []
    for mask in range(1 << len(universe)):
        subsets.append("{" + ",".join(u for k, u in enumerate(universe) if mask >> k & 1) + "}")
    members = {s: set(filter(None, s[1:-1].split(","))) for s in subsets}
    return poset(name, subsets, lambda a, b: members[a] <= members[b])


def _z2_hom_bicategory(name: str, with_twists: bool) -> FiniteBicategory:
    """One object ``*``, arrows ``id`` and ``u`` with ``u * u = id``.

    With twists each hom-category is the group Z/2 (cells ``1_x`` and ``t_x``)
    and both compositions add the twist counts.
    """
    arrows = {"id": ("*", "*"), "u": ("*", "*")}
    parity = {"id": 0, "u": 1}
    by_parity = {0: "id", 1: "u"}
    comp = {(g, f): by_parity[(parity[g] + parity[f]) % 2] for g in arrows for f in arrows}
    twists = (0, 1) if with_twists else (0,)
    label = lambda f, k: f"{'t' if k else '1'}_{f}"
    cells = {label(f, k): (f, f) for f in arrows for k in twists}
    id2 = {f: label(f, 0) for f in arrows}
    vcomp = {(label(f, j), label(f, k)): label(f, (j + k) % 2)
             for f in arrows for j in twists for k in twists}
    hcomp = {(label(g, j), label(f, k)): label(comp[(g, f)], (j + k) % 2)
             for g in arrows for f in arrows for j in twists for k in twists}
    return FiniteBicategory(name, ("*",), arrows, cells, comp, {"*": "id"}, vcomp, hcomp, id2)


def fix_t() -> FiniteBicategory:
    return locally_discrete("FIX-T", ("*",), {"id": ("*", "*")}, {("id", "id"): "id"}, {"*": "id"})


def fix_p2() -> FiniteBicategory:
    return poset("FIX-P2", ("0", "1"), lambda x, y: x <= y,
                 {("0", "0"): "id0", ("1", "1"): "id1", ("0", "1"): "a"})


def fix_n() -> FiniteBicategory:
    return _z2_hom_bicategory("FIX-N", with_twists=True)


def fix_g() -> FiniteBicategory:
    return _z2_hom_bicategory("FIX-G", with_twists=False)


def join_monoid() -> FiniteBicategory:
    """One object, ``e * e = e``, and a single non-invertible 2-cell ``t: id => e``.

    The hom-category is the ordered pair ``id <= e`` and composition is the
    join, so this exercises the Comma-object code paths.
    """
    arrows = {"id": ("*", "*"), "e": ("*", "*")}
    level = {"id": 0, "e": 1}
    by_level = {0: "id", 1: "e"}
    comp = {(g, f): by_level[max(level[g], level[f])] for g in arrows for f in arrows}
    cells = {"1_id": ("id", "id"), "1_e": ("e", "e"), "t": ("id", "e")}
    cell_of = {(0, 0): "1_id", (1, 1): "1_e", (0, 1): "t"}
    bounds = {a: (level[f], level[g]) for a, (f, g) in cells.items()}
    vcomp = {(b, a): cell_of[(bounds[a][0], bounds[b][1])]
             for a in cells for b in cells if bounds[a][1] == bounds[b][0]}
    hcomp = {(b, a): cell_of[(max(bounds[a][0], bounds[b][0]), max(bounds[a][1], bounds[b][1]))]
             for a in cells for b in cells}
    id2 = {"id": "1_id", "e": "1_e"}
    return FiniteBicategory("FIX-J", ("*",), arrows, cells, comp, {"*": "id"}, vcomp, hcomp, id2)


FIXTURES = {"FIX-T": fix_t, "FIX-P2": fix_p2, "FIX-N": fix_n, "FIX-G": fix_g}


def fixture_by_name(name: str) -> FiniteBicategory | None:
    """A shipped fixture by name; ``^op`` and ``^co`` suffixes take duals."""
    for suffix, dual in (("^op", FiniteBicategory.op), ("^co", FiniteBicategory.co)):
        if name.endswith(suffix):
            inner = fixture_by_name(name[:-len(suffix)])
            return None if inner is None else dual(inner)
    make = {**FIXTURES, "FIX-J": join_monoid}.get(name)
    return None if make is None else make()


def target_family() -> list[FiniteBicategory]:
    """Enumeration targets: the four fixtures and their hom-wise opposites."""
    out = []
    for make in FIXTURES.values():
        b = make()
        out.append(b)
        out.append(b.co())
    return out
