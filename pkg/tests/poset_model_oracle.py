"""Model axioms for a finite total order, decided from the order alone.

In a preorder every hom has at most one arrow and every square commutes, so
a lifting problem ``i: a -> x`` against ``p: y -> b`` is solvable exactly
when ``x <= y``.  Pullbacks are meets and pushouts are joins.
"""

from __future__ import annotations


def poset_axioms(elements, arrow_name, weak, fib, cof) -> set[str]:
    """Names of the failing axioms among M0..M5."""
    idx = {x: k for k, x in enumerate(elements)}
    le = lambda x, y: idx[x] <= idx[y]
    arrows = [(x, y) for x in elements for y in elements if le(x, y)]
    name = lambda xy: arrow_name(*xy)
    W = {xy for xy in arrows if name(xy) in weak}
    F = {xy for xy in arrows if name(xy) in fib}
    C = {xy for xy in arrows if name(xy) in cof}
    meet = lambda x, y: x if le(x, y) else y
    join = lambda x, y: y if le(x, y) else x
    failing = set()

    for (a, x) in C:
        for (y, b) in F:
            if ((a, x) in W or (y, b) in W) and le(a, y) and le(x, b) and not le(x, y):
                failing.add("M1")

    for (x, y) in arrows:
        mids = [z for z in elements if le(x, z) and le(z, y)]
        if not any((x, z) in C and (x, z) in W and (z, y) in F for z in mids):
            failing.add("M2")
        if not any((x, z) in C and (z, y) in F and (z, y) in W for z in mids):
            failing.add("M2")

    for cls in (F, C):
        for (x, y) in cls:
            for (y2, z) in cls:
                if y2 == y and (x, z) not in cls:
                    failing.add("M3")
    for x in elements:
        if (x, x) not in F or (x, x) not in C:
            failing.add("M3")
        if (x, x) not in W:
            failing.add("M5")
    for (x, z) in arrows:
        for (y, z2) in arrows:
            if z2 != z:
                continue
            leg = (meet(x, y), y)
            if (x, z) in F and leg not in F:
                failing.add("M3")
            if (x, z) in F and (x, z) in W and leg not in W:
                failing.add("M4")
    for (z, x) in arrows:
        for (z2, y) in arrows:
            if z2 != z:
                continue
            leg = (y, join(x, y))
            if (z, x) in C and leg not in C:
                failing.add("M3")
            if (z, x) in C and (z, x) in W and leg not in W:
                failing.add("M4")

    for (x, y) in arrows:
        for (y2, z) in arrows:
            if y2 == y:
                flags = [(x, y) in W, (y, z) in W, (x, z) in W]
                if sum(flags) == 2:
                    failing.add("M5")
    return failing
