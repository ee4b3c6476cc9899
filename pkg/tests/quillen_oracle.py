"""Quillen homotopy classes for a finite 1-category, from raw composition tables.

Only the dictionaries ``arrows``, ``comp`` and ``unit`` are read, so this is
independent of the package's lifting, replacement and homotopy code.
"""

from __future__ import annotations

import itertools


class Category:
    def __init__(self, objects, arrows, comp, unit):
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.comp = dict(comp)
        self.unit = dict(unit)

    def hom(self, x, y):
        return [f for f, xy in sorted(self.arrows.items()) if xy == (x, y)]

    def then(self, f, g):
        """``g`` after ``f``."""
        return self.comp[(g, f)]


def _coproduct(cat, x, y):
    for apex in cat.objects:
        for i0, i1 in itertools.product(cat.hom(x, apex), cat.hom(y, apex)):
            ok = True
            for z in cat.objects:
                for a, b in itertools.product(cat.hom(x, z), cat.hom(y, z)):
                    hits = [h for h in cat.hom(apex, z)
                            if cat.then(i0, h) == a and cat.then(i1, h) == b]
                    if len(hits) != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return apex, i0, i1
    return None


def _terminal(cat):
    return next(t for t in cat.objects if all(len(cat.hom(x, t)) == 1 for x in cat.objects))


def _initial(cat):
    return next(t for t in cat.objects if all(len(cat.hom(t, x)) == 1 for x in cat.objects))


def _factor(cat, f, left, right):
    x, y = cat.arrows[f]
    for z in cat.objects:
        for i in cat.hom(x, z):
            for p in cat.hom(z, y):
                if cat.then(i, p) == f and left(i) and right(p):
                    return z, i, p
    raise ValueError(f"no factorization of {f}")


def homotopy_class_counts(cat, weak, fib, cof):
    """``{(X, Y): |C(QX, RY) / ~|}`` with ``~`` left homotopy through cylinders."""
    weak, fib, cof = set(weak), set(fib), set(cof)
    zero, one = _initial(cat), _terminal(cat)
    q = {x: _factor(cat, cat.hom(zero, x)[0], lambda i: i in cof,
                    lambda p: p in fib and p in weak)[0] for x in cat.objects}
    r = {y: _factor(cat, cat.hom(y, one)[0], lambda i: i in cof and i in weak,
                    lambda p: p in fib)[0] for y in cat.objects}
    out = {}
    for x in cat.objects:
        for y in cat.objects:
            out[(x, y)] = _count_classes(cat, q[x], r[y], weak, fib, cof)
    return out


def _count_classes(cat, a, b, weak, fib, cof):
    arrows = cat.hom(a, b)
    co = _coproduct(cat, a, a)
    related = set()
    if co is not None:
        apex, i0, i1 = co
        fold = next(h for h in cat.hom(apex, a)
                    if cat.then(i0, h) == cat.unit[a] and cat.then(i1, h) == cat.unit[a])
        for z in cat.objects:
            for j in cat.hom(apex, z):
                for s in cat.hom(z, a):
                    if j in cof and s in weak and cat.then(j, s) == fold:
                        for h in cat.hom(z, b):
                            related.add((cat.then(cat.then(i0, j), h),
                                         cat.then(cat.then(i1, j), h)))
    parent = {f: f for f in arrows}

    def find(f):
        while parent[f] != f:
            f = parent[f]
        return f

    for f, g in related:
        parent[find(f)] = find(g)
    return len({find(f) for f in arrows})
