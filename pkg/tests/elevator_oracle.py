"""Brute-force reference for free 2-cell equality.

Works directly on whiskered layers, never on the kernel's integer codes, and
closes a term under every elementary move in both directions.
"""

from __future__ import annotations

from collections import deque

from hobicat.cells import ElevatorTerm, Layer


def _independent_swaps(term: ElevatorTerm):
    cd = term.computad
    here = term.source
    for k in range(len(term.layers) - 1):
        upper, lower = term.layers[k], term.layers[k + 1]
        u_src, u_tgt = upper.footprint(cd)
        l_src, l_tgt = lower.footprint(cd)
        u_pos, l_pos = len(upper.left), len(lower.left)
        # lower lies entirely left of upper's output: it keeps its offset and
        # upper moves right by the change in width
        if l_pos + len(l_src) <= u_pos:
            yield _swap(term, k, here, lower, l_pos, upper, u_pos - len(l_src) + len(l_tgt))
        # lower lies entirely right of upper's output: its offset in the
        # original path is shifted back and upper keeps its offset
        if u_pos + len(u_tgt) <= l_pos:
            yield _swap(term, k, here, lower, l_pos - len(u_tgt) + len(u_src), upper, u_pos)
        here = upper.codomain(cd)


def _swap(term, k, here, lower, lower_pos, upper, upper_pos):
    """Apply ``lower`` first at ``lower_pos`` of ``here``, then ``upper`` at ``upper_pos``."""
    cd = term.computad
    try:
        first = _place(here, lower, lower_pos, cd)
        second = _place(first.codomain(cd), upper, upper_pos, cd)
        layers = term.layers[:k] + (first, second) + term.layers[k + 2:]
        return ElevatorTerm(term.source, term.target, layers, cd)
    except ValueError:
        return None


def _place(path, layer, pos, cd):
    src, _ = layer.footprint(cd)
    if path.gens[pos:pos + len(src)] != src:
        raise ValueError("footprint mismatch")
    return Layer(path.slice(0, pos, cd), layer.gen, layer.inverse,
                 path.slice(pos + len(src), len(path), cd))


def neighbours(term: ElevatorTerm):
    cd = term.computad
    layers = term.layers
    for t in _independent_swaps(term):
        if t is not None:
            yield t
    for k, layer in enumerate(layers):
        if layer.gen is None:
            yield ElevatorTerm(term.source, term.target, layers[:k] + layers[k + 1:], cd)
    for k in range(len(layers) - 1):
        a, b = layers[k], layers[k + 1]
        if (a.gen is not None and a.gen == b.gen and a.inverse != b.inverse
                and a.left == b.left and a.right == b.right):
            yield ElevatorTerm(term.source, term.target, layers[:k] + layers[k + 2:], cd)


def closure(term: ElevatorTerm, limit: int = 100_000) -> set[tuple]:
    """All layer tuples reachable from ``term`` by swaps, deletions and cancellations.

    Moves that grow a term (inserting units or inverse pairs) are the reverses
    of deletions; two terms are move-equivalent iff their forward closures meet.
    """
    seen = {term.layers}
    queue = deque([term])
    while queue:
        t = queue.popleft()
        for n in neighbours(t):
            if n.layers not in seen:
                seen.add(n.layers)
                queue.append(n)
                if len(seen) > limit:
                    raise RuntimeError("closure too large")
    return seen


def oracle_partition(terms: list[ElevatorTerm]) -> list[frozenset[int]]:
    """Connected components of ``terms`` under the elementary moves."""
    index = {(t.target, t.layers): k for k, t in enumerate(terms)}
    parent = list(range(len(terms)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, t in enumerate(terms):
        for n in neighbours(t):
            j = index.get((n.target, n.layers))
            if j is not None:
                a, b = find(k), find(j)
                if a != b:
                    parent[a] = b
    groups: dict[int, set[int]] = {}
    for k in range(len(terms)):
        groups.setdefault(find(k), set()).add(k)
    return sorted((frozenset(g) for g in groups.values()), key=min)
