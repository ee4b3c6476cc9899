"""Pure-Python interchange normalization kernel.

A layer is encoded as a 5-tuple ``(pos, slen, tlen, gid, inv)``: the offset of
its footprint in the path it acts on, the lengths of the generator's source
and target paths (already swapped for formal inverses), the generator index
(``-1`` for an identity layer) and the orientation flag.
"""

from __future__ import annotations

MAX_STEPS = 1_000_000


def _lower_moves_up(upper, lower):
    """True when ``lower`` sits strictly left of ``upper``'s output."""
    if lower[0] + lower[1] > upper[0]:
        return False
    # two empty footprints at one point have no canonical order; leave them
    return not (lower[1] == 0 and upper[2] == 0 and lower[0] == upper[0])


def normalize_codes(codes):
    out = [c for c in codes if c[3] >= 0]
    steps = 0
    i = 0
    while i < len(out) - 1:
        steps += 1
        if steps > MAX_STEPS:
            raise RuntimeError("interchange normalization did not terminate")
        upper, lower = out[i], out[i + 1]
        if upper[3] == lower[3] and upper[4] != lower[4] and upper[0] == lower[0]:
            del out[i:i + 2]
            i = max(i - 1, 0)
            continue
        if _lower_moves_up(upper, lower):
            shifted = upper[0] - lower[1] + lower[2]
            out[i] = lower
            out[i + 1] = (shifted, upper[1], upper[2], upper[3], upper[4])
            i = max(i - 1, 0)
            continue
        i += 1
    return out


CLOSURE_LIMIT = 200_000


def _moves(state):
    for i in range(len(state) - 1):
        u, l = state[i], state[i + 1]
        if u[3] == l[3] and u[4] != l[4] and u[0] == l[0]:
            yield state[:i] + state[i + 2:]
        if l[0] + l[1] <= u[0]:
            moved = (u[0] - l[1] + l[2],) + u[1:]
            yield state[:i] + (l, moved) + state[i + 2:]
        if u[0] + u[2] <= l[0]:
            moved = (l[0] - u[2] + u[1],) + l[1:]
            yield state[:i] + (moved, u) + state[i + 2:]


def canonical_codes(codes, kernel=normalize_codes):
    """Normal form that is also canonical when empty footprints are present.

    Layers with an empty source or target can float past each other in ways
    the local swap rule cannot orient.  For such terms every arrangement
    reachable by swaps and cancellations is visited and the least kernel
    normal form is returned.  Returns ``(codes, exhaustive)``; ``exhaustive``
    is False when the search hit ``CLOSURE_LIMIT``.
    """
    start = tuple(tuple(c) for c in kernel(codes))
    if all(c[1] and c[2] for c in start):
        return list(start), True
    seen = {start}
    frontier = [start]
    best = (len(start), start)
    while frontier:
        nxt = []
        for state in frontier:
            for n in _moves(state):
                if n in seen:
                    continue
                seen.add(n)
                if len(seen) > CLOSURE_LIMIT:
                    return list(best[1]), False
                nxt.append(n)
                nf = tuple(tuple(c) for c in kernel(list(n)))
                best = min(best, (len(nf), nf))
        frontier = nxt
    return list(best[1]), True
