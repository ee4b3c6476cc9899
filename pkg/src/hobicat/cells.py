"""Elevator terms: strictified 2-cell composites in a free bicategory.

Paths list 1-cell generators in traversal order, so the path ``(f, g)`` is the
composite usually written ``g * f``.  A layer's ``left`` whisker is traversed
before the generator and its ``right`` whisker after it.  Layers of a term are
stored top to bottom, i.e. in the order they are applied.

Associators and unitors are identities here: paths are plain tuples and the
empty tuple is the identity arrow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._normal_py import canonical_codes

try:
    from ._normal import normalize_codes
    KERNEL = "compiled"
except ImportError:  # pragma: no cover - exercised when the extension is absent
    from ._normal_py import normalize_codes
    KERNEL = "python"


class BoundaryError(ValueError):
    """Raised when cells are composed along mismatched boundaries."""


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    gens: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.gens)

    def __add__(self, other: Path) -> Path:
        if self.target != other.source:
            raise BoundaryError(f"cannot concatenate {self} and {other}")
        return Path(self.source, other.target, self.gens + other.gens)

    def slice(self, start: int, stop: int, computad: Computad) -> Path:
        gens = self.gens[start:stop]
        if gens:
            return Path(computad.gen1[gens[0]][0], computad.gen1[gens[-1]][1], gens)
        obj = self.source if start == 0 else computad.gen1[self.gens[start - 1]][1]
        return Path(obj, obj, ())

    def __str__(self) -> str:
        return f"{self.source}:{','.join(self.gens)}"


@dataclass(frozen=True)
class Gen2:
    name: str
    source: Path
    target: Path
    invertible: bool = False


@dataclass(frozen=True)
class Computad:
    """Objects, 1-cell generators ``name -> (src, tgt)`` and 2-cell generators."""

    objects: tuple[str, ...]
    gen1: Mapping[str, tuple[str, str]]
    gen2: Mapping[str, Gen2]
    _ids: Mapping[str, int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_ids", {n: k for k, n in enumerate(sorted(self.gen2))})
        for g in self.gen2.values():
            for p in (g.source, g.target):
                self.check_path(p)
            if g.source.source != g.target.source or g.source.target != g.target.target:
                raise BoundaryError(f"generator {g.name} is not globular")

    def path(self, obj: str, gens: Iterable[str] = ()) -> Path:
        gens = tuple(gens)
        target = self.gen1[gens[-1]][1] if gens else obj
        p = Path(obj, target, gens)
        self.check_path(p)
        return p

    def check_path(self, p: Path) -> None:
        here = p.source
        for g in p.gens:
            src, tgt = self.gen1[g]
            if src != here:
                raise BoundaryError(f"path {p} breaks at {g}")
            here = tgt
        if here != p.target:
            raise BoundaryError(f"path {p} ends at {here}, not {p.target}")

    def boundary(self, gen: str | None, inverse: bool) -> tuple[tuple[str, ...], tuple[str, ...]]:
        if gen is None:
            return (), ()
        g = self.gen2[gen]
        if inverse:
            return g.target.gens, g.source.gens
        return g.source.gens, g.target.gens


@dataclass(frozen=True)
class Layer:
    left: Path
    gen: str | None
    inverse: bool
    right: Path

    def footprint(self, computad: Computad) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return computad.boundary(self.gen, self.inverse)

    def domain(self, computad: Computad) -> Path:
        src, _ = self.footprint(computad)
        return Path(self.left.source, self.right.target, self.left.gens + src + self.right.gens)

    def codomain(self, computad: Computad) -> Path:
        _, tgt = self.footprint(computad)
        return Path(self.left.source, self.right.target, self.left.gens + tgt + self.right.gens)

    def label(self) -> str:
        if self.gen is None:
            return "id"
        return self.gen + ("^-1" if self.inverse else "")


@dataclass(frozen=True)
class ElevatorTerm:
    source: Path
    target: Path
    layers: tuple[Layer, ...]
    computad: Computad = field(compare=False, repr=False, hash=False)

    def __post_init__(self):
        here = self.source
        for k, layer in enumerate(self.layers):
            if layer.gen is not None:
                g = self.computad.gen2[layer.gen]
                if layer.inverse and not g.invertible:
                    raise BoundaryError(f"{layer.gen} is not invertible")
            if layer.left.target != layer.right.source and layer.gen is None:
                raise BoundaryError(f"identity layer {k} has disconnected whiskers")
            if layer.domain(self.computad) != here:
                raise BoundaryError(f"layer {k} expects {layer.domain(self.computad)}, got {here}")
            here = layer.codomain(self.computad)
        if here != self.target:
            raise BoundaryError(f"term ends at {here}, declared {self.target}")

    def __len__(self) -> int:
        return len(self.layers)


def identity_term(computad: Computad, path: Path) -> ElevatorTerm:
    computad.check_path(path)
    return ElevatorTerm(path, path, (), computad)


def generator_term(computad: Computad, name: str, inverse: bool = False,
                   left: Path | None = None, right: Path | None = None) -> ElevatorTerm:
    g = computad.gen2[name]
    src, tgt = (g.target, g.source) if inverse else (g.source, g.target)
    left = left if left is not None else Path(src.source, src.source)
    right = right if right is not None else Path(src.target, src.target)
    layer = Layer(left, name, inverse, right)
    return ElevatorTerm(left + src + right, left + tgt + right, (layer,), computad)


def identity_layer(left: Path, right: Path) -> Layer:
    return Layer(left, None, False, right)


def vertical(t1: ElevatorTerm, t2: ElevatorTerm) -> ElevatorTerm:
    """``t1`` followed by ``t2`` (``t2 ∘ t1`` in the usual notation)."""
    if t1.target != t2.source:
        raise BoundaryError(f"vertical: {t1.target} != {t2.source}")
    return ElevatorTerm(t1.source, t2.target, t1.layers + t2.layers, t1.computad)


def whisker_left(path: Path, t: ElevatorTerm) -> ElevatorTerm:
    """Precede every layer by ``path`` (traversed before the term's paths)."""
    layers = tuple(Layer(path + l.left, l.gen, l.inverse, l.right) for l in t.layers)
    return ElevatorTerm(path + t.source, path + t.target, layers, t.computad)


def whisker_right(t: ElevatorTerm, path: Path) -> ElevatorTerm:
    """Follow every layer by ``path`` (traversed after the term's paths)."""
    layers = tuple(Layer(l.left, l.gen, l.inverse, l.right + path) for l in t.layers)
    return ElevatorTerm(t.source + path, t.target + path, layers, t.computad)


def horizontal(t1: ElevatorTerm, t2: ElevatorTerm) -> ElevatorTerm:
    """Side-by-side composite with ``t1`` traversed first.

    ``t1``'s layers run first, whiskered by ``t2``'s source; then ``t2``'s
    layers run, whiskered by ``t1``'s target.
    """
    if t1.source.target != t2.source.source:
        raise BoundaryError(f"horizontal: {t1.source.target} != {t2.source.source}")
    return vertical(whisker_right(t1, t2.source), whisker_left(t1.target, t2))


def compose_2cells(mode: str, t1: ElevatorTerm, other) -> ElevatorTerm:
    if mode == "vertical":
        return vertical(t1, other)
    if mode == "horizontal":
        return horizontal(t1, other)
    if mode == "whisker-left":
        return whisker_left(other, t1)
    if mode == "whisker-right":
        return whisker_right(t1, other)
    raise ValueError(f"unknown composition mode {mode!r}")


def _codes(t: ElevatorTerm) -> list[tuple[int, int, int, int, int]]:
    ids = t.computad._ids
    out = []
    for layer in t.layers:
        src, tgt = layer.footprint(t.computad)
        gid = -1 if layer.gen is None else ids[layer.gen]
        out.append((len(layer.left), len(src), len(tgt), gid, int(layer.inverse)))
    return out


def _from_codes(t: ElevatorTerm, codes) -> ElevatorTerm:
    names = sorted(t.computad.gen2)
    here = t.source
    layers = []
    for pos, slen, _tlen, gid, inv in codes:
        name = names[gid]
        left = here.slice(0, pos, t.computad)
        right = here.slice(pos + slen, len(here), t.computad)
        layer = Layer(left, name, bool(inv), right)
        layers.append(layer)
        here = layer.codomain(t.computad)
    return ElevatorTerm(t.source, t.target, tuple(layers), t.computad)


def normalize(t: ElevatorTerm, kernel=None) -> ElevatorTerm:
    """Canonical representative under interchange, unit deletion and cancellation.

    Whenever a layer sits entirely left of the layer above it, the two are
    swapped so that the leftmost one acts first.  Terms containing layers
    with an empty source or target are additionally minimized over their
    swap closure, since the local rule cannot order floating pieces.
    """
    codes, _ = canonical_codes(_codes(t), kernel or normalize_codes)
    return _from_codes(t, codes)


def normalize_exhaustive(t: ElevatorTerm) -> bool:
    """False when the floating-piece search for ``t`` was truncated."""
    return canonical_codes(_codes(t), normalize_codes)[1]


def equal_in_free(t1: ElevatorTerm, t2: ElevatorTerm) -> bool:
    if t1.source != t2.source or t1.target != t2.target:
        raise BoundaryError("terms have different boundaries")
    return normalize(t1).layers == normalize(t2).layers


def invert_term(t: ElevatorTerm) -> ElevatorTerm:
    layers = []
    for layer in reversed(t.layers):
        if layer.gen is None:
            layers.append(layer)
            continue
        if not t.computad.gen2[layer.gen].invertible:
            raise BoundaryError(f"{layer.gen} is not invertible")
        layers.append(Layer(layer.left, layer.gen, not layer.inverse, layer.right))
    return ElevatorTerm(t.target, t.source, tuple(layers), t.computad)


def render(t: ElevatorTerm) -> str:
    """Fixed-width grid: one row per layer, ``|`` for untouched strands."""
    names = [l.label() for l in t.layers]
    strands = set(t.source.gens) | set(t.target.gens)
    for layer in t.layers:
        strands |= set(layer.left.gens) | set(layer.right.gens)
    width = max([len(s) for s in strands] + [len(n) for n in names] + [1]) + 2

    def path_row(p: Path) -> str:
        if not p.gens:
            return f"({p.source})".center(width).rstrip()
        return "".join(g.center(width) for g in p.gens).rstrip()

    rows = [path_row(t.source)]
    for layer, name in zip(t.layers, names):
        src, _ = layer.footprint(t.computad)
        span = max(len(src), 1)
        row = "".join("|".center(width) for _ in layer.left.gens)
        row += name.center(width * span)
        row += "".join("|".center(width) for _ in layer.right.gens)
        rows.append(row.rstrip())
    rows.append(path_row(t.target))
    return "\n".join(rows) + "\n"
