"""Line-oriented presentation files: parser and canonical printer.

A file is a sequence of blocks.  A block starts with an unindented header
line ``KEYWORD arg ... key=value ...`` and continues with entry lines
indented by two spaces.  Blank lines and lines whose first non-blank
character is ``#`` are ignored.  ``docs/presentation-format.md`` lists every
block and entry form.

:func:`dump` prints the canonical form: blocks in a fixed order, one blank
line between blocks, no comments.  For a file already in canonical form
``dump(parse(text)) == text`` holds byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .bicat import KINDS, FiniteBicategory, LimitWitness, PresentedBicategory, TableError
from .cells import BoundaryError, Computad, ElevatorTerm, Gen2, Layer, Path
from .fixtures import fixture_by_name
from .functors import Modification, Pseudofunctor, PseudonaturalTransformation
from .homotopy import LEFT, RIGHT, Cylinder, Homotopy
from .model import (
    FACTOR_MODES, Factorization, Filler, LiftingSquare, ModelBicategory, _search_factor,
    find_filler,
)

NAME = re.compile(r"[^\s,:;=|@]+")
RESERVED = {"-", "->", "=>"}
FLAGS = ("W", "F", "C")
CYLINDER_KEYS = ("obj", "middle", "base", "d0", "d1", "base_map", "collapse", "alpha0", "alpha1")
HOMOTOPY_KEYS = ("side", "cyl", "source", "target", "h", "eta", "eps")


class PresentationError(ValueError):
    """Malformed input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class Presentation:
    name: str
    bicat: FiniteBicategory | None = None
    presented: PresentedBicategory | None = None
    terms: dict[str, ElevatorTerm] = field(default_factory=dict)
    witnesses: list[LimitWitness] = field(default_factory=list)
    classes: dict[str, frozenset] | None = None
    lifts: dict[LiftingSquare, Filler] = field(default_factory=dict)
    factors: dict[tuple[str, str], Factorization] = field(default_factory=dict)
    functors: dict[str, Pseudofunctor] = field(default_factory=dict)
    functor_targets: dict[str, str] = field(default_factory=dict)
    transformations: dict[str, PseudonaturalTransformation] = field(default_factory=dict)
    modifications: dict[str, Modification] = field(default_factory=dict)
    cylinders: dict[str, Cylinder] = field(default_factory=dict)
    homotopies: dict[str, Homotopy] = field(default_factory=dict)
    _model: ModelBicategory | None = field(default=None, repr=False, compare=False)

    def model(self) -> ModelBicategory:
        """The model bicategory of the CLASSES block, with oracles and witnesses plugged in."""
        if self._model is not None:
            return self._model
        if self.bicat is None:
            raise PresentationError("model structures need a BICATEGORY with tables")
        if self.classes is None:
            raise PresentationError("no CLASSES block")
        pick = lambda flag: [f for f, fl in self.classes.items() if flag in fl]
        lifts, factors = dict(self.lifts), dict(self.factors)
        lifter = (lambda b, sq: lifts.get(sq) or find_filler(b, sq)) if lifts else None
        factorizer = ((lambda m, f, mode: factors.get((f, mode)) or _search_factor(m, f, mode))
                      if factors else None)
        m = ModelBicategory(self.bicat, pick("W"), pick("F"), pick("C"), self.name,
                            lifter=lifter, factorizer=factorizer)
        for w in self.witnesses:
            m._witness_cache[(w.kind, tuple(w.diagram))] = w
        self._model = m
        return m


# ---------------------------------------------------------------------------
# lexing


def _blocks(text: str):
    block = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line[0] in " \t":
            if block is None:
                raise PresentationError("entry before any block header", n)
            block[2].append((n, line.strip()))
        else:
            if block is not None:
                yield block
            block = (n, line.split(), [])
    if block is not None:
        yield block


def _name(token: str, n: int) -> str:
    if not NAME.fullmatch(token) or token in RESERVED:
        raise PresentationError(f"bad name {token!r}", n)
    return token


def _names(token: str, n: int) -> tuple[str, ...]:
    if token == "-":
        return ()
    return tuple(_name(t, n) for t in token.split(","))


def _options(tokens, n: int, allowed) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq or key not in allowed:
            raise PresentationError(f"unexpected header argument {tok!r}", n)
        if key in out:
            raise PresentationError(f"duplicate header argument {key!r}", n)
        out[key] = value
    return out


def _split(entry: str, sep: str, n: int) -> tuple[str, str]:
    left, found, right = entry.partition(sep)
    if not found:
        raise PresentationError(f"expected {sep.strip()!r} in {entry!r}", n)
    return left.strip(), right.strip()


def _keyed(entry: str, n: int) -> tuple[str, list[str]]:
    """``key: tok tok ...``."""
    key, rest = _split(entry, ":", n)
    return key, rest.split()


def _one(tokens: list[str], n: int) -> str:
    if len(tokens) != 1:
        raise PresentationError(f"expected one name, got {tokens}", n)
    return _name(tokens[0], n)


# ---------------------------------------------------------------------------
# paths and terms


def parse_path(cd: Computad, token: str, n: int = 0) -> Path:
    obj, found, gens = token.partition(":")
    if not found or obj not in cd.objects:
        raise PresentationError(f"bad path {token!r}", n)
    try:
        return cd.path(obj, _names(gens, n) if gens else ())
    except (BoundaryError, KeyError) as exc:
        raise PresentationError(f"bad path {token!r}: {exc}", n) from None


def format_path(p: Path) -> str:
    return f"{p.source}:{','.join(p.gens)}"


def parse_term(cd: Computad, text: str, n: int = 0) -> ElevatorTerm:
    """``x:f,g | a@0 ; b^-1@1``: source path, then layers ``gen@strands-to-the-left``."""
    head, layers_text = _split(text, "|", n)
    here = parse_path(cd, head, n)
    source = here
    layers = []
    for part in filter(None, (p.strip() for p in layers_text.split(";"))):
        label, found, pos = part.rpartition("@")
        if not found or not pos.isdigit():
            raise PresentationError(f"bad layer {part!r}", n)
        k = int(pos)
        inverse = label.endswith("^-1")
        gen = label[:-3] if inverse else label
        if gen == "id":
            gen, inverse = None, False
        elif gen not in cd.gen2:
            raise PresentationError(f"unknown 2-cell generator {gen!r}", n)
        src, _ = cd.boundary(gen, inverse)
        if k + len(src) > len(here) or here.gens[k:k + len(src)] != src:
            raise PresentationError(f"layer {part!r} does not fit {format_path(here)}", n)
        layer = Layer(here.slice(0, k, cd), gen, inverse, here.slice(k + len(src), len(here), cd))
        layers.append(layer)
        here = layer.codomain(cd)
    try:
        return ElevatorTerm(source, here, tuple(layers), cd)
    except BoundaryError as exc:
        raise PresentationError(str(exc), n) from None


def format_term(t: ElevatorTerm) -> str:
    out = format_path(t.source) + " |"
    if t.layers:
        out += " " + " ; ".join(f"{l.label()}@{len(l.left)}" for l in t.layers)
    return out


# ---------------------------------------------------------------------------
# parsing

FINITE_ORDER = ("BICATEGORY", "OBJECTS", "ARROWS", "UNITS", "CELLS2", "ID2", "COMP", "VCOMP",
                "HCOMP", "WITNESS", "CLASSES", "ORACLE", "FUNCTOR", "TRANSFORMATION",
                "MODIFICATION", "CYLINDER", "HOMOTOPY")
COMPUTAD_ORDER = ("COMPUTAD", "OBJECTS", "GEN1", "GEN2", "RELATIONS", "BOUND", "TERMS")
SINGLE = {"BICATEGORY", "COMPUTAD", "OBJECTS", "ARROWS", "UNITS", "CELLS2", "ID2", "COMP",
          "VCOMP", "HCOMP", "CLASSES", "GEN1", "GEN2", "RELATIONS", "BOUND", "TERMS"}


def parse(text: str) -> Presentation:
    blocks = list(_blocks(text))
    if not blocks:
        raise PresentationError("empty presentation")
    kind = blocks[0][1][0]
    if kind not in ("BICATEGORY", "COMPUTAD"):
        raise PresentationError("the first block must be BICATEGORY or COMPUTAD", blocks[0][0])
    order = FINITE_ORDER if kind == "BICATEGORY" else COMPUTAD_ORDER
    seen: set[str] = set()
    for n, header, _ in blocks:
        if header[0] not in order:
            raise PresentationError(f"block {header[0]} not allowed in a {kind} file", n)
        if header[0] in SINGLE and header[0] in seen:
            raise PresentationError(f"duplicate {header[0]} block", n)
        seen.add(header[0])
    if kind == "BICATEGORY":
        return _parse_finite(blocks)
    return _parse_computad(blocks)


def _header_name(header, n) -> str:
    if len(header) != 2:
        raise PresentationError(f"{header[0]} takes exactly one name", n)
    return _name(header[1], n)


def _table(blocks, key):
    for n, header, entries in blocks:
        if header[0] == key:
            if len(header) != 1:
                raise PresentationError(f"{key} takes no arguments", n)
            return entries
    return []


def _parse_finite(blocks) -> Presentation:
    n0, header, _ = blocks[0]
    pres = Presentation(_header_name(header, n0))
    objects = [_one([e], n) for n, e in _table(blocks, "OBJECTS")]
    arrows, cells, unit, id2 = {}, {}, {}, {}
    for n, e in _table(blocks, "ARROWS"):
        f, rest = _keyed(e, n)
        if len(rest) != 3 or rest[1] != "->":
            raise PresentationError(f"expected 'f: x -> y', got {e!r}", n)
        arrows[_name(f, n)] = (_name(rest[0], n), _name(rest[2], n))
    for n, e in _table(blocks, "UNITS"):
        x, rest = _keyed(e, n)
        unit[_name(x, n)] = _one(rest, n)
    for n, e in _table(blocks, "CELLS2"):
        a, rest = _keyed(e, n)
        if len(rest) != 3 or rest[1] != "=>":
            raise PresentationError(f"expected 'a: f => g', got {e!r}", n)
        cells[_name(a, n)] = (_name(rest[0], n), _name(rest[2], n))
    for n, e in _table(blocks, "ID2"):
        f, rest = _keyed(e, n)
        id2[_name(f, n)] = _one(rest, n)
    comp = _products(_table(blocks, "COMP"), "*")
    vcomp = _products(_table(blocks, "VCOMP"), ".")
    hcomp = _products(_table(blocks, "HCOMP"), "*")
    try:
        b = FiniteBicategory(pres.name, objects, arrows, cells, comp, unit, vcomp, hcomp, id2)
    except (TableError, KeyError) as exc:
        raise PresentationError(f"tables: {exc}") from None
    pres.bicat = b
    for n, header, entries in blocks[1:]:
        if header[0] == "WITNESS":
            pres.witnesses.append(_parse_witness(b, header, entries, n))
        elif header[0] == "CLASSES":
            pres.classes = _parse_classes(b, entries)
        elif header[0] == "ORACLE":
            _parse_oracle(pres, header, entries, n)
        elif header[0] == "FUNCTOR":
            _parse_functor(pres, header, entries, n)
        elif header[0] == "TRANSFORMATION":
            _parse_transformation(pres, header, entries, n)
        elif header[0] == "MODIFICATION":
            _parse_modification(pres, header, entries, n)
        elif header[0] == "CYLINDER":
            name = _header_name(header[:2], n)
            opts = _options(header[2:], n, CYLINDER_KEYS)
            if set(opts) != set(CYLINDER_KEYS):
                raise PresentationError(f"CYLINDER needs {', '.join(CYLINDER_KEYS)}", n)
            pres.cylinders[name] = Cylinder(**{k: _name(v, n) for k, v in opts.items()})
        elif header[0] == "HOMOTOPY":
            _parse_homotopy(pres, header, n)
    return pres


def _products(entries, op: str) -> dict:
    out = {}
    for n, e in entries:
        lhs, result = _split(e, "=", n)
        parts = lhs.split()
        if len(parts) != 3 or parts[1] != op:
            raise PresentationError(f"expected 'x {op} y = z', got {e!r}", n)
        key = (_name(parts[0], n), _name(parts[2], n))
        if key in out:
            raise PresentationError(f"duplicate entry for {parts[0]} {op} {parts[2]}", n)
        out[key] = _one(result.split(), n)
    return out


def _parse_witness(b, header, entries, n) -> LimitWitness:
    if len(header) < 2 or header[1] not in KINDS:
        raise PresentationError(f"WITNESS needs a kind among {', '.join(KINDS)}", n)
    opts = _options(header[2:], n, ("apex", "diagram", "legs", "cell"))
    if "apex" not in opts:
        raise PresentationError("WITNESS needs apex=", n)
    table = {}
    for m, e in entries:
        cone, image = _split(e, "->", m)
        parts = image.split()
        if len(parts) != 2:
            raise PresentationError(f"expected 'cone -> arrow components', got {e!r}", m)
        table[_names(cone, m)] = (_name(parts[0], m), _names(parts[1], m))
    cell = opts.get("cell")
    return LimitWitness(header[1], _names(opts.get("diagram", "-"), n), _name(opts["apex"], n),
                        _names(opts.get("legs", "-"), n), None if cell is None else _name(cell, n),
                        table)


def _parse_classes(b, entries) -> dict[str, frozenset]:
    out = {}
    for n, e in entries:
        f, flags = _keyed(e, n)
        if f not in b.arrows:
            raise PresentationError(f"unknown arrow {f!r} in CLASSES", n)
        if flags == ["-"]:
            flags = []
        if any(fl not in FLAGS for fl in flags) or len(set(flags)) != len(flags) or \
                list(flags) != sorted(flags, key=FLAGS.index):
            raise PresentationError(f"flags must be a subset of 'W F C' in that order: {e!r}", n)
        out[f] = frozenset(flags)
    return out


def _parse_oracle(pres, header, entries, n) -> None:
    if header[1:] == ["lift"]:
        for m, e in entries:
            sq, fl = (s.split() for s in _split(e, "->", m))
            if len(sq) != 5 or len(fl) != 3:
                raise PresentationError(f"expected 'i p a b gamma -> f lam rho', got {e!r}", m)
            pres.lifts[LiftingSquare(*(_name(t, m) for t in sq))] = Filler(
                *(_name(t, m) for t in fl))
    elif header[1:] == ["factor"]:
        for m, e in entries:
            key, fac = (s.split() for s in _split(e, "->", m))
            if len(key) != 2 or key[1] not in FACTOR_MODES or len(fac) != 3:
                raise PresentationError(f"expected 'f mode -> i p sigma', got {e!r}", m)
            f = _name(key[0], m)
            pres.factors[(f, key[1])] = Factorization(f, *(_name(t, m) for t in fac))
    else:
        raise PresentationError("ORACLE takes 'lift' or 'factor'", n)


def _parse_functor(pres, header, entries, n) -> None:
    name = _header_name(header[:2], n)
    opts = _options(header[2:], n, ("target",))
    spec = opts.get("target", "self")
    target = pres.bicat if spec == "self" else fixture_by_name(spec)
    if target is None:
        raise PresentationError(f"unknown target bicategory {spec!r}", n)
    tables = {"obj": {}, "arr": {}, "cell": {}, "xi": {}, "phi": {}}
    for m, e in entries:
        kind, _, rest = e.partition(" ")
        if kind not in tables:
            raise PresentationError(f"functor entries are obj/arr/cell/xi/phi, got {e!r}", m)
        if kind in ("obj", "arr", "cell"):
            src, dst = _split(rest, "->", m)
            tables[kind][_name(src, m)] = _name(dst, m)
        else:
            key, value = _keyed(rest, m)
            key = _names(key, m) if kind == "phi" else _name(key, m)
            if kind == "phi" and len(key) != 2:
                raise PresentationError("phi keys are 'g,f'", m)
            tables[kind][key] = _one(value, m)
    try:
        fn = Pseudofunctor(pres.bicat, target, tables["obj"], tables["arr"], tables["cell"],
                           tables["xi"], tables["phi"], name=name)
    except KeyError as exc:
        raise PresentationError(f"functor {name} does not map {exc}", n) from None
    pres.functors[name] = fn
    pres.functor_targets[name] = spec


def _lookup(table, key, what, n):
    if key not in table:
        raise PresentationError(f"unknown {what} {key!r}", n)
    return table[key]


def _parse_transformation(pres, header, entries, n) -> None:
    name = _header_name(header[:2], n)
    opts = _options(header[2:], n, ("source", "target"))
    src = _lookup(pres.functors, opts.get("source"), "functor", n)
    tgt = _lookup(pres.functors, opts.get("target"), "functor", n)
    comp, cells = {}, {}
    for m, e in entries:
        kind, _, rest = e.partition(" ")
        if kind not in ("comp", "cell"):
            raise PresentationError(f"transformation entries are comp/cell, got {e!r}", m)
        key, value = _keyed(rest, m)
        (comp if kind == "comp" else cells)[_name(key, m)] = _one(value, m)
    pres.transformations[name] = PseudonaturalTransformation(src, tgt, comp, cells, name)


def _parse_modification(pres, header, entries, n) -> None:
    name = _header_name(header[:2], n)
    opts = _options(header[2:], n, ("source", "target"))
    src = _lookup(pres.transformations, opts.get("source"), "transformation", n)
    tgt = _lookup(pres.transformations, opts.get("target"), "transformation", n)
    comp = {}
    for m, e in entries:
        kind, _, rest = e.partition(" ")
        if kind != "comp":
            raise PresentationError(f"modification entries are comp, got {e!r}", m)
        key, value = _keyed(rest, m)
        comp[_name(key, m)] = _one(value, m)
    pres.modifications[name] = Modification(src, tgt, comp, name)


def _parse_homotopy(pres, header, n) -> None:
    name = _header_name(header[:2], n)
    opts = _options(header[2:], n, HOMOTOPY_KEYS)
    if set(opts) != set(HOMOTOPY_KEYS):
        raise PresentationError(f"HOMOTOPY needs {', '.join(HOMOTOPY_KEYS)}", n)
    if opts["side"] not in (LEFT, RIGHT):
        raise PresentationError("side must be left or right", n)
    cyl = _lookup(pres.cylinders, opts["cyl"], "cylinder", n)
    pres.homotopies[name] = Homotopy(
        _name(opts["source"], n), _name(opts["target"], n), cyl, _name(opts["h"], n),
        _name(opts["eta"], n), _name(opts["eps"], n), opts["side"])


def _parse_computad(blocks) -> Presentation:
    n0, header, _ = blocks[0]
    pres = Presentation(_header_name(header, n0))
    objects = tuple(_one([e], n) for n, e in _table(blocks, "OBJECTS"))
    gen1 = {}
    for n, e in _table(blocks, "GEN1"):
        f, rest = _keyed(e, n)
        if len(rest) != 3 or rest[1] != "->" or rest[0] not in objects or rest[2] not in objects:
            raise PresentationError(f"expected 'f: x -> y' over known objects, got {e!r}", n)
        gen1[_name(f, n)] = (rest[0], rest[2])
    bare = Computad(objects, gen1, {})
    gen2 = {}
    for n, e in _table(blocks, "GEN2"):
        a, rest = e.split(":", 1)
        parts = rest.split()
        inv = parts[-1:] == ["inv"]
        if inv:
            parts = parts[:-1]
        if len(parts) != 3 or parts[1] != "=>":
            raise PresentationError(f"expected 'a: x:f => x:g [inv]', got {e!r}", n)
        a = _name(a.strip(), n)
        if a == "id" or a.endswith("^-1"):
            raise PresentationError(f"2-cell generator name {a!r} clashes with term syntax", n)
        gen2[a] = Gen2(a, parse_path(bare, parts[0], n), parse_path(bare, parts[2], n), inv)
    try:
        cd = Computad(objects, gen1, gen2)
    except BoundaryError as exc:
        raise PresentationError(str(exc)) from None
    relations = []
    for n, e in _table(blocks, "RELATIONS"):
        lhs, rhs = _split(e, " = ", n)
        relations.append((parse_term(cd, lhs, n), parse_term(cd, rhs, n)))
    bound = 0
    for n, header, entries in blocks:
        if header[0] == "BOUND":
            if len(header) != 2 or not header[1].isdigit() or entries:
                raise PresentationError("BOUND takes one non-negative integer", n)
            bound = int(header[1])
    try:
        pres.presented = PresentedBicategory(cd, tuple(relations), bound)
    except BoundaryError as exc:
        raise PresentationError(str(exc)) from None
    for n, e in _table(blocks, "TERMS"):
        name, term = _split(e, " = ", n)
        pres.terms[_name(name, n)] = parse_term(cd, term, n)
    return pres


# ---------------------------------------------------------------------------
# printing


def _block(header: str, entries) -> str:
    return "\n".join([header] + [f"  {e}" for e in entries]) + "\n"


def _joined(names) -> str:
    return ",".join(names) if names else "-"


def dump(pres: Presentation) -> str:
    if pres.presented is not None:
        return _dump_computad(pres)
    b = pres.bicat
    out = [
        _block(f"BICATEGORY {pres.name}", []),
        _block("OBJECTS", b.objects),
        _block("ARROWS", [f"{f}: {x} -> {y}" for f, (x, y) in b.arrows.items()]),
        _block("UNITS", [f"{x}: {f}" for x, f in b.unit.items()]),
        _block("CELLS2", [f"{a}: {f} => {g}" for a, (f, g) in b.cells.items()]),
        _block("ID2", [f"{f}: {a}" for f, a in b.id2.items()]),
        _block("COMP", [f"{g} * {f} = {h}" for (g, f), h in b.comp.items()]),
        _block("VCOMP", [f"{y} . {x} = {z}" for (y, x), z in b.vcomp.items()]),
        _block("HCOMP", [f"{y} * {x} = {z}" for (y, x), z in b.hcomp.items()]),
    ]
    for w in pres.witnesses:
        head = f"WITNESS {w.kind} apex={w.apex}"
        if w.diagram:
            head += f" diagram={_joined(w.diagram)}"
        if w.legs:
            head += f" legs={_joined(w.legs)}"
        if w.cell is not None:
            head += f" cell={w.cell}"
        out.append(_block(head, [f"{_joined(cone)} -> {h} {_joined(comps)}"
                                 for cone, (h, comps) in w.factorizations.items()]))
    if pres.classes is not None:
        out.append(_block("CLASSES", [
            f"{f}: {' '.join(fl for fl in FLAGS if fl in flags) or '-'}"
            for f, flags in pres.classes.items()]))
    if pres.lifts:
        out.append(_block("ORACLE lift", [
            f"{sq.i} {sq.p} {sq.a} {sq.b} {sq.gamma} -> {fl.f} {fl.lam} {fl.rho}"
            for sq, fl in pres.lifts.items()]))
    if pres.factors:
        out.append(_block("ORACLE factor", [
            f"{f} {mode} -> {fac.i} {fac.p} {fac.sigma}"
            for (f, mode), fac in pres.factors.items()]))
    for name, fn in pres.functors.items():
        entries = [f"obj {x} -> {y}" for x, y in fn.obj.items()]
        entries += [f"arr {f} -> {g}" for f, g in fn.arr.items()]
        entries += [f"cell {a} -> {c}" for a, c in fn.cell.items()]
        entries += [f"xi {x}: {a}" for x, a in fn.xi.items()]
        entries += [f"phi {g},{f}: {a}" for (g, f), a in fn.phi.items()]
        out.append(_block(f"FUNCTOR {name} target={pres.functor_targets.get(name, 'self')}",
                          entries))
    for name, t in pres.transformations.items():
        entries = [f"comp {x}: {f}" for x, f in t.comp.items()]
        entries += [f"cell {f}: {a}" for f, a in t.cells.items()]
        out.append(_block(f"TRANSFORMATION {name} source={t.source.name} target={t.target.name}",
                          entries))
    for name, mod in pres.modifications.items():
        out.append(_block(
            f"MODIFICATION {name} source={mod.source.name} target={mod.target.name}",
            [f"comp {x}: {a}" for x, a in mod.comp.items()]))
    cyl_names = {}
    for name, c in pres.cylinders.items():
        cyl_names[c] = cyl_names.get(c, name)
        out.append(_block(f"CYLINDER {name} " + " ".join(
            f"{k}={getattr(c, k)}" for k in CYLINDER_KEYS), []))
    for name, hom in pres.homotopies.items():
        if hom.cylinder not in cyl_names:
            raise PresentationError(f"homotopy {name} uses an unnamed cylinder")
        out.append(_block(
            f"HOMOTOPY {name} side={hom.side} cyl={cyl_names[hom.cylinder]} source={hom.source} "
            f"target={hom.target} h={hom.h} eta={hom.eta} eps={hom.eps}", []))
    return "\n".join(out)


def _dump_computad(pres: Presentation) -> str:
    p = pres.presented
    cd = p.computad
    out = [
        _block(f"COMPUTAD {pres.name}", []),
        _block("OBJECTS", cd.objects),
        _block("GEN1", [f"{f}: {x} -> {y}" for f, (x, y) in cd.gen1.items()]),
        _block("GEN2", [f"{g.name}: {format_path(g.source)} => {format_path(g.target)}"
                        + (" inv" if g.invertible else "") for g in cd.gen2.values()]),
    ]
    if p.relations:
        out.append(_block("RELATIONS", [f"{format_term(l)} = {format_term(r)}"
                                        for l, r in p.relations]))
    if p.search_bound:
        out.append(_block(f"BOUND {p.search_bound}", []))
    if pres.terms:
        out.append(_block("TERMS", [f"{name} = {format_term(t)}"
                                    for name, t in pres.terms.items()]))
    return "\n".join(out)


def load(path) -> Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PresentationError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def from_bicategory(b: FiniteBicategory, classes: ModelBicategory | None = None,
                    witnesses=()) -> Presentation:
    """A presentation holding ``b``, optionally with the classes of a model structure."""
    pres = Presentation(b.name, bicat=b, witnesses=list(witnesses))
    if classes is not None:
        pres.classes = {f: frozenset(fl for fl, cls in zip(FLAGS, (classes.W, classes.F,
                                                                    classes.C)) if f in cls)
                        for f in b.arrows}
    return pres


__all__ = [
    "Presentation", "PresentationError", "dump", "format_path", "format_term", "from_bicategory",
    "load", "parse", "parse_path", "parse_term",
]
