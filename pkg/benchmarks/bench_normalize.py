"""Compare the compiled normalization kernel with the pure-Python fallback.

Both kernels run on the same seeded random elevator terms; their outputs are
checked for equality before any timing is reported.

    python benchmarks/bench_normalize.py --terms 400 --layers 12 30 60
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from hobicat import _normal_py
from hobicat.cells import Computad, ElevatorTerm, Gen2, Layer, Path, normalize

try:
    from hobicat import _normal
except ImportError:  # pragma: no cover - depends on the build
    _normal = None


def strand_computad() -> Computad:
    """One object and one 1-cell; generators merge, split and twist strands."""
    gen1 = {"f": ("X", "X")}
    p = lambda n: Path("X", "X", ("f",) * n)
    gen2 = {
        "a": Gen2("a", p(1), p(1), True),
        "m": Gen2("m", p(2), p(1)),
        "c": Gen2("c", p(1), p(2)),
        "s": Gen2("s", p(2), p(2), True),
    }
    return Computad(("X",), gen1, gen2)


def random_term(rng: random.Random, cd: Computad, width: int, layers: int) -> ElevatorTerm:
    source = here = cd.path("X", ["f"] * width)
    out = []
    for _ in range(layers):
        options = []
        for name, g in sorted(cd.gen2.items()):
            for inv in ([False, True] if g.invertible else [False]):
                src, tgt = cd.boundary(name, inv)
                if len(here) - len(src) + len(tgt) > 2 * width:
                    continue
                for pos in range(len(here) - len(src) + 1):
                    options.append((name, inv, pos, len(src)))
        name, inv, pos, span = rng.choice(options)
        layer = Layer(here.slice(0, pos, cd), name, inv, here.slice(pos + span, len(here), cd))
        out.append(layer)
        here = layer.codomain(cd)
    return ElevatorTerm(source, here, tuple(out), cd)


def timed(fn, terms, repeat: int) -> float:
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        for t in terms:
            fn(t)
        runs.append(time.perf_counter() - start)
    return statistics.median(runs)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=200)
    parser.add_argument("--width", type=int, default=4)
    parser.add_argument("--layers", type=int, nargs="+", default=[8, 16, 32])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    cd = strand_computad()
    python_kernel = _normal_py.normalize_codes
    compiled_kernel = None if _normal is None else _normal.normalize_codes
    print(f"compiled kernel: {'available' if compiled_kernel else 'missing'}")
    print(f"{'layers':>6} {'terms':>6} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for n in args.layers:
        rng = random.Random(args.seed * 1000 + n)
        terms = [random_term(rng, cd, args.width, n) for _ in range(args.terms)]
        slow = lambda t: normalize(t, python_kernel)
        py_s = timed(slow, terms, args.repeat)
        if compiled_kernel is None:
            print(f"{n:>6} {len(terms):>6} {py_s:>10.4f} {'-':>11} {'-':>8}")
            continue
        fast = lambda t: normalize(t, compiled_kernel)
        mismatches = sum(slow(t).layers != fast(t).layers for t in terms)
        if mismatches:
            raise SystemExit(f"kernels disagree on {mismatches} terms with {n} layers")
        c_s = timed(fast, terms, args.repeat)
        print(f"{n:>6} {len(terms):>6} {py_s:>10.4f} {c_s:>11.4f} {py_s / c_s:>7.1f}x")


if __name__ == "__main__":
    main()
