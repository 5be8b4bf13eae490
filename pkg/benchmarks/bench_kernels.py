"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Times modular row reduction and a full Jacobian-ideal Groebner basis for a
seeded random quintic, checking that both backends return identical results.
"""
from __future__ import annotations

import argparse
import random
import time

from quintic_witness import _pykernels, groebner, kernels
from quintic_witness.groebner import IdealGenerators, buchberger
from quintic_witness.poly import MultiPoly, monomial_basis

P = 32003


def random_quintic(seed: int, nterms: int) -> MultiPoly:
    rng = random.Random(seed)
    mons = monomial_basis(5, 5)
    terms = {m: rng.randrange(1, P) for m in rng.sample(mons, nterms)}
    for i in range(5):
        e = [0] * 5
        e[i] = 5
        terms[tuple(e)] = rng.randrange(1, P)
    return MultiPoly(terms, P)


def best_of(fn, repeat: int):
    best, result = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def with_backend(module, fn):
    saved = groebner.kernels.ReductionStore
    groebner.kernels.ReductionStore = module.ReductionStore
    try:
        return fn()
    finally:
        groebner.kernels.ReductionStore = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller Groebner instance")
    args = ap.parse_args(argv)

    try:
        from quintic_witness import _ckernels
    except ImportError:
        print("compiled extension not built; only the Python backend is available")
        _ckernels = None
    print(f"default backend: {kernels.BACKEND}")

    rng = random.Random(1)
    rows = [[rng.randrange(P) for _ in range(120)] for _ in range(90)]
    f = random_quintic(7, 12 if args.quick else 40)
    gens = IdealGenerators(tuple(g for g in f.gradient() if not g.is_zero()), P)

    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    results = {}
    print(f"{'kernel':<22}{'backend':<10}{'best (s)':>10}")
    for name, mod in backends:
        t, r = best_of(lambda: mod.rref_mod_p(rows, P), args.repeat)
        results.setdefault("rref", []).append((name, t, r))
        print(f"{'rref_mod_p 90x120':<22}{name:<10}{t:>10.4f}")
    for name, mod in backends:
        t, G = best_of(lambda: with_backend(mod, lambda: buchberger(gens)), max(1, args.repeat // 3))
        results.setdefault("groebner", []).append((name, t, G.polys))
        print(f"{'groebner (jacobian)':<22}{name:<10}{t:>10.4f}")
    for key, runs in results.items():
        same = all(r == runs[0][2] for _, _, r in runs)
        line = f"{key}: results identical across backends: {same}"
        if len(runs) == 2:
            line += f"; speed-up {runs[0][1] / runs[1][1]:.1f}x"
        print(line)


if __name__ == "__main__":
    main()
