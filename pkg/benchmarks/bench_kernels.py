"""Benchmark the compiled kernels against their pure-Python twins.

Runs the factor-merge kernel on synthetic monomials, the modular rank
kernel on a random matrix, and one end-to-end normal-form workload with
each kernel selected.  Invoke as ``python3 benchmarks/bench_kernels.py``.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from superbracket import _speedups_py as pure  # noqa: E402

try:
    from superbracket import _speedups as compiled
except ImportError:
    compiled = None


def make_monomials(count, universe=60, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        picks = sorted(rng.sample(range(universe), rng.randint(0, 6)))
        mono = tuple(
            ((k,), rng.randint(0, 1), 1) if rng.random() < 0.5 else ((k,), 0, rng.randint(1, 3))
            for k in picks
        )
        out.append(mono)
    return out


def bench_merge(impl, monos, rounds=20):
    t0 = time.perf_counter()
    total = 0
    for _ in range(rounds):
        for i in range(0, len(monos) - 1, 2):
            sign, merged = impl.merge_factors(monos[i], monos[i + 1])
            total += sign
    return time.perf_counter() - t0, total


def bench_rank(impl, rows, ncols, p, rounds=3):
    t0 = time.perf_counter()
    r = None
    for _ in range(rounds):
        r = impl.rank_mod_p([list(row) for row in rows], ncols, p)
    return time.perf_counter() - t0, r


def bench_engine(env_value):
    """Normal-form workload with the kernel forced via SUPERBRACKET_PURE."""
    import importlib
    import os
    import superbracket.speedups as sp
    import superbracket.elements as el
    import superbracket.engine as eng
    import superbracket.genericpoisson as gp

    os.environ["SUPERBRACKET_PURE"] = env_value
    importlib.reload(sp)
    importlib.reload(el)
    importlib.reload(gp)
    importlib.reload(eng)
    from superbracket.core import Alphabet

    t0 = time.perf_counter()
    alg = eng.FreeAlgebra(Alphabet([("x1", 0), ("x2", 0), ("x3", 0), ("th", 1)]), eng.JB)
    gens = [alg.gen(n) for n in ("x1", "x2", "x3", "th")]
    acc = alg.zero()
    for a in gens:
        for b in gens:
            for c in gens:
                acc = acc + alg.bracket(alg.mul(a, b), alg.bracket(b, alg.mul(c, c)))
    n = eng.dim_multilinear(4)
    dt = time.perf_counter() - t0
    os.environ.pop("SUPERBRACKET_PURE", None)
    importlib.reload(sp)
    importlib.reload(el)
    importlib.reload(gp)
    importlib.reload(eng)
    return dt, (len(acc.terms), n)


def main():
    print(f"compiled kernel available: {compiled is not None}")
    monos = make_monomials(4000)
    t_py, chk_py = bench_merge(pure, monos)
    print(f"merge_factors  pure python: {t_py:.3f}s")
    if compiled is not None:
        t_c, chk_c = bench_merge(compiled, monos)
        assert chk_py == chk_c
        print(f"merge_factors  compiled:    {t_c:.3f}s   speedup x{t_py / t_c:.1f}")

    rng = random.Random(1)
    rows = [[rng.randrange(997) for _ in range(120)] for _ in range(400)]
    t_py, r_py = bench_rank(pure, rows, 120, 2_147_483_647)
    print(f"rank_mod_p     pure python: {t_py:.3f}s (rank {r_py})")
    if compiled is not None:
        t_c, r_c = bench_rank(compiled, rows, 120, 2_147_483_647)
        assert r_py == r_c
        print(f"rank_mod_p     compiled:    {t_c:.3f}s   speedup x{t_py / t_c:.1f}")

    t_pure, chk1 = bench_engine("1")
    print(f"engine workload pure python: {t_pure:.3f}s {chk1}")
    if compiled is not None:
        t_fast, chk2 = bench_engine("")
        assert chk1 == chk2
        print(f"engine workload compiled:    {t_fast:.3f}s   speedup x{t_pure / t_fast:.2f}")


if __name__ == "__main__":
    main()
