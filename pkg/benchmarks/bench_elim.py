"""Compiled vs pure-Python dense mod-p elimination, plus one end-to-end run.

    python3 benchmarks/bench_elim.py [--sizes 50 100 200 400] [--repeat 3]
"""
import argparse
import time

import numpy as np

from hopfadj import _elim_py, elim
from hopfadj.cohomology import cohomology
from hopfadj.constructions import builtin
from hopfadj.scalars import FieldSpec


def best(fn, repeat):
    ts = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t)
    return min(ts)


def kernels(sizes, repeat, p=7, density=0.3, seed=0):
    rng = np.random.default_rng(seed)
    print(f"dense rref mod {p}, density {density}")
    print(f"{'n':>6} {'python':>10} {'cython':>10} {'speedup':>8}")
    for n in sizes:
        A = rng.integers(0, p, size=(n, n), dtype=np.int64)
        A[rng.random((n, n)) > density] = 0
        tp = best(lambda: _elim_py.rref_modp_dense(A.copy(), p), repeat)
        if elim._elim_c is None:
            print(f"{n:>6} {tp:>10.4f} {'n/a':>10}")
            continue
        Bp, Bc = A.copy(), A.copy()
        assert _elim_py.rref_modp_dense(Bp, p) == elim._elim_c.rref_modp_dense(Bc, p)
        assert (Bp == Bc).all()
        tc = best(lambda: elim._elim_c.rref_modp_dense(A.copy(), p), repeat)
        print(f"{n:>6} {tp:>10.4f} {tc:>10.4f} {tp / tc:>8.1f}x")


def end_to_end(repeat):
    H = builtin("kg:s3", FieldSpec(3))
    print("\nH^3 of kS3 over F_3 (dimC3 = 1296 + 1296)")
    for name in (["python", "cython"] if elim._elim_c is not None else ["python"]):
        elim.use_backend(name)
        H.__dict__.pop("_diff_cache", None)
        t = best(lambda: cohomology(H, 3), repeat)
        print(f"  {name:>7}: {t:.3f}s")
    elim.use_backend("cython" if elim._elim_c is not None else "python")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    print(f"selected backend: {elim.BACKEND}")
    kernels(a.sizes, a.repeat)
    end_to_end(a.repeat)
