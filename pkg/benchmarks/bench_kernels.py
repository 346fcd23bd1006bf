"""Compare the compiled and numpy kernels on ring tables of growing size.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

from gckit import _pykernels, kernels
from gckit.finring import matrix_ring, product, zn

try:
    from gckit import _ckernels
except ImportError:
    _ckernels = None


def cases():
    yield "Z64", zn(64)
    yield "Z2xZ64", product(zn(2), zn(64))
    yield "M2(Z2)", matrix_ring(2, 2)
    yield "Z256", zn(256)


def run(repeat):
    impls = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'ring':10} {'n':>5} {'kernel':16}" + "".join(f"{name:>12}" for name, _ in impls))
    for name, R in cases():
        mul, add = kernels.as_table(R.mul), kernels.as_table(R.add)
        jobs = {
            "associativity": lambda impl: kernels.compat_witness(mul, mul, impl),
            "distributivity": lambda impl: kernels.linear_witness(mul, add, impl),
        }
        for job, fn in jobs.items():
            times = []
            for _, impl in impls:
                assert fn(impl) is None
                times.append(min(timeit.repeat(lambda: fn(impl), number=1, repeat=repeat)))
            print(f"{name:10} {R.n:5} {job:16}" + "".join(f"{t * 1e3:10.2f}ms" for t in times))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    run(ap.parse_args().repeat)
