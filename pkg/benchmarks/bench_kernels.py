"""Compare the compiled and pure-Python matrix kernels on SL2(q).

    python3 benchmarks/bench_kernels.py [q ...]
"""
import sys
import time

from wildmono import kernels
from wildmono.groups import GroupSpec, _build


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(q):
    G = _build(GroupSpec.sl2(q))
    F = G.field
    args = (2, q, F.add_table, F.mul_table, F.neg_table, F.inv_table, False)
    py = kernels.PyMatrixKernel(*args)
    fast = kernels.MatrixKernel(*args)
    rows = []
    for label, run in [
        ("closure", lambda k: k.closure(G.gens, G.identity, 10 ** 7)),
        ("orders", lambda k: k.orders(G.elements, G.identity, 2 * (q + 1))),
    ]:
        tp, a = _time(lambda: run(py))
        tf, b = _time(lambda: run(fast))
        assert sorted(a) == sorted(b), f"{label}: backends disagree"
        rows.append((label, tp, tf))
    return len(G.elements), rows


def main(argv):
    qs = [int(x) for x in argv] or [7, 11, 13, 17]
    print(f"compiled backend available: {kernels.BACKEND == 'cython'}")
    print(f"{'q':>4} {'|G|':>6} {'kernel':>8} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for q in qs:
        size, rows = bench(q)
        for label, tp, tf in rows:
            print(f"{q:>4} {size:>6} {label:>8} {tp:>10.4f} {tf:>11.4f} {tp / tf:>7.1f}x")


if __name__ == "__main__":
    main(sys.argv[1:])
