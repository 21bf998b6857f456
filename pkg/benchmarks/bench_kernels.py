"""Compare the compiled and pure-Python F_q kernels.

Usage: python benchmarks/bench_kernels.py [--family C --n 4 --p 7 --count 2000]
"""

import argparse
import random
import time

from superchar import Family, SuperclassModel, SylowGroup, field
from superchar.kernels import BACKENDS


def random_elements(G, count, rng):
    roots = G.family.roots
    q = G.ctx.q
    out = []
    for _ in range(count):
        coords = {a: rng.randrange(q) for a in roots}
        out.append(G.group_from_lie(G.lie_from_coords(coords)))
    return out


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(backend, args, rng_seed):
    ctx = field(args.p, args.e)
    G = SylowGroup(Family(args.family, args.n), ctx, backend=backend)
    kern = G.kern
    m = G.m
    xs = random_elements(G, args.count, random.Random(rng_seed))
    ys = xs[1:] + xs[:1]
    sq = [[x[i * m : (i + 1) * m] for i in range(m)] for x in xs[: args.count // 4]]
    # a full-rank block keeps det from exiting early
    sq = [[list(r[: m // 2]) for r in rows[m // 2 :]] for rows in sq]
    S = SuperclassModel(G)
    sample = xs[: args.count // 10]
    return {
        "matmul": timed(lambda: [kern.matmul(a, b, m) for a, b in zip(xs, ys)], args.repeat),
        "unitri_inv": timed(lambda: [kern.unitri_inv(a, m) for a in xs], args.repeat),
        "det": timed(lambda: [kern.det(r) for r in sq], args.repeat),
        "classify": timed(lambda: [S.superclass_of(z) for z in sample], args.repeat),
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="C", choices=("B", "C", "D"))
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    results = {name: bench(name, args, 0) for name in BACKENDS}
    print(f"{args.family}{args.n}, q = {args.p}^{args.e}, {args.count} elements, best of {args.repeat}")
    names = list(results)
    print(f"{'kernel':<12}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for k in results[names[0]]:
        row = f"{k:<12}" + "".join(f"{results[n][k] * 1e3:>10.1f}ms" for n in names)
        if "cython" in results:
            row += f"{results['python'][k] / results['cython'][k]:>11.1f}x"
        print(row)
    if "cython" not in results:
        print("compiled extension not available; build with pip install -e . --no-build-isolation")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
