import itertools
import os
import random
import subprocess
import sys

import pytest

from superchar import kernels
from superchar.finite_field import field
from superchar.superclass import permutation_sign

BACKENDS = sorted(kernels.BACKENDS)


def leibniz(ctx, M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i in range(n):
            term = ctx.mul(term, M[i][perm[i]])
        total = ctx.add(total, term if permutation_sign(perm) == 1 else ctx.neg(term))
    return total


def naive_matmul(ctx, a, b, m):
    out = []
    for i in range(m):
        for j in range(m):
            s = 0
            for k in range(m):
                s = ctx.add(s, ctx.mul(a[i * m + k], b[k * m + j]))
            out.append(s)
    return tuple(out)


def random_unitri(rng, q, m):
    return tuple(1 if i == j else (rng.randrange(q) if j > i else 0) for i in range(m) for j in range(m))


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("pe", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_kernels_against_references(name, pe):
    ctx = field(*pe)
    t = kernels.tables(ctx, name)
    rng = random.Random(pe[0] * 10 + pe[1])
    q = ctx.q
    for m in (1, 2, 5):
        for _ in range(10):
            a = tuple(rng.randrange(q) for _ in range(m * m))
            b = tuple(rng.randrange(q) for _ in range(m * m))
            assert tuple(t.matmul(a, b, m)) == naive_matmul(ctx, a, b, m)
            u = random_unitri(rng, q, m)
            ident = tuple(int(i == j) for i in range(m) for j in range(m))
            assert tuple(t.matmul(u, t.unitri_inv(u, m), m)) == ident
    for n in (1, 2, 3, 4):
        for _ in range(15):
            M = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
            assert t.det(M) == leibniz(ctx, M)
    assert t.det([[0, 1], [1, 0]]) == ctx.neg(1)
    assert t.det([[0, 0], [1, 1]]) == 0


def test_backend_selection():
    assert kernels.backend_name in kernels.BACKENDS
    assert "python" in kernels.BACKENDS
    env = dict(os.environ, SUPERCHAR_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from superchar import kernels; print(kernels.backend_name, sorted(kernels.BACKENDS))"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "python ['python']"


def test_compiled_backend_built():
    if os.environ.get("SUPERCHAR_PURE"):
        pytest.skip("pure backend forced")
    if "cython" not in kernels.BACKENDS:
        pytest.skip("compiled extension not built")
    assert kernels.backend_name == "cython"
