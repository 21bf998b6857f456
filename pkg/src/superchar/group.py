"""The Sylow p-subgroup U and its Lie algebra as m x m matrices over F_q.

Group and Lie elements are flat row-major tuples of canonical field
integers, rows and columns in mirror order (see :mod:`superchar.roots`).
The block decomposition used throughout is ``top = 1..n``, ``mid = 0``
(family B only) and ``bottom = -n..-1``.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .cyclotomic import CycNumber
from .errors import BoundExceeded, MembershipError
from .finite_field import FieldCtx
from .roots import LONG, MINUS, PLUS, SHORT, BasicPair, Entry, Family, Root, entries_of_root

Mat = tuple[int, ...]

DEFAULT_STREAM_BOUND = 10**6
DEFAULT_BRUTE_BOUND = 10**4


def basis_terms(family: Family, a: Root) -> list[tuple[Entry, int]]:
    """Signed matrix units making up e_alpha."""
    (e1, *rest), _ = entries_of_root(family, a)
    if a.kind == LONG:
        return [(e1, 1)]
    if a.kind == PLUS and family.letter == "C":
        return [(e1, 1), (rest[0], 1)]
    return [(e1, 1), (rest[0], -1)]


class SylowGroup:
    """U = G ∩ U_m(q) for G one of Sp_2n(q), O_2n(q), O_2n+1(q)."""

    def __init__(self, family: Family, ctx: FieldCtx, backend: str | None = None):
        self.family = family
        self.ctx = ctx
        self.n = family.n
        self.m = family.m
        self.r = 1 if family.letter == "B" else 0
        self.kern = kernels.tables(ctx, backend)
        self.roots = family.roots
        self.order = ctx.q ** len(self.roots)
        self._half = ctx.inv(ctx.from_int(2))
        self._terms = {
            a: [(family.flat(*e), ctx.from_int(s)) for e, s in basis_terms(family, a)]
            for a in self.roots
        }
        self._rep_flat = {a: family.flat(*a.rep) for a in self.roots}

    # basic matrices ---------------------------------------------------------------

    @cached_property
    def identity(self) -> Mat:
        m = self.m
        return tuple(1 if i == j else 0 for i in range(m) for j in range(m))

    @cached_property
    def zero(self) -> Mat:
        return (0,) * (self.m * self.m)

    @cached_property
    def form(self) -> Mat:
        """Gram matrix of the invariant form in mirror order."""
        m, f, ctx = self.m, self.family, self.ctx
        out = [0] * (m * m)
        for i in f.indices:
            if f.letter == "C":
                out[f.flat(i, -i)] = 1 if i > 0 else ctx.neg(1)
            else:
                out[f.flat(i, -i)] = 1
        return tuple(out)

    def entry(self, a: Mat, i: int, j: int) -> int:
        return a[self.family.flat(i, j)]

    def transpose(self, a: Mat) -> Mat:
        m = self.m
        return tuple(a[j * m + i] for i in range(m) for j in range(m))

    def add(self, a: Mat, b: Mat) -> Mat:
        add = self.ctx._add
        return tuple(add[x][y] for x, y in zip(a, b))

    def sub(self, a: Mat, b: Mat) -> Mat:
        add, neg = self.ctx._add, self.ctx._neg
        return tuple(add[x][neg[y]] for x, y in zip(a, b))

    def scale(self, s: int, a: Mat) -> Mat:
        row = self.ctx._mul[s]
        return tuple(row[x] for x in a)

    def matmul(self, a: Mat, b: Mat) -> Mat:
        return self.kern.matmul(a, b, self.m)

    # Lie algebra ------------------------------------------------------------------

    def lie_basis(self, a: Root) -> Mat:
        return self.lie_from_coords({a: 1})

    def lie_from_coords(self, coords: Mapping[Root, int]) -> Mat:
        out = [0] * (self.m * self.m)
        mul = self.ctx._mul
        for a, s in coords.items():
            if s == 0:
                continue
            try:
                terms = self._terms[a]
            except KeyError:
                raise ValueError(f"{a} is not a positive root of {self.family}") from None
            for k, sign in terms:
                out[k] = mul[s][sign]
        return tuple(out)

    def lie_coords(self, a: Mat) -> dict[Root, int]:
        return {r: a[k] for r, k in self._rep_flat.items() if a[k]}

    def lie_coord_tuple(self, a: Mat) -> tuple[int, ...]:
        return tuple(a[self._rep_flat[r]] for r in self.roots)

    def e_pair(self, pair: BasicPair) -> Mat:
        """e_{D,phi} = sum phi(alpha) e_alpha."""
        return self.lie_from_coords(pair.phi)

    def lie_violation(self, a: Mat) -> str | None:
        m, f = self.m, self.family
        for i in range(m):
            for j in range(i + 1):
                if a[i * m + j]:
                    return f"not strictly upper triangular at ({f.indices[i]},{f.indices[j]})"
        # A^T W + W A = 0
        W = self.form
        lhs = self.add(self.matmul(self.transpose(a), W), self.matmul(W, a))
        for k, v in enumerate(lhs):
            if v:
                i, j = divmod(k, m)
                return (
                    "violates the Lie algebra block condition "
                    f"(A^T W + W A != 0 at ({f.indices[i]},{f.indices[j]}))"
                )
        return None

    def check_lie(self, a: Mat) -> Mat:
        a = self._coerce(a)
        msg = self.lie_violation(a)
        if msg:
            raise MembershipError(msg)
        return a

    # group ------------------------------------------------------------------------

    def _coerce(self, a: Sequence[int]) -> Mat:
        a = tuple(int(x) for x in a)
        if len(a) != self.m * self.m:
            raise MembershipError(f"expected {self.m * self.m} entries, got {len(a)}")
        for x in a:
            if not 0 <= x < self.ctx.q:
                raise MembershipError(f"entry {x} is not a canonical element of F_{self.ctx.q}")
        return a

    def _blocks(self, a: Mat):
        n, r, m = self.n, self.r, self.m
        top = range(n)
        bot = range(n + r, m)
        A = [[a[i * m + j] for j in top] for i in top]
        V = [[a[i * m + n] for _ in range(r)] for i in top]
        W = [[a[i * m + j] for j in bot] for i in top]
        return A, V, W

    def _small_mul(self, X, Y):
        add, mul = self.ctx._add, self.ctx._mul
        rows, inner, cols = len(X), len(Y), len(Y[0]) if Y else 0
        out = [[0] * cols for _ in range(rows)]
        for i in range(rows):
            for k in range(inner):
                x = X[i][k]
                if x:
                    for j in range(cols):
                        if Y[k][j]:
                            out[i][j] = add[out[i][j]][mul[x][Y[k][j]]]
        return out

    def _small_inv(self, X):
        n = len(X)
        flat = tuple(v for row in X for v in row)
        inv = self.kern.unitri_inv(flat, n)
        return [list(inv[i * n : (i + 1) * n]) for i in range(n)]

    def _half_vvJ(self, V):
        # (1/2) v v^T J as an n x n block
        n, mul, h = self.n, self.ctx._mul, self._half
        return [[mul[h][mul[V[i][0]][V[n - 1 - j][0]]] for j in range(n)] for i in range(n)]

    def _assemble(self, TL, TM, TR, MB, BR) -> Mat:
        n, r, m = self.n, self.r, self.m
        out = [0] * (m * m)
        for i in range(n):
            for j in range(n):
                out[i * m + j] = TL[i][j]
                out[i * m + n + r + j] = TR[i][j]
                out[(n + r + i) * m + n + r + j] = BR[i][j]
            if r:
                out[i * m + n] = TM[i][0]
        if r:
            out[n * m + n] = 1 if TL[0][0] == 1 else 0
            for j in range(n):
                out[n * m + n + 1 + j] = MB[j]
        return tuple(out)

    def group_from_lie(self, a: Mat, check: bool = False) -> Mat:
        """Inverse of z -> a_z (block formulas of the bijection U -> u)."""
        if check:
            a = self.check_lie(a)
        ctx, n = self.ctx, self.n
        add, neg = ctx._add, ctx._neg
        U, V, W = self._blocks(a)
        X = [[add[U[i][j]][1 if i == j else 0] for j in range(n)] for i in range(n)]
        if self.r:
            H = self._half_vvJ(V)
            W = [[add[W[i][j]][neg[H[i][j]]] for j in range(n)] for i in range(n)]
            XV = self._small_mul(X, V)
            MB = [neg[V[n - 1 - j][0]] for j in range(n)]
        else:
            XV, MB = None, None
        XW = self._small_mul(X, W)
        Xi = self._small_inv(X)
        BR = [[Xi[n - 1 - j][n - 1 - i] for j in range(n)] for i in range(n)]
        return self._assemble(X, XV, XW, MB, BR)

    def lie_from_group(self, z: Mat, check: bool = False) -> Mat:
        if check:
            z = self.check_group(z)
        ctx, n = self.ctx, self.n
        add, neg = ctx._add, ctx._neg
        X, XV, XW = self._blocks(z)
        U = [[add[X[i][j]][neg[1] if i == j else 0] for j in range(n)] for i in range(n)]
        Xi = self._small_inv(X)
        W = self._small_mul(Xi, XW)
        if self.r:
            V = self._small_mul(Xi, XV)
            H = self._half_vvJ(V)
            W = [[add[W[i][j]][H[i][j]] for j in range(n)] for i in range(n)]
            MB = [neg[V[n - 1 - j][0]] for j in range(n)]
        else:
            V, MB = None, None
        BR = [[neg[U[n - 1 - j][n - 1 - i]] for j in range(n)] for i in range(n)]
        out = list(self._assemble(U, V, W, MB, BR))
        if self.r:
            out[n * self.m + n] = 0
        return tuple(out)

    def group_violation(self, z: Mat) -> str | None:
        m, f, ctx, n = self.m, self.family, self.ctx, self.n
        for i in range(m):
            if z[i * m + i] != 1:
                return f"not unipotent: diagonal entry at ({f.indices[i]},{f.indices[i]}) is not 1"
            for j in range(i):
                if z[i * m + j]:
                    return f"not upper triangular at ({f.indices[i]},{f.indices[j]})"
        X, XV, XZ = self._blocks(z)
        Xi = self._small_inv(X)
        BR = [[z[(n + self.r + i) * m + n + self.r + j] for j in range(n)] for i in range(n)]
        if BR != [[Xi[n - 1 - j][n - 1 - i] for j in range(n)] for i in range(n)]:
            return "lower-right block is not J x^-T J"
        Zb = self._small_mul(Xi, XZ)
        add, neg = ctx._add, ctx._neg
        # J z^T and z J
        JzT = [[Zb[j][n - 1 - i] for j in range(n)] for i in range(n)]
        zJ = [[Zb[i][n - 1 - j] for j in range(n)] for i in range(n)]
        if f.letter == "C":
            if any(add[JzT[i][j]][neg[zJ[i][j]]] for i in range(n) for j in range(n)):
                return "block condition J z^T - z J = 0 fails"
        elif f.letter == "D":
            if any(add[JzT[i][j]][zJ[i][j]] for i in range(n) for j in range(n)):
                return "block condition J z^T + z J = 0 fails"
        else:
            u = [row[0] for row in self._small_mul(Xi, XV)]
            mid = [z[n * m + n + 1 + j] for j in range(n)]
            if mid != [neg[u[n - 1 - j]] for j in range(n)]:
                return "middle row is not -u^T J"
            mul = ctx._mul
            for i in range(n):
                for j in range(n):
                    if add[JzT[i][j]][zJ[i][j]] != neg[mul[u[i]][u[j]]]:
                        return "block condition J z^T + z J = -u u^T fails"
        W = self.form
        if self.matmul(self.matmul(self.transpose(z), W), z) != W:
            return "does not preserve the invariant form"  # pragma: no cover
        return None

    def check_group(self, z: Sequence[int]) -> Mat:
        z = self._coerce(z)
        msg = self.group_violation(z)
        if msg:
            raise MembershipError(msg)
        return z

    def mul(self, z1: Mat, z2: Mat) -> Mat:
        return self.kern.matmul(z1, z2, self.m)

    def inv(self, z: Mat) -> Mat:
        return self.kern.unitri_inv(z, self.m)

    def conjugate(self, x: Mat, z: Mat, x_inv: Mat | None = None) -> Mat:
        """x z x^-1."""
        if x_inv is None:
            x_inv = self.inv(x)
        return self.kern.conjugate(x, z, x_inv, self.m)

    # enumeration ------------------------------------------------------------------

    def check_bound(self, bound: int) -> None:
        if self.order > bound:
            raise BoundExceeded(f"|U| = {self.order} exceeds the bound {bound}")

    def coordinate_tuples(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.ctx.q), repeat=len(self.roots))

    def lie_elements(self, bound: int = DEFAULT_STREAM_BOUND) -> Iterator[Mat]:
        self.check_bound(bound)
        for coords in self.coordinate_tuples():
            yield self.lie_from_coords(dict(zip(self.roots, coords)))

    def elements(self, bound: int = DEFAULT_STREAM_BOUND) -> Iterator[Mat]:
        for a in self.lie_elements(bound):
            yield self.group_from_lie(a)

    def root_element(self, a: Root, s: int) -> Mat:
        """The group element z with a_z = s e_alpha."""
        return self.group_from_lie(self.lie_from_coords({a: s}))

    def generators(self) -> list[Mat]:
        return [self.root_element(a, s) for a in self.roots for s in self.ctx.nonzero()]

    # subgroups U_alpha, U_D and their linear characters -------------------------------

    def constraint_entries(self, a: Root) -> list[Entry]:
        """Entries forced to vanish on U_alpha."""
        n = self.n
        if a.kind == MINUS:
            return [(a.i, k) for k in range(a.i + 1, a.j)]
        if a.kind == PLUS:
            cs = [(a.i, k) for k in range(a.i + 1, n + 1)]
            cs += [(a.j, k) for k in range(a.j + 1, n + 1)]
            if self.r:
                cs.append((a.j, 0))
            return cs
        if a.kind in (LONG, SHORT):
            return [(a.i, k) for k in range(a.i + 1, n + 1)]
        raise ValueError(f"unknown root {a}")  # pragma: no cover

    def constraint_set(self, D: Iterable[Root]) -> set[Entry]:
        return {e for a in D for e in self.constraint_entries(a)}

    def in_U_alpha(self, a: Root, z: Mat) -> bool:
        f = self.family
        return all(z[f.flat(*e)] == 0 for e in self.constraint_entries(a))

    def in_U_D(self, D: Iterable[Root], z: Mat) -> bool:
        return all(self.in_U_alpha(a, z) for a in D)

    def subgroup_index(self, D: Iterable[Root]) -> int:
        """[U : U_D] from the number of vanishing constraints."""
        return self.ctx.q ** len(self.constraint_set(D))

    def lambda_exponent(self, pair: BasicPair, z: Mat) -> int:
        """k with lambda_{D,phi}(z) = zeta_p^k; z must lie in U_D."""
        tr, mul = self.ctx._trace, self.ctx._mul
        k = 0
        for a, s in pair.items:
            k += tr[mul[s][z[self._rep_flat[a]]]]
        return k % self.ctx.p

    def lambda_value(self, pair: BasicPair, z: Mat) -> CycNumber:
        if not self.in_U_D(pair.roots, z):
            raise ValueError("element does not lie in U_D")
        counts = [0] * self.ctx.p
        counts[self.lambda_exponent(pair, z)] = 1
        return CycNumber.from_exponent_counts(self.ctx.p, counts)

    # serialization ----------------------------------------------------------------

    def to_rows(self, a: Mat) -> list[list[int]]:
        m = self.m
        return [list(a[i * m : (i + 1) * m]) for i in range(m)]

    def matrix_json(self, a: Mat) -> dict:
        return {"indices": list(self.family.indices), "rows": self.to_rows(a)}

    def from_rows(self, rows: Sequence[Sequence[int]]) -> Mat:
        if len(rows) != self.m or any(len(r) != self.m for r in rows):
            raise MembershipError(f"expected a {self.m} x {self.m} matrix")
        return self._coerce([x for r in rows for x in r])

    def __repr__(self) -> str:
        return f"SylowGroup({self.family}, q={self.ctx.q})"
