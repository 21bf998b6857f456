"""Exact identity testing for arrays of elements of Q(zeta_p).

A table of cyclotomic numbers is stored as an integer array ``A[..., p]`` of
exponent counts over a common denominator.  Bilinear identities are checked
by reducing modulo primes l = 1 (mod p), where zeta_p maps to each of the
p-1 primitive p-th roots of unity of F_l.  An integer vector whose images
at all p-1 roots vanish modulo l is constant modulo l; when this holds for
a set of primes whose product exceeds twice a bound on the coefficients,
the vector is constant over Z, i.e. the element of Q(zeta_p) is zero.

Matrix products over F_l use float64 BLAS with l < 2^21 and the inner
dimension chunked so that every partial sum stays below 2^53.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .cyclotomic import CycNumber, is_prime

ELL_MAX = 1 << 21
_EXACT = float(1 << 53)


def to_array(values: Sequence[Sequence[CycNumber]], p: int) -> tuple[np.ndarray, int]:
    """Integer exponent-count array (rows, cols, p) and the common denominator."""
    den = 1
    for row in values:
        for v in row:
            den = den * v.den // np.gcd(den, v.den)
    den = int(den)
    big = False
    rows = []
    for row in values:
        out_row = []
        for v in row:
            s = den // v.den
            vec = [x * s for x in v.num] + [0]
            if not big and any(abs(x) >= 1 << 40 for x in vec):
                big = True
            out_row.append(vec)
        rows.append(out_row)
    dtype = object if big else np.int64
    return np.array(rows, dtype=dtype).reshape(len(values), -1, p), den


def from_vector(p: int, vec: Sequence[int], den: int = 1) -> CycNumber:
    return CycNumber.from_exponent_counts(p, [int(x) for x in vec], int(den))


def is_constant_vector(vec: np.ndarray) -> np.ndarray:
    """Boolean over leading axes: the last-axis vector is constant (the element is rational)."""
    return np.all(vec == vec[..., :1], axis=-1)


def rational_part(vec: np.ndarray) -> np.ndarray:
    """For vectors that represent rationals, the rational numerator v_0 - v_1."""
    return vec[..., 0] - vec[..., 1]


def reduced(vec: np.ndarray) -> np.ndarray:
    """Canonical coordinates: subtract the zeta^(p-1) coefficient."""
    return vec[..., :-1] - vec[..., -1:]


def autocorrelation(A: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """sum_c w_c A[r,c] * conj(A[r,c]) as exponent vectors, for every row r."""
    p = A.shape[-1]
    w = weights.reshape((1, -1, 1))
    out = np.zeros((A.shape[0], p), dtype=A.dtype)
    for s in range(p):
        out[:, s] = (A * np.roll(A, s, axis=-1) * w).sum(axis=(1, 2))
    return out


def l1_norms(A: np.ndarray) -> np.ndarray:
    return np.abs(A).sum(axis=-1)


@lru_cache(maxsize=None)
def _primes(p: int, count: int) -> tuple[int, ...]:
    out = []
    ell = ELL_MAX - (ELL_MAX - 1) % p  # largest value = 1 mod p below ELL_MAX
    while len(out) < count:
        if ell < 3:
            raise RuntimeError("ran out of primes")  # pragma: no cover
        if is_prime(ell):
            out.append(ell)
        ell -= p
    return tuple(out)


class Embedding:
    """Reduction modulo l with zeta_p sent to omega^k for k = 1..p-1."""

    def __init__(self, p: int, ell: int):
        if (ell - 1) % p:
            raise ValueError("l must be 1 mod p")
        self.p = p
        self.ell = ell
        g = 2
        while True:
            omega = pow(g, (ell - 1) // p, ell)
            if omega != 1:
                break
            g += 1
        self.omega = omega
        V = np.empty((p, p - 1), dtype=np.float64)
        for j in range(p):
            for k in range(1, p):
                V[j, k - 1] = pow(omega, j * k, ell)
        self.V = V

    def embed(self, A: np.ndarray) -> np.ndarray:
        """Images at the p-1 roots: array (..., p-1) of floats in [0, l)."""
        R = np.mod(A, self.ell).astype(np.float64)
        return np.mod(R @ self.V, self.ell)

    def scalar(self, c) -> np.ndarray:
        return np.mod(np.asarray(c, dtype=object), self.ell).astype(np.float64)


def embeddings(p: int, bound: int) -> list[Embedding]:
    """Enough embeddings that the product of their primes exceeds 2*bound."""
    need = 2 * int(bound) + 1
    out = []
    prod = 1
    count = 1
    while prod <= need:
        primes = _primes(p, count)
        ell = primes[-1]
        out.append(Embedding(p, ell))
        prod *= ell
        count += 1
    return out


def mod_matmul(X: np.ndarray, Y: np.ndarray, ell: int) -> np.ndarray:
    """(X @ Y) mod l for float arrays with entries in [0, l)."""
    chunk = max(1, int(_EXACT // (float(ell - 1) ** 2)) - 1)
    inner = X.shape[-1]
    if inner <= chunk:
        return np.mod(X @ Y, ell)
    out = np.zeros(X.shape[:-1] + Y.shape[-1:], dtype=np.float64)
    for s in range(0, inner, chunk):
        out = np.mod(out + np.mod(X[..., s : s + chunk] @ Y[..., s : s + chunk, :], ell), ell)
    return out


def weighted_gram(
    A: np.ndarray, B: np.ndarray, weights: Sequence[int], conjugate: bool, bound: int
) -> list[tuple[Embedding, np.ndarray]]:
    """Images of G[r,s] = sum_c w_c A[r,c] * (conj) B[s,c] at every root, per prime.

    Returns ``[(embedding, G_hat)]`` with ``G_hat`` of shape (p-1, rows_A, rows_B).
    """
    p = A.shape[-1]
    w = np.asarray([int(x) for x in weights], dtype=object)
    out = []
    for emb in embeddings(p, bound):
        Ah = emb.embed(A)  # (R, C, p-1)
        Bh = emb.embed(B)
        if conjugate:
            Bh = Bh[..., ::-1]
        wh = emb.scalar(w).reshape(1, -1)
        G = np.empty((p - 1, A.shape[0], B.shape[0]), dtype=np.float64)
        for k in range(p - 1):
            left = np.mod(Ah[:, :, k] * wh, emb.ell)
            G[k] = mod_matmul(left, Bh[:, :, k].T, emb.ell)
        out.append((emb, G))
    return out


def gram_bound(A: np.ndarray, B: np.ndarray, weights: Sequence[int]) -> int:
    """Upper bound on the integer coefficients of the weighted Gram products."""
    na = l1_norms(A).astype(object)
    nb = l1_norms(B).astype(object)
    w = np.asarray([abs(int(x)) for x in weights], dtype=object)
    return int(((na * w) @ nb.T).max()) if na.size and nb.size else 0
