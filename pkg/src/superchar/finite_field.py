"""Arithmetic in F_q = F_p[t]/(f), q = p^e with p odd.

Field elements are plain integers in ``[0, q)``: the element
``c0 + c1 t + ... + c_{e-1} t^{e-1}`` is encoded as ``sum(c_i p^i)``.
A :class:`FieldCtx` owns the operation tables, the additive character
``theta(a) = zeta_p^Tr(a)`` and the quadratic character ``eta``.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from .cyclotomic import CycNumber, check_odd_prime
from .errors import IdentityViolation


# polynomials over F_p: coefficient lists, low degree first ---------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    m = _poly_trim(list(m))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _poly_trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e, low-degree coefficients read as base-p digits."""
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


class FieldCtx:
    """The finite field F_q together with its fixed characters."""

    def __init__(self, p: int, e: int = 1, modulus: Optional[Sequence[int]] = None):
        check_odd_prime(p)
        if not isinstance(e, int) or e < 1:
            raise ValueError(f"e must be a positive integer, got {e!r}")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is not irreducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._build_tables()

    # table construction ------------------------------------------------------

    def _digits(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.e)], axis=1)

    def _encode_rows(self, digits: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.e, dtype=np.int64)
        return (digits % self.p) @ weights

    def _mul_poly(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da = [(a // p**i) % p for i in range(e)]
        db = [(b // p**i) % p for i in range(e)]
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        r = _poly_mod([c % p for c in prod], self.modulus, p)
        return sum(c * p**i for i, c in enumerate(r))

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        if self.e == 1:
            a = np.arange(q, dtype=np.int64)
            add = (a[:, None] + a[None, :]) % p
            mul = (a[:, None] * a[None, :]) % p
        else:
            dig = self._digits()
            add = self._encode_rows(dig[:, None, :] + dig[None, :, :])
            # multiplication through discrete logs of a primitive element
            gen = self._find_generator()
            exp = np.zeros(q - 1, dtype=np.int64)
            x = 1
            for k in range(q - 1):
                exp[k] = x
                x = self._mul_poly(x, gen)
            log = np.zeros(q, dtype=np.int64)
            log[exp] = np.arange(q - 1)
            s = (log[:, None] + log[None, :]) % (q - 1)
            mul = exp[s]
            mul[0, :] = 0
            mul[:, 0] = 0
        self.add_table = add.astype(np.int32)
        self.mul_table = mul.astype(np.int32)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = [int(np.where(add[a] == 0)[0][0]) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = int(np.where(mul[a] == 1)[0][0])
        self._inv = inv
        self.neg_table = np.array(self._neg, dtype=np.int32)
        self.inv_table = np.array(self._inv, dtype=np.int32)
        # trace: Tr(a) = sum a^(p^i)
        tr = []
        for a in range(q):
            acc, y = 0, a
            for _ in range(self.e):
                acc = self._add[acc][y]
                y = self.pow(y, p)
            if acc >= p:
                raise IdentityViolation(f"trace of {a} left the prime field")  # pragma: no cover
            tr.append(acc)
        self._trace = tr
        squares = {self._mul[a][a] for a in range(1, q)}
        self._eta = [0] + [1 if a in squares else -1 for a in range(1, q)]

    def _find_generator(self) -> int:
        q = self.q
        n = q - 1
        factors = [f for f in range(2, n + 1) if n % f == 0 and all(f % g for g in range(2, f))]
        for g in range(2, q):
            if all(self._pow_poly(g, n // f) != 1 for f in factors):
                return g
        raise ValueError("no primitive element found")  # pragma: no cover

    def _pow_poly(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul_poly(r, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return r

    # arithmetic --------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 1
        while k:
            if k & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            k >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def coeffs(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def element(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.e:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not a canonical element of F_{self.q}")
        return int(a)

    # characters ----------------------------------------------------------------

    def trace(self, a: int) -> int:
        return self._trace[a]

    @property
    def trace_table(self) -> list[int]:
        return self._trace

    def theta_exponent(self, a: int) -> int:
        return self._trace[a]

    def theta(self, a: int) -> CycNumber:
        counts = [0] * self.p
        counts[self._trace[a]] = 1
        return CycNumber.from_exponent_counts(self.p, counts)

    def eta(self, c: int) -> int:
        if c == 0:
            raise ValueError("the quadratic character is not defined at 0")
        return self._eta[c]

    @cached_property
    def gauss(self) -> CycNumber:
        counts = [0] * self.p
        for c in range(1, self.q):
            counts[self._trace[c]] += self._eta[c]
        return CycNumber.from_exponent_counts(self.p, counts)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def field(p: int, e: int = 1, modulus: Optional[tuple[int, ...]] = None) -> FieldCtx:
    """Cached FieldCtx factory."""
    return FieldCtx(p, e, modulus)


def ff_arith(ctx: FieldCtx, a: int, b: int, op: str) -> int:
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "div":
        return ctx.div(a, b)
    raise ValueError(f"unknown operation {op!r}")


def ff_trace(ctx: FieldCtx, a: int) -> int:
    return ctx.trace(a)


def char_theta(ctx: FieldCtx, a: int) -> CycNumber:
    return ctx.theta(a)


def char_eta(ctx: FieldCtx, c: int) -> int:
    return ctx.eta(c)


def gauss_sum(ctx: FieldCtx) -> CycNumber:
    """G(eta, theta) = sum over nonzero c of eta(c) theta(c)."""
    return ctx.gauss


def quadratic_sum_bruteforce(ctx: FieldCtx, a2: int, a1: int, a0: int) -> CycNumber:
    counts = [0] * ctx.p
    for c in ctx.elements():
        h = ctx.add(ctx.add(ctx.mul(a2, ctx.mul(c, c)), ctx.mul(a1, c)), a0)
        counts[ctx.trace(h)] += 1
    return CycNumber.from_exponent_counts(ctx.p, counts)


def quadratic_sum_closed(ctx: FieldCtx, a2: int, a1: int, a0: int) -> CycNumber:
    """theta(a0 - a1^2/(4 a2)) eta(a2) G, without any summation."""
    if a2 == 0:
        raise ValueError("a2 must be nonzero")
    four_a2 = ctx.mul(ctx.from_int(4), a2)
    shift = ctx.sub(a0, ctx.div(ctx.mul(a1, a1), four_a2))
    return ctx.theta(shift) * ctx.gauss * ctx.eta(a2)


def quadratic_sum(ctx: FieldCtx, a2: int, a1: int, a0: int) -> CycNumber:
    """Sum of theta(a2 T^2 + a1 T + a0) over F_q in closed form.

    The closed form is checked against direct summation before it is returned.
    """
    closed = quadratic_sum_closed(ctx, a2, a1, a0)
    brute = quadratic_sum_bruteforce(ctx, a2, a1, a0)
    if closed != brute:
        raise IdentityViolation(f"quadratic sum mismatch at {(a2, a1, a0)}: {closed} != {brute}")
    return closed
