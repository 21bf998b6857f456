"""Exact arithmetic in the cyclotomic field Q(zeta_p), p an odd prime.

Elements are stored in the power basis ``zeta^0, ..., zeta^(p-2)`` with the
relation ``1 + zeta + ... + zeta^(p-1) = 0`` always applied, so equality is
coefficient equality.  Internally the coordinates are kept as integer
numerators over one common positive denominator.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p!r}")


def _reduce_full(vec: Sequence[int]) -> tuple[int, ...]:
    # vec has length p (exponents 0..p-1); eliminate zeta^(p-1)
    top = vec[-1]
    if top == 0:
        return tuple(vec[:-1])
    return tuple(v - top for v in vec[:-1])


class CycNumber:
    """An immutable element of Q(zeta_p)."""

    __slots__ = ("prime", "num", "den", "_hash")

    def __init__(self, prime: int, coeffs: Iterable[Rational], _check: bool = True):
        coeffs = list(coeffs)
        if _check:
            check_odd_prime(prime)
            if len(coeffs) != prime - 1:
                raise ValueError(f"expected {prime - 1} coordinates, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) if isinstance(c, Fraction) else int(c) * den for c in coeffs]
        self._set(prime, num, den)

    def _set(self, prime: int, num: Sequence[int], den: int) -> None:
        g = den
        for v in num:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            num = [v // g for v in num]
            den //= g
        self.prime = prime
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, prime: int, num: Sequence[int], den: int = 1) -> "CycNumber":
        obj = cls.__new__(cls)
        obj._set(prime, num, den)
        return obj

    # constructors ----------------------------------------------------------

    @classmethod
    def rational(cls, prime: int, value: Rational) -> "CycNumber":
        value = Fraction(value)
        num = [0] * (prime - 1)
        num[0] = value.numerator
        return cls._raw(prime, num, value.denominator)

    @classmethod
    def zero(cls, prime: int) -> "CycNumber":
        return cls._raw(prime, [0] * (prime - 1))

    @classmethod
    def one(cls, prime: int) -> "CycNumber":
        return cls.rational(prime, 1)

    @classmethod
    def from_exponent_counts(cls, prime: int, counts: Sequence[int], den: int = 1) -> "CycNumber":
        """``sum(counts[k] * zeta^k) / den`` for a length-p count vector."""
        if len(counts) != prime:
            raise ValueError("count vector must have length p")
        return cls._raw(prime, _reduce_full(counts), den)

    # accessors -------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def as_rational(self) -> Optional[Fraction]:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def full_vector(self) -> list[int]:
        """Numerators as a length-p vector (zeta^(p-1) coordinate zero)."""
        return list(self.num) + [0]

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.prime != self.prime:
                raise ValueError(f"mismatched primes {self.prime} and {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber.rational(self.prime, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycNumber._raw(self.prime, [a + b for a, b in zip(self.num, other.num)], self.den)
        den = self.den * other.den
        return CycNumber._raw(
            self.prime, [a * other.den + b * self.den for a, b in zip(self.num, other.num)], den
        )

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber._raw(self.prime, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycNumber._raw(
                self.prime, [a * other.numerator for a in self.num], self.den * other.denominator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prime
        out = [0] * p
        a = self.num
        b = other.num
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    k = i + j
                    if k >= p:
                        k -= p
                    out[k] += ai * bj
        return CycNumber._raw(p, _reduce_full(out), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        return NotImplemented

    def __pow__(self, k: int) -> "CycNumber":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = CycNumber.one(self.prime)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycNumber":
        """Complex conjugation, zeta -> zeta^-1."""
        p = self.prime
        out = [0] * p
        for i, v in enumerate(self.num):
            out[(-i) % p] = v
        return CycNumber._raw(p, _reduce_full(out), self.den)

    # comparison / hashing --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(self.prime, other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.prime == other.prime and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.prime, self.num, self.den))
        return self._hash

    # output ----------------------------------------------------------------

    def to_complex(self) -> complex:
        """Double-precision embedding zeta -> exp(2 pi i / p); display only."""
        w = cmath.exp(2j * math.pi / self.prime)
        return sum(v * w**k for k, v in enumerate(self.num)) / self.den

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, prime: int, data: Sequence[str]) -> "CycNumber":
        return cls(prime, [Fraction(s) for s in data])

    def literal(self) -> str:
        """Human readable ``a0 + a1*z + ...`` with exact rationals."""
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CycNumber(p={self.prime}, {self.literal()})"

    __str__ = literal


def root_of_unity(p: int, k: int) -> CycNumber:
    """zeta_p^k in canonical form."""
    check_odd_prime(p)
    counts = [0] * p
    counts[k % p] = 1
    return CycNumber.from_exponent_counts(p, counts)


def cyc_arith(a: CycNumber, b: CycNumber, op: str) -> CycNumber:
    if a.prime != b.prime:
        raise ValueError(f"mismatched primes {a.prime} and {b.prime}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyc_conjugate(a: CycNumber) -> CycNumber:
    return a.conjugate()


def cyc_as_rational(a: CycNumber) -> Optional[Fraction]:
    return a.as_rational()
