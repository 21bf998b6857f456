"""Closed-form supercharacter values.

Values are exact elements of Q(zeta_p).  ``CharacterModel`` evaluates the
supercharacter xi_{D,phi} at the superclass representative z_{D',phi'}
through the per-root formulas and their product.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .cyclotomic import CycNumber
from .errors import BoundExceeded, IdentityViolation
from .group import DEFAULT_STREAM_BOUND, Mat, SylowGroup
from .roots import LONG, BasicPair, Entry, Family, Root, root_entries
from .superclass import entry_labels, regular_entries


def strictly_between(family: Family, i: int, j: int) -> list[int]:
    pos = family.pos
    return [k for k in family.indices if pos[i] < pos[k] < pos[j]]


def unitriangular_elementary_value(
    ctx, family: Family, entry: Entry, r: int, phi: Mapping[Entry, int]
) -> CycNumber:
    """zeta_{i,j,r}(1 + e_{D,phi}) for the ambient unitriangular group.

    ``phi`` labels a basic set of strictly upper entries.
    """
    if r == 0:
        raise ValueError("r must be nonzero")
    p, q = ctx.p, ctx.q
    pos = family.pos
    i, j = entry
    R, _ = regular_entries(family, phi, family.upper_entries)
    if entry not in R:
        return CycNumber.zero(p)
    t = sum(1 for k, l in phi if pos[i] < pos[k] and pos[l] < pos[j])
    val = CycNumber.rational(p, Fraction(q ** len(strictly_between(family, i, j)), q**t))
    if entry in phi:
        val = val * ctx.theta(ctx.mul(r, phi[entry]))
    return val


class CharacterModel:
    """Supercharacter values for one group U."""

    def __init__(self, G: SylowGroup):
        self.G = G
        self.family = G.family
        self.ctx = G.ctx
        self.p = G.ctx.p
        self.q = G.ctx.q
        self._regular_roots = lru_cache(maxsize=None)(self._regular_roots_uncached)
        self._elem_cache: dict = {}

    # structural data --------------------------------------------------------------

    def elementary_degree(self, a: Root) -> int:
        return self.q ** len(self.G.constraint_entries(a))

    def degree(self, pair: BasicPair) -> int:
        """xi_{D,phi}(1) = [U : U_D]."""
        return self.G.subgroup_index(pair.roots)

    def _regular_roots_uncached(self, D: tuple[Root, ...]) -> frozenset[Root]:
        fam = self.family
        R, _ = regular_entries(fam, root_entries(fam, D))
        R = set(R)
        out = set()
        for b in fam.roots:
            es = root_entries(fam, [b])
            inside = [e in R for e in es]
            if all(inside) != any(inside):
                raise IdentityViolation(f"regularity of {b} differs between its mirror entries")
            if all(inside):
                out.add(b)
        return frozenset(out)

    def regular_roots(self, D) -> frozenset[Root]:
        """R(D) at root level."""
        return self._regular_roots(tuple(sorted(D, key=self.family.root_key)))

    def t_count(self, a: Root, D) -> int:
        """t(alpha, D') = |D'(alpha)|."""
        pos = self.family.pos
        i, j = a.rep
        return sum(
            1 for k, l in root_entries(self.family, D) if pos[i] < pos[k] and pos[l] < pos[j]
        )

    def long_below(self, a: Root, D) -> list[Root]:
        """D'_0(alpha): long roots 2e_k of D' with k > i."""
        return [b for b in D if b.kind == LONG and b.i > a.i]

    # elementary values ------------------------------------------------------------

    def _q_power(self, k: Fraction) -> CycNumber:
        if k.denominator != 1:
            raise IdentityViolation(f"non-integral q exponent {k}")
        return CycNumber.rational(self.p, Fraction(self.q) ** int(k))

    def long_root_constant(self, a: Root, r: int, cls: BasicPair) -> CycNumber:
        """c^{D',phi'}_{alpha,r} for a long root alpha."""
        t = self.t_count(a, cls.roots)
        D0 = self.long_below(a, cls.roots)
        t0 = len(D0)
        if (t - t0) % 2:
            raise IdentityViolation(f"t - t0 = {t - t0} is odd for {a}")
        val = self._q_power(Fraction(t - t0, 2)) * self.ctx.gauss**t0
        rinv = self.ctx.inv(r)
        sign = 1
        for b in D0:
            sign *= self.ctx.eta(self.ctx.mul(rinv, cls.phi[b]))
        return val * sign

    def elementary_value(self, a: Root, r: int, cls: BasicPair) -> CycNumber:
        """xi_{alpha,r}(z_{D',phi'})."""
        if r == 0:
            raise ValueError("r must be nonzero")
        key = (a, r, cls)
        got = self._elem_cache.get(key)
        if got is not None:
            return got
        if a not in self.regular_roots(cls.roots):
            val = CycNumber.zero(self.p)
        else:
            t = self.t_count(a, cls.roots)
            val = CycNumber.rational(self.p, Fraction(self.elementary_degree(a), self.q**t))
            if a in cls.phi:
                val = val * self.ctx.theta(self.ctx.mul(r, cls.phi[a]))
            if a.kind == LONG:
                val = val * self.long_root_constant(a, r, cls)
        self._elem_cache[key] = val
        return val

    def recursion_factor(self, a: Root, r: int, b: Root, s: int) -> CycNumber:
        """The per-root factor c_{beta,s} of the long-root recursion."""
        ctx, p = self.ctx, self.p
        i = a.i
        k, l = b.rep
        pos = self.family.pos
        if k == i:
            if l == -i:
                return ctx.theta(ctx.mul(r, s))
            return CycNumber.zero(p)
        if k < i:
            return CycNumber.one(p)
        if l != -k:
            return CycNumber.rational(p, Fraction(1, self.q))
        return ctx.gauss * Fraction(ctx.eta(ctx.mul(ctx.inv(r), s)), self.q)

    def long_root_value_recursive(self, a: Root, r: int, cls: BasicPair) -> CycNumber:
        """xi_{alpha,r}(z_{D,phi}) = q^{n-i} prod c_{beta,phi(beta)} for a long root alpha."""
        if a.kind != LONG:
            raise ValueError("the recursion applies to long roots only")
        val = CycNumber.rational(self.p, self.elementary_degree(a))
        for b, s in cls.items:
            val = val * self.recursion_factor(a, r, b, s)
        return val

    # supercharacter values ----------------------------------------------------------

    def value_product(self, char: BasicPair, cls: BasicPair) -> CycNumber:
        """Product of elementary values over the roots of the character."""
        val = CycNumber.one(self.p)
        for a, r in char.items:
            val = val * self.elementary_value(a, r, cls)
            if val.is_zero():
                break
        return val

    def value(self, char: BasicPair, cls: BasicPair) -> CycNumber:
        """xi_{D,phi}(z_{D',phi'}) from the global closed form."""
        ctx, p = self.ctx, self.p
        D, Dp = char.roots, cls.roots
        if not set(D) <= self.regular_roots(Dp):
            return CycNumber.zero(p)
        t = sum(self.t_count(a, Dp) for a in D)
        D0 = [a for a in D if a.kind == LONG]
        half = sum(self.t_count(a, Dp) - len(self.long_below(a, Dp)) for a in D0)
        t0 = sum(len(self.long_below(a, Dp)) for a in D0)
        if half % 2:
            raise IdentityViolation("odd exponent in the long-root constant")
        sign = 1
        for a in D0:
            ainv = ctx.inv(char.phi[a])
            for b in self.long_below(a, Dp):
                sign *= ctx.eta(ctx.mul(ainv, cls.phi[b]))
        val = CycNumber.rational(p, Fraction(self.degree(char) * self.q ** (half // 2), self.q**t))
        if t0:
            val = val * ctx.gauss**t0
        counts = [0] * p
        k = 0
        for a in D:
            if a in cls.phi:
                k += ctx.trace(ctx.mul(char.phi[a], cls.phi[a]))
        counts[k % p] = sign
        return val * CycNumber.from_exponent_counts(p, counts)

    def unitriangular_check_value(self, a: Root, r: int, cls: BasicPair) -> CycNumber:
        """xi_{alpha,r}(z_{D',phi'}) through the ambient unitriangular formula."""
        return unitriangular_elementary_value(
            self.ctx, self.family, a.rep, r, entry_labels(self.G, cls)
        )

    def representative(self, cls: BasicPair) -> Mat:
        return self.G.group_from_lie(self.G.e_pair(cls))

    # coadjoint sum for long roots -------------------------------------------------------

    def kirillov_functional(self, i: int, r: int, c: Mapping[int, int]) -> dict[Entry, int]:
        """Entries of the extended functional for the parameter c.

        The functional is the trace pairing with an element of the Lie
        algebra, so its mirrored entries follow the symplectic basis signs:
        (a,-i) carries +c_{-a} for positive a and -c_{-a} for negative a.
        """
        ctx, fam = self.ctx, self.family
        pos = fam.pos
        mid = strictly_between(fam, i, -i)
        F: dict[Entry, int] = {(i, -i): r}
        for a in mid:
            F[(i, a)] = c[a]
            F[(a, -i)] = c[-a] if a > 0 else ctx.neg(c[-a])
        rinv = ctx.inv(r)
        for a in mid:
            for b in mid:
                if pos[a] < pos[b]:
                    v = ctx.mul(rinv, ctx.mul(F[(i, b)], F[(a, -i)]))
                    if v:
                        F[(a, b)] = v
        return F

    def kirillov_value(
        self, a: Root, r: int, z: Mat, bound: int = DEFAULT_STREAM_BOUND
    ) -> CycNumber:
        """q^{-(n-i)} sum over c of theta(f_c(a_z)) for a long root alpha = 2e_i."""
        if a.kind != LONG:
            raise ValueError("the coadjoint sum is defined for long roots of family C")
        ctx, fam, p = self.ctx, self.family, self.p
        i = a.i
        mid = strictly_between(fam, i, -i)
        if self.q ** len(mid) > bound:
            raise BoundExceeded(f"q^{len(mid)} parameters exceed the bound {bound}")
        az = self.G.lie_from_group(z)
        entries = [(e, az[fam.flat(*e)]) for e in fam.upper_entries]
        entries = [(e, v) for e, v in entries if v]
        tr, mul = ctx._trace, ctx._mul
        counts = [0] * p
        for vals in itertools.product(range(self.q), repeat=len(mid)):
            F = self.kirillov_functional(i, r, dict(zip(mid, vals)))
            k = 0
            for e, v in entries:
                f = F.get(e)
                if f:
                    k += tr[mul[f][v]]
            counts[k % p] += 1
        return CycNumber.from_exponent_counts(p, counts, self.q ** (fam.n - i))
