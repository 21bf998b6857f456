"""Superclasses: bordered minors, regular entries and classification.

Entry sets are dictionaries ``{(i, j): value}`` (or plain sets when values
do not matter).  Two universes of entries occur: ``family.entries`` (the
root entries E) for the Lie algebra ``u`` and ``family.upper_entries`` for
the full niltriangular algebra of the ambient unitriangular group.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import IdentityViolation
from .group import Mat, SylowGroup, basis_terms
from .roots import BasicPair, Entry, Family, Root, enumerate_basic_pairs, is_basic_entries


def sub_entries(family: Family, dent: Iterable[Entry], entry: Entry) -> list[Entry]:
    """D(i,j): entries (k,l) of D with i < k and l < j, sorted by column."""
    pos = family.pos
    i, j = entry
    pi, pj = pos[i], pos[j]
    out = [(k, l) for (k, l) in dent if pos[k] > pi and pos[l] < pj]
    out.sort(key=lambda e: pos[e[1]])
    return out


def permutation_sign(seq: Sequence[int]) -> int:
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def minor_layout(family: Family, dent: Iterable[Entry], entry: Entry):
    """Row and column positions of the bordered minor at ``entry``.

    Returns ``(sub, rows, cols)`` where ``sub`` is D(i,j), ``rows`` lists
    row i followed by the rows of D(i,j) in mirror order and ``cols`` the
    columns of D(i,j) in mirror order followed by column j.
    """
    pos = family.pos
    sub = sub_entries(family, dent, entry)
    rows = [pos[entry[0]]] + sorted(pos[k] for k, _ in sub)
    cols = [pos[l] for _, l in sub] + [pos[entry[1]]]
    return sub, rows, cols


def singular_entries(family: Family, dent: Iterable[Entry], universe: Iterable[Entry]) -> set[Entry]:
    """S(D) restricted to ``universe``."""
    pos = family.pos
    dent = list(dent)
    out = set()
    for a, b in universe:
        for i, j in dent:
            if (a == i and pos[b] > pos[j]) or (b == j and pos[a] < pos[i]):
                out.add((a, b))
                break
    return out


def regular_entries(
    family: Family, dent: Iterable[Entry], universe: Sequence[Entry] | None = None
) -> tuple[list[Entry], list[Entry]]:
    """(R(D), S(D)) as lists in entry order; the default universe is E."""
    universe = family.entries if universe is None else universe
    sing = singular_entries(family, dent, universe)
    R = [e for e in universe if e not in sing]
    S = [e for e in universe if e in sing]
    return R, S


def minor_coefficient(ctx, family: Family, phi: Mapping[Entry, int], entry: Entry) -> int:
    """(-1)^t sgn(sigma) prod phi(i_s, j_s) over D(i,j)."""
    pos = family.pos
    sub = sub_entries(family, phi, entry)
    val = 1
    for e in sub:
        val = ctx.mul(val, phi[e])
    sign = permutation_sign([pos[k] for k, _ in sub]) * (-1) ** len(sub)
    return val if sign == 1 else ctx.neg(val)


def minor_target(ctx, family: Family, phi: Mapping[Entry, int], entry: Entry) -> int:
    """Closed form of the minor at a regular ``entry`` evaluated on e_{D,phi}."""
    if entry not in phi:
        return 0
    return ctx.mul(phi[entry], minor_coefficient(ctx, family, phi, entry))


def entry_labels(G: SylowGroup, pair: BasicPair) -> dict[Entry, int]:
    """The entry labelling of e_{D,phi}: coefficient of each entry of E(D)."""
    e = G.e_pair(pair)
    out = {}
    for a in pair.roots:
        for ent, _ in basis_terms(G.family, a):
            out[ent] = e[G.family.flat(*ent)]
    return out


def mirror(entry: Entry) -> Entry:
    return (-entry[1], -entry[0])


def mirror_sign(family: Family, entry: Entry) -> int:
    """(-1)^{eps_j} in the mirrored label law phi(i,j) = (-1)^{eps_j} phi(-j,-i)."""
    if family.letter == "C" and entry[1] < 0:
        return 1
    return -1


def mirror_minor_sign(family: Family, dent: Iterable[Entry], entry: Entry) -> int:
    """The sign s with Delta_{i,j}(u) = s * Delta_{-j,-i}(u) for u in the Lie algebra.

    Sign is (-1)^(t+1) except in family C with j negative, where it is
    (-1)^(t - t_x) and t_x counts the entries of D(i,j) with a positive row
    and a negative column.
    """
    sub = sub_entries(family, dent, entry)
    t = len(sub)
    if family.letter == "C" and entry[1] < 0:
        ex = t - sum(1 for k, l in sub if k > 0 and l < 0)
    else:
        ex = t + 1
    return -1 if ex % 2 else 1


class SuperclassModel:
    """Classification of Lie and group elements into basic pairs."""

    def __init__(self, G: SylowGroup):
        self.G = G
        self.family = G.family
        self.ctx = G.ctx
        self._targets: dict[BasicPair, list] = {}

    # minors -----------------------------------------------------------------

    def delta_minor(self, dent: Iterable[Entry], entry: Entry, u: Mat) -> int:
        _, rows, cols = minor_layout(self.family, dent, entry)
        return self.G.kern.minor(u, self.G.m, rows, cols)

    def minor_direct(self, dent: Iterable[Entry], entry: Entry, u: Mat) -> int:
        """Same minor built as an explicit matrix (independent of the layout shortcut)."""
        _, rows, cols = minor_layout(self.family, dent, entry)
        m = self.G.m
        return self.G.kern.det([[u[r * m + c] for c in cols] for r in rows])

    # membership -------------------------------------------------------------

    def _target_list(self, pair: BasicPair):
        got = self._targets.get(pair)
        if got is None:
            phi = entry_labels(self.G, pair)
            R, _ = regular_entries(self.family, phi)
            got = []
            for ent in R:
                _, rows, cols = minor_layout(self.family, phi, ent)
                got.append((ent, rows, cols, minor_target(self.ctx, self.family, phi, ent)))
            self._targets[pair] = got
        return got

    def membership(self, pair: BasicPair, a: Mat) -> bool:
        """a lies in O_{D,phi}: every D-regular minor takes its target value."""
        minor, m = self.G.kern.minor, self.G.m
        for _, rows, cols, target in self._target_list(pair):
            if minor(a, m, rows, cols) != target:
                return False
        return True

    # classification ---------------------------------------------------------

    def classify_entries(self, u: Mat, universe: Sequence[Entry] | None = None) -> dict[Entry, int]:
        """Greedy scan of ``universe`` (entry order) returning the labelled entry set."""
        fam, ctx = self.family, self.ctx
        pos = fam.pos
        universe = fam.upper_entries if universe is None else universe
        phi: dict[Entry, int] = {}
        for ent in universe:
            i, j = ent
            if any((i == k and pos[j] > pos[l]) or (j == l and pos[i] < pos[k]) for k, l in phi):
                continue
            v = self.delta_minor(phi, ent, u)
            if v:
                phi[ent] = ctx.div(v, minor_coefficient(ctx, fam, phi, ent))
        return phi

    def classify(self, a: Mat) -> BasicPair:
        """The unique basic pair with a in O_{D,phi} (scan of E^+ with mirroring)."""
        fam, ctx = self.family, self.ctx
        pos = fam.pos
        phi_ent: dict[Entry, int] = {}
        labels: dict[Root, int] = {}
        for alpha in fam.roots:
            ent = alpha.rep
            i, j = ent
            if any((i == k and pos[j] > pos[l]) or (j == l and pos[i] < pos[k]) for k, l in phi_ent):
                continue
            v = self.delta_minor(phi_ent, ent, a)
            if not v:
                continue
            s = ctx.div(v, minor_coefficient(ctx, fam, phi_ent, ent))
            labels[alpha] = s
            for e, sign in basis_terms(fam, alpha):
                phi_ent[e] = s if sign == 1 else ctx.neg(s)
        try:
            pair = BasicPair.make(fam, labels)
        except ValueError as exc:
            raise IdentityViolation(f"classification produced a non-basic set: {exc}") from None
        if not self.membership(pair, a):
            raise IdentityViolation(f"element does not satisfy the minor equations of {pair.label()}")
        return pair

    def classify_exhaustive(self, a: Mat, pairs: Sequence[BasicPair] | None = None) -> list[BasicPair]:
        """All basic pairs whose membership test accepts ``a`` (oracle route)."""
        pairs = self.pairs if pairs is None else pairs
        return [pr for pr in pairs if self.membership(pr, a)]

    @property
    def pairs(self) -> list[BasicPair]:
        return _pairs(self.family, self.ctx.q)

    def pair_from_entries(self, phi: Mapping[Entry, int]) -> BasicPair:
        """Basic pair with E(D) = phi and e_{D,phi} equal to the entry labelling.

        Raises IdentityViolation when the entry data is not of that form.
        """
        fam, ctx = self.family, self.ctx
        if not is_basic_entries(list(phi)):
            raise IdentityViolation("entry set is not basic")
        labels = {}
        for ent, v in phi.items():
            a = fam.entry_root.get(ent)
            if a is None:
                raise IdentityViolation(f"entry {ent} is not a root entry")
            if ent == a.rep:
                labels[a] = v
        pair = BasicPair.make(fam, labels)
        if entry_labels(self.G, pair) != dict(phi):
            raise IdentityViolation("entry labels are not mirror compatible")
        return pair

    def mirror_law_holds(self, phi: Mapping[Entry, int]) -> bool:
        """phi(i,j) = (-1)^{eps_j} phi(-j,-i) on E^+ entries, and no (i,-i) for O."""
        fam, ctx = self.family, self.ctx
        for (i, j), v in phi.items():
            if fam.letter != "C" and j == -i:
                return False
            a = fam.entry_root.get((i, j))
            if a is None or a.rep != (i, j):
                continue
            mv = phi.get(mirror((i, j)))
            if mv is None:
                return False
            if (i, j) != mirror((i, j)):
                want = mv if mirror_sign(fam, (i, j)) == 1 else ctx.neg(mv)
                if v != want:
                    return False
        return True

    def superclass_of(self, z: Mat) -> BasicPair:
        return self.classify(self.G.lie_from_group(z))

    def superclass_by_definition(self, z: Mat) -> BasicPair:
        """Class of z read off from z - 1 in the ambient unitriangular group."""
        u = self.G.sub(z, self.G.identity)
        return self.pair_from_entries(self.classify_entries(u))

    def representative(self, pair: BasicPair) -> Mat:
        return self.G.group_from_lie(self.G.e_pair(pair))

    # enumeration --------------------------------------------------------------

    def partition(self, bound: int) -> dict[BasicPair, list[Mat]]:
        parts: dict[BasicPair, list[Mat]] = {pr: [] for pr in self.pairs}
        for z in self.G.elements(bound):
            parts[self.superclass_of(z)].append(z)
        return parts

    def superclass_members(self, pair: BasicPair, bound: int) -> Iterator[Mat]:
        for z in self.G.elements(bound):
            if self.superclass_of(z) == pair:
                yield z

    def superclass_size(self, pair: BasicPair, bound: int) -> int:
        return sum(1 for _ in self.superclass_members(pair, bound))

    def superclass_report(self, bound: int) -> list[dict]:
        parts = self.partition(bound)
        return [
            {
                "id": pr.key(),
                "label": pr.label(),
                "size": len(parts[pr]),
                "representative": self.G.to_rows(self.representative(pr)),
            }
            for pr in self.pairs
        ]


@lru_cache(maxsize=None)
def _pairs_cached(letter: str, n: int, q: int) -> tuple[BasicPair, ...]:
    return tuple(enumerate_basic_pairs(Family(letter, n), q))


def _pairs(family: Family, q: int) -> list[BasicPair]:
    return list(_pairs_cached(family.letter, family.n, q))
