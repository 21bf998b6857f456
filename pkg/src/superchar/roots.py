"""Positive roots, matrix entries, the mirror order and basic pairs.

Rows and columns of the ambient m x m matrices are indexed by
``1, ..., n, (0,) -n, ..., -1`` in that (mirror) order; ``0`` only occurs
for the odd orthogonal family B.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

Entry = tuple[int, int]

FAMILIES = ("B", "C", "D")

# root kinds
MINUS = "minus"  # e_i - e_j
PLUS = "plus"  # e_i + e_j
LONG = "long"  # 2 e_i  (family C)
SHORT = "short"  # e_i    (family B)


@dataclass(frozen=True)
class Root:
    kind: str
    i: int
    j: int = 0

    def __str__(self) -> str:
        if self.kind == MINUS:
            return f"e{self.i}-e{self.j}"
        if self.kind == PLUS:
            return f"e{self.i}+e{self.j}"
        if self.kind == LONG:
            return f"2e{self.i}"
        return f"e{self.i}"

    @classmethod
    def parse(cls, text: str) -> "Root":
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"e(\d+)([-+])e(\d+)", text)
        if m:
            i, j = int(m.group(1)), int(m.group(3))
            return cls(MINUS if m.group(2) == "-" else PLUS, i, j)
        m = re.fullmatch(r"2e(\d+)", text)
        if m:
            return cls(LONG, int(m.group(1)))
        m = re.fullmatch(r"e(\d+)", text)
        if m:
            return cls(SHORT, int(m.group(1)))
        raise ValueError(f"cannot parse root {text!r}")

    @property
    def rep(self) -> Entry:
        """The unique entry of E(alpha) lying in E^+."""
        if self.kind == MINUS:
            return (self.i, self.j)
        if self.kind == PLUS:
            return (self.i, -self.j)
        if self.kind == LONG:
            return (self.i, -self.i)
        return (self.i, 0)


@dataclass(frozen=True)
class Family:
    """One of the three series: C (Sp_2n), D (O_2n), B (O_2n+1)."""

    letter: str
    n: int

    def __post_init__(self):
        if self.letter not in FAMILIES:
            raise ValueError(f"family must be one of B, C, D, got {self.letter!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"rank n must be a positive integer, got {self.n!r}")

    @property
    def m(self) -> int:
        return 2 * self.n + 1 if self.letter == "B" else 2 * self.n

    @cached_property
    def indices(self) -> tuple[int, ...]:
        """Index set I listed in mirror order."""
        mid = (0,) if self.letter == "B" else ()
        return tuple(range(1, self.n + 1)) + mid + tuple(range(-self.n, 0))

    @cached_property
    def pos(self) -> dict[int, int]:
        return {k: p for p, k in enumerate(self.indices)}

    def position(self, i: int) -> int:
        try:
            return self.pos[i]
        except KeyError:
            raise ValueError(f"index {i} is not in the index set of {self}") from None

    def flat(self, i: int, j: int) -> int:
        """Offset of entry (i, j) in a flat row-major m x m matrix."""
        return self.pos[i] * self.m + self.pos[j]

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return positive_roots(self)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {a: k for k, a in enumerate(self.roots)}

    @cached_property
    def entries(self) -> tuple[Entry, ...]:
        """All entries E, sorted by the total entry order."""
        es = {e for a in self.roots for e in entries_of_root(self, a)[0]}
        return tuple(sorted(es, key=self.entry_key))

    @cached_property
    def upper_entries(self) -> tuple[Entry, ...]:
        """Every strictly upper entry of the ambient m x m matrix, in entry order."""
        I = self.indices
        es = [(I[a], I[b]) for a in range(len(I)) for b in range(a + 1, len(I))]
        return tuple(sorted(es, key=self.entry_key))

    @cached_property
    def entry_root(self) -> dict[Entry, Root]:
        return {e: a for a in self.roots for e in entries_of_root(self, a)[0]}

    def entry_key(self, e: Entry) -> tuple[int, int]:
        # columns left to right; inside a column, lower rows first
        return (self.pos[e[1]], -self.pos[e[0]])

    def root_key(self, a: Root) -> tuple[int, int]:
        return self.entry_key(a.rep)

    def __str__(self) -> str:
        return f"{self.letter}{self.n}"


def positive_roots(family: Family) -> tuple[Root, ...]:
    n = family.n
    roots = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            roots.append(Root(MINUS, i, j))
            roots.append(Root(PLUS, i, j))
        if family.letter == "C":
            roots.append(Root(LONG, i))
        elif family.letter == "B":
            roots.append(Root(SHORT, i))
    return tuple(sorted(roots, key=lambda a: (family.pos[a.rep[1]], -family.pos[a.rep[0]])))


def check_root(family: Family, a: Root) -> None:
    ok = 1 <= a.i <= family.n
    if a.kind in (MINUS, PLUS):
        ok = ok and a.i < a.j <= family.n
    elif a.kind == LONG:
        ok = ok and family.letter == "C"
    elif a.kind == SHORT:
        ok = ok and family.letter == "B"
    else:
        ok = False
    if not ok:
        raise ValueError(f"{a} is not a positive root of {family}")


def entries_of_root(family: Family, a: Root) -> tuple[tuple[Entry, ...], Entry]:
    """E(alpha) and its E^+ representative."""
    check_root(family, a)
    i, j = a.i, a.j
    if a.kind == MINUS:
        es = ((i, j), (-j, -i))
    elif a.kind == PLUS:
        es = ((i, -j), (j, -i))
    elif a.kind == LONG:
        es = ((i, -i),)
    else:
        es = ((i, 0), (0, -i))
    return es, a.rep


def mirror_less(family: Family, i: int, j: int) -> bool:
    return family.position(i) < family.position(j)


def entry_less(family: Family, a: Entry, b: Entry) -> bool:
    return family.entry_key(a) < family.entry_key(b)


def root_entries(family: Family, D) -> list[Entry]:
    return [e for a in D for e in entries_of_root(family, a)[0]]


def is_basic_entries(entries: Sequence[Entry]) -> bool:
    rows = [e[0] for e in entries]
    cols = [e[1] for e in entries]
    return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)


def is_basic_subset(family: Family, D) -> bool:
    return is_basic_entries(root_entries(family, D))


@dataclass(frozen=True)
class BasicPair:
    """A basic subset D of roots with a labelling phi: D -> F_q^x.

    ``items`` holds ``(root, value)`` sorted by the root order of the family.
    """

    items: tuple[tuple[Root, int], ...]

    @classmethod
    def make(cls, family: Family, phi: Mapping[Root, int]) -> "BasicPair":
        for a, v in phi.items():
            check_root(family, a)
            if v == 0:
                raise ValueError(f"label of {a} must be nonzero")
        if not is_basic_subset(family, phi):
            raise ValueError(f"{sorted(map(str, phi))} is not a basic subset")
        items = tuple(sorted(phi.items(), key=lambda kv: family.root_key(kv[0])))
        return cls(items)

    @classmethod
    def empty(cls) -> "BasicPair":
        return cls(())

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(a for a, _ in self.items)

    @cached_property
    def phi(self) -> dict[Root, int]:
        return dict(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def label(self) -> str:
        if not self.items:
            return "(∅)"
        d = ",".join(str(a) for a in self.roots)
        ph = ", ".join(f"{a}: {v}" for a, v in self.items)
        return f"D={{{d}}}, phi={{{ph}}}"

    def key(self) -> str:
        """Compact identifier used in tables, e.g. ``2e1:2|e1-e2:1``."""
        return "|".join(f"{a}:{v}" for a, v in self.items) or "0"

    def to_json(self) -> dict:
        return {"roots": [{"root": str(a), "phi": v} for a, v in self.items]}

    @classmethod
    def from_json(cls, family: Family, data: Mapping) -> "BasicPair":
        return cls.make(family, {Root.parse(d["root"]): int(d["phi"]) for d in data["roots"]})

    def __str__(self) -> str:
        return self.label()


def basic_subsets(family: Family) -> list[tuple[Root, ...]]:
    """All basic subsets, ordered by size and then lexicographically by root order."""
    roots = family.roots
    out: list[tuple[Root, ...]] = []

    def extend(start: int, chosen: list[Root], rows: set, cols: set) -> None:
        out.append(tuple(chosen))
        for k in range(start, len(roots)):
            es = entries_of_root(family, roots[k])[0]
            rs = {e[0] for e in es}
            cs = {e[1] for e in es}
            if len(rs) < len(es) or len(cs) < len(es) or rs & rows or cs & cols:
                continue
            chosen.append(roots[k])
            extend(k + 1, chosen, rows | rs, cols | cs)
            chosen.pop()

    extend(0, [], set(), set())
    idx = family.root_index
    out.sort(key=lambda D: (len(D), [idx[a] for a in D]))
    return out


def enumerate_basic_pairs(family: Family, q: int) -> list[BasicPair]:
    pairs = []
    for D in basic_subsets(family):
        for values in itertools.product(range(1, q), repeat=len(D)):
            pairs.append(BasicPair(tuple(zip(D, values))))
    return pairs


def count_basic_pairs(family: Family, q: int) -> int:
    return sum((q - 1) ** len(D) for D in basic_subsets(family))
