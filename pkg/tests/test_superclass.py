import random

import pytest

from superchar.errors import IdentityViolation
from superchar.finite_field import field
from superchar.group import SylowGroup
from superchar.roots import BasicPair, Family, Root, basic_subsets, root_entries
from superchar.superclass import (
    SuperclassModel,
    minor_target,
    entry_labels,
    mirror,
    mirror_minor_sign,
    regular_entries,
    sub_entries,
)

R = Root.parse
DESK = [("C", 2, 3), ("D", 2, 3), ("B", 2, 3), ("D", 3, 3), ("C", 1, 5), ("B", 1, 5)]


def model(f, n, p, e=1):
    return SuperclassModel(SylowGroup(Family(f, n), field(p, e)))


def random_lie(G, rng):
    return G.lie_from_coords({a: rng.randrange(G.ctx.q) for a in G.roots})


def test_delta_minor_examples():
    S = model("C", 3, 5)
    G = S.G
    rng = random.Random(2)
    u = random_lie(G, rng)
    for ent in G.family.entries:
        assert S.delta_minor({}, ent, u) == u[G.family.flat(*ent)]
    for D in basic_subsets(G.family)[1:]:
        pr = BasicPair(tuple((a, 1 + k % 4) for k, a in enumerate(D)))
        phi = entry_labels(G, pr)
        e = G.e_pair(pr)
        R_, _ = regular_entries(G.family, phi)
        for ent in R_:
            assert S.delta_minor(phi, ent, e) == minor_target(G.ctx, G.family, phi, ent)
            assert S.delta_minor(phi, ent, e) == S.minor_direct(phi, ent, e)
            if ent not in phi:
                assert S.delta_minor(phi, ent, e) == 0


def test_regular_entries_examples():
    C2 = Family("C", 2)
    R_, S_ = regular_entries(C2, set())
    assert R_ == list(C2.entries) and S_ == []
    R_, S_ = regular_entries(C2, {(1, 2), (-2, -1)})
    assert {(1, -2), (1, -1)} <= set(S_)
    assert set(R_) | set(S_) == set(C2.entries) and not set(R_) & set(S_)


@pytest.mark.parametrize("f,n", [("B", 3), ("C", 3), ("D", 4)])
def test_regular_entries_mirror_closed(f, n):
    fam = Family(f, n)
    for D in basic_subsets(fam):
        R_, _ = regular_entries(fam, root_entries(fam, D))
        rs = set(R_)
        assert all(mirror(e) in rs for e in rs)


def test_membership_examples():
    S = model("C", 2, 3)
    G = S.G
    for pr in S.pairs:
        assert S.membership(pr, G.e_pair(pr))
        if len(pr):
            assert not S.membership(pr, G.zero)
    empty = BasicPair.empty()
    for a in G.lie_elements():
        assert S.membership(empty, a) == (a == G.zero)


@pytest.mark.parametrize("cfg", DESK)
def test_classify_matches_exhaustive_oracle(cfg):
    S = model(*cfg)
    G = S.G
    for a in G.lie_elements():
        assert S.classify_exhaustive(a) == [S.classify(a)]


def test_classify_examples():
    S = model("C", 2, 5)
    G = S.G
    assert S.classify(G.zero) == BasicPair.empty()
    assert S.superclass_of(G.identity) == BasicPair.empty()
    for a in G.roots:
        for s in range(1, 5):
            pr = BasicPair.make(G.family, {a: s})
            assert S.classify(G.scale(s, G.lie_basis(a))) == pr
            assert S.superclass_of(G.root_element(a, s)) == pr


def test_classify_rejects_non_members():
    S = model("C", 2, 3)
    G = S.G
    bogus = list(G.zero)
    bogus[G.family.flat(1, 2)] = 1  # no mirrored entry
    with pytest.raises(IdentityViolation):
        S.classify(tuple(bogus))


@pytest.mark.parametrize("cfg", DESK)
def test_partition_sizes(cfg):
    S = model(*cfg)
    G = S.G
    parts = S.partition(10**6)
    assert sum(len(v) for v in parts.values()) == G.ctx.q ** len(G.roots)
    assert all(parts.values())
    assert parts[BasicPair.empty()] == [G.identity]
    for pr, members in parts.items():
        assert S.representative(pr) in members


def test_superclass_sizes_c2():
    S = model("C", 2, 3)
    sizes = [S.superclass_size(pr, 10**4) for pr in S.pairs]
    assert len(sizes) == 17 and sum(sizes) == 81
    report = S.superclass_report(10**4)
    assert [r["size"] for r in report] == sizes


@pytest.mark.parametrize("cfg", [("C", 2, 3), ("B", 2, 3), ("D", 3, 3)])
def test_conjugation_invariance(cfg):
    S = model(*cfg)
    G = S.G
    gens = G.generators()
    for z in G.elements():
        k = S.superclass_of(z)
        for x in gens:
            assert S.superclass_of(G.conjugate(x, z)) == k


@pytest.mark.parametrize("cfg", [("C", 2, 3), ("B", 2, 3), ("D", 3, 3)])
def test_ambient_route_agrees(cfg):
    S = model(*cfg)
    for z in S.G.elements():
        assert S.superclass_by_definition(z) == S.superclass_of(z)


@pytest.mark.parametrize("cfg", [("C", 3, 3), ("B", 3, 3), ("D", 4, 3), ("C", 4, 5)])
def test_mirror_minor_sign_law(cfg):
    S = model(*cfg)
    G = S.G
    fam = G.family
    subsets = basic_subsets(fam)
    rng = random.Random(0)
    for _ in range(300):
        dent = root_entries(fam, rng.choice(subsets))
        u = random_lie(G, rng)
        for ent in (a.rep for a in fam.roots):
            s = mirror_minor_sign(fam, dent, ent)
            lhs = S.delta_minor(dent, ent, u)
            rhs = S.delta_minor(dent, mirror(ent), u)
            assert lhs == (rhs if s == 1 else G.ctx.neg(rhs))


def printed_sign(family, dent, entry):
    """The sign rule with r = |D'(i,j)| - 1 for symplectic entries with j negative."""
    sub = sub_entries(family, dent, entry)
    if family.letter == "C" and entry[1] < 0:
        r = sum(1 for _, l in sub if l > 0) - 1
    else:
        r = len(sub)
    return -1 if (r + 1) % 2 else 1


def test_printed_sign_rule_fails_in_rank_three():
    S = model("C", 3, 3)
    G = S.G
    fam = G.family
    subsets = basic_subsets(fam)
    rng = random.Random(0)
    bad = 0
    for _ in range(400):
        dent = root_entries(fam, rng.choice(subsets))
        u = random_lie(G, rng)
        for ent in (a.rep for a in fam.roots):
            lhs = S.delta_minor(dent, ent, u)
            rhs = S.delta_minor(dent, mirror(ent), u)
            if lhs and lhs != (rhs if printed_sign(fam, dent, ent) == 1 else G.ctx.neg(rhs)):
                bad += 1
    assert bad > 0


@pytest.mark.parametrize("cfg", DESK)
def test_mirrored_labels(cfg):
    S = model(*cfg)
    G = S.G
    for a in G.lie_elements():
        phi = S.classify_entries(a, G.family.entries)
        assert S.mirror_law_holds(phi)
        if G.family.letter != "C":
            assert all(j != -i for i, j in phi)
        assert S.pair_from_entries(phi) == S.classify(a)
