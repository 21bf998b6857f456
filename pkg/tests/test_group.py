import itertools
import random

import pytest

from superchar import kernels
from superchar.cyclotomic import CycNumber
from superchar.errors import BoundExceeded, MembershipError
from superchar.finite_field import field
from superchar.group import SylowGroup
from superchar.roots import BasicPair, Family, Root, basic_subsets

R = Root.parse
SMALL = [("C", 2, 3), ("D", 2, 3), ("B", 2, 3), ("C", 1, 5), ("B", 1, 3), ("D", 3, 3)]


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param


def grp(f, n, p, e=1, backend=None):
    return SylowGroup(Family(f, n), field(p, e), backend=backend)


def unit(G, i, j, s=1):
    z = [0] * (G.m * G.m)
    z[G.family.flat(i, j)] = s
    return tuple(z)


def test_lie_basis_examples():
    C2, D2, B2 = grp("C", 2, 3), grp("D", 2, 3), grp("B", 2, 3)
    neg = 2
    assert C2.lie_basis(R("e1+e2")) == C2.add(unit(C2, 1, -2), unit(C2, 2, -1))
    assert D2.lie_basis(R("e1+e2")) == D2.add(unit(D2, 1, -2), unit(D2, 2, -1, neg))
    assert B2.lie_basis(R("e1")) == B2.add(unit(B2, 1, 0), unit(B2, 0, -1, neg))


def test_lie_from_coords_examples():
    G = grp("C", 2, 3)
    assert G.lie_from_coords({}) == G.zero
    b = R("2e1")
    assert G.lie_from_coords({b: 2}) == G.scale(2, G.lie_basis(b))
    full = G.lie_from_coords({a: 1 for a in G.roots})
    assert sum(1 for x in full if x) == 6  # e1-e2 and e1+e2 have two entries each


@pytest.mark.parametrize("cfg", SMALL)
def test_enumeration_and_membership(cfg, backend):
    G = grp(*cfg, backend=backend)
    els = list(G.elements())
    assert len(els) == len(set(els)) == G.ctx.q ** len(G.roots)
    for a, z in zip(G.lie_elements(), els):
        assert G.lie_violation(a) is None
        assert G.group_violation(z) is None
        assert G.lie_from_group(z) == a


def test_enumeration_examples():
    assert len(list(grp("D", 2, 3).elements())) == 9
    assert len(list(grp("C", 2, 3).elements())) == 81
    assert len(list(grp("B", 2, 3).elements())) == 81


def test_enumeration_bound():
    G = grp("C", 2, 5)
    with pytest.raises(BoundExceeded):
        next(G.elements(bound=100))


def test_group_from_lie_examples():
    G = grp("C", 2, 5)
    assert G.group_from_lie(G.zero) == G.identity
    for a in G.roots:
        for s in range(1, 5):
            e = G.scale(s, G.lie_basis(a))
            assert G.group_from_lie(e) == G.add(G.identity, e)


def test_short_root_elements_are_exponentials():
    G = grp("B", 2, 5)
    half = G.ctx.inv(2)
    for a in (R("e1"), R("e2")):
        e = G.lie_basis(a)
        for s in range(1, 5):
            se = G.scale(s, e)
            expected = G.add(G.add(G.identity, se), G.scale(half, G.matmul(se, se)))
            assert G.root_element(a, s) == expected
            assert G.group_violation(G.add(G.identity, se)) is not None


def test_group_operations(backend):
    G = grp("C", 3, 3, backend=backend)
    rng = random.Random(1)
    els = [G.group_from_lie(G.lie_from_coords({a: rng.randrange(3) for a in G.roots})) for _ in range(30)]
    for x, y, w in zip(els, els[1:], els[2:]):
        assert G.mul(x, G.inv(x)) == G.identity
        assert G.mul(G.mul(x, y), w) == G.mul(x, G.mul(y, w))
        assert G.group_violation(G.mul(x, y)) is None
    b = R("2e2")
    for s, t in itertools.product(range(3), repeat=2):
        assert G.mul(G.root_element(b, s), G.root_element(b, t)) == G.root_element(b, (s + t) % 3)


def test_membership_errors():
    G = grp("C", 2, 3)
    with pytest.raises(MembershipError):
        G.check_group(unit(G, 1, 2))  # not unipotent
    with pytest.raises(MembershipError):
        G.check_group(G.add(G.identity, unit(G, 1, 2)))  # missing mirrored entry
    with pytest.raises(MembershipError):
        G.check_group([1, 2, 3])
    with pytest.raises(MembershipError):
        G.from_rows([[1, 0], [0, 1]])
    with pytest.raises(MembershipError):
        G.check_group(tuple([5] * 16))
    with pytest.raises(MembershipError):
        G.check_lie(unit(G, 1, 2))


def test_U_alpha_examples():
    G3 = grp("C", 3, 3)
    z = G3.root_element(R("e1-e3"), 1)
    assert all(G3.in_U_alpha(a, G3.identity) for a in G3.roots)
    # j = i + 1 imposes no constraint
    assert G3.constraint_entries(R("e1-e2")) == []
    C2 = grp("C", 2, 3)
    for z in C2.elements():
        assert C2.in_U_alpha(R("2e1"), z) == (z[C2.family.flat(1, 2)] == 0)


@pytest.mark.parametrize("cfg", [("C", 2, 3), ("D", 3, 3), ("B", 2, 3)])
def test_U_D_subgroups_and_lambda(cfg):
    G = grp(*cfg)
    els = list(G.elements())
    for D in basic_subsets(G.family):
        sub = [z for z in els if G.in_U_D(D, z)]
        assert len(els) == len(sub) * G.subgroup_index(D)
        subset = set(sub)
        rng = random.Random(0)
        pairs = [(rng.choice(sub), rng.choice(sub)) for _ in range(60)]
        pr = BasicPair(tuple((a, 1 + k % (G.ctx.q - 1)) for k, a in enumerate(D)))
        for x, y in pairs:
            xy = G.mul(x, y)
            assert xy in subset and G.inv(x) in subset
            assert G.lambda_value(pr, xy) == G.lambda_value(pr, x) * G.lambda_value(pr, y)


def test_lambda_examples():
    G = grp("C", 2, 5)
    b = R("2e1")
    pr = BasicPair.make(G.family, {b: 3})
    assert G.lambda_value(pr, G.identity) == CycNumber.one(5)
    for s in range(5):
        assert G.lambda_value(pr, G.root_element(b, s)) == G.ctx.theta(G.ctx.mul(3, s))
    with pytest.raises(ValueError):
        G.lambda_value(pr, G.root_element(R("e1-e2"), 1))


def test_backends_agree():
    if len(kernels.BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    rng = random.Random(5)
    for f, n, p, e in [("C", 3, 5, 1), ("B", 3, 3, 2), ("D", 4, 7, 1)]:
        Gs = {b: grp(f, n, p, e, backend=b) for b in kernels.BACKENDS}
        G = Gs["python"]
        for _ in range(40):
            x = G.group_from_lie(G.lie_from_coords({a: rng.randrange(p**e) for a in G.roots}))
            y = G.group_from_lie(G.lie_from_coords({a: rng.randrange(p**e) for a in G.roots}))
            res = {b: (H.mul(x, y), H.inv(x), H.kern.det([list(x[i * H.m : i * H.m + 3]) for i in range(2, 5)])) for b, H in Gs.items()}
            assert res["python"] == res["cython"]
