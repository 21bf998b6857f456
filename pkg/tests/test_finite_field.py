import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superchar.cyclotomic import CycNumber, root_of_unity
from superchar.errors import IdentityViolation
from superchar.finite_field import (
    FieldCtx,
    char_eta,
    char_theta,
    default_modulus,
    ff_arith,
    ff_trace,
    field,
    gauss_sum,
    is_irreducible,
    quadratic_sum,
    quadratic_sum_bruteforce,
    quadratic_sum_closed,
)

CONFIGS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)]


def ctx_of(pe):
    return field(*pe)


def test_arith_examples():
    f3 = field(3)
    assert ff_arith(f3, 2, 2, "add") == 1
    f9 = FieldCtx(3, 2, (1, 0, 1))
    t = f9.element([0, 1])
    assert ff_arith(f9, t, t, "mul") == 2
    for a in f9.elements():
        assert ff_arith(f9, a, 1, "mul") == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ff_arith(field(5), 3, 0, "div")


def test_encoding():
    f9 = FieldCtx(3, 2, (1, 0, 1))
    assert f9.coeffs(5) == [2, 1]
    assert f9.element([2, 1]) == 5
    assert f9.to_json() == {"p": 3, "e": 2, "modulus": [1, 0, 1]}


def test_default_modulus_is_smallest_irreducible():
    assert default_modulus(3, 1) == (0, 1)
    for p, e in [(3, 2), (5, 2), (3, 3), (7, 2)]:
        mod = default_modulus(p, e)
        assert is_irreducible(mod, p)
        for low in itertools.product(range(p), repeat=e):
            cand = tuple(low) + (1,)
            if sum(c * p**i for i, c in enumerate(low)) >= sum(c * p**i for i, c in enumerate(mod[:-1])):
                break
            assert not is_irreducible(cand, p)


@pytest.mark.parametrize(
    "p,e,modulus",
    [(2, 1, None), (9, 1, None), (3, 2, (2, 0, 1)), (3, 2, (1, 0, 2)), (3, 2, (1, 1))],
)
def test_bad_contexts(p, e, modulus):
    with pytest.raises(ValueError):
        FieldCtx(p, e, modulus)


def test_trace_examples():
    f9 = FieldCtx(3, 2, (1, 0, 1))
    assert ff_trace(f9, f9.element([0, 1])) == 0
    assert ff_trace(f9, 0) == 0
    f7 = field(7)
    assert all(ff_trace(f7, a) == a for a in f7.elements())


def test_theta_examples():
    f3 = field(3)
    assert char_theta(f3, 0) == CycNumber.one(3)
    assert char_theta(f3, 1) == root_of_unity(3, 1)
    assert char_theta(f3, 1) * char_theta(f3, 2) == CycNumber.one(3)


def test_eta_examples():
    assert char_eta(field(3), 1) == 1
    assert char_eta(field(5), 4) == 1
    assert char_eta(field(3), 2) == -1
    with pytest.raises(ValueError):
        char_eta(field(3), 0)


def test_gauss_examples():
    z3 = [root_of_unity(3, k) for k in range(3)]
    assert gauss_sum(field(3)) == z3[1] - z3[2]
    z5 = [root_of_unity(5, k) for k in range(5)]
    assert gauss_sum(field(5)) == z5[1] + z5[4] - z5[2] - z5[3]
    g = gauss_sum(FieldCtx(3, 2, (1, 0, 1)))
    assert g * g.conjugate() == CycNumber.rational(3, 9)


def test_quadratic_sum_examples():
    f3 = field(3)
    g = gauss_sum(f3)
    assert quadratic_sum(f3, 1, 0, 0) == g
    assert quadratic_sum(f3, 1, 0, 1) == char_theta(f3, 1) * g
    f5 = field(5)
    assert quadratic_sum(f5, 2, 1, 3) == quadratic_sum_bruteforce(f5, 2, 1, 3)
    with pytest.raises(ValueError):
        quadratic_sum(f3, 0, 1, 1)


def test_quadratic_sum_catches_mismatch(monkeypatch):
    import superchar.finite_field as ffmod

    f3 = field(3)
    monkeypatch.setattr(ffmod, "quadratic_sum_closed", lambda ctx, a2, a1, a0: CycNumber.one(3))
    with pytest.raises(IdentityViolation):
        ffmod.quadratic_sum(f3, 1, 0, 0)


@pytest.mark.parametrize("pe", [(3, 1), (5, 1)])
def test_quadratic_sum_exhaustive(pe):
    ctx = ctx_of(pe)
    for a2 in ctx.nonzero():
        for a1 in ctx.elements():
            for a0 in ctx.elements():
                assert quadratic_sum_closed(ctx, a2, a1, a0) == quadratic_sum_bruteforce(ctx, a2, a1, a0)


@pytest.mark.parametrize("pe", CONFIGS)
def test_character_laws(pe):
    ctx = ctx_of(pe)
    q, p = ctx.q, ctx.p
    assert sum(1 for c in ctx.nonzero() if ctx.eta(c) == 1) == (q - 1) // 2
    g = ctx.gauss
    assert g * g.conjugate() == CycNumber.rational(p, q)
    for r in ctx.elements():
        total = CycNumber.zero(p)
        for a in ctx.elements():
            total = total + ctx.theta(ctx.mul(r, a))
        assert total == CycNumber.rational(p, q if r == 0 else 0)
    assert any(not (ctx.theta(a) == CycNumber.one(p)) for a in ctx.elements())


field_and_elems = st.sampled_from(CONFIGS).flatmap(
    lambda pe: st.tuples(
        st.just(pe),
        st.integers(0, pe[0] ** pe[1] - 1),
        st.integers(0, pe[0] ** pe[1] - 1),
        st.integers(0, pe[0] ** pe[1] - 1),
    )
)


@settings(max_examples=200, deadline=None)
@given(field_and_elems)
def test_field_axioms(t):
    pe, a, b, c = t
    ctx = ctx_of(pe)
    add, mul = ctx.add, ctx.mul
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, ctx.neg(a)) == 0
    if b:
        assert mul(ctx.div(a, b), b) == a
        assert mul(b, ctx.inv(b)) == 1
    assert ctx.sub(a, b) == add(a, ctx.neg(b))


@settings(max_examples=200, deadline=None)
@given(field_and_elems)
def test_homomorphisms(t):
    pe, a, b, _ = t
    ctx = ctx_of(pe)
    assert ctx.trace(ctx.add(a, b)) == (ctx.trace(a) + ctx.trace(b)) % ctx.p
    assert ctx.theta(ctx.add(a, b)) == ctx.theta(a) * ctx.theta(b)
    if a and b:
        assert ctx.eta(ctx.mul(a, b)) == ctx.eta(a) * ctx.eta(b)
        assert ctx.eta(ctx.mul(a, a)) == 1
    assert ctx.pow(a, ctx.q) == a
