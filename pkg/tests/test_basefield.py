import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rand_poly, rand_ratfunc
from oracles import naive_add, naive_mul, naive_pow, trial_irreducible
from drinfeld_ml.basefield import (
    FINITE,
    RATFUNC,
    FFElem,
    FieldSpec,
    Poly,
    RatFunc,
    default_modulus,
    embed,
    frobenius,
    get_field,
    is_irreducible,
    pth_root,
    specialize,
)
from drinfeld_ml.basefield.spec import is_pth_power
from drinfeld_ml.errors import NotAPthPower, NotIrreducible, ParseError, PoleAtPlace, PreconditionViolated
from drinfeld_ml.parsing import parse_element

FIELDS = [(2, 1), (2, 3), (2, 4), (3, 1), (3, 2), (3, 4), (5, 1), (5, 2), (7, 2), (3, 11)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_arithmetic_matches_schoolbook(p, k):
    gf = get_field(p, k)
    r = random.Random(p * 100 + k)
    for _ in range(150):
        a, b = r.randrange(gf.order), r.randrange(gf.order)
        assert gf.mul(a, b) == naive_mul(a, b, p, gf.modulus)
        assert gf.add(a, b) == naive_add(a, b, p, k)
        e = r.randrange(3 * gf.order)
        assert gf.pow(a, e) == naive_pow(a, e, p, gf.modulus)
        if a:
            assert gf.mul(a, gf.inv(a)) == 1


@pytest.mark.parametrize("p,k", [(2, 1), (2, 5), (3, 1), (3, 3), (5, 2), (7, 1), (7, 2)])
def test_default_modulus_is_smallest_irreducible(p, k):
    mod = default_modulus(p, k)
    assert trial_irreducible(mod, p)
    assert mod[-1] == 1 and len(mod) == k + 1
    if k == 1:
        # x - w with w a generator of F_p^*
        w = (-mod[0]) % p
        assert len({pow(w, i, p) for i in range(1, p)}) == p - 1


@pytest.mark.parametrize("p,n", [(2, 6), (3, 4), (5, 3)])
def test_irreducibility_matches_trial_division(p, n):
    r = random.Random(n)
    for _ in range(80):
        coeffs = [r.randrange(p) for _ in range(n)] + [1]
        assert is_irreducible(coeffs, p) == trial_irreducible(coeffs, p)


def test_reducible_modulus_rejected():
    with pytest.raises(NotIrreducible):
        get_field(3, 2, (0, 0, 1))
    with pytest.raises(PreconditionViolated):
        get_field(4, 1)


@pytest.mark.parametrize("small,big", [((2, 2), (2, 4)), ((3, 2), (3, 6)), ((2, 3), (2, 6)), ((5, 1), (5, 3))])
def test_embedding_is_a_ring_homomorphism(small, big):
    S, B = get_field(*small), get_field(*big)
    for a in range(S.order):
        for b in range(S.order):
            assert embed(S, B, S.mul(a, b)) == B.mul(embed(S, B, a), embed(S, B, b))
            assert embed(S, B, S.add(a, b)) == B.add(embed(S, B, a), embed(S, B, b))
    assert embed(S, B, 1) == 1


def test_frobenius_fixes_prime_subfield():
    gf = get_field(3, 4)
    fixed = [v for v in range(gf.order) if gf.frob(v, 1) == v]
    assert fixed == [0, 1, 2]
    assert sorted(gf.subfield_elements(2)) == sorted(v for v in range(gf.order) if gf.frob(v, 2) == v)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_poly_divmod_roundtrip(sa, sb):
    r = random.Random(sa)
    gf = get_field(3, 2)
    a = rand_poly(r, gf, r.randint(0, 8))
    b = rand_poly(random.Random(sb), gf, r.randint(0, 4))
    if b.is_zero():
        return
    q, rem = a.divmod(b)
    assert q * b + rem == a
    assert rem.is_zero() or rem.deg < b.deg


def test_ratfunc_normal_form():
    spec = FieldSpec(3, 1, 2)
    t = spec.t()
    x = (t * t - 1) / (2 * t + 2)
    # (t^2 - 1)/(2t + 2) = (t - 1)/2 with a monic denominator
    assert x.den.is_one()
    assert x * 2 == t - 1
    assert repr(parse_element("(t^2+g)/(t+1)", spec)) == "(t^2 + g)/(t + 1)"


@given(st.integers(0, 10**6))
def test_ratfunc_field_axioms(seed):
    r = random.Random(seed)
    spec = FieldSpec(r.choice([2, 3, 5]), 1, r.choice([1, 2]))
    a, b, c = (rand_ratfunc(r, spec) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a - a == spec.zero()
    if not b.is_zero():
        assert (a / b) * b == a


@given(st.integers(0, 10**6))
def test_specialization_is_a_homomorphism(seed):
    r = random.Random(seed)
    spec = FieldSpec(3, 1, 2)
    gf = spec.gf
    a, b = rand_ratfunc(r, spec), rand_ratfunc(r, spec)
    P = spec.place(FFElem(gf, r.randrange(gf.order)))
    try:
        sa, sb, sab, ssum = specialize(a, P), specialize(b, P), specialize(a * b, P), specialize(a + b, P)
    except PoleAtPlace:
        return
    assert sab == sa * sb
    assert ssum == sa + sb


def test_specialize_pole():
    spec = FieldSpec(3, 1, 2)
    with pytest.raises(PoleAtPlace):
        specialize(1 / spec.t(), spec.place(0))


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_frobenius_then_pth_root(seed, k):
    r = random.Random(seed)
    spec = FieldSpec(r.choice([2, 3]), 1, 2)
    x = rand_ratfunc(r, spec)
    y = frobenius(x, k, spec)
    for _ in range(k):
        y = pth_root(y)
    assert y == x
    assert frobenius(x, 1, spec) == x ** spec.q


def test_pth_root_rejects_non_powers():
    spec = FieldSpec(3, 1, 1)
    assert not is_pth_power(spec.t())
    with pytest.raises(NotAPthPower):
        pth_root(spec.t() + 1)
    assert is_pth_power(spec.t() ** 3 + 1)


def test_finite_mode_elements():
    spec = FieldSpec(2, 1, 3, None, FINITE)
    g = parse_element("g", spec)
    assert g ** 7 == 1
    assert pth_root(g) ** 2 == g
    with pytest.raises(ParseError):
        parse_element("t + 1", spec)


def test_parse_error_position():
    spec = FieldSpec(3, 1, 2, None, RATFUNC)
    with pytest.raises(ParseError) as info:
        parse_element("t + * 2", spec)
    assert info.value.line == 1
    assert info.value.column == 5
