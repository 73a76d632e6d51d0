import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rand_poly
from oracles import brute_kernel, brute_minimal_polynomial, brute_prime_to_char_torsion
from drinfeld_ml.basefield import FINITE, RATFUNC, FFElem, FieldSpec, Poly
from drinfeld_ml.drinfeld import (
    GENERIC,
    DrinfeldModule,
    divisible_by_tm,
    fq_poly,
    good_reduction_at,
    minimal_polynomial,
    parse_fq_poly,
    polys_up_to,
    prime_to_char_torsion,
    reduce_at,
    splits_over,
    splitting_degree,
    splitting_search,
    t_power_torsion_profile,
    torsion,
)
from drinfeld_ml.errors import BadReduction, ModeMismatch, PreconditionViolated, ZeroAnnihilator
from drinfeld_ml.ore import OrePoly, ord_tau, search_field

F2 = FieldSpec(2, 1, 1, None, FINITE)
F3 = FieldSpec(3, 1, 1, None, FINITE)
F4 = FieldSpec(2, 1, 2, None, FINITE)


def _random_module(r, spec, rank):
    coeffs = [FFElem(spec.gf, r.randrange(spec.gf.order)) for _ in range(rank)]
    coeffs.append(FFElem(spec.gf, r.randrange(1, spec.gf.order)))
    return DrinfeldModule(OrePoly(spec, coeffs))


def _fq_random(r, spec, deg):
    fq = spec.fq_raw()
    return Poly(spec.gf, {i: r.choice(fq) for i in range(deg + 1)})


@given(st.integers(0, 10**6))
def test_phi_is_a_ring_homomorphism(seed):
    r = random.Random(seed)
    spec = r.choice([F2, F3, F4, FieldSpec(3, 1, 2)])
    if spec.is_finite:
        M = _random_module(r, spec, r.randint(1, 2))
        top = 2
    else:
        # polynomial coefficients keep t-degrees of phi_a moderate
        coeffs = [spec.K.from_poly(rand_poly(r, spec.gf, 1)) for _ in range(2)]
        M = DrinfeldModule(OrePoly(spec, coeffs) + OrePoly.tau(spec, 2))
        top = 1
    a, b = _fq_random(r, spec, r.randint(0, top)), _fq_random(r, spec, r.randint(0, top))
    assert M.phi_action(a * b) == M.phi_action(a) * M.phi_action(b)
    assert M.phi_action(a + b) == M.phi_action(a) + M.phi_action(b)
    if not a.is_zero():
        assert M.phi_action(a).deg == M.rank * a.deg


def test_rank_one_carlitz_like_torsion():
    M = DrinfeldModule.parse("T + T^2", F2)
    assert M.rank == 2
    assert M.characteristic.generator == parse_fq_poly("t", F2)
    T = torsion(M, "t", 1)
    assert [x.v for x in T.elements()] == [0, 1]
    assert 1 in T and 0 in T


def test_trivial_tau_module():
    M = DrinfeldModule.parse("T", F3)
    for N in range(1, 5):
        assert torsion(M, "t", N).size == 1
    assert M.characteristic.height == 1


def test_characteristic_generic_and_finite():
    spec = FieldSpec(3, 1, 2)
    M = DrinfeldModule.parse("t + T + t*T^3", spec)
    assert M.characteristic.kind == GENERIC
    assert not M.is_finite_characteristic
    N = DrinfeldModule.parse("g + T^2", FieldSpec(3, 1, 2, None, FINITE))
    assert N.characteristic.generator == minimal_polynomial(N.spec, N.i_t)
    assert N.characteristic.generator.deg == 2
    # height = ord_tau(phi_pi) / deg pi
    pi = N.characteristic.generator
    assert N.characteristic.height * pi.deg == ord_tau(N.phi_action(pi))


@pytest.mark.parametrize("p,k", [(2, 4), (3, 2), (3, 3), (5, 2)])
def test_minimal_polynomial_matches_enumeration(p, k):
    spec = FieldSpec(p, 1, k, None, FINITE)
    for v in range(spec.gf.order):
        c = FFElem(spec.gf, v)
        mp = minimal_polynomial(spec, c)
        assert [mp.coeff(i) for i in range(mp.deg + 1)] == brute_minimal_polynomial(spec, c)


@pytest.mark.parametrize("spec,text,a,N", [
    (F2, "T + T^2", "t^2 + t + 1", 2),
    (F3, "1 + T + T^2", "t", 2),
    (F3, "2 + T^2", "t^2", 1),
    (F4, "g + g*T + T^2", "t + 1", 2),
])
def test_torsion_matches_brute_force(spec, text, a, N):
    M = DrinfeldModule.parse(text, spec)
    T = torsion(M, a, N)
    assert list(T.points) == brute_kernel(M.phi_action(a), search_field(spec, N))
    assert T.size == spec.p ** T.dimension


def test_zero_annihilator():
    M = DrinfeldModule.parse("T + T^2", F2)
    with pytest.raises(ZeroAnnihilator):
        torsion(M, 0, 1)


@pytest.mark.parametrize("seed", range(8))
def test_kernel_size_when_split(seed):
    r = random.Random(seed)
    spec = r.choice([F2, F3])
    M = _random_module(r, spec, r.randint(1, 2))
    a = _fq_random(r, spec, r.randint(1, 2))
    if a.is_zero():
        a = Poly.monomial(spec.gf, 1)
    f = M.phi_action(a)
    search = splitting_search(M, a, 8)
    if search.certified:
        assert torsion(M, a, search.N).size == spec.q ** (f.deg - ord_tau(f))
    lin = splitting_degree(M, a, 8)
    if lin is not None:
        assert splits_over(f, lin) and (lin == 1 or not splits_over(f, lin - 1))
        assert torsion(M, a, lin).size == spec.q ** (f.deg - ord_tau(f))


def test_doubling_search_can_overshoot():
    # phi[t^2 + t + 1] for T + T^2 over F_2 needs the least N found by a linear scan
    M = DrinfeldModule.parse("T + T^2", F2)
    a = parse_fq_poly("t + 1", F2)
    s = splitting_search(M, a)
    lin = splitting_degree(M, a)
    assert s.certified and lin is not None and lin <= s.N
    assert s.tried[0] == 1


@pytest.mark.parametrize("spec,text,N", [(F2, "T + T^2", 4), (F3, "T + T^2", 3), (F3, "1 + T^2", 2), (F4, "g + T", 2)])
def test_prime_to_char_torsion_matches_periodic_points(spec, text, N):
    M = DrinfeldModule.parse(text, spec)
    big = search_field(spec, N)
    expected = brute_prime_to_char_torsion(M, big)
    assert list(prime_to_char_torsion(M, N, deg_bound=2 * N * spec.m).points) == expected


def test_t_power_profile_is_monotone():
    M = DrinfeldModule.parse("T + T^2", F2)
    dims = t_power_torsion_profile(M, 4, 3)
    assert dims == sorted(dims)


def test_reduction():
    spec = FieldSpec(3, 1, 2)
    M = DrinfeldModule.parse("T + t*T^3", spec)
    assert not good_reduction_at(M, spec.place(0))
    with pytest.raises(BadReduction):
        reduce_at(M, spec.place(0))
    R = reduce_at(M, spec.place(1))
    assert R.spec.mode == FINITE and R.rank == 3
    assert repr(R.phi_t) == "T + T^3"
    with pytest.raises(ModeMismatch):
        good_reduction_at(R, spec.place(1))
    P = DrinfeldModule.parse("T + 1/(t+1)*T^2", spec)
    assert not good_reduction_at(P, spec.place(2))


def test_substitute():
    spec = FieldSpec(3, 1, 2)
    M = DrinfeldModule.parse("T + t*T^3", spec)
    Mu = M.substitute("t + t^2")
    assert Mu.phi_t == M.phi_action(parse_fq_poly("t + t^2", spec))
    assert Mu.rank == 6
    with pytest.raises(PreconditionViolated):
        M.substitute("2")


@pytest.mark.parametrize("c,m", [("t + 1", 2), ("t", 3), ("t^2 + 1", 2), ("t^2 + t + 2", 3), ("t + 2", 1)])
def test_divisible_by_tm(c, m):
    spec = FieldSpec(3, 1, 1)
    cp = parse_fq_poly(c, spec)
    d = divisible_by_tm(cp, m, spec)
    assert (d % cp).is_zero()
    assert all(e % m == 0 for e in d.terms)
    # nothing of smaller degree in F_q[t^m] is a multiple
    for smaller in polys_up_to(spec, d.deg - 1):
        if all(e % m == 0 for e in smaller.terms):
            assert not (smaller % cp).is_zero()


def test_fq_poly_rejects_non_fq_coefficients():
    spec = FieldSpec(3, 1, 2)
    with pytest.raises(PreconditionViolated):
        parse_fq_poly("g*t", spec)
    assert fq_poly(spec, [1, 0, 2]) == parse_fq_poly("2*t^2 + 1", spec)


def test_rank_zero_rejected():
    with pytest.raises(PreconditionViolated):
        DrinfeldModule.parse("t", FieldSpec(3, 1, 2, None, RATFUNC))


def test_polys_up_to_counts():
    assert len(polys_up_to(F3, 2)) == 1 + 3 + 9
    assert len(polys_up_to(F3, 1, monic=False)) == 2 + 6
    assert all(not p.is_zero() for p in polys_up_to(F2, 3))
    assert rand_poly(random.Random(0), F2.gf, 2).deg <= 2
