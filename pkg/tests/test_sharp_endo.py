import math
import random

import pytest

from oracles import brute_prime_to_char_torsion
from drinfeld_ml.basefield import FINITE, FFElem, FieldSpec
from drinfeld_ml.drinfeld import DrinfeldModule, prime_to_char_torsion, reduce_ore
from drinfeld_ml.errors import ModeMismatch, PreconditionViolated
from drinfeld_ml.experiment import load_descriptor
from drinfeld_ml.ore import OrePoly, as_linear_map, parse_ore, search_field
from drinfeld_ml.sharp_endo import (
    EQUAL,
    F_CONTAINS_G,
    G_CONTAINS_F,
    binomial_mod,
    commutation_exponent,
    commutator,
    frobenius_orbit_length,
    image_chain,
    is_endomorphism,
    sharp,
    sharp_compare,
    skew_exponent,
    verify_e35_obstruction,
)
from drinfeld_ml import linalg

F2 = FieldSpec(2, 1, 1, None, FINITE)
F3 = FieldSpec(3, 1, 1, None, FINITE)


def test_image_chain_is_decreasing_and_stable():
    f = parse_ore("T + T^2", F2)
    bases, n_star = image_chain(f, 3)
    dims = [len(b) for b in bases]
    assert dims == sorted(dims, reverse=True)
    A = as_linear_map(f, 3)
    assert len(linalg.image_of_subspace(A, bases[-1], 2)) == dims[-1]
    assert n_star == len(bases)


@pytest.mark.parametrize("N", range(1, 7))
def test_sharp_equals_prime_to_char_torsion(N):
    M = DrinfeldModule.parse("T + T^2", F2)
    S = sharp(M, N)
    expected = brute_prime_to_char_torsion(M, search_field(F2, N))
    assert S.points() == expected
    assert S.points() == list(prime_to_char_torsion(M, N, deg_bound=N).points)


def test_sharp_of_pure_frobenius_is_everything():
    # phi_t = tau: pi = t and phi_t is bijective on finite fields
    M = DrinfeldModule.parse("T", F3)
    S = sharp(M, 2)
    assert S.trivial_full and S.size == 9
    assert FFElem(search_field(F3, 2), 5) in S


def test_sharp_needs_finite_mode():
    M = DrinfeldModule.parse("T + t*T^3", FieldSpec(3, 1, 2))
    with pytest.raises(ModeMismatch):
        sharp(M, 1)


def test_sharp_compare_on_reduced_example():
    d = load_descriptor("example_lambda")
    f = d.extra_ore("f")
    phi = d.module.phi_t
    for c, N in [(2, 1), (2, 2)]:
        P = d.spec.place(c)
        assert sharp_compare(reduce_ore(phi, P), reduce_ore(f * f, P), N) == EQUAL
        assert sharp_compare(reduce_ore(f, P), reduce_ore(f * f, P), N) == EQUAL
    # at t -> 1 the factor 1 + tau + tau^3 kills x = 1, so phi^sharp is strictly smaller
    P1 = d.spec.place(1)
    assert sharp_compare(reduce_ore(phi, P1), reduce_ore(f * f, P1), 1) == G_CONTAINS_F
    assert sharp_compare(reduce_ore(f * f, P1), reduce_ore(phi, P1), 1) == F_CONTAINS_G
    fr = reduce_ore(f, P1)
    assert sharp_compare(fr, fr, 3) == EQUAL


def test_sharp_compare_rejects_separable():
    with pytest.raises(PreconditionViolated):
        sharp_compare(parse_ore("1 + T", F3), parse_ore("T", F3), 1)


def test_endomorphisms_and_commutators():
    spec = FieldSpec(3, 1, 2)
    M = DrinfeldModule.parse("T + t*T^3", spec)
    assert is_endomorphism(M, M.phi_t)
    assert is_endomorphism(M, spec.const(2))
    lam = spec.const(spec.gf.gen)
    assert not is_endomorphism(M, lam)
    assert commutation_exponent(M, lam, 8) == 2
    assert commutation_exponent(M, lam, 1) is None
    assert commutator(M.phi_t, M.phi_t).is_zero()
    with pytest.raises(PreconditionViolated):
        commutation_exponent(M, lam, 0)


def test_skew_exponent_and_orbits():
    spec = FieldSpec(3, 1, 2)
    f = parse_ore("t*T + T^3", spec)
    g = spec.const(spec.gf.gen)
    assert frobenius_orbit_length(spec, g) == 2
    assert skew_exponent(f, g) == 1
    assert skew_exponent(parse_ore("T + T^2", spec), g) is None
    assert skew_exponent(OrePoly.tau(spec, 2), g) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binomial_mod_matches_math_comb(p):
    r = random.Random(p)
    for _ in range(200):
        n = r.randrange(200)
        k = r.randrange(n + 1)
        assert binomial_mod(n, k, p) == math.comb(n, k) % p


def test_e35_report_fields():
    spec = FieldSpec(3, 1, 2)
    f = parse_ore("t*T + T^3", spec)
    lam = spec.const(spec.gf.gen)
    r = verify_e35_obstruction(f, lam, 2)
    assert (r.power, r.binomial) == (3, 1)
    assert r and not r.commutator.is_zero()
    with pytest.raises(PreconditionViolated):
        verify_e35_obstruction(f, spec.const(2), 1)
    with pytest.raises(PreconditionViolated):
        verify_e35_obstruction(parse_ore("t*T + T^4", FieldSpec(2, 1, 3)), FieldSpec(2, 1, 3).const(FieldSpec(2, 1, 3).gf.gen), 1)
