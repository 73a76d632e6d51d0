"""Acceptance criteria 1-11.

Each test tags itself with ``criterion``; the terminal summary prints one
PASS/FAIL line per criterion with its wall time.
"""

import random
import time

import pytest
from hypothesis import settings

import test_drinfeld
import test_ore
from conftest import rand_ratfunc
from oracles import brute_kernel, brute_prime_to_char_torsion
from test_lambda import random_expression
from drinfeld_ml.basefield import FINITE, FFElem, FieldSpec, Poly
from drinfeld_ml.drinfeld import DrinfeldModule, splitting_search, torsion
from drinfeld_ml.experiment import load_descriptor, load_experiment
from drinfeld_ml.lambda_calc import (
    _Rules,
    clearance_exponent,
    evaluate_expression,
    lambda_decompose,
    lambda_reconstruct,
    normalize,
    parse_lambda,
)
from drinfeld_ml.mordell import (
    CosetDecomposition,
    CosetPart,
    format_label,
    format_point,
    intersect,
    invariance_exponent,
    reduction_injectivity_scan,
    verify_decomposition,
)
from drinfeld_ml.ore import OrePoly, ore_mul, ord_tau, parse_ore, search_field
from drinfeld_ml.sharp_endo import (
    commutation_exponent,
    sharp,
    skew_exponent,
    verify_e35_obstruction,
)


class Clock:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.start


def host_constants(spec, degree=None):
    """Every constant of F_{q^degree} (default: the whole constant field) as a host element."""
    gf = spec.gf
    raws = range(gf.order) if degree is None else gf.subfield_elements(spec.e * degree)
    return [spec.raw_const(v) for v in raws]


def outside_fq(spec, degree):
    return [x for x in host_constants(spec, degree) if not spec.in_fq(x)]


# 1 -----------------------------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5])
def test_skew_law_for_every_constant(p, record_property):
    record_property("criterion", "1. skew law f lambda = lambda^q f")
    clock = Clock()
    spec = FieldSpec(p, 1, 2)
    f = parse_ore("t*T + T^3", spec)
    lams = host_constants(spec)
    assert len(lams) == p ** 2
    for lam in lams:
        lam_q = lam ** spec.q
        assert ore_mul(f, OrePoly.const(spec, lam)) == ore_mul(OrePoly.const(spec, lam_q), f)
    assert clock.elapsed < 1.0


# 2 -----------------------------------------------------------------------------

def test_even_power_commutes(record_property):
    record_property("criterion", "2. f^2 commutes with lambda")
    spec = FieldSpec(3, 1, 2)
    f = parse_ore("t*T + T^3", spec)
    f2 = f * f
    M = DrinfeldModule(f2)
    for lam in host_constants(spec):
        L = OrePoly.const(spec, lam)
        assert ore_mul(f2, L) == ore_mul(L, f2)
        if not lam.is_zero():
            assert commutation_exponent(M, lam, 4) == 1


# 3 -----------------------------------------------------------------------------

def test_e35_obstruction(record_property, capsys):
    record_property("criterion", "3. (1+f)^(2n) obstruction, p = 3")
    clock = Clock()
    d = load_descriptor("example_lambda")
    spec, f, M = d.spec, d.extra_ore("f"), d.module
    lam = outside_fq(spec, 2)[0]
    with capsys.disabled():
        print()
        for n in (1, 2, 3):
            r = verify_e35_obstruction(f, lam, n)
            assert r.binomial != 0
            assert not r.commutator.is_zero()
            assert r
            print(f"  n = {n}: C({2 * n}, {r.power}) mod {r.p} = {r.binomial}, commutator nonzero")
    assert commutation_exponent(M, lam, 6) is None
    assert clock.elapsed < 10.0


# 4 -----------------------------------------------------------------------------

def test_remark_sharp(record_property, capsys):
    record_property("criterion", "4. y = g x needs n0 = 2")
    clock = Clock()
    ex = load_experiment("remark_sharp")
    M, X, gamma = ex.descriptor.module, ex.variety, ex.gamma
    assert invariance_exponent(X, M, 8).exponent == 2
    good = verify_decomposition(X, gamma, ex.decomposition, 6)
    assert good.ok
    part = ex.decomposition.parts[0]
    bad = verify_decomposition(X, gamma, CosetDecomposition((CosetPart(part.translate, part.generators, 1),)), 6)
    assert not bad.ok and bad.outside_x
    pt, _, label = bad.outside_x[0]
    with capsys.disabled():
        print(f"\n  n0 = 1 witness: a = {format_label(label)}, point {format_point(pt)} lies outside X")
    assert clock.elapsed < 30.0


# 5 -----------------------------------------------------------------------------

def test_remark_important(record_property):
    record_property("criterion", "5. phi_u never preserves X, intersection grows")
    ex = load_experiment("remark_important")
    sizes = [len(intersect(ex.variety, ex.gamma, B)) for B in (4, 6)]
    assert sizes[1] > sizes[0]
    inv = invariance_exponent(ex.variety, ex.descriptor.module, 6)
    assert inv.exponent is None


# 6 -----------------------------------------------------------------------------

def test_characteristic_two_variant(record_property):
    record_property("criterion", "6. p = 2, f = t tau + tau^4")
    d = load_descriptor("example_lambda_p2")
    spec, f, M = d.spec, d.extra_ore("f"), d.module
    lams = outside_fq(spec, 3)
    assert len(lams) == 6
    f3 = f ** 3
    for lam in lams:
        assert skew_exponent(f, lam) == 1
        L = OrePoly.const(spec, lam)
        assert ore_mul(f3, L) == ore_mul(L, f3)
    assert commutation_exponent(M, lams[0], 6) is None


# 7 -----------------------------------------------------------------------------

F2 = FieldSpec(2, 1, 1, None, FINITE)
F3 = FieldSpec(3, 1, 1, None, FINITE)
F4 = FieldSpec(2, 1, 2, None, FINITE)
F9 = FieldSpec(3, 1, 2, None, FINITE)

SHARP_CASES = [
    (F2, "T + T^2", 6),
    (F2, "1 + T + T^2", 6),
    (F2, "T^2", 5),
    (F3, "T + T^2", 4),
    (F3, "1 + T^2", 4),
    (F3, "2 + T + 2*T^2", 3),
    (F4, "g + T", 3),
    (F9, "g + T^2", 2),
]


@pytest.mark.parametrize("spec,text,N", SHARP_CASES)
def test_sharp_is_prime_to_char_torsion(spec, text, N, record_property):
    record_property("criterion", "7. stable image chain = prime-to-char torsion")
    M = DrinfeldModule.parse(text, spec)
    assert M.is_finite_characteristic
    expected = brute_prime_to_char_torsion(M, search_field(spec, N))
    assert sharp(M, N).points() == expected


# 8 -----------------------------------------------------------------------------

def _random_pair(r):
    spec = r.choice([F2, F3])
    rank = r.randint(1, 2)
    coeffs = [FFElem(spec.gf, r.randrange(spec.gf.order)) for _ in range(rank)]
    coeffs.append(FFElem(spec.gf, r.randrange(1, spec.gf.order)))
    M = DrinfeldModule(OrePoly(spec, coeffs))
    fq = spec.fq_raw()
    while True:
        a = Poly(spec.gf, {i: r.choice(fq) for i in range(r.randint(1, 2) + 1)})
        if not a.is_zero():
            return M, a


def test_kernel_size_law(record_property, capsys):
    record_property("criterion", "8. |M[a]| = q^(deg - ord) when split")
    r = random.Random(8)
    certified = 0
    for _ in range(20):
        M, a = _random_pair(r)
        f = M.phi_action(a)
        search = splitting_search(M, a, 8)
        if not search.certified:
            continue
        certified += 1
        T = torsion(M, a, search.N)
        assert T.size == M.spec.q ** (f.deg - ord_tau(f))
        big = search_field(M.spec, search.N)
        if big.order <= 3 ** 6:
            assert list(T.points) == brute_kernel(f, big)
    with capsys.disabled():
        print(f"\n  certified splittings: {certified} of 20")
    assert certified > 0


# 9 -----------------------------------------------------------------------------

LAMBDA_SPECS = [FieldSpec(2, 1, 1), FieldSpec(3, 1, 2), FieldSpec(5, 1, 1)]


def test_lambda_decompose_round_trip(record_property):
    record_property("criterion", "9. lambda calculus")
    r = random.Random(9)
    for _ in range(500):
        spec = r.choice(LAMBDA_SPECS)
        x = rand_ratfunc(r, spec, 3)
        parts = lambda_decompose(x)
        assert len(parts) == spec.p
        assert lambda_reconstruct(parts) == x


def test_lambda_rewrites_are_sound(record_property):
    record_property("criterion", "9. lambda calculus")
    r = random.Random(90)
    for _ in range(100):
        spec = r.choice(LAMBDA_SPECS)
        rules = _Rules(spec)
        expr = random_expression(r, spec, terms=2, length=3)
        points = [rand_ratfunc(r, spec, 1) for _ in range(20)]
        for seq in expr:
            for k in rules.redexes(seq):
                out = rules.apply(seq, k)
                for x in points:
                    assert evaluate_expression([seq], x, spec) == evaluate_expression(out, x, spec)
        nf = normalize(spec, expr)
        for x in points:
            assert nf(x) == evaluate_expression(expr, x, spec)


def test_clearance_of_l0_l0(record_property):
    record_property("criterion", "9. lambda calculus")
    assert clearance_exponent(parse_lambda("L0 L0", FieldSpec(3, 1, 2))) == 2


# 10 ----------------------------------------------------------------------------

def test_reduction_scan_is_stable(record_property, capsys):
    record_property("criterion", "10. reduction scan over 24 places")
    ex = load_experiment("remark_sharp")
    assert len(ex.places) == 24
    first = reduction_injectivity_scan(ex.reduction_gamma, ex.places, ex.reduce_B)
    second = reduction_injectivity_scan(ex.reduction_gamma, ex.places, ex.reduce_B, jobs=2)
    key = lambda rep: [(str(res.place), res.status, res.reduced_size) for res in rep.results]
    assert key(first) == key(second)
    bad = [str(res.place) for res in first.non_injective]
    assert bad == [str(res.place) for res in second.non_injective]
    assert len(bad) < 24
    with capsys.disabled():
        print(f"\n  non-injective places: {len(bad)} of {len(ex.places)}")


# 11 ----------------------------------------------------------------------------

PROPERTY_SUITES = [
    test_ore.test_ring_axioms,
    test_ore.test_evaluation_is_composition,
    test_ore.test_deg_and_ord_are_additive,
    test_ore.test_right_division_round_trip,
    test_drinfeld.test_phi_is_a_ring_homomorphism,
]

_suite_time = []


@pytest.mark.parametrize("prop", PROPERTY_SUITES, ids=lambda fn: fn.__name__)
def test_property_suites_at_200_cases(prop, record_property):
    record_property("criterion", "11. property suites, 200 cases each")
    clock = Clock()
    settings(max_examples=200, database=None)(prop)()
    _suite_time.append(clock.elapsed)
    assert sum(_suite_time) < 60.0
