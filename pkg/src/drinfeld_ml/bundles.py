"""Shipped experiment bundles with expected results (regression mode)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .basefield.poly import Poly
from .drinfeld import format_fq_poly
from .experiment import load_descriptor, load_experiment
from .mordell import (
    CosetDecomposition,
    CosetPart,
    format_label,
    format_point,
    intersect,
    invariance_exponent,
    verify_decomposition,
)
from .ore import OrePoly, ore_rdiv
from .report import Report, _plain
from .sharp_endo import (
    commutation_exponent,
    frobenius_orbit_length,
    is_endomorphism,
    skew_exponent,
    verify_e35_obstruction,
)


@dataclass
class BundleRun:
    name: str
    report: Report
    failures: list = field(default_factory=list)
    figures: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def check(self, key, actual, expected):
        passed = actual == expected
        shown, want = _plain(actual), _plain(expected)
        self.report.add("CHECKS", key, f"{shown} (expected {want}) {'PASS' if passed else 'FAIL'}")
        if not passed:
            self.failures.append(key)


def _lambdas(spec, degree):
    """Constants of F_{q^degree} outside F_q, as host elements."""
    gf = spec.gf
    return [spec.raw_const(v) for v in gf.subfield_elements(spec.e * degree) if not spec.in_fq(spec.raw_const(v))]


def _example_lambda(run, preset, lam_degree, even_power, e35):
    d = load_descriptor(preset)
    spec, M, f = d.spec, d.module, d.extra_ore("f")
    rep = run.report
    rep.add("MODULE", "phi_t", M.phi_t)
    rep.add("MODULE", "f", f)
    one = OrePoly.one(spec)
    quo, rem = ore_rdiv(M.phi_t, one + f)
    run.check("phi_t_equals_f_times_1_plus_f", quo == f and rem.is_zero(), True)
    run.check("f_separable", f.is_separable(), False)
    run.check("1_plus_f_separable", (one + f).is_separable(), True)
    run.check("f_is_endomorphism", is_endomorphism(M, f), True)
    lams = _lambdas(spec, lam_degree)
    run.check(f"skew_law_all_{len(lams)}_lambdas", all(skew_exponent(f, x) == 1 for x in lams), True)
    fk = f ** even_power
    run.check(
        f"f{even_power}_commutes_with_all_lambdas",
        all(fk * OrePoly.const(spec, x) == OrePoly.const(spec, x) * fk for x in lams),
        True,
    )
    lam = lams[0]
    rep.add("MODULE", "lambda", lam)
    rep.add("MODULE", "lambda_orbit_length", frobenius_orbit_length(spec, lam))
    run.check("lambda_is_endomorphism", is_endomorphism(M, lam), False)
    for n in e35:
        r = verify_e35_obstruction(f, lam, n)
        rep.add("E35", f"n{n}_binomial", f"C({2 * n}, {r.power}) mod {r.p} is {r.binomial}")
        rep.add("E35", f"n{n}_commutator_terms", sum(1 for c in r.commutator.coeffs if not c.is_zero()))
        run.check(f"e35_fails_n{n}", bool(r), True)
    for n in range(1, 4):
        fn = M.phi_action(Poly.monomial(spec.gf, n))
        run.check(f"phi_t{n}_equals_f{n}_times_1_plus_f_power{n}", fn == f ** n * (one + f) ** n, True)
    run.check("commutation_exponent_nmax6", commutation_exponent(M, lam, 6), None)


def bundle_example_lambda(run):
    _example_lambda(run, "example_lambda", 2, 2, (1, 2, 3))


def bundle_example_lambda_p2(run):
    _example_lambda(run, "example_lambda_p2", 3, 3, ())


def bundle_remark_sharp(run):
    ex = load_experiment("remark_sharp")
    M = ex.descriptor.module
    spec = M.spec
    lam = spec.const(spec.gf.gen)
    rep = run.report
    rep.add("MODULE", "phi_t", M.phi_t)
    run.check("commutation_exponent", commutation_exponent(M, lam, 8), 2)
    inv = invariance_exponent(ex.variety, M, 8)
    run.check("invariance_exponent", inv.exponent, 2)
    counts = []
    for B in (2, 4, 6):
        counts.append(len(intersect(ex.variety, ex.gamma, B)))
    run.check("intersection_sizes_B2_B4_B6", tuple(counts), (9, 27, 81))
    run.figures["growth"] = ((2, 4, 6), [ex.gamma.count_bound(B) for B in (2, 4, 6)], counts)
    good = verify_decomposition(ex.variety, ex.gamma, ex.decomposition, 6)
    run.check("decomposition_n0_2_B6", bool(good), True)
    part = ex.decomposition.parts[0]
    bad = verify_decomposition(
        ex.variety, ex.gamma, CosetDecomposition((CosetPart(part.translate, part.generators, 1),)), 6
    )
    run.check("decomposition_n0_1_B6", bool(bad), False)
    if bad.outside_x:
        pt, _, label = bad.outside_x[0]
        rep.add("DECOMPOSITION", "n0_1_witness_a", format_label(label))
        rep.add("DECOMPOSITION", "n0_1_witness_point", format_point(pt))


def bundle_remark_important(run):
    ex = load_experiment("remark_important")
    Mu = ex.descriptor.module
    rep = run.report
    rep.add("MODULE", "phi_u", Mu.phi_t)
    rep.add("MODULE", "u", format_fq_poly(Poly(Mu.spec.gf, {1: 1, 2: 1})))
    inv = invariance_exponent(ex.variety, Mu, 6)
    run.check("invariance_exponent_phi_u_nmax6", inv.exponent, None)
    sizes = [len(intersect(ex.variety, ex.gamma, B)) for B in (4, 6)]
    run.check("intersection_grows_B4_to_B6", sizes[1] > sizes[0], True)
    rep.add("INTERSECTION", "sizes_B4_B6", tuple(sizes))
    run.figures["growth"] = ((4, 6), [ex.gamma.count_bound(B) for B in (4, 6)], sizes)


BUNDLES = {
    "example_lambda": bundle_example_lambda,
    "example_lambda_p2": bundle_example_lambda_p2,
    "remark_sharp": bundle_remark_sharp,
    "remark_important": bundle_remark_important,
}


def run_bundle(name):
    if name not in BUNDLES:
        raise KeyError(name)
    run = BundleRun(name, Report(name))
    BUNDLES[name](run)
    run.report.add("SUMMARY", "bundle", name)
    run.report.add("SUMMARY", "checks_failed", len(run.failures))
    run.report.add("SUMMARY", "status", "PASS" if run.ok else "FAIL")
    return run
