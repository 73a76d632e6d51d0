"""Command-line front end: ``drinfeld-ml <subcommand> ...``.

Exit status: 0 success, 1 mathematical failure (failed regression or
decomposition), 2 input error or violated precondition.
"""

from __future__ import annotations

import argparse
import sys

from .basefield.poly import Poly
from .basefield.spec import FINITE, RATFUNC, FieldSpec, frobenius, pth_root, specialize
from .bundles import BUNDLES, run_bundle
from .drinfeld import (
    format_fq_poly,
    parse_fq_poly,
    prime_to_char_torsion,
    reduce_at,
    reduce_ore,
    splits_over,
    splitting_search,
    torsion,
)
from .errors import DrinfeldError, ParseError
from .experiment import load_descriptor, load_experiment
from .lambda_calc import (
    clearance_exponent,
    lambda_decompose,
    lp_compose_ore,
    parse_lambda,
)
from .mordell import (
    format_label,
    format_point,
    intersect,
    invariance_exponent,
    reduction_injectivity_scan,
    verify_decomposition,
)
from .ore import as_linear_map, conjugate, ore_eval, ore_rdiv, ord_tau, parse_ore
from .parsing import parse_element
from .report import JSON_LINES, TEXT, Report
from .sharp_endo import (
    commutation_exponent,
    is_endomorphism,
    sharp,
    sharp_compare,
    skew_exponent,
)

SHOW_POINTS = 81


class MathematicalFailure(Exception):
    pass


def _field_spec(args):
    if args.module:
        return load_descriptor(args.module).spec
    if args.p is None:
        raise ParseError("give --module or --p", 1, 1)
    return FieldSpec(args.p, args.e, args.m, None, args.mode)


def _plot(args, fn, *a, **kw):
    if args.plot_dir:
        return fn(*a, plot_dir=args.plot_dir, **kw)
    return None


def _plotting():
    from . import plotting

    return plotting


# --- subcommands -------------------------------------------------------------

def cmd_eval(args, rep):
    spec = _field_spec(args)
    x = parse_element(args.expr, spec)
    rep.add("FIELD", "spec", spec.describe())
    rep.add("EVAL", "value", x)
    if args.frobenius is not None:
        rep.add("EVAL", f"frobenius_{args.frobenius}", frobenius(x, args.frobenius, spec))
    if args.pth_root:
        rep.add("EVAL", "pth_root", pth_root(x))
    if args.at is not None:
        c = parse_element(args.at, spec.with_mode(FINITE))
        rep.add("EVAL", "specialized", specialize(x, spec.place(c)))
    if args.decompose:
        for i, part in enumerate(lambda_decompose(x)):
            rep.add("LAMBDA", f"lambda_{i}", part)


def cmd_ore(args, rep):
    spec = _field_spec(args)
    f = parse_ore(args.f, spec)
    rep.add("ORE", "f", f)
    rep.add("ORE", "deg", f.deg)
    if not f.is_zero():
        rep.add("ORE", "ord_tau", ord_tau(f))
        rep.add("ORE", "separable", f.is_separable())
    if args.g:
        g = parse_ore(args.g, spec)
        rep.add("ORE", "g", g)
        rep.add("ORE", "f*g", f * g)
        quo, rem = ore_rdiv(f, g)
        rep.add("ORE", "rdiv_quotient", quo)
        rep.add("ORE", "rdiv_remainder", rem)
    if args.x:
        rep.add("ORE", "f(x)", ore_eval(f, parse_element(args.x, spec)))
    if args.gamma:
        rep.add("ORE", "conjugate", conjugate(f, parse_element(args.gamma, spec)))
    if args.N:
        A = as_linear_map(f, args.N)
        rep.add("MATRIX", "size", f"{A.shape[0]}x{A.shape[1]}")
        for i, row in enumerate(A.tolist()):
            rep.add("MATRIX", f"row_{i}", " ".join(str(v) for v in row))


def cmd_torsion(args, rep):
    d = load_descriptor(args.module)
    M = d.module
    rep.add("MODULE", "phi_t", M.phi_t)
    rep.add("MODULE", "characteristic", M.characteristic)
    if args.prime_to_char:
        N = args.N or 1
        T = prime_to_char_torsion(M, N, args.deg_bound)
        rep.add("TORSION", "set", f"prime-to-characteristic, deg a <= {args.deg_bound}")
        rep.add("TORSION", "N", N)
        rep.add("TORSION", "size", T.size)
        _points(rep, T)
        return
    a = parse_fq_poly(args.a, d.spec)
    search = splitting_search(M, a, args.nmax)
    N = args.N or search.N
    T = torsion(M, a, N)
    f = M.phi_action(a)
    rep.add("TORSION", "a", format_fq_poly(a))
    rep.add("TORSION", "phi_a", f)
    rep.add("TORSION", "N", N)
    rep.add("TORSION", "dimension_over_F_p", T.dimension)
    rep.add("TORSION", "size", T.size)
    rep.add("TORSION", "split_in_search_field", splits_over(f, N))
    rep.add("TORSION", "expected_full_size", d.spec.q ** (f.deg - ord_tau(f)))
    rep.add("SPLITTING", "tried", " ".join(map(str, search.tried)))
    rep.add("SPLITTING", "kernel_dims", " ".join(map(str, search.dimensions)))
    rep.add("SPLITTING", "certified", search.certified)
    rep.add("SPLITTING", "N", search.N)
    _points(rep, T)
    fig = _plot(args, _plotting().plot_kernel_dims, list(search.tried), list(search.dimensions))
    if fig:
        rep.add("FIGURES", "kernel_dims", fig)


def _points(rep, T):
    if T.size <= SHOW_POINTS:
        rep.add("TORSION", "points", "{" + ", ".join(T.field.format(v) for v in T.points) + "}")


def cmd_sharp(args, rep):
    d = load_descriptor(args.module)
    M = d.module
    rep.add("MODULE", "phi_t", M.phi_t)
    place = None
    if args.place is not None:
        place = d.spec.place(parse_element(args.place, d.spec.with_mode(FINITE)))
        M = reduce_at(M, place)
        rep.add("MODULE", "place", f"t -> {place.center}")
        rep.add("MODULE", "reduced_phi_t", M.phi_t)
    rep.add("MODULE", "characteristic", M.characteristic)
    S = sharp(M, args.N)
    rep.add("SHARP", "N", args.N)
    rep.add("SHARP", "chain_generator", format_fq_poly(S.generator))
    rep.add("SHARP", "chain_dims", " ".join(map(str, S.chain_dims)))
    rep.add("SHARP", "stabilized_at", S.stabilized_at)
    rep.add("SHARP", "dimension_over_F_p", S.dimension)
    rep.add("SHARP", "size", S.size)
    rep.add("SHARP", "trivial_full", S.trivial_full)
    if args.f and args.g:
        f, g = parse_ore(args.f, d.spec), parse_ore(args.g, d.spec)
        if place is not None:
            f, g = reduce_ore(f, place), reduce_ore(g, place)
        rep.add("COMPARE", "f", f)
        rep.add("COMPARE", "g", g)
        rep.add("COMPARE", "result", sharp_compare(f, g, args.N))
    fig = _plot(args, _plotting().plot_image_chain, list(S.chain_dims))
    if fig:
        rep.add("FIGURES", "image_chain", fig)


def cmd_commute(args, rep):
    d = load_descriptor(args.module)
    M, spec = d.module, d.spec
    psi = parse_ore(args.psi, spec)
    rep.add("MODULE", "phi_t", M.phi_t)
    rep.add("COMMUTE", "psi", psi)
    rep.add("COMMUTE", "endomorphism", is_endomorphism(M, psi))
    if psi.is_constant() and not psi.is_zero():
        rep.add("COMMUTE", "skew_exponent", skew_exponent(M.phi_t, psi.coeff(0)))
    n = commutation_exponent(M, psi, args.nmax)
    rep.add("COMMUTE", "nmax", args.nmax)
    rep.add("COMMUTE", "n", n)
    if n is not None:
        phin = M.phi_action(Poly.monomial(spec.gf, n))
        rep.add("COMMUTE", "witness", f"psi * phi_(t^{n}) = phi_(t^{n}) * psi = {psi * phin}")
    sizes = []
    for k in range(1, args.nmax + 1):
        phik = M.phi_action(Poly.monomial(spec.gf, k))
        comm = psi * phik - phik * psi
        sizes.append(sum(1 for c in comm.coeffs if not c.is_zero()))
    rep.add("COMMUTE", "commutator_terms", " ".join(map(str, sizes)))
    fig = _plot(args, _plotting().plot_commutators, list(range(1, args.nmax + 1)), sizes)
    if fig:
        rep.add("FIGURES", "commutators", fig)


def cmd_lambda(args, rep):
    spec = _field_spec(args)
    if args.decompose:
        x = parse_element(args.decompose, spec)
        for i, part in enumerate(lambda_decompose(x)):
            rep.add("LAMBDA", f"lambda_{i}", part)
    if args.psi:
        psi = parse_lambda(args.psi, spec)
        rep.add("LAMBDA", "psi", psi)
        if args.compose:
            g = parse_ore(args.compose, spec, twist=1 if args.prime_twist else None)
            out = lp_compose_ore(psi, g)
            rep.add("LAMBDA", "composed", out)
            rep.add("LAMBDA", "composed_is_ore", out.is_ore())
        rep.add("LAMBDA", "clearance_exponent", clearance_exponent(psi, args.nmax))


def _experiment(args):
    ex = load_experiment(args.experiment)
    if args.B is not None:
        ex.B = args.B
        ex.bounds = sorted(set(b for b in ex.bounds if b <= args.B) | {args.B})
    return ex


def cmd_intersect(args, rep):
    ex = _experiment(args)
    gamma, X = ex.gamma, ex.variety
    rep.add("ENUMERATION", "phi_t", gamma.module.phi_t)
    rep.add("ENUMERATION", "generators", " ".join(format_point(p) for p in gamma.generators))
    sizes, inter = [], []
    for B in ex.bounds:
        pts = gamma.enumerate(B)
        hits = intersect(X, gamma, B, jobs=args.jobs)
        sizes.append(len(pts))
        inter.append(len(hits))
        rep.add("ENUMERATION", f"size_B{B}", len(pts))
        rep.add("INTERSECTION", f"size_B{B}", len(hits))
    rep.add("INTERSECTION", "variety", X)
    module = ex.descriptor.module
    inv = invariance_exponent(X, module, ex.nmax, samples=hits)
    rep.add("INVARIANCE", "module_phi_t", module.phi_t)
    rep.add("INVARIANCE", "n", inv.exponent)
    rep.add("INVARIANCE", "status", inv.status)
    rep.add("INVARIANCE", "mode", inv.mode)
    rep.add("INVARIANCE", "nmax", inv.n_max)
    failed = False
    if ex.decomposition is not None:
        res = verify_decomposition(X, gamma, ex.decomposition, ex.B)
        rep.add("DECOMPOSITION", "B", ex.B)
        rep.add("DECOMPOSITION", "parts", len(ex.decomposition.parts))
        rep.add("DECOMPOSITION", "periods", " ".join(str(p.period) for p in ex.decomposition.parts))
        rep.add("DECOMPOSITION", "ok", res.ok)
        rep.add("DECOMPOSITION", "outside_x", len(res.outside_x))
        rep.add("DECOMPOSITION", "uncovered", len(res.uncovered))
        if res.outside_x:
            pt, idx, label = res.outside_x[0]
            rep.add("DECOMPOSITION", "witness_a", format_label(label))
            rep.add("DECOMPOSITION", "witness_point", format_point(pt))
        failed = not res.ok
    if ex.places:
        _scan(args, ex, rep)
    fig = _plot(args, _plotting().plot_growth, ex.bounds, sizes, inter)
    if fig:
        rep.add("FIGURES", "growth", fig)
    if failed:
        raise MathematicalFailure("decomposition does not match the intersection")


def _scan(args, ex, rep):
    scan = reduction_injectivity_scan(ex.reduction_gamma, ex.places, ex.reduce_B, jobs=args.jobs)
    rep.add("REDUCTION", "B", ex.reduce_B)
    rep.add("REDUCTION", "host", ex.reduction_gamma.spec.describe())
    rep.add("REDUCTION", "points", scan.total_points)
    rep.add("REDUCTION", "places", len(scan.results))
    rep.add("REDUCTION", "injective", len(scan.injective))
    rep.add("REDUCTION", "non_injective", len(scan.non_injective))
    rep.add("REDUCTION", "skipped", len(scan.skipped))
    for i, r in enumerate(scan.results):
        c = ex.reduction_gamma.spec.gf.format(r.place.center.v)
        detail = r.status if not r.reason else f"{r.status} ({r.reason})"
        rep.add("REDUCTION", f"place_{i}", f"t -> {c}: {detail}, image {r.reduced_size}")
    fig = _plot(args, _plotting().plot_reduction, scan)
    if fig:
        rep.add("FIGURES", "reduction", fig)
    return scan


def cmd_reduce(args, rep):
    if args.experiment:
        ex = _experiment(args)
        if not ex.places:
            raise ParseError("the experiment lists no places", 1, 1)
        _scan(args, ex, rep)
        return
    d = load_descriptor(args.module)
    spec = d.spec
    c = parse_element(args.place, spec.with_mode(FINITE))
    R = reduce_at(d.module, spec.place(c))
    rep.add("REDUCE", "phi_t", d.module.phi_t)
    rep.add("REDUCE", "place", f"t -> {c}")
    rep.add("REDUCE", "reduced_phi_t", R.phi_t)
    rep.add("REDUCE", "characteristic", R.characteristic)


def cmd_bundle(args, rep):
    if args.list or not args.name:
        for name in sorted(BUNDLES):
            rep.add("BUNDLES", name, "available")
        return
    if args.name not in BUNDLES:
        raise ParseError(f"unknown bundle {args.name!r}; choose from {', '.join(sorted(BUNDLES))}", 1, 1)
    run = run_bundle(args.name)
    for sec, items in run.report.sections.items():
        for k, v in items:
            rep.add(sec, k, v)
    growth = run.figures.get("growth")
    if growth:
        fig = _plot(args, _plotting().plot_growth, *growth, name=f"{args.name}_growth.png")
        if fig:
            rep.add("FIGURES", "growth", fig)
    if not run.ok:
        raise MathematicalFailure(f"bundle {args.name} failed: {', '.join(run.failures)}")


# --- parser ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[TEXT, JSON_LINES], default=TEXT)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration-heavy work")
    common.add_argument("--plot-dir", help="write PNG figures into this directory")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--module", help="descriptor file or preset name")
    field.add_argument("--p", type=int)
    field.add_argument("--e", type=int, default=1)
    field.add_argument("--m", type=int, default=1)
    field.add_argument("--mode", choices=[FINITE, RATFUNC], default=RATFUNC)

    parser = argparse.ArgumentParser(prog="drinfeld-ml", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, field], help="evaluate a field element")
    p.add_argument("--expr", required=True)
    p.add_argument("--frobenius", type=int)
    p.add_argument("--pth-root", action="store_true")
    p.add_argument("--at", help="specialize at t -> AT")
    p.add_argument("--decompose", action="store_true", help="lambda-decomposition")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ore", parents=[common, field], help="Ore polynomial arithmetic")
    p.add_argument("--f", required=True)
    p.add_argument("--g")
    p.add_argument("--x", help="evaluate f at X")
    p.add_argument("--gamma", help="conjugate f by GAMMA")
    p.add_argument("--N", type=int, help="print the matrix of f on F_{q^{mN}}")
    p.set_defaults(func=cmd_ore)

    p = sub.add_parser("torsion", parents=[common], help="phi[a] in a finite search field")
    p.add_argument("--module", required=True)
    p.add_argument("--a", default="t")
    p.add_argument("--N", type=int)
    p.add_argument("--nmax", type=int, default=12, help="cap for the splitting search")
    p.add_argument("--prime-to-char", action="store_true")
    p.add_argument("--deg-bound", type=int, default=3)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("sharp", parents=[common], help="stabilized image chain")
    p.add_argument("--module", required=True)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--place", help="reduce a RATFUNC module at t -> PLACE first")
    p.add_argument("--f")
    p.add_argument("--g")
    p.set_defaults(func=cmd_sharp)

    p = sub.add_parser("commute", parents=[common], help="commutation exponent")
    p.add_argument("--module", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--nmax", type=int, default=8)
    p.set_defaults(func=cmd_commute)

    p = sub.add_parser("lambda", parents=[common, field], help="lambda-functions and lambda-polynomials")
    p.add_argument("--psi")
    p.add_argument("--compose", help="Ore polynomial to compose on the right")
    p.add_argument("--prime-twist", action="store_true", help="read T in --compose as tau_0")
    p.add_argument("--decompose")
    p.add_argument("--nmax", type=int, default=8)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("intersect", parents=[common], help="run an experiment file")
    p.add_argument("--experiment", required=True)
    p.add_argument("--B", type=int)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("reduce", parents=[common], help="reduction at places")
    p.add_argument("--module")
    p.add_argument("--place")
    p.add_argument("--experiment")
    p.add_argument("--B", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bundle", parents=[common], help="run a shipped bundle in regression mode")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_bundle)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reduce" and not args.experiment and not (args.module and args.place):
        parser.error("reduce needs --experiment, or --module and --place")
    rep = Report(args.command)
    status = 0
    try:
        args.func(args, rep)
    except MathematicalFailure as exc:
        rep.add("STATUS", "failure", str(exc))
        status = 1
    except (DrinfeldError, FileNotFoundError) as exc:
        rep.add("ERROR", type(exc).__name__, str(exc))
        out.write(rep.render(args.format))
        return 2
    out.write(rep.render(args.format))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
