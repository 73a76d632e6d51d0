"""Drinfeld modules phi: F_q[t] -> K{tau} determined by phi_t."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .basefield.gf import FFElem
from .basefield.poly import Poly, format_poly
from .basefield.ratfunc import RatFunc
from .basefield.spec import FINITE, RATFUNC, specialize
from .errors import (
    BadReduction,
    EnumerationTooLarge,
    ModeMismatch,
    PreconditionViolated,
    ZeroAnnihilator,
)
from .ore import OrePoly, as_linear_map, ore_rdiv, ord_tau, parse_ore, search_field
from .parsing import RingAlgebra, parse_with
from . import linalg

GENERIC = "generic"
FINITE_CHAR = "finite"

POINT_LIMIT = 10 ** 6
DEFAULT_N_MAX = 12


# --- F_q[t] ----------------------------------------------------------------

def fq_poly(spec, coeffs):
    """Element of F_q[t] from low-to-high coefficients (Python ints or raw F_q elements)."""
    gf = spec.gf
    terms = {}
    for i, c in enumerate(coeffs):
        v = c.v if isinstance(c, FFElem) else gf.from_int(c)
        if v:
            terms[i] = v
    return _check_fq(spec, Poly(gf, terms))


def _check_fq(spec, a):
    for c in a.terms.values():
        if not spec.gf.in_subfield(c, spec.e):
            raise PreconditionViolated(f"coefficient {spec.gf.format(c)} of {a} is not in F_q")
    return a


class _FqPolyAlgebra(RingAlgebra):
    def __init__(self, spec):
        self.spec = spec
        self.gf = spec.gf

    def num(self, n):
        return Poly.const(self.gf, self.gf.from_int(n))

    def sym(self, name):
        if name == "t":
            return Poly.monomial(self.gf, 1)
        if name == "g":
            return Poly.const(self.gf, self.gf.gen.v)
        raise ValueError(f"unknown symbol {name!r} in an element of F_q[t]")

    def div(self, a, b):
        if not b.is_constant() or b.is_zero():
            raise ValueError("elements of F_q[t] can only be divided by nonzero constants")
        return a.scale(self.gf.inv(b.coeff(0)))

    def pow(self, a, n):
        if n < 0:
            raise ValueError("negative powers are not in F_q[t]")
        return a ** n


def parse_fq_poly(text, spec):
    """Parse an element of A = F_q[t], e.g. ``t^2 - 1``."""
    a = parse_with(text, _FqPolyAlgebra(spec))
    return _check_fq(spec, a)


def format_fq_poly(a):
    return format_poly(a, "t")


def minimal_polynomial(spec, c):
    """Minimal polynomial over F_q of the constant c, monic, as an element of F_q[t]."""
    gf = spec.gf
    conj = []
    x = c.v
    while x not in conj:
        conj.append(x)
        x = gf.frob(x, spec.e)
    out = Poly.const(gf, 1)
    for r in conj:
        out = out * Poly(gf, {1: 1, 0: gf.neg(r)})
    return _check_fq(spec, out)


# --- the module ------------------------------------------------------------

@dataclass(frozen=True)
class Characteristic:
    """GENERIC, or FINITE with generator pi of ker(i) and height ord_tau(phi_pi) / deg(pi)."""

    kind: str
    generator: Poly | None = None
    height: int | None = None

    def __repr__(self):
        if self.kind == GENERIC:
            return "GENERIC"
        return f"FINITE(p = ({format_fq_poly(self.generator)}), height {self.height})"


class DrinfeldModule:
    def __init__(self, phi_t, name=None):
        if phi_t.deg < 1:
            raise PreconditionViolated("phi_t must have tau-degree >= 1")
        if phi_t.twist != phi_t.spec.e:
            raise PreconditionViolated("phi_t must be written in tau = q-Frobenius")
        self.spec = phi_t.spec
        self.phi_t = phi_t
        self.name = name
        self._cache = {}
        self._lock = threading.Lock()
        self._char = None

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, text, spec, name=None):
        return cls(parse_ore(text, spec), name)

    @property
    def rank(self):
        return self.phi_t.deg

    @property
    def i_t(self):
        return self.phi_t.coeff(0)

    @property
    def characteristic(self):
        if self._char is None:
            self._char = self._classify()
        return self._char

    def _classify(self):
        c = self.i_t
        if isinstance(c, RatFunc):
            if not c.is_constant():
                return Characteristic(GENERIC)
            c = c.constant_value()
        pi = minimal_polynomial(self.spec, c)
        h = ord_tau(self.phi_action(pi))
        return Characteristic(FINITE_CHAR, pi, h // pi.deg)

    @property
    def is_finite_characteristic(self):
        return self.characteristic.kind == FINITE_CHAR

    def _a(self, a):
        if isinstance(a, Poly):
            return _check_fq(self.spec, a)
        if isinstance(a, int):
            return fq_poly(self.spec, [a])
        if isinstance(a, str):
            return parse_fq_poly(a, self.spec)
        raise TypeError(f"cannot read {a!r} as an element of F_q[t]")

    def phi_action(self, a):
        """phi_a by Horner's rule in K{tau}."""
        a = self._a(a)
        hit = self._cache.get(a)
        if hit is not None:
            return hit
        spec = self.spec
        result = OrePoly.zero(spec)
        for j in range(a.deg, -1, -1):
            result = result * self.phi_t
            cj = a.coeff(j)
            if cj:
                result = result + OrePoly.const(spec, spec.raw_const(cj))
        with self._lock:
            self._cache.setdefault(a, result)
        return result

    def substitute(self, u, name=None):
        """The module t -> phi_u (a Drinfeld module whenever deg u >= 1)."""
        u = self._a(u)
        if u.deg < 1:
            raise PreconditionViolated("u must be nonconstant")
        return DrinfeldModule(self.phi_action(u), name)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"DrinfeldModule({label}phi_t = {self.phi_t} over {self.spec.describe()})"


def phi_action(M, a):
    return M.phi_action(a)


# --- torsion -------------------------------------------------------------

@dataclass(frozen=True)
class TorsionSet:
    """phi[a] inside the search field F_{q^{mN}}; points are raw ints of that field."""

    annihilator: object
    N: int
    field: object
    dimension: int
    points: tuple = field(repr=False)

    @property
    def size(self):
        return len(self.points)

    def elements(self):
        return [FFElem(self.field, v) for v in self.points]

    def __contains__(self, x):
        v = x.v if isinstance(x, FFElem) else x
        return v in set(self.points)


def _require_finite(spec, what):
    if spec.mode != FINITE:
        raise ModeMismatch(f"{what} requires FINITE mode")


def _kernel_points(f, N):
    p = f.spec.p
    basis = linalg.nullspace(as_linear_map(f, N), p)
    if p ** len(basis) > POINT_LIMIT:
        raise EnumerationTooLarge(f"kernel has {p}^{len(basis)} points")
    return len(basis), tuple(linalg.span_points(basis, p, search_field(f.spec, N).k))


def torsion(M, a, N):
    """phi[a] intersected with F_{q^{mN}}."""
    _require_finite(M.spec, "torsion")
    a = M._a(a)
    if a.is_zero():
        raise ZeroAnnihilator("phi[0] is the whole field")
    dim, pts = _kernel_points(M.phi_action(a), N)
    return TorsionSet(a, N, search_field(M.spec, N), dim, pts)


def separable_part(f):
    """s with f = s * tau^h, h = ord_tau(f); s is separable and |ker s| = |ker f| on finite fields."""
    h = ord_tau(f)
    return OrePoly(f.spec, f.coeffs[h:], f.twist), h


def splits_over(f, N):
    """True iff every root of f lies in F_{q^{mN}}: s right-divides tau^{mN} - 1."""
    _require_finite(f.spec, "splitting test")
    s, _ = separable_part(f)
    spec = f.spec
    d = spec.m * N
    frob_minus_one = OrePoly.tau(spec, d) - OrePoly.one(spec)
    return ore_rdiv(frob_minus_one, s)[1].is_zero()


@dataclass(frozen=True)
class SplittingSearch:
    """Result of the doubling search for a field containing all of phi[a]."""

    N: int
    certified: bool
    tried: tuple
    dimensions: tuple


def splitting_search(M, a, n_max=DEFAULT_N_MAX):
    """Try N = 1, 2, 4, ... (and finally n_max) until the kernel of phi_a is certified split."""
    _require_finite(M.spec, "splitting search")
    if M._a(a).is_zero():
        raise ZeroAnnihilator("torsion of a = 0 is the whole field")
    f = M.phi_action(a)
    tried, dims = [], []
    N = 1
    while True:
        tried.append(N)
        dims.append(linalg.rank(linalg.nullspace(as_linear_map(f, N), M.spec.p), M.spec.p))
        if splits_over(f, N):
            return SplittingSearch(N, True, tuple(tried), tuple(dims))
        if N >= n_max:
            return SplittingSearch(N, False, tuple(tried), tuple(dims))
        N = min(2 * N, n_max)


def splitting_degree(M, a, n_max=DEFAULT_N_MAX):
    """Smallest N <= n_max with phi[a] inside F_{q^{mN}}, or None."""
    _require_finite(M.spec, "splitting degree")
    f = M.phi_action(a)
    return next((N for N in range(1, n_max + 1) if splits_over(f, N)), None)


def polys_up_to(spec, deg_bound, monic=True):
    """Nonzero elements of F_q[t] of degree <= deg_bound (monic ones by default)."""
    fq = spec.fq_raw()
    nonzero = [c for c in fq if c]
    out = []
    for d in range(deg_bound + 1):
        lows = [()]
        for _ in range(d):
            lows = [lo + (c,) for lo in lows for c in fq]
        leads = [1] if monic else nonzero
        for lo in lows:
            for lead in leads:
                terms = {i: c for i, c in enumerate(lo) if c}
                terms[d] = lead
                out.append(Poly(spec.gf, terms))
    return out


def prime_to_char_torsion(M, N, deg_bound=3):
    """Union of phi[a] in F_{q^{mN}} over a not in the characteristic ideal, deg a <= deg_bound."""
    _require_finite(M.spec, "prime_to_char_torsion")
    pi = M.characteristic.generator
    big = search_field(M.spec, N)
    points = {0}
    for a in polys_up_to(M.spec, deg_bound):
        if a.deg == 0 or (a % pi).is_zero():
            continue
        points.update(_kernel_points(M.phi_action(a), N)[1])
    pts = tuple(sorted(points))
    return TorsionSet(("prime-to-char", deg_bound), N, big, None, pts)


def t_power_torsion_profile(M, n_max, N):
    """Kernel dimensions of phi_{t^n} on F_{q^{mN}}, n = 1..n_max (a search-field probe only)."""
    _require_finite(M.spec, "torsion profile")
    dims = []
    for n in range(1, n_max + 1):
        f = M.phi_action(Poly.monomial(M.spec.gf, n))
        dims.append(len(linalg.nullspace(as_linear_map(f, N), M.spec.p)))
    return dims


# --- reduction -------------------------------------------------------------

def good_reduction_at(M, P):
    if M.spec.mode != RATFUNC:
        raise ModeMismatch("good reduction is defined for RATFUNC modules")
    c = P.center.v
    if not all(x.integral_at(c) for x in M.phi_t.coeffs):
        return False
    return M.phi_t.lc.evaluate(c) != 0


def reduce_at(M, P):
    """The FINITE-mode module obtained by specializing phi_t at P."""
    if not good_reduction_at(M, P):
        raise BadReduction(f"{M.phi_t} has bad reduction at {P}")
    fin = M.spec.with_mode(FINITE)
    coeffs = [specialize(c, P) for c in M.phi_t.coeffs]
    return DrinfeldModule(OrePoly(fin, coeffs), M.name)


def reduce_ore(f, P):
    fin = f.spec.with_mode(FINITE)
    return OrePoly(fin, [specialize(c, P) for c in f.coeffs], f.twist)


# --- the Claim: multiples in F_q[t^m] -------------------------------------

def divisible_by_tm(c, m, spec):
    """Monic d in F_q[t^m] of least degree with c | d."""
    if c.is_zero():
        raise PreconditionViolated("c must be nonzero")
    if m < 1:
        raise PreconditionViolated("m must be >= 1")
    gf = spec.gf
    n = c.deg
    zero, one = FFElem(gf, 0), FFElem(gf, 1)
    residues = []
    for K in range(n + 1):
        r = Poly.monomial(gf, K * m) % c
        residues.append([FFElem(gf, r.coeff(j)) for j in range(max(n, 1))])
        rows = [[residues[k][j] for k in range(K + 1)] for j in range(max(n, 1))]
        kernel = linalg.nullspace_generic(rows, K + 1, zero, one)
        if kernel:
            v = kernel[0]
            d = Poly(gf, {k * m: x.v for k, x in enumerate(v) if not x.is_zero()})
            return d.monic()
    raise AssertionError("pigeonhole guarantees a dependency")  # pragma: no cover


__all__ = [
    "GENERIC", "FINITE_CHAR", "Characteristic", "DrinfeldModule", "TorsionSet", "SplittingSearch",
    "phi_action", "torsion", "splits_over", "splitting_search", "splitting_degree",
    "separable_part", "prime_to_char_torsion", "t_power_torsion_profile", "good_reduction_at",
    "reduce_at", "reduce_ore", "divisible_by_tm", "fq_poly", "parse_fq_poly", "format_fq_poly",
    "minimal_polynomial", "polys_up_to",
]
