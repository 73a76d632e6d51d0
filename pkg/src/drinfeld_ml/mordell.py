"""phi-submodules of K^g, affine varieties, and their intersections at a degree bound."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .basefield.gf import FFElem
from .basefield.poly import Poly
from .basefield.ratfunc import RatFunc
from .basefield.spec import Place, specialize
from .drinfeld import POINT_LIMIT, format_fq_poly, good_reduction_at
from .errors import BadReduction, EnumerationTooLarge, PoleAtPlace, PreconditionViolated
from .ore import OrePoly, ore_eval
from .parsing import FieldAlgebra, parse_with
from . import linalg

PROVED = "PROVED"
NOT_FOUND = "NOT_FOUND"
FALSIFIED = "FALSIFIED"
UNKNOWN = "UNKNOWN"


def point_key(pt):
    return tuple(c.sort_key() for c in pt)


def format_point(pt):
    return "(" + ", ".join(repr(c) for c in pt) + ")"


# --- multivariate polynomials ----------------------------------------------

def variable_names(g):
    if g <= 3:
        return ("x", "y", "z")[:g]
    return tuple(f"x{i + 1}" for i in range(g))


class MPoly:
    """Polynomial over the host field in g variables: exponent tuple -> coefficient."""

    __slots__ = ("spec", "g", "terms")

    def __init__(self, spec, g, terms=None):
        self.spec = spec
        self.g = g
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def const(cls, spec, g, c):
        return cls(spec, g, {(0,) * g: c})

    @classmethod
    def var(cls, spec, g, j):
        e = [0] * g
        e[j] = 1
        return cls(spec, g, {tuple(e): spec.one()})

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_linear(self):
        return self.total_degree() <= 1

    def linear_part(self):
        """(coefficients of x_1..x_g, constant term) for a polynomial of degree <= 1."""
        if not self.is_linear():
            raise PreconditionViolated("not a linear polynomial")
        zero = self.spec.zero()
        coeffs = [zero] * self.g
        const = zero
        for e, c in self.terms.items():
            if sum(e) == 0:
                const = c
            else:
                coeffs[e.index(1)] = c
        return coeffs, const

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MPoly(self.spec, self.g, out)

    def __neg__(self):
        return MPoly(self.spec, self.g, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return MPoly(self.spec, self.g, out)

    def __pow__(self, n):
        out = MPoly.const(self.spec, self.g, self.spec.one())
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, point):
        acc = self.spec.zero()
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * (x if k == 1 else x ** k)
            acc = acc + term
        return acc

    def __repr__(self):
        names = variable_names(self.g)
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = repr(c)
            if any(ch in cs for ch in "+/") or cs.startswith("-"):
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts) if parts else "0"


class _MPolyAlgebra(FieldAlgebra):
    def __init__(self, spec, g):
        super().__init__(spec)
        self.g = g
        self.names = {n: j for j, n in enumerate(variable_names(g))}
        self.names.update({f"x{j + 1}": j for j in range(g)})

    def num(self, n):
        return MPoly.const(self.spec, self.g, self.spec.const(n))

    def sym(self, name):
        if name in self.names:
            return MPoly.var(self.spec, self.g, self.names[name])
        return MPoly.const(self.spec, self.g, super().sym(name))

    def div(self, a, b):
        if b.total_degree() > 0 or not b.terms:
            raise ValueError("can only divide by a nonzero constant")
        inv = next(iter(b.terms.values())).inverse()
        return a * MPoly.const(self.spec, self.g, inv)

    def pow(self, a, n):
        if n < 0:
            if a.total_degree() == 0 and a.terms:
                return MPoly.const(self.spec, self.g, next(iter(a.terms.values())) ** n)
            raise ValueError("negative powers only for nonzero constants")
        return a ** n


def parse_mpoly(text, spec, g):
    """Parse e.g. ``y - g*x`` in the variables x, y (z) or x1, ..., xg."""
    return parse_with(text, _MPolyAlgebra(spec, g))


@dataclass(frozen=True)
class Variety:
    """Zero set of ``equations`` in affine g-space."""

    spec: object
    g: int
    equations: tuple

    @classmethod
    def parse(cls, spec, g, texts):
        return cls(spec, g, tuple(parse_mpoly(s, spec, g) for s in texts))

    def contains(self, point):
        return all(eq(point).is_zero() for eq in self.equations)

    def is_linear(self):
        return all(eq.is_linear() for eq in self.equations)

    def __repr__(self):
        eqs = ", ".join(f"{e} = 0" for e in self.equations) or "everything"
        return f"Variety({eqs})"


# --- phi-submodules ----------------------------------------------------------

def apply_ore(f, point):
    return tuple(ore_eval(f, x) for x in point)


def _add(p1, p2):
    return tuple(a + b for a, b in zip(p1, p2))


def _scale(c, pt):
    return tuple(c * x for x in pt)


class PhiSubmodule:
    """The phi-submodule of K^g generated by ``generators`` (phi acts coordinate-wise)."""

    def __init__(self, module, generators, g=None):
        self.module = module
        self.spec = module.spec
        gens = [tuple(self._coerce(x) for x in pt) for pt in generators]
        if g is None:
            if not gens:
                raise PreconditionViolated("ambient dimension needed for an empty generator list")
            g = len(gens[0])
        if any(len(pt) != g for pt in gens):
            raise PreconditionViolated("all generators must have the same length")
        self.g = g
        self.generators = tuple(gens)

    def _coerce(self, x):
        if isinstance(x, int) or (isinstance(x, FFElem) and not self.spec.is_finite):
            return self.spec.const(x)
        return x

    @property
    def zero(self):
        return (self.spec.zero(),) * self.g

    def count_bound(self, B, period=1):
        return self.spec.q ** (len(self.generators) * (B // period + 1))

    def basis_images(self, B, period=1):
        """[(i, k, phi_{t^{k*period}}(gamma_i))] for k*period <= B."""
        step = self.module.phi_action(Poly.monomial(self.spec.gf, period))
        out = []
        for i, gam in enumerate(self.generators):
            v = gam
            for k in range(B // period + 1):
                out.append((i, k * period, v))
                v = apply_ore(step, v)
        return out

    def enumerate_labeled(self, B, period=1, translate=None):
        """{point: label} for translate + sum phi_{a_i}(gamma_i), a_i in F_q[t^period], deg a_i <= B.

        The label is the tuple of a_i (one witness per point).
        """
        if B < 0:
            raise PreconditionViolated("B must be >= 0")
        if self.count_bound(B, period) > POINT_LIMIT:
            raise EnumerationTooLarge(
                f"q^(s(B+1)) = {self.count_bound(B, period)} exceeds the limit {POINT_LIMIT}"
            )
        spec = self.spec
        gf = spec.gf
        consts = [(v, spec.raw_const(v)) for v in spec.fq_raw() if v]
        zero_label = tuple(Poly(gf) for _ in self.generators)
        start = self.zero if translate is None else tuple(translate)
        points = {start: zero_label}
        for i, k, v in self.basis_images(B, period):
            multiples = [(raw, _scale(c, v)) for raw, c in consts]
            new = {}
            for pt, lab in points.items():
                for raw, cv in multiples:
                    q = _add(pt, cv)
                    if q not in points and q not in new:
                        a = lab[i] + Poly.monomial(gf, k, raw)
                        new[q] = lab[:i] + (a,) + lab[i + 1:]
            points.update(new)
        return points

    def enumerate(self, B, period=1):
        return sorted(self.enumerate_labeled(B, period), key=point_key)


def enumerate_gamma(gamma, B):
    return gamma.enumerate(B)


def _member_chunk(args):
    X, chunk = args
    return [pt for pt in chunk if X.contains(pt)]


def _chunks(seq, n):
    size = max(1, -(-len(seq) // n))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def intersect(X, gamma, B, jobs=1):
    """Points of the B-bounded enumeration of gamma lying on X, in canonical order."""
    if X.g != gamma.g:
        raise PreconditionViolated("variety and submodule live in different dimensions")
    pts = gamma.enumerate(B)
    if not X.equations:
        return pts
    if jobs <= 1 or len(pts) < 64:
        return [pt for pt in pts if X.contains(pt)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = ex.map(_member_chunk, [(X, c) for c in _chunks(pts, jobs * 4)])
        hits = [pt for part in parts for pt in part]
    return sorted(hits, key=point_key)


# --- invariance ------------------------------------------------------------

@dataclass(frozen=True)
class InvarianceResult:
    """exponent is set only when invariance under phi_{t^n} is decided symbolically."""

    exponent: int | None
    status: str
    mode: str
    n_max: int
    candidate: int | None = None

    def __repr__(self):
        n = "NONE" if self.exponent is None else self.exponent
        return f"InvarianceResult(n = {n}, status = {self.status}, mode = {self.mode})"


def _affine_structure(X):
    """(particular solution x0 or None, kernel basis) of the linear system defining X."""
    spec = X.spec
    zero, one = spec.zero(), spec.one()
    rows, rhs = [], []
    for eq in X.equations:
        coeffs, const = eq.linear_part()
        rows.append(coeffs)
        rhs.append(-const)
    if not rows:
        basis = linalg.nullspace_generic([], X.g, zero, one)
        return (zero,) * X.g, basis
    x0 = linalg.solve_generic(rows, rhs, zero, one)
    basis = linalg.nullspace_generic(rows, X.g, zero, one)
    return (None if x0 is None else tuple(x0)), basis


def preserves_linear(X, f):
    """Does x -> f(x) (coordinate-wise) map the linear variety X into itself over K^alg?"""
    spec = X.spec
    x0, basis = _affine_structure(X)
    if x0 is None:
        return True  # empty variety
    fx0 = apply_ore(f, x0)
    for eq in X.equations:
        coeffs, const = eq.linear_part()
        if not eq(fx0).is_zero():
            return False
        for v in basis:
            op = OrePoly.zero(spec)
            for c, vj in zip(coeffs, v):
                if not c.is_zero() and not vj.is_zero():
                    op = op + OrePoly.const(spec, c) * f * OrePoly.const(spec, vj)
            if not op.is_zero():
                return False
    return True


def invariance_exponent(X, M, n_max=8, samples=None):
    """Least n <= n_max with phi_{t^n}(X) inside X.

    Linear X is decided exactly.  Otherwise only ``samples`` (points of X) are
    tested: a failing n is FALSIFIED, a passing n stays UNKNOWN.
    """
    if n_max < 1:
        raise PreconditionViolated("n_max must be >= 1")
    gf = M.spec.gf
    if X.is_linear():
        for n in range(1, n_max + 1):
            if preserves_linear(X, M.phi_action(Poly.monomial(gf, n))):
                return InvarianceResult(n, PROVED, "symbolic", n_max)
        return InvarianceResult(None, NOT_FOUND, "symbolic", n_max)
    pts = [pt for pt in (samples or []) if X.contains(pt)]
    if not pts:
        return InvarianceResult(None, UNKNOWN, "sampling", n_max)
    for n in range(1, n_max + 1):
        f = M.phi_action(Poly.monomial(gf, n))
        if all(X.contains(apply_ore(f, pt)) for pt in pts):
            return InvarianceResult(None, UNKNOWN, "sampling", n_max, candidate=n)
    return InvarianceResult(None, FALSIFIED, "sampling", n_max)


# --- coset decompositions -------------------------------------------------

@dataclass(frozen=True)
class CosetPart:
    """translate + (F_q[t^period]-span of the generators under phi)."""

    translate: tuple
    generators: tuple
    period: int = 1


@dataclass(frozen=True)
class CosetDecomposition:
    parts: tuple


@dataclass
class DecompositionReport:
    ok: bool
    intersection_size: int
    coset_sizes: list
    outside_x: list = field(default_factory=list)  # (point, part index, label)
    uncovered: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def format_label(label):
    return "(" + ", ".join(format_fq_poly(a) for a in label) + ")"


def _label_key(label):
    return (max(a.deg for a in label), tuple(a.sort_key() for a in label))


def verify_decomposition(X, gamma, D, B):
    """Check that the cosets of D, enumerated to degree B, exactly cover intersect(X, gamma, B)."""
    inter = set(intersect(X, gamma, B))
    gamma_pts = None
    outside, covered, sizes = [], set(), []
    for idx, part in enumerate(D.parts):
        sub = PhiSubmodule(gamma.module, part.generators, gamma.g)
        coset = sub.enumerate_labeled(B, part.period, translate=part.translate)
        sizes.append(len(coset))
        for pt, lab in coset.items():
            if pt in inter:
                covered.add(pt)
                continue
            if gamma_pts is None:
                gamma_pts = set(gamma.enumerate(B))
            outside.append((pt, idx, lab))
    outside.sort(key=lambda r: (_label_key(r[2]), point_key(r[0])))
    uncovered = sorted(inter - covered, key=point_key)
    ok = not outside and not uncovered
    return DecompositionReport(ok, len(inter), sizes, outside, uncovered)


# --- reduction scans -------------------------------------------------------

@dataclass(frozen=True)
class PlaceResult:
    place: Place
    status: str  # "injective", "non-injective", "skipped"
    reduced_size: int = 0
    witness: tuple | None = None  # two points with the same reduction
    reason: str = ""


@dataclass
class ScanReport:
    total_points: int
    results: list

    @property
    def injective(self):
        return [r for r in self.results if r.status == "injective"]

    @property
    def non_injective(self):
        return [r for r in self.results if r.status == "non-injective"]

    @property
    def skipped(self):
        return [r for r in self.results if r.status == "skipped"]


def reduce_point(pt, place):
    return tuple(specialize(x, place) for x in pt)


def _scan_place(args):
    module, gens, pts, place = args
    if not good_reduction_at(module, place):
        return PlaceResult(place, "skipped", reason="bad reduction")
    try:
        for g in gens:
            reduce_point(g, place)
        seen, witness = {}, None
        for pt in pts:
            r = reduce_point(pt, place)
            if r in seen:
                witness = witness or (seen[r], pt)
            else:
                seen[r] = pt
    except PoleAtPlace:
        return PlaceResult(place, "skipped", reason="pole")
    if witness:
        return PlaceResult(place, "non-injective", len(seen), witness)
    return PlaceResult(place, "injective", len(seen))


def reduction_injectivity_scan(gamma, places, B, jobs=1):
    """For each place, is reduction injective on the B-bounded enumeration of gamma?"""
    if gamma.spec.is_finite:
        raise PreconditionViolated("reduction scans need a RATFUNC module")
    pts = gamma.enumerate(B)
    tasks = [(gamma.module, gamma.generators, pts, P) for P in places]
    if jobs <= 1:
        results = [_scan_place(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_scan_place, tasks))
    return ScanReport(len(pts), results)


def place_representatives(spec, sub_m, count=None):
    """Centers c in F_{q^m}, one per orbit of c -> c^(q^sub_m), by orbit size then value.

    These are the finite places of F_{q^sub_m}(t) of degree dividing m / sub_m,
    realized in the host F_{q^m}(t).
    """
    gf = spec.gf
    if spec.m % sub_m:
        raise PreconditionViolated("sub_m must divide m")
    seen = set()
    reps = []
    for v in range(gf.order):
        if v in seen:
            continue
        orbit = [v]
        x = gf.frob(v, spec.e * sub_m)
        while x != v:
            orbit.append(x)
            x = gf.frob(x, spec.e * sub_m)
        seen.update(orbit)
        reps.append((len(orbit), v))
    reps.sort()
    out = [Place(FFElem(gf, v)) for _, v in reps]
    return out if count is None else out[:count]


def claim2_bound(r, s_size):
    """(r^3 + r^2 + 2r)/2 * |S|."""
    if r < 1 or s_size < 1:
        raise PreconditionViolated("r and |S| must be >= 1")
    return (r ** 3 + r ** 2 + 2 * r) // 2 * s_size


__all__ = [
    "MPoly", "Variety", "PhiSubmodule", "CosetPart", "CosetDecomposition", "DecompositionReport",
    "InvarianceResult", "PlaceResult", "ScanReport", "parse_mpoly", "variable_names",
    "enumerate_gamma", "intersect", "invariance_exponent", "preserves_linear", "apply_ore",
    "verify_decomposition", "reduction_injectivity_scan", "reduce_point", "place_representatives",
    "claim2_bound", "point_key", "format_point", "format_label", "PROVED", "NOT_FOUND",
    "FALSIFIED", "UNKNOWN", "BadReduction",
]
