"""The twisted polynomial ring K{tau}, tau * c = c^q * tau.

Multiplication is composition of additive polynomials: ``(f * g)(x) ==
f(g(x))``.  Only right Euclidean division is provided; left division needs
q-th roots, which F(t) lacks.
"""

from __future__ import annotations

import functools

import numpy as np

from .basefield.gf import FFElem, embed, get_field
from .basefield.ratfunc import RatFunc
from .errors import ModeMismatch, ParseError, PreconditionViolated, ZeroConjugator, ZeroPolynomial
from .parsing import FieldAlgebra, parse_with
from . import linalg


class OrePoly:
    """sum c_i tau^i with tau(x) = x^(p^twist); twist defaults to e (tau = q-Frobenius)."""

    __slots__ = ("spec", "coeffs", "twist", "_hash")

    def __init__(self, spec, coeffs, twist=None):
        self.spec = spec
        self.twist = spec.e if twist is None else twist
        cs = [spec.const(c) if isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def const(cls, spec, c, twist=None):
        return cls(spec, [c], twist)

    @classmethod
    def tau(cls, spec, k=1, c=None, twist=None):
        c = spec.one() if c is None else c
        return cls(spec, [spec.zero()] * k + [c], twist)

    @classmethod
    def zero(cls, spec, twist=None):
        return cls(spec, [], twist)

    @classmethod
    def one(cls, spec, twist=None):
        return cls(spec, [spec.one()], twist)

    # --- queries -------------------------------------------------------
    @property
    def deg(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.spec.zero()

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_constant(self):
        return len(self.coeffs) <= 1

    def ord_tau(self):
        return ord_tau(self)

    def is_separable(self):
        return ord_tau(self) == 0

    def _twist_coeff(self, c, i):
        return c.frob(self.twist * i) if i else c

    # --- ring ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, OrePoly):
            if other.spec != self.spec or other.twist != self.twist:
                raise PreconditionViolated("Ore polynomials over different rings")
            return other
        if isinstance(other, (int, FFElem, RatFunc)):
            c = self.spec.const(other) if isinstance(other, int) else other
            if isinstance(c, FFElem) and not self.spec.is_finite:
                c = self.spec.const(c)
            return OrePoly(self.spec, [c], self.twist)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return OrePoly(self.spec, [self.coeff(i) + o.coeff(i) for i in range(n)], self.twist)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.spec, [-c for c in self.coeffs], self.twist)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ore_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ore_mul(o, self)

    def __pow__(self, n):
        if n < 0:
            raise PreconditionViolated("negative powers of Ore polynomials are not defined")
        result = OrePoly.one(self.spec, self.twist)
        base = self
        while n:
            if n & 1:
                result = ore_mul(result, base)
            n >>= 1
            if n:
                base = ore_mul(base, base)
        return result

    def __call__(self, x):
        return ore_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.twist == other.twist and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.twist, self.coeffs))
        return self._hash

    def __repr__(self):
        return format_ore(self)


def _fmt_coeff(c):
    s = repr(c)
    if any(ch in s for ch in "+/") or s.startswith("-"):
        return f"({s})"
    return s


def format_ore(f, symbol="T"):
    """Canonical text: ascending powers, ``T^0`` for the constant term."""
    if f.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        mon = f"{symbol}^{i}" if i != 1 else symbol
        parts.append(mon if c == 1 else f"{_fmt_coeff(c)}*{mon}")
    return " + ".join(parts)


def ore_mul(f, g):
    """Composition f o g:  (fg)_k = sum_{i+j=k} f_i * g_j^(q^i)."""
    if f.is_zero() or g.is_zero():
        return OrePoly.zero(f.spec, f.twist)
    out = [None] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if fi.is_zero():
            continue
        s = f.twist * i
        for j, gj in enumerate(g.coeffs):
            if gj.is_zero():
                continue
            term = fi * (gj.frob(s) if s else gj)
            k = i + j
            out[k] = term if out[k] is None else out[k] + term
    zero = f.spec.zero()
    return OrePoly(f.spec, [zero if c is None else c for c in out], f.twist)


def ord_tau(f):
    """Index of the first nonzero coefficient; positive exactly when f is inseparable."""
    if f.is_zero():
        raise ZeroPolynomial("ord_tau of the zero polynomial")
    return next(i for i, c in enumerate(f.coeffs) if not c.is_zero())


def ore_rdiv(f, g):
    """Right division: f = quotient * g + remainder with deg(remainder) < deg(g)."""
    if g.is_zero():
        raise ZeroPolynomial("right division by zero")
    spec, tw = f.spec, f.twist
    rem = list(f.coeffs)
    db = g.deg
    quo = [spec.zero()] * max(len(rem) - db, 0)
    top = g.lc
    while len(rem) - 1 >= db:
        d = len(rem) - 1 - db
        c = rem[-1] / (top.frob(tw * d) if d else top)
        quo[d] = c
        for j, gj in enumerate(g.coeffs):
            if gj.is_zero():
                continue
            rem[d + j] = rem[d + j] - c * (gj.frob(tw * d) if d else gj)
        while rem and rem[-1].is_zero():
            rem.pop()
    return OrePoly(spec, quo, tw), OrePoly(spec, rem, tw)


def right_divides(g, f):
    """True iff g is a right factor of f (f = h * g)."""
    return ore_rdiv(f, g)[1].is_zero()


def conjugate(f, gamma):
    """gamma^{-1} f gamma: coefficient c_i -> gamma^{-1} c_i gamma^(q^i)."""
    if gamma.is_zero():
        raise ZeroConjugator("cannot conjugate by zero")
    spec = f.spec
    if isinstance(gamma, FFElem) and not spec.is_finite:
        gamma = spec.const(gamma)
    inv = gamma.inverse()
    return OrePoly(
        spec, [inv * c * gamma.frob(f.twist * i) for i, c in enumerate(f.coeffs)], f.twist
    )


def ore_eval(f, x):
    """sum c_i x^(q^i).  In FINITE mode x may live in any extension F_{q^{mN}}."""
    spec = f.spec
    if isinstance(x, FFElem) and x.field is not spec.gf:
        if not spec.is_finite:
            raise ModeMismatch("extension-field evaluation needs FINITE mode")
        big = x.field
        cs = [FFElem(big, embed(spec.gf, big, c.v)) for c in f.coeffs]
    else:
        cs = f.coeffs
        if isinstance(x, FFElem) and not spec.is_finite:
            x = spec.const(x)
    acc = x * 0
    xp = x
    for i, c in enumerate(cs):
        if i:
            xp = xp.frob(f.twist)
        if not c.is_zero():
            acc = acc + c * xp
    return acc


# --- linear-map realization ------------------------------------------------

def search_field(spec, N):
    """The field F_{q^{mN}} used for kernels and images; N = 1 is the host field."""
    if N < 1:
        raise PreconditionViolated("search degree N must be >= 1")
    if N == 1:
        return spec.gf
    return get_field(spec.p, spec.e * spec.m * N)


@functools.lru_cache(maxsize=None)
def _frob_matrix(big):
    """F_p-matrix of x -> x^p on ``big`` in its power basis."""
    K, p = big.k, big.p
    cols = []
    basis = 1
    for _ in range(K):
        cols.append(big.digits(big.frob(basis, 1)))
        basis = big.mul(basis, big._gen if K > 1 else 1)
    return np.array(cols, dtype=np.int64).T % p


def _mul_matrix(big, c):
    K, p = big.k, big.p
    cols = []
    basis = 1
    for _ in range(K):
        cols.append(big.digits(big.mul(c, basis)))
        basis = big.mul(basis, big._gen if K > 1 else 1)
    return np.array(cols, dtype=np.int64).T % p


def as_linear_map(f, N):
    """Matrix over F_p of x -> f(x) on F_{q^{mN}} in the power basis of the search field.

    The matrix is (e*m*N) x (e*m*N); for q = p this is the F_q-matrix.
    """
    spec = f.spec
    if not spec.is_finite:
        raise ModeMismatch("as_linear_map requires FINITE mode")
    big = search_field(spec, N)
    p = spec.p
    K = big.k
    frob = _frob_matrix(big)
    step = linalg.matpow(frob, f.twist, p)
    out = np.zeros((K, K), dtype=np.int64)
    power = np.eye(K, dtype=np.int64)
    for i, c in enumerate(f.coeffs):
        if i:
            power = linalg.matmul(step, power, p)
        if c.is_zero():
            continue
        cm = _mul_matrix(big, embed(spec.gf, big, c.v))
        out = (out + linalg.matmul(cm, power, p)) % p
    return out


def kernel_points(f, N):
    """Sorted elements (FFElem of the search field) of ker f inside F_{q^{mN}}."""
    big = search_field(f.spec, N)
    basis = linalg.nullspace(as_linear_map(f, N), f.spec.p)
    return [FFElem(big, v) for v in linalg.span_points(basis, f.spec.p, big.k)]


# --- parsing ---------------------------------------------------------------

class OreAlgebra(FieldAlgebra):
    """Ore syntax: field syntax plus ``T`` for tau; constants auto-coerce to degree 0.

    ``a / c`` requires a constant c and means the scalar multiple c^{-1} * a.
    """

    def __init__(self, spec, symbol="T", twist=None):
        super().__init__(spec)
        self.symbol = symbol
        self.twist = twist

    def num(self, n):
        return OrePoly.const(self.spec, self.spec.const(n), self.twist)

    def sym(self, name):
        if name == self.symbol:
            return OrePoly.tau(self.spec, 1, twist=self.twist)
        return OrePoly.const(self.spec, super().sym(name), self.twist)

    def div(self, a, b):
        if not b.is_constant() or b.is_zero():
            raise ValueError("can only divide by a nonzero constant")
        return OrePoly.const(self.spec, b.coeff(0).inverse(), self.twist) * a

    def pow(self, a, n):
        if n < 0:
            if a.is_constant() and not a.is_zero():
                return OrePoly.const(self.spec, a.coeff(0) ** n, self.twist)
            raise ValueError("negative powers only for nonzero constants")
        return a ** n


def parse_ore(text, spec, twist=None):
    """Parse e.g. ``t*T + T^3`` or ``g*T^0``."""
    return parse_with(text, OreAlgebra(spec, twist=twist))


__all__ = [
    "OrePoly", "ore_mul", "ord_tau", "ore_rdiv", "right_divides", "conjugate", "ore_eval",
    "as_linear_map", "kernel_points", "search_field", "parse_ore", "format_ore", "ParseError",
]
