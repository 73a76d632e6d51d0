"""Field specifications, places, and the three field-level operations."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from ..errors import ModeMismatch, NotAPthPower, PreconditionViolated
from .gf import FFElem, get_field
from .ratfunc import RatFunc, RatFuncField

FINITE = "finite"
RATFUNC = "ratfunc"


@dataclass(frozen=True)
class FieldSpec:
    """Host field F_{q^m} (FINITE) or F_{q^m}(t) (RATFUNC), with q = p^e.

    ``modulus`` lists F_p-coefficients (low to high) of a monic irreducible of
    degree e*m; ``None`` selects the default modulus.
    """

    p: int
    e: int = 1
    m: int = 1
    modulus: tuple | None = None
    mode: str = RATFUNC

    def __post_init__(self):
        if self.mode not in (FINITE, RATFUNC):
            raise PreconditionViolated(f"unknown mode {self.mode!r}")
        if self.modulus is not None:
            object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        self.gf  # validates p and the modulus eagerly

    @property
    def q(self):
        return self.p ** self.e

    @property
    def gf(self):
        return get_field(self.p, self.e * self.m, self.modulus)

    @property
    def K(self):
        """Host field object: the GF itself or F(t) over it."""
        return self.gf if self.mode == FINITE else _ratfunc_field(self.gf)

    @property
    def is_finite(self):
        return self.mode == FINITE

    def with_mode(self, mode):
        return FieldSpec(self.p, self.e, self.m, self.modulus, mode)

    def zero(self):
        return self.K.zero()

    def one(self):
        return self.K.one()

    def const(self, c):
        """Host-field constant from a raw int / FFElem / Python int."""
        if self.mode == FINITE:
            if isinstance(c, FFElem):
                return c
            return FFElem(self.gf, self.gf.from_int(c))
        return self.K.const(c)

    def raw_const(self, v):
        """Host-field constant from a raw encoded element of gf."""
        if self.mode == FINITE:
            return FFElem(self.gf, v)
        return self.K.const(FFElem(self.gf, v))

    def place(self, c):
        if isinstance(c, int):
            c = FFElem(self.gf, self.gf.from_int(c))
        return Place(c)

    def t(self):
        if self.mode != RATFUNC:
            raise ModeMismatch("t exists only in RATFUNC mode")
        return self.K.t()

    def fq_raw(self):
        """Sorted raw ints of the constant field F_q inside F_{q^m}."""
        return _fq_raw(self.gf, self.e)

    def in_fq(self, x):
        """True iff the host element x is a constant lying in F_q."""
        if isinstance(x, RatFunc):
            if not x.is_constant():
                return False
            x = x.constant_value()
        return self.gf.in_subfield(x.v, self.e)

    def in_subfield(self, x, d):
        """True iff the constant x lies in F_{q^d}, tested by x^(q^d) = x."""
        return frobenius(x, d, self) == x

    def describe(self):
        terms = []
        for i in range(len(self.gf.modulus) - 1, -1, -1):
            c = self.gf.modulus[i]
            if c:
                mon = "1" if i == 0 else ("g" if i == 1 else f"g^{i}")
                terms.append(mon if c == 1 else (str(c) if i == 0 else f"{c}*{mon}"))
        return f"p={self.p} e={self.e} m={self.m} q={self.q} mode={self.mode} modulus={' + '.join(terms)}"


@functools.lru_cache(maxsize=None)
def _ratfunc_field(gf):
    return RatFuncField(gf)


@functools.lru_cache(maxsize=None)
def _fq_raw(gf, e):
    return tuple(gf.subfield_elements(e))


@dataclass(frozen=True)
class Place:
    """The finite place t -> center of F_{q^m}(t)."""

    center: FFElem

    def __post_init__(self):
        c = self.center
        if isinstance(c, RatFunc):
            object.__setattr__(self, "center", c.constant_value())
        elif not isinstance(c, FFElem):
            raise PreconditionViolated(f"place center must be a finite-field element, got {c!r}")

    def __repr__(self):
        return f"Place(t -> {self.center!r})"


def frobenius(x, k, spec):
    """x^(q^k): coefficient-wise Frobenius on F(t), exponents of t scaled by q^k."""
    if k < 0:
        raise PreconditionViolated("frobenius power must be >= 0")
    return x.frob(spec.e * k)


def pth_root(x):
    """y with y^p = x.  Finite fields: y = x^(p^(k-1)).  F(t): needs exponents divisible by p."""
    if isinstance(x, FFElem):
        return x.frob(-1)
    if isinstance(x, RatFunc):
        return x.frob(-1)
    raise TypeError(f"unsupported element {x!r}")


def specialize(x, place):
    """Reduction of x at the place t -> c; PoleAtPlace if den(c) = 0."""
    if not isinstance(x, RatFunc):
        raise ModeMismatch("specialize expects a rational function")
    c = place.center
    if c.field is not x.field:
        raise PreconditionViolated("place center lies in another field")
    return FFElem(x.field, x.evaluate(c.v))


def is_pth_power(x):
    try:
        pth_root(x)
    except NotAPthPower:
        return False
    return True
