"""Rational functions num/den in F_{q^m}(t), kept in lowest terms with monic den."""

from __future__ import annotations

from ..errors import NotAPthPower, PoleAtPlace, PreconditionViolated
from .gf import FFElem
from .poly import Poly, format_poly, poly_gcd


class RatFuncField:
    """The field F(t) over a finite field F."""

    def __init__(self, gf):
        self.gf = gf
        self.p = gf.p

    def __repr__(self):
        return f"{self.gf}(t)"

    def __reduce__(self):
        return (RatFuncField, (self.gf,))

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.gf is self.gf

    def __hash__(self):
        return hash(("ratfunc", id(self.gf)))

    def zero(self):
        return RatFunc._make(self.gf, Poly._raw(self.gf, {}), _one(self.gf))

    def one(self):
        return self.const(1)

    def const(self, c):
        """c is a raw int of gf, an FFElem, or a Python int read in F_p."""
        if isinstance(c, FFElem):
            c = c.v
        elif isinstance(c, int) and not isinstance(c, bool):
            c = self.gf.from_int(c)
        return RatFunc._make(self.gf, Poly.const(self.gf, c), _one(self.gf))

    def t(self):
        return RatFunc._make(self.gf, Poly.monomial(self.gf, 1), _one(self.gf))

    def from_poly(self, num, den=None):
        return RatFunc(num, den)

    def from_int(self, c):
        return self.const(c)


def _one(F):
    return Poly.const(F, 1)


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        F = num.field
        if den is None:
            den = _one(F)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = num, _one(F)
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            if lc != 1:
                inv = F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, F, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @property
    def field(self):
        return self.num.field

    @property
    def parent(self):
        return RatFuncField(self.field)

    # --- coercion ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise PreconditionViolated("mixing rational functions over different fields")
            return other
        F = self.field
        if isinstance(other, FFElem):
            if other.field is not F:
                raise PreconditionViolated("constant from another field")
            return RatFunc._make(F, Poly.const(F, other.v), _one(F))
        if isinstance(other, int) and not isinstance(other, bool):
            return RatFunc._make(F, Poly.const(F, F.from_int(other)), _one(F))
        return None

    # --- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        if self.den.is_one() and o.den.is_one():
            return RatFunc._make(F, self.num + o.num, self.den)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.is_one():
            num = self.num * o.den + o.num * self.den
            if num.is_zero():
                return RatFunc._make(F, num, _one(F))
            return RatFunc._make(F, num, self.den * o.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(self.field, -self.num, self.den)

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
        F = self.field
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc._make(F, Poly._raw(F, {}), _one(F))
        if self.den.is_one() and o.den.is_one():
            return RatFunc._make(F, self.num * o.num, self.den)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        g1 = poly_gcd(n1, d2)
        if not g1.is_one():
            n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
        g2 = poly_gcd(n2, d1)
        if not g2.is_one():
            n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if lc != 1:
            inv = F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._make(F, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        F = self.field
        inv = F.inv(self.num.lc)
        return RatFunc._make(F, self.den.scale(inv), self.num.scale(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        return RatFunc._make(F, self.num ** n, self.den ** n)

    def frob(self, j=1):
        """x^(p^j); negative j takes p-th roots and needs t-exponents divisible by p^|j|."""
        if j == 0:
            return self
        F = self.field
        if j < 0:
            try:
                return RatFunc._make(F, self.num.pth_root(-j), self.den.pth_root(-j))
            except NotAPthPower:
                raise NotAPthPower(f"{self} is not a p^{-j}-th power in F(t)") from None
        return RatFunc._make(F, self.num.frob(j), self.den.frob(j))

    # --- queries -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.den.is_one() and self.num.deg <= 0

    def is_polynomial(self):
        return self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise PreconditionViolated(f"{self} is not constant")
        return FFElem(self.field, self.num.coeff(0))

    def evaluate(self, c):
        """num(c)/den(c) for a raw element c; raises PoleAtPlace when den(c) = 0."""
        F = self.field
        d = self.den(c)
        if d == 0:
            raise PoleAtPlace(f"{self} has a pole at t = {F.format(c)}")
        return F.div(self.num(c), d)

    def integral_at(self, c):
        return self.den(c) != 0

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def sort_key(self):
        return (self.den.sort_key(), self.num.sort_key())

    def __repr__(self):
        n = format_poly(self.num, "t")
        if self.den.is_one():
            return n
        d = format_poly(self.den, "t")
        if len(self.num.terms) > 1 or ("*" in n and self.num.deg > 0):
            n = f"({n})"
        if len(self.den.terms) > 1 or ("*" in d and self.den.deg > 0):
            d = f"({d})"
        return f"{n}/{d}"
