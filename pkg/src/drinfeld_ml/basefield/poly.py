"""Sparse univariate polynomials in t over a :class:`GF`.

Frobenius twists multiply t-exponents by powers of q, so exponents in Ore
products reach q^(deg) quickly; coefficients are kept in a dict keyed by
exponent instead of a dense list.
"""

from __future__ import annotations

from ..errors import NotAPthPower, PreconditionViolated

# beyond this degree gap, long division is replaced by monomial-wise powmod
LONG_DIVISION_LIMIT = 50_000


class Poly:
    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, {0: c} if c else {})

    @classmethod
    def monomial(cls, field, e, c=1):
        return cls._raw(field, {e: c} if c else {})

    @classmethod
    def from_dense(cls, field, coeffs):
        return cls(field, {i: c for i, c in enumerate(coeffs)})

    # --- basic queries -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def deg(self):
        return max(self.terms) if self.terms else -1

    @property
    def lc(self):
        return self.terms[max(self.terms)] if self.terms else 0

    def valuation(self):
        return min(self.terms) if self.terms else None

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_one(self):
        return self.terms == {0: 1}

    def coeff(self, e):
        return self.terms.get(e, 0)

    def to_dense(self):
        out = [0] * (self.deg + 1)
        for e, c in self.terms.items():
            out[e] = c
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self.terms.items(), reverse=True))

    # --- ring operations -----------------------------------------------
    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(F, out)

    def __neg__(self):
        F = self.field
        return Poly._raw(F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if not self.terms or not other.terms:
            return Poly._raw(F, {})
        a, b = self.terms, other.terms
        if len(b) == 1 and 0 in b:
            return self.scale(b[0])
        if len(a) == 1 and 0 in a:
            return other.scale(a[0])
        if len(a) < len(b):
            a, b = b, a
        out = {}
        add, mul = F.add, F.mul
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                s = add(out.get(e, 0), mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(F, out)

    def scale(self, c):
        """Multiply by a raw field element."""
        F = self.field
        if c == 0:
            return Poly._raw(F, {})
        if c == 1:
            return self
        return Poly._raw(F, {e: F.mul(x, c) for e, x in self.terms.items()})

    def shift(self, k):
        return Poly._raw(self.field, {e + k: c for e, c in self.terms.items()})

    def __pow__(self, n):
        if n == 1:
            return self
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, j=1):
        """Coefficient-wise c -> c^(p^j), exponent e -> e * p^j (j >= 0)."""
        if j == 0:
            return self
        if j < 0:
            return self.pth_root(-j)
        F = self.field
        pj = F.p ** j
        return Poly._raw(F, {e * pj: F.frob(c, j) for e, c in self.terms.items()})

    def pth_root(self, j=1):
        F = self.field
        pj = F.p ** j
        out = {}
        for e, c in self.terms.items():
            if e % pj:
                raise NotAPthPower(f"t^{e} is not a p^{j}-th power")
            out[e // pj] = F.frob(c, -j)
        return Poly._raw(F, out)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, a):
        """Evaluate at the raw field element a."""
        F = self.field
        acc = 0
        for e, c in self.terms.items():
            acc = F.add(acc, F.mul(c, F.pow(a, e)))
        return acc

    # --- division --------------------------------------------------------
    def divmod(self, other):
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        db = other.deg
        if self.deg - db > LONG_DIVISION_LIMIT and len(other.terms) > 1:
            raise PreconditionViolated("quotient too large to represent")
        inv_lead = F.inv(other.lc)
        rem = dict(self.terms)
        quo = {}
        while rem:
            da = max(rem)
            if da < db:
                break
            c = F.mul(rem[da], inv_lead)
            shift = da - db
            quo[shift] = c
            for e, x in other.terms.items():
                k = e + shift
                s = F.sub(rem.get(k, 0), F.mul(c, x))
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return Poly._raw(F, quo), Poly._raw(F, rem)

    def __mod__(self, other):
        if self.deg - other.deg > LONG_DIVISION_LIMIT and len(other.terms) > 1:
            return self._mod_sparse(other)
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def _mod_sparse(self, m):
        """Reduce monomial-by-monomial using t^e mod m via square-and-multiply."""
        F = self.field
        acc = Poly._raw(F, {})
        cache = {}
        base = Poly.monomial(F, 1) % m
        for e, c in self.terms.items():
            if e < m.deg:
                acc = acc + Poly.monomial(F, e, c)
                continue
            r = cache.get(e)
            if r is None:
                r = Poly.const(F, 1)
                b, n = base, e
                while n:
                    if n & 1:
                        r = (r * b).divmod(m)[1]
                    b = (b * b).divmod(m)[1]
                    n >>= 1
                cache[e] = r
            acc = acc + r.scale(c)
        return acc

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise PreconditionViolated("division is not exact")
        return q

    def __repr__(self):
        return format_poly(self, "t")


def poly_gcd(a, b):
    """Monic gcd with fast paths for constants and monomials."""
    F = a.field
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.deg == 0 or b.deg == 0:
        return Poly.const(F, 1)
    if a.is_monomial() or b.is_monomial():
        mono, other = (a, b) if a.is_monomial() else (b, a)
        k = min(mono.deg, other.valuation())
        return Poly.monomial(F, k)
    while b.terms:
        a, b = b, a % b
    return a.monic()


def format_poly(poly, var):
    F = poly.field
    if not poly.terms:
        return "0"
    parts = []
    for e in sorted(poly.terms, reverse=True):
        c = poly.terms[e]
        cs = F.format(c)
        if e == 0:
            parts.append(cs if " + " not in cs else f"({cs})")
            continue
        mon = var if e == 1 else f"{var}^{e}"
        if c == 1:
            parts.append(mon)
        elif " + " in cs:
            parts.append(f"({cs})*{mon}")
        else:
            parts.append(f"{cs}*{mon}")
    return " + ".join(parts)
