"""Prime-power finite fields F_{p^k}.

Elements are encoded as Python ints ``v = sum(d_i * p**i)`` where ``d_i`` are
the coordinates in the power basis ``1, g, ..., g^(k-1)`` of the stored
generator ``g`` (a root of the modulus).  The :class:`GF` object does raw-int
arithmetic; :class:`FFElem` wraps an int for user-facing code.

Small fields (order <= ``TABLE_LIMIT``) get log/antilog/Zech tables so every
operation is a couple of list lookups.  Larger fields fall back to schoolbook
polynomial arithmetic modulo the stored modulus.
"""

from __future__ import annotations

import functools
import itertools

from sympy import factorint, isprime

from ..errors import NotIrreducible, PreconditionViolated

TABLE_LIMIT = 3 ** 10


# --- dense polynomials over F_p, lists low -> high ------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, mod, p):
    a = _trim(list(a))
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, m in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * m) % p
        _trim(a)
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_pow_x(e, mod, p):
    """x^e mod ``mod`` by square-and-multiply."""
    result = [1]
    base = _fp_mod([0, 1], mod, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), mod, p)
        base = _fp_mod(_fp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(coeffs, p):
    """Rabin's test: uses the Frobenius criterion x^(p^k) = x mod f."""
    f = _trim(list(c % p for c in coeffs))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _fp_sub(_fp_pow_x(p ** k, f, p), _fp_mod(x, f, p), p):
        return False
    for r in factorint(k):
        h = _fp_sub(_fp_pow_x(p ** (k // r), f, p), _fp_mod(x, f, p), p)
        g = _fp_gcd(f, h, p)
        if len(g) > 1:
            return False
    return True


def is_irreducible_trial(coeffs, p):
    """Trial division by every monic polynomial of degree <= k/2."""
    f = _trim(list(c % p for c in coeffs))
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_mod(f, list(low) + [1], p):
                return False
    return True


def default_modulus(p, k):
    """Smallest monic irreducible of degree k, lower coefficients read as base-p digits.

    For k = 1 every monic linear polynomial is irreducible; we use x - w with w
    the least primitive root mod p, so the stored generator spans F_p^*.
    """
    if k == 1:
        n1 = p - 1
        primes = list(factorint(n1)) if n1 > 1 else []
        for w in range(1, p):
            if all(pow(w, n1 // r, p) != 1 for r in primes):
                return ((-w) % p, 1)
    for v in range(p ** k):
        low = [(v // p ** i) % p for i in range(k)]
        if k > 1 and low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The field F_p[x]/(modulus) with int-encoded elements."""

    def __init__(self, p, k, modulus=None):
        if not isprime(p):
            raise PreconditionViolated(f"characteristic {p} is not prime")
        if k < 1:
            raise PreconditionViolated("extension degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise PreconditionViolated(f"modulus must be monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise NotIrreducible(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = modulus
        self._n1 = self.order - 1
        self._tables = None
        self._primitive = None
        if k == 1:
            self._gen = (-modulus[0]) % p
        else:
            self._gen = p

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (get_field, (self.p, self.k, self.modulus))

    # --- encoding ------------------------------------------------------
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + d % self.p
        return v

    def from_int(self, c):
        return c % self.p

    # --- slow path ------------------------------------------------------
    def _add_slow(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        v, mult = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            v += ((ra + rb) % p) * mult
            mult *= p
        return v

    def _neg_slow(self, a):
        p = self.p
        if p == 2:
            return a
        v, mult = 0, 1
        while a:
            a, r = divmod(a, p)
            v += ((-r) % p) * mult
            mult *= p
        return v

    def _mul_slow(self, a, b):
        if a == 0 or b == 0:
            return 0
        prod = _fp_mul(self.digits(a), self.digits(b), self.p)
        return self.from_digits(_fp_mod(prod, list(self.modulus), self.p))

    def _pow_slow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    # --- tables ---------------------------------------------------------
    def primitive_element(self):
        if self._primitive is None:
            n1 = self._n1
            primes = list(factorint(n1)) if n1 > 1 else []
            for cand in range(1, self.order):
                if all(self._pow_slow(cand, n1 // r) != 1 for r in primes):
                    self._primitive = cand
                    break
        return self._primitive

    def _build_tables(self):
        n1 = self._n1
        w = self.primitive_element()
        exp = [0] * (2 * n1)
        log = [-1] * self.order
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, w)
        exp[n1:] = exp[:n1]
        zech = [-1] * n1
        if self.p != 2:
            for i in range(n1):
                s = self._add_slow(1, exp[i])
                zech[i] = log[s] if s else -1
        self._tables = (exp, log, zech)

    def _t(self):
        if self._tables is None:
            self._build_tables()
        return self._tables

    @property
    def tabled(self):
        return self.order <= TABLE_LIMIT

    # --- raw arithmetic -------------------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not self.tabled:
            return self._add_slow(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        exp, log, zech = self._t()
        la = log[a]
        d = log[b] - la
        if d < 0:
            d += self._n1
        z = zech[d]
        if z < 0:
            return 0
        return exp[la + z]

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        if not self.tabled:
            return self._neg_slow(a)
        exp, log, _ = self._t()
        return exp[log[a] + self._n1 // 2]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if not self.tabled:
            return self._mul_slow(a, b)
        exp, log, _ = self._t()
        return exp[log[a] + log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if not self.tabled:
            return self._pow_slow(a, self.order - 2)
        exp, log, _ = self._t()
        return exp[(self._n1 - log[a]) % self._n1]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        if not self.tabled:
            e %= self._n1
            return self._pow_slow(a, e)
        exp, log, _ = self._t()
        return exp[(log[a] * e) % self._n1]

    def frob(self, a, j=1):
        """a^(p^j); j may be negative (inverse Frobenius)."""
        if a == 0 or a == 1:
            return a
        return self.pow(a, self.p ** (j % self.k))

    def scale(self, c, a):
        """c * a for an integer c read in F_p."""
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        return self.mul(self.from_int(c), a)

    # --- structure ------------------------------------------------------
    @property
    def gen(self):
        return FFElem(self, self._gen)

    def element(self, v):
        if isinstance(v, FFElem):
            if v.field is not self:
                raise PreconditionViolated("element belongs to another field")
            return v
        if isinstance(v, int):
            return FFElem(self, self.from_int(v))
        raise TypeError(f"cannot coerce {v!r} into {self}")

    def zero(self):
        return FFElem(self, 0)

    def one(self):
        return FFElem(self, 1)

    def elements(self):
        return [FFElem(self, v) for v in range(self.order)]

    def in_subfield(self, a, d):
        """True iff raw element a lies in the subfield F_{p^d}."""
        return self.frob(a, d) == a if d % self.k else True

    def subfield_elements(self, d):
        """Raw ints of F_{p^d} inside this field, sorted; requires d | k."""
        if self.k % d:
            raise PreconditionViolated(f"F_{self.p}^{d} is not a subfield of {self}")
        w = self.primitive_element()
        h = self.pow(w, self._n1 // (self.p ** d - 1))
        out = [0]
        x = 1
        for _ in range(self.p ** d - 1):
            out.append(x)
            x = self.mul(x, h)
        return sorted(out)

    def format(self, a):
        ds = self.digits(a)
        if self.k == 1:
            return str(a)
        terms = []
        for i in range(self.k - 1, -1, -1):
            d = ds[i]
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mon = "g" if i == 1 else f"g^{i}"
                terms.append(mon if d == 1 else f"{d}*{mon}")
        return " + ".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def get_field(p, k, modulus=None):
    """Shared GF instance per (p, k, modulus); tables are built once."""
    if modulus is not None:
        modulus = tuple(modulus)
        if modulus == default_modulus(p, k):
            return get_field(p, k, None)
    return GF(p, k, modulus)


@functools.lru_cache(maxsize=None)
def _embedding_root(small, big):
    if big.k % small.k:
        raise PreconditionViolated(f"{small} does not embed in {big}")
    n_small = small.order - 1
    w = big.primitive_element()
    h = big.pow(w, (big.order - 1) // n_small)
    cand = 1
    for _ in range(n_small):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, cand), c % big.p)
        if acc == 0:
            return cand
        cand = big.mul(cand, h)
    raise AssertionError("modulus has no root in the extension")  # pragma: no cover


def embed(small, big, a):
    """Image of the raw element ``a`` of ``small`` inside ``big``."""
    if small is big:
        return a
    root = _embedding_root(small, big)
    if small.k == 1:
        return big.from_int(a)
    out = 0
    power = 1
    for d in small.digits(a):
        if d:
            out = big.add(out, big.scale(d, power))
        power = big.mul(power, root)
    return out


class FFElem:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field:
                raise PreconditionViolated("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.div(o, self.v))

    def __pow__(self, e):
        return FFElem(self.field, self.field.pow(self.v, e))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.v))

    def frob(self, j=1):
        """x^(p^j)."""
        return FFElem(self.field, self.field.frob(self.v, j))

    def is_zero(self):
        return self.v == 0

    def is_constant(self):
        return True

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field is other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.v))

    def sort_key(self):
        return (self.v,)

    def __repr__(self):
        return self.field.format(self.v)
