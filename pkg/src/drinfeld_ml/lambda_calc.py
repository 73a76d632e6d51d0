"""lambda-functions of F_{q^m}(t) for the p-basis {1, t, ..., t^(p-1)}, and lambda-polynomials.

Every x in K decomposes uniquely as x = sum_i lambda_i(x)^p t^i.  A lambda-
polynomial is a K-linear combination of compositions of the atoms

* ``c``   multiplication by c in K,
* ``L_i`` the map lambda_i,
* ``F``   the p-power Frobenius tau_0,

and the rewrite rules

* ``c1 c2 -> (c1 c2)``
* ``F c   -> c^p F``
* ``L_i c -> sum_j lambda_i(c t^j) L_j``
* ``L_i F -> id`` if i = 0, else ``0``

bring it to a normal form sum of ``c F^a L_I F^s`` with I empty or s = 0.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

from .basefield.poly import Poly
from .basefield.ratfunc import RatFunc
from .errors import ModeMismatch, PreconditionViolated
from .ore import OrePoly
from .parsing import FieldAlgebra, parse_with

C, L, F = "c", "L", "F"
_FROB = (F,)


def _require_ratfunc(spec):
    if spec.is_finite:
        raise ModeMismatch("finite fields are perfect; lambda-functions need F_{q^m}(t)")


def lambda_decompose(x):
    """(lambda_0(x), ..., lambda_{p-1}(x)) with x = sum lambda_i(x)^p t^i."""
    if not isinstance(x, RatFunc):
        raise ModeMismatch("lambda_decompose expects an element of F_{q^m}(t)")
    gf = x.field
    p = gf.p
    den = x.den
    num = x.num * den ** (p - 1) if p > 1 else x.num
    classes = [dict() for _ in range(p)]
    for e, c in num.terms.items():
        classes[e % p][e - e % p] = c
    return tuple(RatFunc(Poly(gf, cls).pth_root(1), den) for cls in classes)


def lambda_reconstruct(parts):
    """sum parts_i^p t^i."""
    parts = list(parts)
    if not parts:
        raise PreconditionViolated("need p components")
    gf = parts[0].field
    p = gf.p
    if len(parts) != p:
        raise PreconditionViolated(f"need exactly {p} components, got {len(parts)}")
    out = parts[0].frob(1)
    for i in range(1, p):
        if not parts[i].is_zero():
            out = out + parts[i].frob(1) * RatFunc(Poly.monomial(gf, i))
    return out


def lambda_i(x, i):
    return lambda_decompose(x)[i]


# --- words and polynomials -----------------------------------------------

@dataclass(frozen=True, order=True)
class LambdaWord:
    """F^lead o lambda_{i_1} o ... o lambda_{i_k} o F^frob_power."""

    indices: tuple = ()
    frob_power: int = 0
    lead: int = 0

    def __post_init__(self):
        if self.indices and self.frob_power:
            raise PreconditionViolated("a word ending in lambda_i o F is not in normal form")

    @property
    def level(self):
        return len(self.indices)

    def atoms(self):
        return (_FROB,) * self.lead + tuple((L, i) for i in self.indices) + (_FROB,) * self.frob_power

    def __repr__(self):
        return _format_atoms(self.atoms()) or "F^0"


def _format_atoms(atoms):
    parts = []
    k = 0
    while k < len(atoms):
        a = atoms[k]
        if a[0] == F:
            n = 1
            while k + n < len(atoms) and atoms[k + n][0] == F:
                n += 1
            parts.append("F" if n == 1 else f"F^{n}")
            k += n
            continue
        parts.append(f"L{a[1]}" if a[0] == L else f"({a[1]!r})")
        k += 1
    return " ".join(parts)


def _word_from_atoms(atoms):
    lead = 0
    k = 0
    while k < len(atoms) and atoms[k][0] == F:
        lead += 1
        k += 1
    idx = []
    while k < len(atoms) and atoms[k][0] == L:
        idx.append(atoms[k][1])
        k += 1
    tail = len(atoms) - k
    if idx:
        return LambdaWord(tuple(idx), tail, lead)
    return LambdaWord((), lead + tail, 0)


class LambdaPoly:
    """Normal-form lambda-polynomial: a map LambdaWord -> nonzero coefficient in K."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        _require_ratfunc(spec)
        self.spec = spec
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def word(cls, spec, indices=(), frob_power=0, coeff=None, lead=0):
        c = spec.one() if coeff is None else coeff
        return cls(spec, {LambdaWord(tuple(indices), frob_power, lead): c})

    @classmethod
    def from_ore(cls, f):
        """tau = tau_0^twist: c tau^i becomes c F^(twist i)."""
        return cls(f.spec, {LambdaWord((), f.twist * i): c for i, c in enumerate(f.coeffs)})

    def is_zero(self):
        return not self.terms

    def is_ore(self):
        return all(w.level == 0 for w in self.terms)

    def to_ore(self):
        if not self.is_ore():
            raise PreconditionViolated("lambda-polynomial still contains lambda-functions")
        top = max((w.frob_power for w in self.terms), default=-1)
        coeffs = [self.spec.zero()] * (top + 1)
        for w, c in self.terms.items():
            coeffs[w.frob_power] = c
        return OrePoly(self.spec, coeffs, twist=1)

    def expression(self):
        """The unnormalized expression (list of atom sequences) denoted by self."""
        return [((C, c),) + w.atoms() for w, c in self.terms.items()]

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return LambdaPoly(self.spec, out)

    def __neg__(self):
        return LambdaPoly(self.spec, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other):
        """self o other, normalized."""
        return normalize(self.spec, compose_expressions(self.expression(), other.expression()))

    __mul__ = compose

    def __call__(self, x):
        return evaluate_expression(self.expression(), x, self.spec)

    def __eq__(self, other):
        return isinstance(other, LambdaPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_lambda(self)


def format_lambda(lp):
    if lp.is_zero():
        return "0"
    parts = []
    for w in sorted(lp.terms):
        c = lp.terms[w]
        ws = repr(w)
        if c == 1:
            parts.append(ws)
        else:
            cs = repr(c)
            if any(ch in cs for ch in "+/") or cs.startswith("-"):
                cs = f"({cs})"
            parts.append(f"{cs} * {ws}")
    return " + ".join(parts)


# --- rewriting -------------------------------------------------------------

def compose_expressions(a, b):
    return [x + y for x in a for y in b]


class _Rules:
    """The rewrite rules, with a memo for lambda_i(c t^j)."""

    def __init__(self, spec):
        self.spec = spec
        self.p = spec.p
        self._memo = {}
        self.steps = 0

    def _d(self, c, j):
        key = (c, j)
        hit = self._memo.get(key)
        if hit is None:
            tj = RatFunc(Poly.monomial(self.spec.gf, j)) if j else self.spec.one()
            hit = lambda_decompose(c * tj)
            self._memo[key] = hit
        return hit

    def redexes(self, seq):
        """Positions k where seq[k], seq[k+1] form a redex."""
        out = []
        for k in range(len(seq) - 1):
            a, b = seq[k][0], seq[k + 1][0]
            if b == C or (a == L and b == F):
                out.append(k)
        return out

    def apply(self, seq, k):
        """Rewrite at position k; returns the list of resulting sequences (possibly empty)."""
        self.steps += 1
        a, b = seq[k], seq[k + 1]
        head, tail = seq[:k], seq[k + 2:]
        if a[0] == C and b[0] == C:
            c = a[1] * b[1]
            return [] if c.is_zero() else [head + ((C, c),) + tail]
        if a[0] == F and b[0] == C:
            return [head + ((C, b[1].frob(1)), _FROB) + tail]
        if a[0] == L and b[0] == C:
            out = []
            for j in range(self.p):
                d = self._d(b[1], j)[a[1]]
                if not d.is_zero():
                    out.append(head + ((C, d), (L, j)) + tail)
            return out
        if a[0] == L and b[0] == F:
            return [head + tail] if a[1] == 0 else []
        raise AssertionError("not a redex")  # pragma: no cover


def normalize(spec, expr, strategy="innermost", rng=None, stats=None):
    """Normal form of an expression (list of atom sequences) as a LambdaPoly.

    ``innermost`` always rewrites the rightmost redex of the first unfinished
    sequence; ``random`` picks sequence and redex with ``rng``.
    """
    _require_ratfunc(spec)
    rules = _Rules(spec)
    rng = rng or _random.Random(0)
    pending = [tuple(s) for s in expr]
    done = []
    while pending:
        if strategy == "random":
            idx = rng.randrange(len(pending))
        else:
            idx = 0
        seq = pending[idx]
        reds = rules.redexes(seq)
        if not reds:
            done.append(pending.pop(idx))
            continue
        k = rng.choice(reds) if strategy == "random" else reds[-1]
        pending[idx:idx + 1] = rules.apply(seq, k)
    terms = {}
    for seq in done:
        if seq and seq[0][0] == C:
            c, atoms = seq[0][1], seq[1:]
        else:
            c, atoms = spec.one(), seq
        if c.is_zero():
            continue
        w = _word_from_atoms(atoms)
        terms[w] = terms[w] + c if w in terms else c
    if stats is not None:
        stats["steps"] = rules.steps
    return LambdaPoly(spec, terms)


def evaluate_expression(expr, x, spec):
    """Apply an expression to x directly (the oracle: atoms evaluated right to left)."""
    total = spec.zero()
    for seq in expr:
        y = x
        for atom in reversed(seq):
            if atom[0] == C:
                y = atom[1] * y
            elif atom[0] == F:
                y = y.frob(1)
            else:
                y = lambda_decompose(y)[atom[1]]
        total = total + y
    return total


def lp_compose_ore(psi, g):
    """Normal form of psi o g for an Ore polynomial g (any twist; tau = tau_0^twist)."""
    return psi.compose(LambdaPoly.from_ore(g))


def clearance_exponent(psi, n_max=8):
    """Least n in 1..n_max with psi o tau_0^n free of lambda-functions; None otherwise."""
    if n_max < 1:
        raise PreconditionViolated("n_max must be >= 1")
    spec = psi.spec
    for n in range(1, n_max + 1):
        if lp_compose_ore(psi, OrePoly.tau(spec, n, twist=1)).is_ore():
            return n
    return None


# --- parsing ---------------------------------------------------------------

class LambdaAlgebra(FieldAlgebra):
    """Expressions are lists of atom sequences; juxtaposition and ``*`` compose."""

    def __init__(self, spec):
        _require_ratfunc(spec)
        super().__init__(spec)
        self.p = spec.p

    def _const(self, c):
        return [((C, c),)]

    def num(self, n):
        return self._const(self.spec.const(n))

    def sym(self, name):
        if name == "F":
            return [(_FROB,)]
        if name[0] == "L" and name[1:].isdigit():
            i = int(name[1:])
            if i >= self.p:
                raise ValueError(f"lambda index {i} out of range 0..{self.p - 1}")
            return [((L, i),)]
        return self._const(super().sym(name))

    def _as_const(self, a):
        if len(a) == 1 and len(a[0]) == 1 and a[0][0][0] == C:
            return a[0][0][1]
        return None

    def neg(self, a):
        return compose_expressions(self._const(-self.spec.one()), a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a + self.neg(b)

    def mul(self, a, b):
        return compose_expressions(a, b)

    def div(self, a, b):
        c = self._as_const(b)
        if c is None or c.is_zero():
            raise ValueError("can only divide by a nonzero constant")
        return compose_expressions(self._const(c.inverse()), a)

    def pow(self, a, n):
        c = self._as_const(a)
        if c is not None:
            if n < 0 and c.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return self._const(c ** n)
        if n < 0:
            raise ValueError("negative powers only for constants")
        out = [()]
        for _ in range(n):
            out = compose_expressions(out, a)
        return out


def parse_lambda_expression(text, spec):
    """Unnormalized expression for e.g. ``t * L1 L0 F^2``."""
    return parse_with(text, LambdaAlgebra(spec))


def parse_lambda(text, spec):
    return normalize(spec, parse_lambda_expression(text, spec))


__all__ = [
    "LambdaWord", "LambdaPoly", "lambda_decompose", "lambda_reconstruct", "lambda_i",
    "normalize", "evaluate_expression", "compose_expressions", "lp_compose_ore",
    "clearance_exponent", "parse_lambda", "parse_lambda_expression", "format_lambda",
]
