"""Sharp groups as stabilized image chains, endomorphisms, and commutation searches."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basefield.gf import FFElem
from .basefield.poly import Poly
from .errors import EnumerationTooLarge, ModeMismatch, PreconditionViolated
from .drinfeld import POINT_LIMIT
from .ore import OrePoly, as_linear_map, ord_tau, search_field
from . import linalg

EQUAL = "EQUAL"
F_CONTAINS_G = "F_CONTAINS_G"
G_CONTAINS_F = "G_CONTAINS_F"
INCOMPARABLE = "INCOMPARABLE"


def image_chain(f, N):
    """Canonical bases of Im(f), Im(f^2), ... on F_{q^{mN}} up to the first repeat.

    Returns (bases, n_star) where bases[n-1] spans Im(f^n) and Im(f^{n_star}) =
    Im(f^{n_star + 1}).
    """
    spec = f.spec
    if not spec.is_finite:
        raise ModeMismatch("image chains need FINITE mode")
    p = spec.p
    A = as_linear_map(f, N)
    current = linalg.column_space(A, p)
    bases = [current]
    while True:
        nxt = linalg.image_of_subspace(A, current, p)
        if len(nxt) == len(current):
            return bases, len(bases)
        bases.append(nxt)
        current = nxt


@dataclass(frozen=True)
class SharpGroup:
    """Stable image of phi_{pi^n} on F_{q^{mN}}, pi the characteristic generator."""

    module: object
    N: int
    basis: np.ndarray = field(repr=False)
    stabilized_at: int
    chain_dims: tuple
    generator: object

    @property
    def field(self):
        return search_field(self.module.spec, self.N)

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def trivial_full(self):
        return self.dimension == self.field.k

    @property
    def size(self):
        return self.module.spec.p ** self.dimension

    def points(self):
        p = self.module.spec.p
        if self.size > POINT_LIMIT:
            raise EnumerationTooLarge(f"sharp group has {self.size} points")
        return linalg.span_points(self.basis, p, self.field.k)

    def __contains__(self, x):
        v = x.v if isinstance(x, FFElem) else x
        vec = linalg.int_to_vector(v, self.module.spec.p, self.field.k)
        return linalg.subspace_contains(self.basis, vec.reshape(1, -1), self.module.spec.p)


def sharp(M, N):
    """The sharp group of M inside F_{q^{mN}}."""
    if not M.spec.is_finite:
        raise ModeMismatch("sharp requires FINITE mode")
    char = M.characteristic
    if char.generator is None:  # pragma: no cover - FINITE hosts always have finite characteristic
        raise PreconditionViolated("sharp needs finite characteristic")
    bases, n_star = image_chain(M.phi_action(char.generator), N)
    k = search_field(M.spec, N).k
    dims = (k,) + tuple(len(b) for b in bases)
    return SharpGroup(M, N, bases[-1], n_star, dims, char.generator)


def sharp_of(f, N):
    """f^sharp: the stable image of f^n on F_{q^{mN}} as a canonical basis."""
    bases, _ = image_chain(f, N)
    return bases[-1]


def sharp_compare(f, g, N):
    """Compare f^sharp and g^sharp inside F_{q^{mN}}."""
    for h in (f, g):
        if not h.spec.is_finite:
            raise ModeMismatch("sharp_compare requires FINITE mode")
        if ord_tau(h) == 0:
            raise PreconditionViolated(f"{h} is separable; sharp groups of tau-multiples are compared")
    p = f.spec.p
    U, V = sharp_of(f, N), sharp_of(g, N)
    fg = linalg.subspace_contains(U, V, p)
    gf = linalg.subspace_contains(V, U, p)
    if fg and gf:
        return EQUAL
    if fg:
        return F_CONTAINS_G
    if gf:
        return G_CONTAINS_F
    return INCOMPARABLE


# --- endomorphisms and commutation ------------------------------------------

def _as_ore(spec, psi):
    if isinstance(psi, OrePoly):
        return psi
    return OrePoly.const(spec, psi)


def is_endomorphism(M, psi):
    psi = _as_ore(M.spec, psi)
    return psi * M.phi_t == M.phi_t * psi


def commutator(f, g):
    return f * g - g * f


def commutation_exponent(M, psi, n_max=8):
    """Least n <= n_max with psi phi_{t^n} = phi_{t^n} psi, else None (no claim beyond n_max)."""
    if n_max < 1:
        raise PreconditionViolated("n_max must be >= 1")
    psi = _as_ore(M.spec, psi)
    for n in range(1, n_max + 1):
        phi_n = M.phi_action(Poly.monomial(M.spec.gf, n))
        if psi * phi_n == phi_n * psi:
            return n
    return None


def frobenius_orbit_length(spec, lam):
    """Least d >= 1 with lam^(q^d) = lam."""
    x = lam.frob(spec.e)
    d = 1
    while x != lam:
        x = x.frob(spec.e)
        d += 1
    return d


def skew_exponent(f, lam):
    """k with f lam = lam^(q^k) f, searched over the Frobenius orbit of lam; None if none."""
    spec = f.spec
    lam = _host_const(spec, lam)
    if lam.is_zero():
        raise PreconditionViolated("lambda must be nonzero")
    lhs = f * OrePoly.const(spec, lam)
    x = lam
    for k in range(frobenius_orbit_length(spec, lam)):
        if OrePoly.const(spec, x) * f == lhs:
            return k
        x = x.frob(spec.e)
    return None


def _host_const(spec, lam):
    if isinstance(lam, FFElem) and not spec.is_finite:
        return spec.const(lam)
    return lam


def binomial_mod(n, k, p):
    """C(n, k) mod p by Lucas' theorem."""
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * math.comb(a, b) % p
        n //= p
        k //= p
    return out


@dataclass(frozen=True)
class E35Report:
    """Why (1 + f)^{2n} does not commute with lam.

    ``power`` is the largest p-power p^l <= 2n; ``binomial`` is C(2n, p^l) mod p,
    the coefficient of f^{p^l} in (1 + f)^{2n}.
    """

    n: int
    p: int
    l: int
    power: int
    binomial: int
    commutator: OrePoly = field(repr=False)

    @property
    def obstructed(self):
        return self.binomial != 0 and not self.commutator.is_zero()

    def __bool__(self):
        return self.obstructed


def verify_e35_obstruction(f, lam, n):
    spec = f.spec
    p = spec.p
    if p == 2:
        raise PreconditionViolated("the even-power obstruction needs p > 2")
    if n < 1:
        raise PreconditionViolated("n must be >= 1")
    lam = _host_const(spec, lam)
    if spec.in_fq(lam):
        raise PreconditionViolated("lambda lies in F_q, which is central")
    if skew_exponent(f, lam) != 1:
        raise PreconditionViolated("f lam = lam^q f does not hold")
    l = 0
    while p ** (l + 1) <= 2 * n:
        l += 1
    g = (OrePoly.one(spec) + f) ** (2 * n)
    L = OrePoly.const(spec, lam)
    return E35Report(n, p, l, p ** l, binomial_mod(2 * n, p ** l, p), commutator(g, L))


__all__ = [
    "EQUAL", "F_CONTAINS_G", "G_CONTAINS_F", "INCOMPARABLE", "SharpGroup", "E35Report",
    "image_chain", "sharp", "sharp_of", "sharp_compare", "is_endomorphism", "commutator",
    "commutation_exponent", "skew_exponent", "frobenius_orbit_length", "binomial_mod",
    "verify_e35_obstruction",
]
