"""Drinfeld modules over finite fields and F_q(t): Ore polynomials, torsion,
sharp groups, lambda-polynomials, and Mordell-Lang experiments."""

from .basefield import FINITE, RATFUNC, FieldSpec
from .drinfeld import DrinfeldModule
from .ore import OrePoly, parse_ore

__version__ = "0.1.0"

__all__ = ["FINITE", "RATFUNC", "FieldSpec", "DrinfeldModule", "OrePoly", "parse_ore", "__version__"]
