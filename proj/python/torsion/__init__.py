"""Exact arithmetic on I_m fibers, the limit Weil pairing and the cusps of X_1(p)."""

from ._torsion import *  # noqa: F401,F403
from ._torsion import InvariantViolation, NotPrincipal  # noqa: F401

__version__ = "0.1.0"
