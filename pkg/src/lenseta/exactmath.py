"""Exact integer and rational helpers, residues in Q/Z, roots of unity.

Rationals are plain :class:`fractions.Fraction` objects, which are always kept
in lowest terms with a positive denominator.  Values of invariants live in
Q/Z and are carried by :class:`ResidueQmodZ`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import NoNearbyRational, NotCoprime, PreconditionError

Rational = Fraction

__all__ = [
    "Rational",
    "ResidueQmodZ",
    "gcd_ext",
    "mod_inverse",
    "residue",
    "root_of_unity",
    "rational_reconstruct",
    "circle_distance",
]


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, u, v)`` with ``u*a + v*b == g``.

    ``g`` is the non-negative gcd.  When ``g > 0`` and ``b != 0`` the
    coefficient ``u`` is normalized into ``[0, |b|/g)`` so results are
    deterministic.

    >>> gcd_ext(3, 10)
    (1, 7, -2)
    """
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_u, u = u, old_u - quot * u
        old_v, v = v, old_v - quot * v
    g, u, v = old_r, old_u, old_v
    if g < 0:
        g, u, v = -g, -u, -v
    if g == 0:
        return 0, 0, 0
    if b != 0:
        step = abs(b) // g
        u %= step
        v = (g - u * a) // b
    return g, u, v


def mod_inverse(x: int, m: int) -> int:
    """Return ``d`` in ``[0, m)`` with ``d*x = 1 (mod m)``."""
    if m < 1:
        raise PreconditionError(f"modulus must be positive, got {m}")
    g, u, _ = gcd_ext(x % m, m)
    if g != 1:
        raise NotCoprime(f"{x} is not invertible mod {m} (gcd {g})")
    return u % m


@dataclass(frozen=True, order=True)
class ResidueQmodZ:
    """A rational number modulo the integers, stored in ``[0, 1)``."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        v -= math.floor(v)
        object.__setattr__(self, "value", v)

    def __add__(self, other):
        if isinstance(other, ResidueQmodZ):
            return ResidueQmodZ(self.value + other.value)
        if isinstance(other, (int, _RationalABC)):
            return ResidueQmodZ(self.value + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ResidueQmodZ(-self.value)

    def __sub__(self, other):
        if isinstance(other, ResidueQmodZ):
            return ResidueQmodZ(self.value - other.value)
        if isinstance(other, (int, _RationalABC)):
            return ResidueQmodZ(self.value - other)
        return NotImplemented

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def signed(self) -> Fraction:
        """Representative in ``(-1/2, 1/2]``."""
        v = self.value
        return v - 1 if v > Fraction(1, 2) else v

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return str(self.value)


def residue(r) -> ResidueQmodZ:
    """Reduce an int or rational into ``[0, 1)``."""
    if isinstance(r, ResidueQmodZ):
        return r
    return ResidueQmodZ(Fraction(r))


def root_of_unity(n: int, k: int) -> complex:
    """``exp(2*pi*i*k/n)`` at double precision.

    ``k`` is reduced mod ``n`` before evaluation; quarter turns are exact.
    """
    if n < 1:
        raise PreconditionError(f"order must be positive, got {n}")
    k %= n
    if (4 * k) % n == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * k) // n]
    theta = 2.0 * math.pi * k / n
    return complex(math.cos(theta), math.sin(theta))


def circle_distance(x: float, y: float) -> float:
    """Distance between ``x`` and ``y`` on R/Z."""
    d = (x - y) % 1.0
    return min(d, 1.0 - d)


def rational_reconstruct(x: float, max_den: int, tol: float) -> Fraction:
    """Snap ``x mod 1`` to the unique ``k/d`` with ``d <= max_den`` within ``tol``.

    Requires ``tol < 1/(2*max_den**2)``, which makes the answer unique.
    """
    if max_den < 1 or not tol > 0:
        raise PreconditionError("max_den and tol must be positive")
    if tol >= 1.0 / (2 * max_den * max_den):
        raise PreconditionError(f"tol={tol} too coarse for max_den={max_den}")
    if not math.isfinite(x):
        raise NoNearbyRational(f"non-finite input {x}")
    frac = x % 1.0
    cand = Fraction(frac).limit_denominator(max_den)
    if abs(float(cand) - frac) > tol:
        raise NoNearbyRational(f"no rational with denominator <= {max_den} within {tol} of {x}")
    return cand - math.floor(cand)
