"""xi-invariants of lens spaces.

Two independent routes are provided: the numeric fixed-point (defect) sum over
the nontrivial elements of Z/p, and the exact mod-Z closed form for
``L(p; 1, q)``.  Spin structures are encoded by storing each rotation weight
``q_i`` as an odd representative modulo ``2p``; the square root of
``lambda^{q_i}`` is then ``zeta_{2p}^{k q_i}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _kernels
from .errors import FixedPoint, NotCoprime, PreconditionError, ResourceLimit
from .exactmath import ResidueQmodZ, mod_inverse, residue, root_of_unity

MAX_DEFECT_ORDER = 10**6

__all__ = [
    "LensSpace",
    "spin_representative",
    "defect_factor",
    "xi_defect_sum",
    "xi_closed_form",
    "xi_spin_pair",
    "td2_relative",
    "MAX_DEFECT_ORDER",
]


def spin_representative(q: int, p: int) -> int:
    """Odd representative of ``q`` in ``(0, 2p)``, coprime to ``2p``.

    For odd ``p`` exactly one of ``q``, ``q + p`` is odd, so the choice is
    forced.  For even ``p`` an even ``q`` shares a factor with ``p``.
    """
    if p < 1:
        raise PreconditionError(f"p must be positive, got {p}")
    two_p = 2 * p
    r = q % two_p
    if r % 2 == 0:
        r = (r + p) % two_p
    if math.gcd(r, two_p) != 1:
        raise NotCoprime(f"q={q} is not coprime to 2p={two_p}")
    return r


@dataclass(frozen=True)
class LensSpace:
    """``L(p; q_1, ..., q_l)`` with a chosen spin structure.

    ``q_reps`` are normalized on construction via :func:`spin_representative`.
    """

    p: int
    q_reps: tuple[int, ...]

    def __post_init__(self):
        if self.p < 2:
            raise PreconditionError(f"lens space order must be >= 2, got {self.p}")
        if len(self.q_reps) < 1:
            raise PreconditionError("at least one rotation weight is required")
        for q in self.q_reps:
            if math.gcd(q, self.p) != 1:
                raise NotCoprime(f"weight {q} is not coprime to p={self.p}")
        reps = tuple(spin_representative(q, self.p) for q in self.q_reps)
        object.__setattr__(self, "q_reps", reps)

    @classmethod
    def standard(cls, p: int, q: int) -> "LensSpace":
        """``L(p, q) = L(p; 1, q)``."""
        return cls(p, (1, q))


def defect_factor(p: int, k: int, q_reps: Sequence[int]) -> complex:
    """``prod_i zeta_2p^{k q_i} / (zeta_p^{k q_i} - 1)`` for ``k != 0 mod p``."""
    if k % p == 0:
        raise FixedPoint(f"k={k} is 0 mod p={p}")
    out = 1 + 0j
    for q in q_reps:
        if math.gcd(q, p) != 1:
            raise NotCoprime(f"weight {q} is not coprime to p={p}")
        out *= root_of_unity(2 * p, k * q) / (root_of_unity(p, k * q) - 1)
    return out


def xi_defect_sum(lens: LensSpace, s: int) -> complex:
    """Numeric xi-invariant of ``rho_s`` on ``lens`` (value in C/Z, unreduced).

    Raises :class:`ResourceLimit` above ``MAX_DEFECT_ORDER``.
    """
    if lens.p > MAX_DEFECT_ORDER:
        raise ResourceLimit(f"p={lens.p} exceeds the defect-sum limit {MAX_DEFECT_ORDER}")
    re, im = _kernels.defect_sum(lens.p, s % lens.p, list(lens.q_reps))
    return complex(re, im)


def _inverse_2p(p: int, q: int) -> tuple[int, int]:
    if p < 2:
        raise PreconditionError(f"p must be >= 2, got {p}")
    q = spin_representative(q, p)
    return q, mod_inverse(q, 2 * p)


def xi_closed_form(p: int, q: int, s: int) -> ResidueQmodZ:
    """Exact ``-d s^2/(2p) - d s/2 mod Z`` where ``d q = 1 mod 2p``."""
    _, d = _inverse_2p(p, q)
    return residue(Fraction(-d * s * s, 2 * p) - Fraction(d * s, 2))


def xi_spin_pair(p: int, q: int, s: int) -> tuple[ResidueQmodZ, ResidueQmodZ]:
    """Invariant for both spin structures ``q`` and ``q + p`` on ``L(p, q)``, p even."""
    if p % 2:
        raise PreconditionError(f"p={p} is odd; L(p, q) has a single spin structure")
    if q % 2 == 0 or math.gcd(q, 2 * p) != 1:
        raise NotCoprime(f"q={q} is not coprime to 2p={2 * p}")
    return xi_closed_form(p, q, s), xi_closed_form(p, q + p, s)


def td2_relative(p: int, q: int, s: int) -> Fraction:
    """Degree-two relative Todd bracket times ``-d/(2p)``, as an exact rational.

    The bracket is ``T(s - c) - T(-c)`` with ``c = (1+q)/2`` and
    ``T(x) = x^2 + x (1 + q + p)``.
    """
    q, d = _inverse_2p(p, q)
    c = Fraction(1 + q, 2)
    width = 1 + q + p

    def todd(x):
        return x * x + x * width

    return Fraction(-d, 2 * p) * (todd(s - c) - todd(-c))
