"""Seifert homology spheres and the real part of their e-invariants.

``Sigma(a_1, ..., a_n)`` is described by pairwise coprime multiplicities
``a_i`` and integers ``b, b_i`` with ``sum_i b_i a/a_i - b a = 1`` where
``a = prod a_i``.  A representation with ``rho(h)`` scalar is summarized by a
:class:`RepType`: rank ``N``, central exponent ``r_h`` and the exponents
``s[j][k]`` of the eigenvalues of ``rho(x_j)``.

Three routes compute ``2N Re(e)`` in Q/Z and must agree exactly:

* :func:`e_real` -- ``sum_i sum_{k<l} a (s_k(i) - s_l(i))^2 / a_i^2``
* :func:`e_real_via_bprime` -- the same sum with ``b'_i / a_i`` in place of
  ``a / a_i^2``
* :func:`e_real_via_cobordism` -- sum of lens-space xi-invariants of
  ``L(a_i, -b_i)`` over ordered pairs ``k != l``
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    InvalidSeifertData,
    InvalidType,
    NotCoprime,
    NotPairwiseCoprime,
    ShapeMismatch,
)
from .exactmath import ResidueQmodZ, mod_inverse, residue
from .lens import spin_representative, xi_closed_form

__all__ = [
    "SeifertData",
    "RepType",
    "Check",
    "ValidationReport",
    "solve_coefficients",
    "seifert_data",
    "validate_type",
    "eigenvalue_exponents",
    "bprime",
    "quadratic_residue",
    "e_real",
    "e_real_via_bprime",
    "e_real_via_cobordism",
    "e_real_statement",
]


def _check_multiplicities(a_vec):
    if len(a_vec) < 2:
        raise InvalidSeifertData(f"need at least two exceptional fibers, got {len(a_vec)}")
    for a_i in a_vec:
        if a_i < 2:
            raise InvalidSeifertData(f"multiplicities must be >= 2, got {a_i}")
    for x, y in itertools.combinations(a_vec, 2):
        if math.gcd(x, y) != 1:
            raise NotPairwiseCoprime(f"{x} and {y} share the factor {math.gcd(x, y)}")


@dataclass(frozen=True)
class SeifertData:
    a_vec: tuple[int, ...]
    b: int
    b_vec: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a_vec", tuple(int(x) for x in self.a_vec))
        object.__setattr__(self, "b_vec", tuple(int(x) for x in self.b_vec))
        _check_multiplicities(self.a_vec)
        if len(self.b_vec) != len(self.a_vec):
            raise InvalidSeifertData("a_vec and b_vec differ in length")
        a = self.a
        total = sum(b_i * (a // a_i) for a_i, b_i in zip(self.a_vec, self.b_vec))
        if total - self.b * a != 1:
            raise InvalidSeifertData(
                f"sum b_i a/a_i - b a = {total - self.b * a}, expected 1"
            )

    @property
    def n(self) -> int:
        return len(self.a_vec)

    @property
    def a(self) -> int:
        return math.prod(self.a_vec)


def solve_coefficients(a_vec: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical ``(b, b_vec)`` with ``b_i`` in ``[0, a_i)``."""
    a_vec = tuple(int(x) for x in a_vec)
    _check_multiplicities(a_vec)
    a = math.prod(a_vec)
    b_vec = tuple(mod_inverse((a // a_i) % a_i, a_i) for a_i in a_vec)
    total = sum(b_i * (a // a_i) for a_i, b_i in zip(a_vec, b_vec))
    b, rem = divmod(total - 1, a)
    assert rem == 0
    return b, b_vec


def seifert_data(a_vec: Sequence[int]) -> SeifertData:
    b, b_vec = solve_coefficients(a_vec)
    return SeifertData(tuple(a_vec), b, b_vec)


@dataclass(frozen=True)
class RepType:
    """Eigenvalue type of a representation; ``s[j][k]`` is ``s_k(j)``.

    ``r_h`` is kept as the given integer: ``rho(h)`` only sees it mod ``N``,
    but the exponents ``N s_k(j) - b_j r_h`` depend on the representative.
    """

    N: int
    r_h: int
    s: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.N < 1:
            raise ShapeMismatch(f"rank must be positive, got {self.N}")
        object.__setattr__(self, "r_h", int(self.r_h))
        object.__setattr__(self, "s", tuple(tuple(int(x) for x in row) for row in self.s))

    @classmethod
    def trivial(cls, n: int) -> "RepType":
        return cls(1, 0, tuple((0,) for _ in range(n)))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def validate_type(data: SeifertData, rep: RepType) -> ValidationReport:
    """Check the bounds and determinant constraints of ``rep`` against ``data``.

    Passing only says the eigenvalue data is consistent with the abelianized
    relations in SL_N; it does not prove that such a representation exists.
    """
    if len(rep.s) != data.n or any(len(row) != rep.N for row in rep.s):
        raise ShapeMismatch(f"type matrix must be {data.n} x {rep.N}")
    report = ValidationReport()
    for j, (a_j, b_j, row) in enumerate(zip(data.a_vec, data.b_vec, rep.s)):
        in_range = all(0 <= x < a_j for x in row)
        report.checks.append(Check(f"bounds[{j}]", in_range, f"0 <= s < {a_j}: {row}"))
        lhs = sum(row) % a_j
        rhs = (b_j * rep.r_h) % a_j
        report.checks.append(
            Check(f"determinant[{j}]", lhs == rhs, f"sum s = {lhs}, b_j r_h = {rhs} (mod {a_j})")
        )
    return report


def _require_valid(data, rep):
    report = validate_type(data, rep)
    if not report.ok:
        names = ", ".join(c.name for c in report.failures)
        raise InvalidType(f"representation type fails: {names}")


def eigenvalue_exponents(data: SeifertData, rep: RepType, j: int) -> list[tuple[int, int]]:
    """Exponents ``(N s_k(j) - b_j r_h) mod N a_j`` over ``N a_j`` for fiber ``j`` (0-based)."""
    if not 0 <= j < data.n:
        raise IndexOutOfRange(f"fiber index {j} out of range for n={data.n}")
    _require_valid(data, rep)
    den = rep.N * data.a_vec[j]
    shift = data.b_vec[j] * rep.r_h
    return [((rep.N * s - shift) % den, den) for s in rep.s[j]]


def bprime(a_i: int, b_i: int) -> int:
    """Inverse mod ``2 a_i`` of the odd representative of ``b_i`` (``b_i`` or ``b_i + a_i``)."""
    if math.gcd(a_i, b_i) != 1:
        raise NotCoprime(f"b_i={b_i} is not coprime to a_i={a_i}")
    if b_i % 2 == 0:
        b_i += a_i
    return mod_inverse(b_i, 2 * a_i)


def _pair_differences(row):
    return [x - y for x, y in itertools.combinations(row, 2)]


def quadratic_residue(data: SeifertData, rows) -> ResidueQmodZ:
    """``sum_i sum_{k<l} a (s_k(i) - s_l(i))^2 / a_i^2`` mod Z, with no type checks."""
    a = data.a
    total = Fraction(0)
    for a_i, row in zip(data.a_vec, rows):
        total += Fraction(a * sum(t * t for t in _pair_differences(row)), a_i * a_i)
    return residue(total)


def e_real(data: SeifertData, rep: RepType) -> ResidueQmodZ:
    """``2N Re(e)`` of a representation of the given type, in Q/Z."""
    _require_valid(data, rep)
    return quadratic_residue(data, rep.s)


def e_real_via_bprime(data: SeifertData, rep: RepType) -> ResidueQmodZ:
    _require_valid(data, rep)
    total = Fraction(0)
    for a_i, b_i, row in zip(data.a_vec, data.b_vec, rep.s):
        bp = bprime(a_i, b_i)
        total += Fraction(bp * sum(t * t for t in _pair_differences(row)), a_i)
    return residue(total)


def e_real_via_cobordism(data: SeifertData, rep: RepType) -> ResidueQmodZ:
    """Sum of ``xi(rho_{s_k - s_l}, L(a_i, -b_i))`` over ordered pairs ``k != l``."""
    _require_valid(data, rep)
    total = ResidueQmodZ(Fraction(0))
    for a_i, b_i, row in zip(data.a_vec, data.b_vec, rep.s):
        q = spin_representative(-b_i, a_i)
        for x, y in itertools.permutations(row, 2):
            total += xi_closed_form(a_i, q, x - y)
    return total


def e_real_statement(data: SeifertData, rep: RepType) -> ResidueQmodZ:
    """``sum_i sum_{k,l} a (s_k(i) - s_l(i))^2 / a_i`` reduced mod Z.

    Every term is an integer, so this is always 0; it is reported only for
    comparison with :func:`e_real`.
    """
    _require_valid(data, rep)
    a = data.a
    total = Fraction(0)
    for a_i, row in zip(data.a_vec, rep.s):
        total += Fraction(a * sum((x - y) ** 2 for x in row for y in row), a_i)
    return residue(total)
