"""Framed-link calculus for chain links and the cobordism W.

Links are stored only through their linking matrix (framings on the
diagonal).  All spin-structure logic depends on linking numbers mod 2, so no
orientation conventions are modeled.  A coloring is a tuple of 0/1 bits; bit
``i`` set means component ``i`` (0-based) lies in the sublink.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    IndexOutOfRange,
    InvalidSeifertData,
    NotCharacteristic,
    NotCoprime,
    PreconditionError,
    ResourceLimit,
    SameComponent,
)
from .seifert import SeifertData

Coloring = tuple[int, ...]

MAX_NULLITY = 20

__all__ = [
    "FramedLink",
    "Coloring",
    "RelativeDiagram",
    "RuleReport",
    "ExtensionReport",
    "StructureReport",
    "slam_dunk_expand",
    "evaluate_expansion",
    "chain_link",
    "disjoint_union",
    "h1_order",
    "is_characteristic",
    "characteristic_sublinks",
    "first_component_rule",
    "handle_slide",
    "build_cobordism",
    "spin_extension",
    "structure_report",
]


@dataclass(frozen=True)
class FramedLink:
    linking: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(map(int, row)) for row in self.linking)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise PreconditionError("linking matrix must be square")
        if rows != tuple(zip(*rows)):
            raise PreconditionError("linking matrix is not symmetric")
        object.__setattr__(self, "linking", rows)

    @property
    def m(self) -> int:
        return len(self.linking)

    @property
    def framings(self) -> tuple[int, ...]:
        return tuple(self.linking[i][i] for i in range(self.m))


def slam_dunk_expand(p: int, q: int) -> list[int]:
    """Integer framings of the chain obtained from ``p/q`` surgery on an unknot.

    Repeatedly writes ``p = n q - r`` with ``0 <= r < q`` and continues with
    ``q/r``, so that ``p/q = n_1 - 1/(n_2 - 1/(... - 1/n_m))``.
    """
    if p < 1 or q < 1:
        raise PreconditionError(f"slam-dunk needs p, q >= 1, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    out = []
    while True:
        n = -(-p // q)
        r = n * q - p
        out.append(n)
        if r == 0:
            return out
        p, q = q, r


def evaluate_expansion(coeffs: Sequence[int]) -> Fraction:
    """``n_1 - 1/(n_2 - 1/(... - 1/n_m))``."""
    value = Fraction(coeffs[-1])
    for n in reversed(coeffs[:-1]):
        value = n - 1 / value
    return value


def chain_link(framings: Sequence[int]) -> FramedLink:
    m = len(framings)
    rows = [[0] * m for _ in range(m)]
    for i, f in enumerate(framings):
        rows[i][i] = f
        if i + 1 < m:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return FramedLink(tuple(map(tuple, rows)))


def disjoint_union(*links: FramedLink) -> FramedLink:
    m = sum(L.m for L in links)
    rows = [[0] * m for _ in range(m)]
    off = 0
    for L in links:
        for i, row in enumerate(L.linking):
            rows[off + i][off:off + L.m] = row
        off += L.m
    return FramedLink(tuple(map(tuple, rows)))


def _det(matrix) -> int:
    # exact elimination touching only nonzero entries; banded chains stay O(m)
    rows = [{j: Fraction(x) for j, x in enumerate(row) if x} for row in matrix]
    n = len(rows)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i].get(k)), None)
        if piv is None:
            return 0
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        pivot_row = rows[k]
        pivot = pivot_row[k]
        det *= pivot
        for i in range(k + 1, n):
            x = rows[i].get(k)
            if not x:
                continue
            factor = x / pivot
            row = rows[i]
            for j, y in pivot_row.items():
                v = row.get(j, 0) - factor * y
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
    assert det.denominator == 1
    return int(det)


def h1_order(link: FramedLink) -> int:
    """``|det(linking)|``; 0 means H_1 of the surgered manifold is infinite."""
    return abs(_det(link.linking))


def _parity_rows(link: FramedLink) -> list[int]:
    return [int("".join("1" if x & 1 else "0" for x in reversed(row)) or "0", 2) for row in link.linking]


def is_characteristic(link: FramedLink, bits: Sequence[int]) -> bool:
    """``lk(L', K) = lk(K, K) mod 2`` for every component ``K``."""
    if len(bits) != link.m:
        raise IndexOutOfRange(f"coloring has {len(bits)} bits, link has {link.m} components")
    for i, row in enumerate(link.linking):
        if (sum(x * b for x, b in zip(row, bits)) - row[i]) % 2:
            return False
    return True


def characteristic_sublinks(link: FramedLink) -> list[Coloring]:
    """All characteristic colorings, in lexicographic order.

    Solves ``linking . x = diag(linking)`` over GF(2) with bit-packed rows:
    a particular solution plus the span of the nullspace.
    """
    m = link.m
    rows = _parity_rows(link)
    # augmented bit m holds the right-hand side
    aug = [row | ((link.linking[i][i] & 1) << m) for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, m) if (aug[i] >> col) & 1), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(m):
            if i != r and (aug[i] >> col) & 1:
                aug[i] ^= aug[r]
        pivots.append(col)
        r += 1
    if any((aug[i] >> m) & 1 for i in range(r, m)):
        return []  # cannot happen for symmetric matrices
    free = [c for c in range(m) if c not in pivots]
    if len(free) > MAX_NULLITY:
        raise ResourceLimit(f"2^{len(free)} characteristic sublinks is too many to list")
    particular = 0
    for i, col in enumerate(pivots):
        if (aug[i] >> m) & 1:
            particular |= 1 << col
    basis = []
    for f in free:
        vec = 1 << f
        for i, col in enumerate(pivots):
            if (aug[i] >> f) & 1:
                vec |= 1 << col
        basis.append(vec)
    solutions = []
    for mask in range(1 << len(basis)):
        x = particular
        for t, vec in enumerate(basis):
            if (mask >> t) & 1:
                x ^= vec
        solutions.append(tuple((x >> i) & 1 for i in range(m)))
    return sorted(solutions)


@dataclass
class RuleReport:
    p: int
    q: int
    framings: list[int]
    predicted: str
    computed: str
    colorings: list[Coloring]

    @property
    def agree(self) -> bool:
        return self.predicted == self.computed


def _first_component_status(colorings):
    firsts = {c[0] for c in colorings}
    if firsts == {0, 1} and len(colorings) == 2:
        return "split"
    if firsts == {1}:
        return "colored"
    if firsts == {0}:
        return "uncolored"
    return "inconsistent"


def first_component_rule(p: int, q: int) -> RuleReport:
    """Compare the predicted and computed membership of the first chain component.

    Prediction for the chain of ``p/q``: ``p`` even gives two sublinks told
    apart by the first component; ``p`` odd, ``q`` even leaves it uncolored;
    ``p``, ``q`` odd colors it.
    """
    if not 0 < q < p:
        raise PreconditionError(f"need 0 < q < p, got ({p}, {q})")
    framings = slam_dunk_expand(p, q)
    if p % 2 == 0:
        predicted = "split"
    elif q % 2 == 0:
        predicted = "uncolored"
    else:
        predicted = "colored"
    colorings = characteristic_sublinks(chain_link(framings))
    return RuleReport(p, q, framings, predicted, _first_component_status(colorings), colorings)


def handle_slide(
    link: FramedLink, coloring: Sequence[int], i: int, j: int, sign: int = 1
) -> tuple[FramedLink, Coloring]:
    """Slide component ``i`` over component ``j``.

    The class of ``K_i`` becomes ``K_i + sign K_j``: row and column ``i`` gain
    ``sign`` times row and column ``j`` and the framing becomes
    ``f_i + f_j + 2 sign lk(i, j)``.  Bit ``j`` of the coloring flips iff bit
    ``i`` is set.
    """
    m = link.m
    if not (0 <= i < m and 0 <= j < m):
        raise IndexOutOfRange(f"components ({i}, {j}) out of range for m={m}")
    if i == j:
        raise SameComponent(f"cannot slide component {i} over itself")
    if sign not in (1, -1):
        raise PreconditionError(f"sign must be +1 or -1, got {sign}")
    if not is_characteristic(link, coloring):
        raise NotCharacteristic(f"{tuple(coloring)} is not characteristic")
    A = link.linking
    rows = [list(row) for row in A]
    for k in range(m):
        if k != i:
            rows[i][k] = rows[k][i] = A[i][k] + sign * A[j][k]
    rows[i][i] = A[i][i] + A[j][j] + 2 * sign * A[i][j]
    bits = list(coloring)
    if bits[i]:
        bits[j] ^= 1
    return FramedLink(tuple(map(tuple, rows))), tuple(bits)


@dataclass(frozen=True)
class RelativeDiagram:
    """Bracketed link plus one unbracketed knot ``K`` (the attached 2-handle)."""

    bracketed: FramedLink
    attach_framing: int
    attach_linking: tuple[int, ...]

    def __post_init__(self):
        if len(self.attach_linking) != self.bracketed.m:
            raise PreconditionError("attach_linking length must match the bracketed link")


def build_cobordism(data: SeifertData) -> RelativeDiagram:
    """Integral relative diagram of W: one chain per fiber, each linked once by ``K``."""
    if not isinstance(data, SeifertData):
        raise InvalidSeifertData("expected SeifertData")
    chains = []
    attach = []
    for a_i, b_i in zip(data.a_vec, data.b_vec):
        chain = chain_link(slam_dunk_expand(a_i, b_i % a_i))
        chains.append(chain)
        attach.extend([1] + [0] * (chain.m - 1))
    return RelativeDiagram(disjoint_union(*chains), data.b, tuple(attach))


@dataclass
class ExtensionReport:
    candidates: list[tuple[Coloring, int, bool]]

    @property
    def exists(self) -> bool:
        return any(ok for _, _, ok in self.candidates)

    @property
    def extendable(self) -> list[Coloring]:
        return [c for c, _, ok in self.candidates if ok]


def spin_extension(diagram: RelativeDiagram) -> ExtensionReport:
    """A boundary spin structure ``L^c`` extends iff ``lk(L^c, K) = lk(K, K) mod 2``."""
    out = []
    for bits in characteristic_sublinks(diagram.bracketed):
        total = sum(x * b for x, b in zip(diagram.attach_linking, bits))
        out.append((bits, total, (total - diagram.attach_framing) % 2 == 0))
    return ExtensionReport(out)


@dataclass
class StructureReport:
    a_vec: tuple[int, ...]
    product: int
    product_even: bool
    spinnable: bool
    spin_structures_on_W: int
    extension_agrees: bool
    spinc_on_W: str
    spinc_on_boundary_lens: str
    canonical_spinc_extension: str | None
    pi1_W: str
    exact_sequence: str
    extension: ExtensionReport = field(repr=False)


def structure_report(data: SeifertData) -> StructureReport:
    """Spin and spin^c facts about W, keyed on the parity of ``a = prod a_i``."""
    if not isinstance(data, SeifertData):
        raise InvalidSeifertData("expected SeifertData")
    a = data.a
    even = a % 2 == 0
    ext = spin_extension(build_cobordism(data))
    gens = ", ".join(f"x{i + 1}" for i in range(data.n))
    powers = " = ".join(f"x{i + 1}^{a_i}" for i, a_i in enumerate(data.a_vec))
    product = "".join(f"x{i + 1}" for i in range(data.n))
    name = "Sigma(" + ",".join(map(str, data.a_vec)) + ")"
    return StructureReport(
        a_vec=data.a_vec,
        product=a,
        product_even=even,
        spinnable=even,
        spin_structures_on_W=1 if even else 0,
        extension_agrees=ext.exists == even,
        spinc_on_W="Z",
        spinc_on_boundary_lens=f"Z/2 + 2Z/{a}" if even else f"2Z/{a}",
        canonical_spinc_extension=None if even else f"class k*{a} in H^2(W;Z) = Z, k odd",
        pi1_W=f"<{gens} | {powers} = {product} = 1>",
        exact_sequence=f"0 -> Z -> pi1({name}) -> pi1(W) -> 0, 1 |-> h",
        extension=ext,
    )
