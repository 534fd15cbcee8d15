"""Symmetric multilinear intersection form on a divisor lattice.

The tensor stores one rational per sorted multi-index; evaluation is the
full multilinear expansion, so degree-n products of divisor classes and
divisor/curve pairings come out exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityMismatch, InvalidLength, ParseError, RankMismatch
from .linalg import QVector, format_fraction, qvec, to_fraction


@dataclass(frozen=True)
class DivisorClass:
    """Exact rational coordinates in the divisor basis {L_1, ..., L_rho}."""

    coords: QVector

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if self.rank != other.rank:
            raise RankMismatch("adding divisor classes of different ranks")
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        if self.rank != other.rank:
            raise RankMismatch("subtracting divisor classes of different ranks")
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, scalar) -> "DivisorClass":
        c = to_fraction(scalar)
        return DivisorClass(tuple(c * a for a in self.coords))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_json(self) -> list[str]:
        return [format_fraction(a) for a in self.coords]


def divisor(coords) -> DivisorClass:
    return DivisorClass(qvec(coords))


@dataclass(frozen=True)
class CurveClass:
    """Coordinates in the curve basis plus the divisor/curve pairing matrix.

    The pairing ``P[i][j] = L_i . l_j`` travels with the class instead of
    being assumed, because the natural dual basis of {L_1, L_2} on the
    rank-2 database entries is order-swapped; carrying P prevents a silent
    transposition.
    """

    coords: QVector
    pairing: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.coords)


def curve(coords, pairing) -> CurveClass:
    rows = tuple(qvec(row) for row in pairing)
    return CurveClass(qvec(coords), rows)


SWAP_PAIRING = (
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(0)),
)


class IntersectionTensor:
    """Sparse symmetric tensor of degree-n intersection numbers.

    Entries are stored once per sorted multi-index; unlisted entries are
    zero (the rank-2 tables list only four numbers per variety).
    """

    def __init__(self, dim: int, rank: int, entries: dict):
        if dim < 1 or rank < 1:
            raise RankMismatch("tensor needs positive dimension and rank")
        self.dim = dim
        self.rank = rank
        self.entries: dict[tuple[int, ...], Fraction] = {}
        for index, value in entries.items():
            key = self._normalize_index(index)
            val = to_fraction(value)
            if val != 0:
                self.entries[key] = val

    def _normalize_index(self, index) -> tuple[int, ...]:
        if isinstance(index, str):
            try:
                parts = tuple(int(p) for p in index.split(","))
            except ValueError:
                raise ParseError(f"bad tensor index {index!r}") from None
        else:
            parts = tuple(int(p) for p in index)
        if len(parts) != self.dim:
            raise ArityMismatch(f"tensor index {parts} has arity {len(parts)}, expected {self.dim}")
        if any(p < 0 or p >= self.rank for p in parts):
            raise RankMismatch(f"tensor index {parts} outside rank {self.rank}")
        return tuple(sorted(parts))

    def entry(self, index) -> Fraction:
        return self.entries.get(self._normalize_index(index), Fraction(0))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rank": self.rank,
            "entries": {
                ",".join(str(i) for i in key): format_fraction(val)
                for key, val in sorted(self.entries.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntersectionTensor":
        for key in ("dim", "rank", "entries"):
            if key not in data:
                raise ParseError(f"tensor object: missing key '{key}'")
        return cls(data["dim"], data["rank"], data["entries"])

    def __eq__(self, other):
        if not isinstance(other, IntersectionTensor):
            return NotImplemented
        return (self.dim, self.rank, self.entries) == (other.dim, other.rank, other.entries)


def eval_product(tensor: IntersectionTensor, classes: list[DivisorClass]) -> Fraction:
    """Degree-n product of exactly n divisor classes, fully expanded.

    Symmetric and multilinear in its arguments by construction: the sum
    runs over all index tuples weighted by the coordinate products.
    """
    if len(classes) != tensor.dim:
        raise ArityMismatch(f"{len(classes)} classes against a degree-{tensor.dim} tensor")
    for c in classes:
        if c.rank != tensor.rank:
            raise RankMismatch(f"class of rank {c.rank} against tensor rank {tensor.rank}")
    total = Fraction(0)
    for index in itertools.product(range(tensor.rank), repeat=tensor.dim):
        coeff = Fraction(1)
        for c, i in zip(classes, index):
            coeff *= c.coords[i]
            if coeff == 0:
                break
        if coeff == 0:
            continue
        total += coeff * tensor.entries.get(tuple(sorted(index)), Fraction(0))
    return total


def surface_restriction_form(tensor: IntersectionTensor,
                             cls: DivisorClass) -> tuple[Fraction, Fraction]:
    """Coefficients (alpha, beta) with ``L^2 . (n L_1 + m L_2) = alpha n + beta m``.

    Restriction of the square of ``cls`` to surfaces in the rank-2 divisor
    lattice of a threefold.
    """
    if tensor.dim != 3 or tensor.rank != 2:
        raise RankMismatch("surface restriction form needs a threefold tensor of rank 2")
    if cls.rank != 2:
        raise RankMismatch("surface restriction form needs a rank-2 divisor class")
    basis = [divisor([1, 0]), divisor([0, 1])]
    alpha = eval_product(tensor, [cls, cls, basis[0]])
    beta = eval_product(tensor, [cls, cls, basis[1]])
    return alpha, beta


def pair(d: DivisorClass, c: CurveClass) -> Fraction:
    """Duality pairing ``D^T P C`` between divisor and curve classes."""
    if d.rank != len(c.pairing) or any(len(row) != c.rank for row in c.pairing):
        raise RankMismatch("incompatible divisor/curve ranks for the pairing")
    total = Fraction(0)
    for i, di in enumerate(d.coords):
        if di == 0:
            continue
        for j, cj in enumerate(c.coords):
            if cj == 0:
                continue
            total += di * c.pairing[i][j] * cj
    return total


RAY_LENGTH_RANGE = (1, 3)


def anticanonical_from_rays(mu1: int, mu2: int) -> DivisorClass:
    """Anticanonical class ``mu2 L_1 + mu1 L_2`` from the two ray lengths.

    The lengths are the minimal anticanonical degrees of rational curves on
    the two extremal rays; the taxonomy only allows values 1, 2, 3.
    """
    lo, hi = RAY_LENGTH_RANGE
    for mu in (mu1, mu2):
        if not isinstance(mu, int) or mu < lo or mu > hi:
            raise InvalidLength(f"ray length {mu} outside the taxonomy range [{lo}, {hi}]")
    return divisor([mu2, mu1])
