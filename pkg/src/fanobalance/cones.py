"""Rational polyhedral cones in dual description.

A cone is held as a pair of exact descriptions: extremal generators and
inward facet normals.  Conversion between the two runs the incremental
double description method over `fractions.Fraction`; no floating point is
involved anywhere.  Ranks in this library stay small (<= 16), so clarity
wins over asymptotic tricks throughout.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction

from .errors import DimensionMismatch, EmptyCone, NotMember, ParseError
from .linalg import (
    QVector,
    check_length,
    dot,
    format_fraction,
    in_span,
    is_zero,
    primitive,
    qvec,
    span_rank,
    vec_neg,
    vec_scale,
    vec_sub,
    with_positive_leading,
    zero_vector,
)

MAX_SUPPORTED_RANK = 16


def _unit_vectors(rank: int) -> list[QVector]:
    return [tuple(Fraction(1 if i == j else 0) for j in range(rank)) for i in range(rank)]


def dual_extreme_rays(vectors: list[QVector], rank: int) -> tuple[list[QVector], list[QVector]]:
    """Extreme rays and lineality basis of ``{y : v . y >= 0 for all v}``.

    This is the double description method with incremental constraint
    insertion.  The state is a lineality basis ``B`` and a ray list ``R``
    with, for each ray, the set of already-processed constraints it
    saturates; the represented set is always ``span(B) + cone(R)``.

    Inserting a constraint ``a``:

    * if ``a`` is nonzero on the lineality space, one basis vector ``b*``
      with ``a(b*) > 0`` leaves the basis and becomes a ray, the remaining
      basis and all rays are sheared into ``ker(a)``;
    * otherwise rays are split by the sign of ``a`` and each adjacent
      (positive, negative) pair contributes the combination ray on
      ``{a = 0}``.  Adjacency uses the combinatorial test: no third ray
      saturates every constraint the pair saturates jointly.

    Returns primitive integer vectors; rays sorted lexicographically,
    lineality vectors sign-normalized to a positive leading entry.
    """
    constraints: list[QVector] = []
    seen: set[QVector] = set()
    for v in vectors:
        if len(v) != rank:
            raise DimensionMismatch(f"constraint of length {len(v)} in rank {rank}")
        p = primitive(v)
        if is_zero(p) or p in seen:
            continue
        seen.add(p)
        constraints.append(p)

    lineality: list[QVector] = _unit_vectors(rank)
    rays: list[tuple[QVector, frozenset[int]]] = []

    for idx, a in enumerate(constraints):
        pivot = None
        for b in lineality:
            if dot(a, b) != 0:
                pivot = b
                break
        if pivot is not None:
            bstar = pivot if dot(a, pivot) > 0 else vec_neg(pivot)
            ab = dot(a, bstar)
            new_lineality = []
            for b in lineality:
                if b is pivot:
                    continue
                new_lineality.append(vec_sub(b, vec_scale(dot(a, b) / ab, bstar)))
            lineality = new_lineality
            new_rays = []
            for r, active in rays:
                r2 = primitive(vec_sub(r, vec_scale(dot(a, r) / ab, bstar)))
                if not is_zero(r2):
                    new_rays.append((r2, active | {idx}))
            new_rays.append((primitive(bstar), frozenset(range(idx))))
            rays = new_rays
            continue

        plus = [(r, act) for r, act in rays if dot(a, r) > 0]
        zero = [(r, act | {idx}) for r, act in rays if dot(a, r) == 0]
        minus = [(r, act) for r, act in rays if dot(a, r) < 0]
        if not minus:
            rays = plus + zero
            continue
        combined: list[tuple[QVector, frozenset[int]]] = []
        for (p, pact), (m, mact) in itertools.product(plus, minus):
            common = pact & mact
            adjacent = True
            for r, act in rays:
                if r is p or r is m:
                    continue
                if common <= act:
                    adjacent = False
                    break
            if not adjacent:
                continue
            comb = primitive(vec_sub(vec_scale(dot(a, p), m), vec_scale(dot(a, m), p)))
            if not is_zero(comb):
                combined.append((comb, frozenset(common | {idx})))
        rays = plus + zero + combined

    lin_rank = len(lineality)
    extreme: list[QVector] = []
    for r, _ in rays:
        active_rows = [c for c in constraints if dot(c, r) == 0]
        if span_rank(active_rows) == rank - lin_rank - 1:
            if r not in extreme:
                extreme.append(r)
    extreme.sort()
    lin_basis = sorted(with_positive_leading(primitive(b)) for b in lineality)
    return extreme, lin_basis


class Cone:
    """A rational polyhedral cone with cached dual description.

    Either description may be supplied; the other is computed on first use
    and cached (compute-once, safe under concurrent readers).  Use the
    :func:`cone_from_generators` / :func:`cone_from_facets` factories for
    canonicalized, cross-validated cones.
    """

    __slots__ = ("ambient_rank", "_generators", "_facets", "_lineality_rank", "_lock")

    def __init__(self, ambient_rank: int,
                 generators: list[QVector] | tuple[QVector, ...] | None = None,
                 facet_normals: list[QVector] | tuple[QVector, ...] | None = None,
                 lineality_rank: int | None = None):
        if ambient_rank < 0 or ambient_rank > MAX_SUPPORTED_RANK:
            raise DimensionMismatch(f"ambient rank {ambient_rank} outside supported range")
        if generators is None and facet_normals is None:
            raise EmptyCone("a cone needs generators or facet normals")
        self.ambient_rank = ambient_rank
        self._generators = None if generators is None else tuple(generators)
        self._facets = None if facet_normals is None else tuple(facet_normals)
        self._lineality_rank = lineality_rank
        self._lock = threading.Lock()
        for vs in (self._generators, self._facets):
            if vs is not None:
                for v in vs:
                    check_length(v, ambient_rank)

    @property
    def generators(self) -> tuple[QVector, ...]:
        if self._generators is None:
            with self._lock:
                if self._generators is None:
                    rays, lin = dual_extreme_rays(list(self._facets), self.ambient_rank)
                    self._generators = _canonical_generators(rays, lin)
                    self._lineality_rank = len(lin)
        return self._generators

    @property
    def facet_normals(self) -> tuple[QVector, ...]:
        if self._facets is None:
            with self._lock:
                if self._facets is None:
                    facets, _ = dual_extreme_rays(list(self._generators), self.ambient_rank)
                    self._facets = tuple(facets)
        return self._facets

    @property
    def lineality_rank(self) -> int:
        if self._lineality_rank is None:
            gens = list(self.generators)
            facets = list(self.facet_normals)
            # lineality = span(generators) meet the kernel of every facet
            span_dim = span_rank(gens)
            if span_dim == 0:
                self._lineality_rank = 0
            else:
                self._lineality_rank = span_dim - span_rank(
                    [tuple(dot(f, g) for f in facets) for g in gens])
        return self._lineality_rank

    @property
    def is_pointed(self) -> bool:
        return self.lineality_rank == 0

    def dim(self) -> int:
        """Dimension of the linear span of the cone."""
        return span_rank(list(self.generators))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank
                and self.generators == other.generators
                and self.facet_normals == other.facet_normals)

    def __hash__(self):
        return hash((self.ambient_rank, self.generators, self.facet_normals))

    def __repr__(self):
        return (f"Cone(rank={self.ambient_rank}, generators={len(self.generators)}, "
                f"facets={len(self.facet_normals)}, lineality={self.lineality_rank})")

    def describes_same_set(self, other: "Cone") -> bool:
        """Exact set equality, decided by mutual generator membership."""
        return (all(contains(other, g) for g in self.generators)
                and all(contains(self, g) for g in other.generators))

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "generators": [[format_fraction(c) for c in g] for g in self.generators],
            "facets": [[format_fraction(c) for c in f] for f in self.facet_normals],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cone":
        if "ambient_rank" not in data:
            raise ParseError("cone object: missing key 'ambient_rank'")
        rank = data["ambient_rank"]
        gens = data.get("generators")
        facets = data.get("facets")
        if gens is None and facets is None:
            raise ParseError("cone object: need 'generators' or 'facets'")
        if gens is not None:
            cone = cone_from_generators([qvec(g) for g in gens], rank)
            if facets is not None:
                stated = cone_from_facets([qvec(f) for f in facets], rank)
                if not cone.describes_same_set(stated):
                    raise ParseError("cone object: generators and facets disagree")
            return cone
        return cone_from_facets([qvec(f) for f in facets], rank)


def _canonical_generators(rays: list[QVector], lineality: list[QVector]) -> tuple[QVector, ...]:
    gens = list(rays)
    for b in lineality:
        gens.append(b)
        gens.append(vec_neg(b))
    return tuple(sorted(set(gens)))


def cone_from_generators(rays: list[QVector], ambient_rank: int) -> Cone:
    """Cone spanned by the given rays, with facets from double description.

    Duplicate and positively-scaled rays are harmless: generators are
    canonicalized to the sorted primitive extremal rays (plus a +/- basis of
    the lineality space), so the construction is idempotent.
    """
    for r in rays:
        check_length(r, ambient_rank)
    facets, _annihilator = dual_extreme_rays(list(rays), ambient_rank)
    # The dual's lineality is the annihilator of span(rays): not a facet, so
    # the primal must be rebuilt inside its own span.
    support = list(facets)
    for s in _annihilator:
        support.append(s)
        support.append(vec_neg(s))
    gens, lin = dual_extreme_rays(support, ambient_rank)
    cone = Cone(ambient_rank, _canonical_generators(gens, lin), tuple(facets), len(lin))
    _check_descriptions(cone)
    return cone


def cone_from_facets(normals: list[QVector], ambient_rank: int) -> Cone:
    """Cone cut out by ``normal . x >= 0``; generators by dualizing twice."""
    cleaned = []
    for n in normals:
        check_length(n, ambient_rank)
        if not is_zero(n):
            cleaned.append(n)
    gens, lin = dual_extreme_rays(cleaned, ambient_rank)
    generators = _canonical_generators(gens, lin)
    facets, _ = dual_extreme_rays(list(generators), ambient_rank)
    cone = Cone(ambient_rank, generators, tuple(facets), len(lin))
    _check_descriptions(cone)
    return cone


def _check_descriptions(cone: Cone) -> None:
    for g in cone.generators:
        for f in cone.facet_normals:
            if dot(f, g) < 0:
                raise EmptyCone("internal: generator violates a facet normal")


def contains(cone: Cone, v: QVector) -> bool:
    """Membership: nonnegative on every facet normal and inside the span."""
    check_length(v, cone.ambient_rank)
    for lam in cone.facet_normals:
        if dot(lam, v) < 0:
            return False
    return in_span(v, list(cone.generators))


def minimal_supported_face(cone: Cone, v: QVector) -> tuple[Cone, int]:
    """Smallest face of ``cone`` cut out by facets vanishing on ``v``.

    Returns the face together with its codimension in the ambient lattice.
    A face of a cone is spanned by the generators lying on it, so the face
    is rebuilt from the generators annihilated by every active normal.
    """
    if not contains(cone, v):
        raise NotMember(f"{v} is not a member of the cone")
    active = [lam for lam in cone.facet_normals if dot(lam, v) == 0]
    face_gens = [g for g in cone.generators
                 if all(dot(lam, g) == 0 for lam in active)]
    face = cone_from_generators(face_gens, cone.ambient_rank)
    codim = cone.ambient_rank - span_rank(face_gens)
    return face, codim


def active_facet_indices(cone: Cone, v: QVector) -> list[int]:
    """Indices (into facet_normals) of the supporting normals vanishing on v."""
    return [i for i, lam in enumerate(cone.facet_normals) if dot(lam, v) == 0]


def nonneg_combination(target: QVector, rays: list[QVector]) -> list[Fraction] | None:
    """Nonnegative rational coefficients writing ``target`` in ``rays``.

    Phase-I simplex with Bland's rule over exact rationals; returns None
    when no such combination exists.  This is the independent membership
    certificate used to cross-check the facet test.
    """
    d = len(target)
    for r in rays:
        if len(r) != d:
            raise DimensionMismatch(f"ray of length {len(r)} against target of length {d}")
    n = len(rays)
    if n == 0:
        return [] if is_zero(target) else None

    # Tableau rows: d equality constraints, columns: n ray variables then d
    # artificials, final column the right-hand side.  Objective: drive the
    # artificials (cost 1 each) to zero.
    rows = []
    for i in range(d):
        row = [rays[j][i] for j in range(n)]
        rhs = target[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(1 if k == i else 0) for k in range(d)]
        rows.append(row + art + [rhs])
    basis = [n + i for i in range(d)]
    # Reduced cost row for minimizing the artificial sum.
    obj = [Fraction(0)] * (n + d + 1)
    for row in rows:
        for c in range(n + d + 1):
            obj[c] += row[c]
    for i in range(d):
        obj[n + i] = Fraction(0)

    while True:
        enter = None
        for c in range(n + d):
            if obj[c] > 0:
                enter = c  # Bland: smallest eligible index
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(d):
            coeff = rows[i][enter]
            if coeff > 0:
                ratio = rows[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return None  # unbounded phase-I cannot happen with b >= 0, defensive
        pivot = rows[leave][enter]
        rows[leave] = [x / pivot for x in rows[leave]]
        for i in range(d):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, rows[leave])]
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    coeffs = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            coeffs[var] = rows[i][-1]
        elif rows[i][-1] != 0:
            return None  # artificial stuck at a positive level
    return coeffs


def zero_cone(ambient_rank: int) -> Cone:
    """The cone consisting of the origin only."""
    return cone_from_generators([], ambient_rank)


def full_space(ambient_rank: int) -> Cone:
    """The whole ambient space (lineality rank equals the ambient rank)."""
    return cone_from_facets([], ambient_rank)


def orthant(ambient_rank: int) -> Cone:
    """The nonnegative orthant; self-dual, handy in tests and databases."""
    return cone_from_generators(_unit_vectors(ambient_rank), ambient_rank)


__all__ = [
    "Cone",
    "cone_from_generators",
    "cone_from_facets",
    "contains",
    "minimal_supported_face",
    "active_facet_indices",
    "nonneg_combination",
    "dual_extreme_rays",
    "zero_cone",
    "full_space",
    "orthant",
    "span_rank",
    "qvec",
    "zero_vector",
]
