"""Decision procedure for the balanced property of the anticanonical class.

`classify` mechanizes the numeric skeleton of the classification arguments:
threshold and face invariants of the model itself, a scan of curve classes
against the moving-curve degree floor, and a scan of surface classes
against the adjoint effectivity/separation thresholds.  Geometric facts the
numbers cannot see (which families dominate, fiber types, irrationality of
special members) are consumed from the record's cited annotations; where a
class is covered neither by a threshold nor by an annotation, the record is
honestly not machine-classifiable and InsufficientAnnotations is raised.

Comparisons are lexicographic in (a, b).  Witnesses recording only an upper
bound for a (or an undetermined b) are compared pessimistically; they can
cap the verdict but never upgrade it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .criteria import deformation_floor, reider_effective, reider_separates
from .database import FactKind, FanoRecord, GeometricFact, LocusFragment, validate
from .database import (
    VERDICT_BALANCED,
    VERDICT_NONE,
    VERDICT_UNCLASSIFIED,
    VERDICT_WEAKLY_A_BALANCED,
    VERDICT_WEAKLY_BALANCED,
)
from .errors import CorruptData, InsufficientAnnotations, RankMismatch
from .intersection import CurveClass, pair, surface_restriction_form
from .invariants import a_invariant, b_invariant
from .linalg import QVector, format_fraction


class Comparison(str, enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    NA = "NA"


@dataclass(frozen=True)
class ComparisonOutcome:
    """Lexicographic outcome of (a, b) against the ambient pair.

    The second component is NA exactly when the first is LT: a strict drop
    in a settles the comparison before b is consulted.
    """

    a_cmp: Comparison
    b_cmp: Comparison

    def __post_init__(self):
        if (self.b_cmp == Comparison.NA) != (self.a_cmp == Comparison.LT):
            raise ValueError("b comparison is NA exactly when a strictly drops")


@dataclass(frozen=True)
class Witness:
    """One compared test object: description, its (a, b), and the outcome.

    ``pessimistic`` marks upper-bound-only data (b None means the face side
    is undetermined and the outcome records the worst case).
    """

    description: str
    a: Fraction
    b: int | None
    outcome: ComparisonOutcome
    pessimistic: bool = False

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "a": format_fraction(self.a),
            "b": self.b,
            "a_cmp": self.outcome.a_cmp.value,
            "b_cmp": self.outcome.b_cmp.value,
            "pessimistic": self.pessimistic,
        }


@dataclass(frozen=True)
class BalancedVerdict:
    level: str
    witnesses: tuple[Witness, ...]
    exceptional_set: str

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "witnesses": [w.to_json() for w in self.witnesses],
            "exceptional_set": self.exceptional_set,
        }


_LEVEL_ORDER = {
    VERDICT_BALANCED: 3,
    VERDICT_WEAKLY_BALANCED: 2,
    VERDICT_WEAKLY_A_BALANCED: 1,
    VERDICT_NONE: 0,
}


def _compare(a: Fraction, b: int | None, a_x: Fraction, b_x: int) -> ComparisonOutcome:
    if a < a_x:
        return ComparisonOutcome(Comparison.LT, Comparison.NA)
    if a > a_x:
        return ComparisonOutcome(Comparison.GT, _cmp_b(b, b_x))
    return ComparisonOutcome(Comparison.EQ, _cmp_b(b, b_x))


def _cmp_b(b: int | None, b_x: int) -> Comparison:
    if b is None:
        return Comparison.GT  # undetermined face side: assume the worst
    if b < b_x:
        return Comparison.LT
    if b > b_x:
        return Comparison.GT
    return Comparison.EQ


def _cap_for(outcome: ComparisonOutcome) -> int:
    if outcome.a_cmp == Comparison.GT:
        return _LEVEL_ORDER[VERDICT_NONE]
    if outcome.a_cmp == Comparison.EQ:
        if outcome.b_cmp == Comparison.GT:
            return _LEVEL_ORDER[VERDICT_WEAKLY_A_BALANCED]
        if outcome.b_cmp == Comparison.EQ:
            return _LEVEL_ORDER[VERDICT_WEAKLY_BALANCED]
    return _LEVEL_ORDER[VERDICT_BALANCED]


def assemble_exceptional_set(fragments: list[LocusFragment]) -> str:
    """Deterministic union text from the triggered locus fragments.

    Singular-fiber fragments merge into one "singular fibers of f_i ..."
    piece; free-text loci follow in first-trigger order.
    """
    fiber_indexes: list[int] = []
    texts: list[str] = []
    for fragment in fragments:
        if fragment.fiber_index is not None:
            if fragment.fiber_index not in fiber_indexes:
                fiber_indexes.append(fragment.fiber_index)
        elif fragment.text and fragment.text not in texts:
            texts.append(fragment.text)
    pieces: list[str] = []
    if fiber_indexes:
        pieces.append("singular fibers of "
                      + " and ".join(f"f{i}" for i in sorted(fiber_indexes)))
    pieces.extend(texts)
    if not pieces:
        return "empty"
    if len(pieces) == 1 and not fiber_indexes:
        return pieces[0]
    text = "union of " + pieces[0]
    for piece in pieces[1:]:
        joiner = ", and " if " and " in pieces[0] else " and "
        text += joiner + piece
    return text


def _facts_for_curve(rec: FanoRecord, cls: QVector, kind: FactKind) -> list[GeometricFact]:
    return [f for f in rec.annotations if f.kind == kind and f.curve_class == cls]


def _fact_for_divisor(rec: FanoRecord, cls: QVector) -> GeometricFact | None:
    for f in rec.annotations:
        if f.divisor_class == cls and f.kind in (
                FactKind.FIBER_SURFACE_PROFILE,
                FactKind.CONIC_BUNDLE_LINE,
                FactKind.NON_RATIONAL_FIBER):
            return f
    return None


def _lattice_points(rank: int, bound: int):
    if rank == 1:
        for n in range(bound + 1):
            yield (Fraction(n),)
    else:
        for n in range(bound + 1):
            for m in range(bound + 1):
                yield (Fraction(n), Fraction(m))


def _curve_scan(rec: FanoRecord, a_x: Fraction, b_x: int, bound: int,
                witnesses: list[Witness], fragments: list[LocusFragment]) -> None:
    floor = deformation_floor()
    anti = rec.anticanonical
    min_high_degree: Fraction | None = None
    seen_conic: set[QVector] = set()
    for coords in _lattice_points(rec.rank, bound):
        if all(c == 0 for c in coords):
            continue
        degree = pair(anti, CurveClass(coords, rec.curve_pairing))
        if degree <= 0:
            continue  # not an effective curve class on a Fano model
        if degree < floor:
            line_facts = _facts_for_curve(rec, coords, FactKind.DOMINATING_LINE_LOCUS)
            if line_facts:
                for fact in line_facts:
                    fragments.extend(fact.locus)
            else:
                fragments.append(LocusFragment(
                    text="curve classes below the moving-degree floor "
                         "(confined to a closed set by the degree bound)"))
        elif degree == floor:
            for fact in _facts_for_curve(rec, coords, FactKind.DOMINATING_CONIC_CLASS):
                if coords in seen_conic:
                    continue
                seen_conic.add(coords)
                a = fact.a if fact.a is not None else 2 / degree
                b = fact.b if fact.b is not None else 1
                label = ",".join(format_fraction(c) for c in coords)
                witnesses.append(Witness(
                    description=f"dominating conic family in curve class ({label})",
                    a=a, b=b, outcome=_compare(a, b, a_x, b_x)))
        else:
            if min_high_degree is None or degree < min_high_degree:
                min_high_degree = degree
    if min_high_degree is not None:
        a = 2 / min_high_degree
        witnesses.append(Witness(
            description="curves above the conic degree (threshold drops strictly)",
            a=a, b=1, outcome=_compare(a, 1, a_x, b_x)))


def _surface_witness_from_fact(fact: GeometricFact, coords: QVector,
                               a_x: Fraction, b_x: int) -> Witness:
    a = fact.a if fact.a is not None else a_x
    label = ",".join(format_fraction(c) for c in coords)
    return Witness(
        description=f"annotated surface class ({label}): {fact.kind.value}",
        a=a, b=fact.b, outcome=_compare(a, fact.b, a_x, b_x),
        pessimistic=fact.b is None)


def _fiber_class_multiple(coords: QVector, fiber_units: list[QVector]) -> bool:
    for unit in fiber_units:
        scale = None
        ok = True
        for c, u in zip(coords, unit):
            if u == 0:
                if c != 0:
                    ok = False
                    break
            else:
                scale = c / u
        if ok and scale is not None and scale >= 2:
            return True
    return False


def _surface_scan(rec: FanoRecord, a_x: Fraction, b_x: int, bound: int,
                  witnesses: list[Witness], fragments: list[LocusFragment]) -> None:
    anti = rec.anticanonical
    fiber_units = [f.divisor_class for f in rec.annotations
                   if f.fiber_class and f.divisor_class is not None]
    if rec.rank == 2:
        alpha, beta = surface_restriction_form(rec.tensor, anti)
    seen_categories: set[str] = set()

    for coords in _lattice_points(rec.rank, bound):
        if all(c == 0 for c in coords):
            continue
        if _fiber_class_multiple(coords, fiber_units):
            continue  # no irreducible members in multiples of a fiber class
        fact = _fact_for_divisor(rec, coords)
        if fact is not None:
            witnesses.append(_surface_witness_from_fact(fact, coords, a_x, b_x))
            fragments.extend(fact.locus)
            continue

        if rec.rank == 2:
            level = alpha * coords[0] + beta * coords[1]
        else:
            # adjoint tested at c times the fundamental divisor: if some
            # c below the index already clears the effectivity threshold,
            # the threshold invariant drops strictly below a(X).
            index = rec.index
            cube = rec.tensor.entry((0, 0, 0))
            m = coords[0]
            strict_c = None
            for c in range(1, index):
                if c * c * m * cube >= 5:
                    strict_c = c
                    break
            if strict_c is not None:
                category = "strict"
                if category not in seen_categories:
                    seen_categories.add(category)
                    a = Fraction(strict_c, index)
                    witnesses.append(Witness(
                        description="surfaces with adjoint effective below the index "
                                    "(threshold drops strictly)",
                        a=a, b=None,
                        outcome=ComparisonOutcome(Comparison.LT, Comparison.NA),
                        pessimistic=True))
                continue
            level = index * index * m * cube

        if reider_separates(level).holds:
            category = "separates"
            if category not in seen_categories:
                seen_categories.add(category)
                witnesses.append(Witness(
                    description="surfaces at separation level: threshold at most a(X), "
                                "face invariant 1 on equality",
                    a=a_x, b=1, outcome=_compare(a_x, 1, a_x, b_x),
                    pessimistic=True))
        elif reider_effective(level).holds:
            category = "effective-only"
            if category not in seen_categories:
                seen_categories.add(category)
                witnesses.append(Witness(
                    description="surfaces at effectivity level only: threshold at most "
                                "a(X), face side undetermined",
                    a=a_x, b=None,
                    outcome=ComparisonOutcome(Comparison.EQ, Comparison.GT),
                    pessimistic=True))
        else:
            label = ",".join(format_fraction(c) for c in coords)
            raise InsufficientAnnotations(
                f"{rec.name}: surface class ({label}) is below every adjoint "
                "threshold and carries no annotation")


def classify(rec: FanoRecord, scan_bound: int = 20) -> BalancedVerdict:
    """Balanced / weakly balanced / weakly a-balanced verdict for -K.

    Runs the base invariants, the curve scan, and the surface scan, then
    aggregates witness comparisons under the lexicographic order and
    assembles the exceptional-set text from the triggered annotations.
    """
    if scan_bound < 5:
        raise ValueError("scan bound must be at least 5")
    if rec.rank not in (1, 2):
        raise RankMismatch("the decision procedure covers Picard rank 1 and 2 records")
    problems = validate(rec)
    if problems:
        raise CorruptData(f"{rec.name}: {'; '.join(problems)}")

    anti = rec.anticanonical
    a_x = a_invariant(rec, anti)
    b_x = b_invariant(rec, anti)

    witnesses: list[Witness] = []
    fragments: list[LocusFragment] = []
    for fact in rec.annotations:
        if fact.kind == FactKind.EXCEPTIONAL_DIVISOR:
            fragments.extend(fact.locus)
    _curve_scan(rec, a_x, b_x, scan_bound, witnesses, fragments)
    _surface_scan(rec, a_x, b_x, scan_bound, witnesses, fragments)

    level_rank = _LEVEL_ORDER[VERDICT_BALANCED]
    for witness in witnesses:
        level_rank = min(level_rank, _cap_for(witness.outcome))
    level = {v: k for k, v in _LEVEL_ORDER.items()}[level_rank]
    return BalancedVerdict(
        level=level,
        witnesses=tuple(witnesses),
        exceptional_set=assemble_exceptional_set(fragments),
    )


def curve_violation_scan(rec: FanoRecord, scan_bound: int = 20) -> list[QVector]:
    """Curve classes that could beat the ambient threshold invariant.

    These are exactly the classes of anticanonical degree strictly below
    2 / a(X); for a(X) = 1 that means the degree-1 (line) classes.
    """
    problems = validate(rec)
    if problems:
        raise CorruptData(f"{rec.name}: {'; '.join(problems)}")
    anti = rec.anticanonical
    a_x = a_invariant(rec, anti)
    bound_value = 2 / a_x
    out = []
    for coords in _lattice_points(rec.rank, scan_bound):
        if all(c == 0 for c in coords):
            continue
        degree = pair(anti, CurveClass(coords, rec.curve_pairing))
        if 0 < degree < bound_value:
            out.append(coords)
    return out


def verify_all(records: list[FanoRecord], scan_bound: int = 20) -> dict:
    """Compare classify() against every record's expected verdict.

    Records expected to be unclassified are reported but never counted as
    failures; a record the procedure cannot classify (missing annotations)
    is reported as computed "unclassified".  Results are merged in name
    order so the report is deterministic.
    """
    results = []
    n_pass = n_fail = n_unclassified = 0
    for rec in sorted(records, key=lambda r: r.name):
        computed_witnesses: list[dict] = []
        try:
            verdict = classify(rec, scan_bound)
            computed = verdict.level
            computed_witnesses = [w.to_json() for w in verdict.witnesses]
        except InsufficientAnnotations:
            computed = VERDICT_UNCLASSIFIED
        expected = rec.expected_verdict
        match = computed == expected
        if expected == VERDICT_UNCLASSIFIED:
            n_unclassified += 1
        elif match:
            n_pass += 1
        else:
            n_fail += 1
        results.append({
            "name": rec.name,
            "computed": computed,
            "expected": expected,
            "match": match,
            "witnesses": computed_witnesses,
        })
    return {
        "results": results,
        "summary": {"pass": n_pass, "fail": n_fail, "unclassified": n_unclassified},
    }
