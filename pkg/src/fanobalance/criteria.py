"""Numeric adjoint-positivity certificates and curve-degree bounds.

Each certificate is a pure threshold comparison.  The geometric side
conditions of the surface effectivity/separation criteria (the excluded
divisor configurations) cannot be decided from intersection numbers alone;
they are carried verbatim as caveat text and settled elsewhere by database
annotations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvalidDimension, NonpositiveA
from .linalg import format_fraction, to_fraction


class CertificateKind(str, enum.Enum):
    REIDER_EFFECTIVE = "ReiderEffective"
    REIDER_SEPARATES = "ReiderSeparates"
    SIU_BOUND = "SiuBound"
    ANGEHRN_SIU = "AngehrnSiu"
    BEND_AND_BREAK = "BendAndBreak"
    DEFORMATION_FLOOR = "DeformationFloor"
    CURVE_DEGREE_BOUND = "CurveDegreeBound"
    WBAB_BOUND = "WBABBound"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    holds: bool
    threshold: Fraction
    attained: Fraction
    caveats: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "holds": self.holds,
            "threshold": format_fraction(self.threshold),
            "attained": format_fraction(self.attained),
            "caveats": self.caveats,
        }


REIDER_EFFECTIVE_CAVEATS = (
    "excluded configurations: an effective divisor D through the basepoint "
    "with (L.D = 0, D^2 = -1) or (L.D = 1, D^2 = 0)"
)

REIDER_SEPARATES_CAVEATS = (
    "excluded configurations: an effective divisor D through both points "
    "with (L.D = 0, D^2 in {-1, -2}), (L.D = 1, D^2 in {0, -1}), "
    "or (L.D = 2, D^2 = 0)"
)


def reider_effective(l_squared) -> Certificate:
    """Adjoint |K+L| basepoint-free trigger on a surface: L^2 >= 5."""
    attained = to_fraction(l_squared)
    return Certificate(
        kind=CertificateKind.REIDER_EFFECTIVE,
        holds=attained >= 5,
        threshold=Fraction(5),
        attained=attained,
        caveats=REIDER_EFFECTIVE_CAVEATS,
    )


def reider_separates(l_squared) -> Certificate:
    """Adjoint |K+L| separates two points trigger: L^2 >= 10."""
    attained = to_fraction(l_squared)
    return Certificate(
        kind=CertificateKind.REIDER_SEPARATES,
        holds=attained >= 10,
        threshold=Fraction(10),
        attained=attained,
        caveats=REIDER_SEPARATES_CAVEATS,
    )


def siu_bound(n: int) -> Fraction:
    """Universal bound: K + (n+1)L is pseudo-effective for L big and nef on
    an n-fold, so the threshold invariant never exceeds n+1."""
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"dimension {n} must be a positive integer")
    return Fraction(n + 1)


def angehrn_siu_threshold(n: int, dim_z: int, conjectural: bool = False) -> Fraction:
    """Strict lower bound on L^dimZ . Z forcing a non-vanishing adjoint
    section: binomial(n+1, 2)^dimZ.

    With ``conjectural=True`` the sharper (unproven) value n^dimZ is
    returned instead; default off.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"dimension {n} must be a positive integer")
    if not isinstance(dim_z, int) or dim_z < 1 or dim_z > n:
        raise InvalidDimension(f"subvariety dimension {dim_z} outside 1..{n}")
    base = n if conjectural else comb(n + 1, 2)
    return Fraction(base) ** dim_z


def bend_and_break_bound(n: int) -> Fraction:
    """When K+L is not pseudo-effective, some covering rational curve has
    anticanonical degree at most n+1."""
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"dimension {n} must be a positive integer")
    return Fraction(n + 1)


def deformation_floor() -> Fraction:
    """Minimum anticanonical degree of a member of a dominating family of
    rational curves (a free curve moves with at least this degree)."""
    return Fraction(2)


def curve_degree_bound(a_x) -> Fraction:
    """Curves beating the ambient threshold invariant have L-degree strictly
    below 2 / a(X); everything else is safe."""
    a = to_fraction(a_x)
    if a <= 0:
        raise NonpositiveA(f"threshold invariant {a} must be positive")
    return 2 / a


def wbab_degree_bound(n: int, a_x, delta_n) -> Fraction:
    """Degree bound L^n <= delta(n) / a(X)^n under the boundedness
    hypothesis for Picard-rank-1 terminal Fanos.

    No explicit delta(n) is known in general (the n=3 case is proven
    without an effective constant), so the caller supplies it.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"dimension {n} must be a positive integer")
    a = to_fraction(a_x)
    if a <= 0:
        raise NonpositiveA(f"threshold invariant {a} must be positive")
    delta = to_fraction(delta_n)
    if delta <= 0:
        raise NonpositiveA(f"delta {delta} must be positive")
    return delta / a**n
