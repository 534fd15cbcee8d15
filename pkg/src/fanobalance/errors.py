"""Exception hierarchy shared by all modules.

Everything derives from FanobalanceError so callers can catch broadly;
individual classes mirror the failure modes of the exact-arithmetic layer
(dimension bookkeeping), the invariant layer (hypothesis violations), and
the database/CLI layer (bad input data).
"""


class FanobalanceError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(FanobalanceError, ValueError):
    """A vector's length disagrees with the ambient rank."""


class ArityMismatch(FanobalanceError, ValueError):
    """Wrong number of divisor classes passed to a degree-n product."""


class RankMismatch(FanobalanceError, ValueError):
    """Lattice ranks of the operands disagree."""


class InvalidLength(FanobalanceError, ValueError):
    """Extremal-ray length outside the contraction taxonomy."""


class NotMember(FanobalanceError, ValueError):
    """Vector lies outside the cone for a face computation."""


class EmptyCone(FanobalanceError, ValueError):
    """Cone has no facet description to optimise over."""


class NotBig(FanobalanceError, ValueError):
    """Divisor class is not in the interior of the pseudo-effective cone."""


class NotUniruled(FanobalanceError, ValueError):
    """The threshold invariant is non-positive, so the face invariant is undefined."""


class NonpositiveDegree(FanobalanceError, ValueError):
    """A curve/fiber degree that must be positive is not."""


class NonpositiveA(FanobalanceError, ValueError):
    """A threshold invariant that must be positive is not."""


class InvalidDimension(FanobalanceError, ValueError):
    """Dimension argument outside the range a bound is stated for."""


class NotPseudoEffective(FanobalanceError, ValueError):
    """Divisor is outside the pseudo-effective cone."""


class NonNegativeDefinite(FanobalanceError, ValueError):
    """Gram matrix of the selected curves is not negative definite."""


class CorruptData(FanobalanceError, ValueError):
    """An embedded database record failed validation."""


class ParseError(FanobalanceError, ValueError):
    """Malformed JSON input; message carries the offending path/key."""


class SchemaVersionMismatch(ParseError):
    """Serialized record uses an unsupported schema version."""


class InsufficientAnnotations(FanobalanceError, ValueError):
    """A scanned class is covered neither by a numeric criterion nor by a
    geometric annotation, so the record cannot be machine-classified."""


class LowConfidenceWarning(UserWarning):
    """Computation ran on a cone flagged as possibly smaller than the true
    pseudo-effective cone; results for arbitrary divisors may be off."""
