"""Exception types shared across the package.

Every error carries a stable ``code`` string; the CLI surfaces it in JSON
payloads, so the codes are part of the public interface and must not change.
"""


class TensorLociError(Exception):
    """Base class for domain errors (CLI exit status 2)."""

    code = "error"


class ParseError(TensorLociError):
    """Malformed input document (CLI exit status 1)."""

    code = "parse-error"


class IndexOutOfRange(ParseError):
    code = "index-out-of-range"


class DuplicateEntry(ParseError):
    code = "duplicate-entry"


class DegreeTooLarge(TensorLociError):
    code = "degree-too-large"


class DegreeTooSmall(TensorLociError):
    code = "degree-too-small"


class NotInvertible(TensorLociError):
    code = "not-invertible"


class ZeroDivisor(TensorLociError):
    code = "zero-divisor"


class AxisOutOfRange(TensorLociError):
    code = "axis-out-of-range"


class ZeroTensor(TensorLociError):
    code = "zero-tensor"


class ShapeMismatch(TensorLociError):
    code = "shape-mismatch"


class SingularMatrix(TensorLociError):
    code = "singular-matrix"


class WrongShape(TensorLociError):
    code = "wrong-shape"


class AllZero(TensorLociError):
    code = "all-zero"


class UnsupportedShape(TensorLociError):
    code = "unsupported-shape"


class NotTangential(TensorLociError):
    code = "not-tangential"


class TangencyPointRequested(TensorLociError):
    code = "tangency-point-requested"


class NotInLocus(TensorLociError):
    code = "not-in-locus"


class UnsupportedOrbit(TensorLociError):
    code = "unsupported-orbit"


class IllegalMove(TensorLociError):
    code = "illegal-move"


class NoRationalWitnessFound(TensorLociError):
    code = "no-rational-witness-found"


class InternalError(TensorLociError):
    """An invariant the decision procedures rely on was violated."""

    code = "internal-error"
