# Exception hierarchy for the kinematical deformation engine
from typing import Optional


class KinDeformError(Exception):
    """Base class for every error raised by the engine."""


class ScalarError(KinDeformError):
    """Invalid operation in the parameter field (unknown symbol, bad binding, division by zero)."""


class UnsolvedConstraint(KinDeformError):
    """An equation the binomial solver cannot bring into normal form."""

    def __init__(self, equation: str, unknown: Optional[str] = None, reason: str = "unsupported shape"):
        self.equation = equation
        self.unknown = unknown
        self.reason = reason
        target = f" in {unknown}" if unknown else ""
        super().__init__(f"unsolved constraint{target}: {equation} = 0 ({reason})")


class AlgebraMismatch(KinDeformError):
    """Elements from different enveloping algebras were combined."""


class UnknownGenerator(KinDeformError):
    """A generator name that the algebra does not declare."""


class LocalizationError(KinDeformError):
    """Adjoining a formal inverse did not terminate under the derivation rule."""


class ReductionError(KinDeformError):
    """Central reduction exceeded its step limit."""


class AlgebraParseError(KinDeformError):
    """Syntax or semantic error in algebra source text."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class CatalogError(KinDeformError):
    """Unknown catalog entry or unsupported deformation chain."""


class DeformationError(KinDeformError):
    """A deformation step received inconsistent input."""


class RepresentationError(KinDeformError):
    """Invalid representation request or operator mismatch."""


class SpinError(RepresentationError):
    """Spin value outside the exactly supported set."""
