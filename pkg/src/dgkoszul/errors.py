"""Exception hierarchy.

Every error carries a ``code`` which is also the prefix of its message, so the
command line can surface module errors verbatim and callers can match on the
prefix.
"""


class DGError(Exception):
    code = "error"

    def __init__(self, message: str = ""):
        if not message.startswith(self.code + ":"):
            message = f"{self.code}: {message}" if message else self.code
        super().__init__(message)


class LinearAlgebraError(DGError):
    code = "linear-algebra"


class SubNotContained(LinearAlgebraError):
    code = "sub-not-contained"


class ParseError(DGError):
    code = "parse-error"


class InvariantViolation(DGError):
    code = "invariant-violation"


class WindowUnderflow(DGError):
    code = "window-underflow"


class IncompleteDegree(DGError):
    code = "incomplete-degree"


class DifferentialError(DGError):
    """d o d != 0, or a map fails to commute with differentials."""

    code = "differential-error"


class NotCocommutative(DGError):
    code = "non-cocommutative"


class NotCoaugmented(DGError):
    code = "not-coaugmented"


class NotAugmented(DGError):
    code = "not-augmented"


class NotTwoReduced(DGError):
    code = "not-2-reduced"


class NotReduced(DGError):
    code = "not-reduced"


class DegreeZeroGenerator(DGError):
    code = "degree-zero-generator"


class Mismatch(DGError):
    """Objects built over different coalgebras or algebras."""

    code = "mismatch"


class CoalgebraMismatch(Mismatch):
    code = "coalgebra-mismatch"


class AlgebraMismatch(Mismatch):
    code = "algebra-mismatch"


class NotAnAlgebraMap(DGError):
    code = "not-an-algebra-map"


class FiltrationError(DGError):
    code = "filtration-not-preserved"


class HypothesisViolated(DGError):
    code = "hypothesis-violated"


class ModelError(DGError):
    code = "model-error"
