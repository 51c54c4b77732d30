import logging
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from fourier_algebra.fusion import AxiomReport


class FourierAlgebraError(Exception):
    pass


# =============================================================================
# Scalar arithmetic
# =============================================================================


class ArithmeticDomainError(FourierAlgebraError):
    pass


class DivisionByZero(ArithmeticDomainError, ZeroDivisionError):
    pass


class NegativeRadicand(ArithmeticDomainError):
    pass


class NotReal(ArithmeticDomainError):
    pass


class PrecisionExhausted(ArithmeticDomainError):
    pass


# =============================================================================
# Matrices
# =============================================================================


class MatrixShapeError(FourierAlgebraError):
    pass


class RankMismatch(MatrixShapeError):
    pass


class AmbiguousPairing(MatrixShapeError):
    pass


# =============================================================================
# Rescaling
# =============================================================================


class RescaleError(FourierAlgebraError):
    pass


class NonpositiveFirstColumn(RescaleError):
    def __init__(self, row: int):
        super().__init__(f"S[{row},0] is not real and positive")
        self.row = row


class NotClosedUnderConjugation(RescaleError):
    pass


class IrrationalDegree(RescaleError):
    def __init__(self, column: int):
        super().__init__(f"degree p[0,{column}] is not rational")
        self.column = column


class IrrationalNorm(RescaleError):
    def __init__(self, row: int):
        super().__init__(f"norm d[{row}] is not rational")
        self.row = row


class NonpositiveDegree(RescaleError):
    def __init__(self, column: int):
        super().__init__(f"degree p[0,{column}] is not positive")
        self.column = column


# =============================================================================
# Axioms and theorems
# =============================================================================


class AxiomFailure(FourierAlgebraError):
    def __init__(self, message: str, report: "AxiomReport | None" = None):
        super().__init__(message)
        self.report = report


class IntegralityFailed(AxiomFailure):
    def __init__(self, witness: tuple[int, int, int], value: str):
        super().__init__(f"integrality fails at {witness}: {value}")
        self.witness = witness
        self.value = value


class NotSelfDual(AxiomFailure):
    pass


class ClassificationError(FourierAlgebraError):
    pass


class HypothesisNotMet(ClassificationError):
    pass


class DominanceFailed(ClassificationError):
    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"|s_ij| <= s_0j fails at {witness}")
        self.witness = witness


class NotClosed(ClassificationError):
    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"product of columns {witness} is not a column")
        self.witness = witness


class NonIntegerDegree(ClassificationError):
    pass


# =============================================================================
# Input
# =============================================================================


class InputError(FourierAlgebraError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnknownForm(InputError):
    pass


class InputFileError(InputError):
    pass


def classify_input_error(path: str, exc: Exception) -> InputError:
    if isinstance(exc, InputError):
        return exc
    if isinstance(exc, FileNotFoundError):
        return InputFileError(f"Missing input: {path}")
    if isinstance(exc, IsADirectoryError):
        return InputFileError(f"Input is a directory: {path}")
    if isinstance(exc, PermissionError):
        return InputFileError(f"Permission denied: {path}")
    if isinstance(exc, UnicodeDecodeError):
        return InputFileError(f"Input is not UTF-8 text: {path}")
    if isinstance(exc, RescaleError):
        return InputError(f"{path}: {exc}")
    return InputError(f"Failed loading {path}: {exc}")


def log_input_error(logger: logging.Logger, path: str, exc: InputError) -> None:
    if isinstance(exc, ParseError):
        logger.error("[%s] parse error at %s", path, exc)
        return
    if isinstance(exc, InputFileError):
        logger.error("[%s] unreadable input: %s", path, exc)
        return
    logger.error("[%s] input error: %s", path, exc)
