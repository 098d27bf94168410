"""
Exception hierarchy.

Mathematical verification failures are reported through CheckReport with
passed=False; exceptions are reserved for malformed input, unmet
preconditions and certificate blowups inside pipelines.
"""

from typing import Dict, Optional

from .interface import ErrorCode


class UnitaryFusionError(Exception):
    """Base error: carries an ErrorCode and whether a retry with other input may succeed"""

    code: ErrorCode = ErrorCode.INPUT_ERROR
    recoverable: bool = False

    def __init__(self, message: str, *, recoverable: Optional[bool] = None):
        super().__init__(message)
        self.message = message
        if recoverable is not None:
            self.recoverable = recoverable

    def to_dict(self) -> Dict[str, object]:
        return {"code": self.code.value, "message": self.message, "recoverable": self.recoverable}


class InputError(UnitaryFusionError):
    """Malformed shapes, mismatched rings, missing blocks"""
    code = ErrorCode.INPUT_ERROR


class NumericalError(UnitaryFusionError):
    """Singular or numerically unusable matrix"""
    code = ErrorCode.NUMERICAL_ERROR


class DomainError(UnitaryFusionError):
    """Input outside the domain of a matrix function (non-Hermitian, non-positive)"""
    code = ErrorCode.DOMAIN_ERROR


class PreconditionError(UnitaryFusionError):
    code = ErrorCode.PRECONDITION_FAILED


class DecompositionError(UnitaryFusionError):
    """A factor certificate exceeded its budget; the input was not a valid equivalence"""
    code = ErrorCode.DECOMPOSITION_FAILED


class InconsistencyError(UnitaryFusionError):
    """A linear solve or character check that must succeed on valid input did not"""
    code = ErrorCode.INCONSISTENT_DATA


class DatasetSyntaxError(UnitaryFusionError):
    code = ErrorCode.DATASET_SYNTAX

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DatasetSemanticError(UnitaryFusionError):
    code = ErrorCode.DATASET_SEMANTIC

    def __init__(self, section: str, message: str):
        super().__init__(f"[{section}] {message}")
        self.section = section
