"""
Unitary Fusion Report Contracts

Typed shapes shared by every verification, pipeline and the CLI report writer.
Reports are plain dicts so they serialize straight into the machine report.

Reference:
- docs/DATASET_FORMAT.md: report file layout
- docs/adr/0002-reports-not-exceptions.md: verification failures are reports
"""

from enum import Enum
from typing import Dict, List, TypedDict


class CheckReport(TypedDict):
    """Outcome of a single verification"""
    name: str  # e.g. "pentagon", "unitary", "coherence"
    residual: float  # max relative Frobenius-norm deviation, >= 0
    tolerance: float  # threshold the residual was compared against
    passed: bool  # residual <= tolerance
    detail: str  # first violated identity / offending block, "" when passed


class CertificateReport(TypedDict):
    """Residual produced by a pipeline stage rather than requested by the user"""
    name: str
    residual: float
    tolerance: float
    passed: bool


class _RunReportRequired(TypedDict):
    command: str
    dataset: str
    checks: List[CheckReport]
    passed: bool


class RunReport(_RunReportRequired, total=False):
    """Machine-readable report written by the CLI"""
    certificates: List[CertificateReport]
    error: Dict[str, object]  # {code, message, recoverable} when the run aborted
    timings_ms: Dict[str, float]  # only with --timings


class ErrorCode(Enum):
    """Error codes carried by every UnitaryFusionError"""
    INPUT_ERROR = "INPUT_ERROR"
    NUMERICAL_ERROR = "NUMERICAL_ERROR"
    DOMAIN_ERROR = "DOMAIN_ERROR"
    PRECONDITION_FAILED = "PRECONDITION_FAILED"
    DECOMPOSITION_FAILED = "DECOMPOSITION_FAILED"
    INCONSISTENT_DATA = "INCONSISTENT_DATA"
    DATASET_SYNTAX = "DATASET_SYNTAX"
    DATASET_SEMANTIC = "DATASET_SEMANTIC"


def make_check(name: str, residual: float, tolerance: float, detail: str = "") -> CheckReport:
    """Build a CheckReport; `detail` is dropped when the check passes."""
    residual = float(residual)
    passed = bool(residual <= tolerance)
    return CheckReport(
        name=name,
        residual=residual,
        tolerance=float(tolerance),
        passed=passed,
        detail="" if passed else detail,
    )


def make_certificate(name: str, residual: float, tolerance: float) -> CertificateReport:
    residual = float(residual)
    return CertificateReport(
        name=name,
        residual=residual,
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
    )
