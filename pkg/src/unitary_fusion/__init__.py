"""
unitary-fusion: polar decomposition and unitarization of skeletal fusion
category data.

Subpackages:
- fusion_core: fusion rings, F-symbols, gauges, pentagon
- polar_engine: positive roots and polar decomposition
- unitarizer: equivalences, positive trivialization, unitarization pipeline
- braided: R-symbols, hexagons, braided pipeline
- module_cats: L-symbols, module pentagon, module pipeline
- group_cohomology: cochains, coboundaries, Vec_G^omega bridge
- cli_io: datasets, built-in examples, command line
"""

from .errors import (
    DatasetSemanticError,
    DatasetSyntaxError,
    DecompositionError,
    DomainError,
    InconsistencyError,
    InputError,
    NumericalError,
    PreconditionError,
    UnitaryFusionError,
)
from .interface import CertificateReport, CheckReport, ErrorCode, RunReport

__version__ = "0.1.0"

__all__ = [
    "CertificateReport",
    "CheckReport",
    "DatasetSemanticError",
    "DatasetSyntaxError",
    "DecompositionError",
    "DomainError",
    "ErrorCode",
    "InconsistencyError",
    "InputError",
    "NumericalError",
    "PreconditionError",
    "RunReport",
    "UnitaryFusionError",
    "__version__",
]
