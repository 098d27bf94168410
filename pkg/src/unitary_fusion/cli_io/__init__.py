"""
Dataset format, built-in examples and the unitary-fusion command line.

Reference:
- docs/DATASET_FORMAT.md: dataset and report layout
- cli_io/dataset.schema.json: schema enforced before semantic parsing
"""

from .cli import build_parser, exit_code_for, main, run_command
from .dataset import Dataset, dataset_schema, emit_dataset, parse_dataset
from .library import (
    CHECK_NAMES,
    EXAMPLES,
    builtin_dataset,
    default_checks,
    example_names,
    load_dataset,
    run_checks,
)
from .report import Reporter, report_text

__all__ = [
    "CHECK_NAMES",
    "Dataset",
    "EXAMPLES",
    "Reporter",
    "build_parser",
    "builtin_dataset",
    "dataset_schema",
    "default_checks",
    "emit_dataset",
    "example_names",
    "exit_code_for",
    "load_dataset",
    "main",
    "parse_dataset",
    "report_text",
    "run_checks",
    "run_command",
]
