"""
Human-readable and machine-readable run reports.

The Reporter prints checker-style lines to stdout; colors are only used on
a TTY so redirected output stays byte-stable. The machine report is JSON
with sorted keys.
"""

import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Union

import numpy as np

from ..errors import InputError, UnitaryFusionError
from ..interface import CertificateReport, CheckReport, RunReport

RED = "\033[91m"
GREEN = "\033[92m"
YELLOW = "\033[93m"
BLUE = "\033[94m"
RESET = "\033[0m"

CHECK = "[OK]"
CROSS = "[X]"
WARN = "[!]"
INFO = "[*]"


class Reporter:
    """Collects checks and certificates of one command and prints them as they arrive"""

    def __init__(self, command: str, dataset: str, stream: Optional[TextIO] = None):
        self.command = command
        self.dataset = dataset
        self.stream = stream if stream is not None else sys.stdout
        self.color = bool(getattr(self.stream, "isatty", lambda: False)())
        self.checks: List[CheckReport] = []
        self.certificates: List[CertificateReport] = []
        self.warnings: List[str] = []
        self.error_info: Optional[Dict[str, object]] = None
        self.timings_ms: Dict[str, float] = {}

    def _paint(self, color: str, text: str) -> str:
        return f"{color}{text}{RESET}" if self.color else text

    def _print(self, line: str = ""):
        print(line, file=self.stream)

    def banner(self):
        rule = "=" * 60
        self._print(self._paint(BLUE, rule))
        self._print(self._paint(BLUE, f"unitary-fusion {self.command}: {self.dataset}"))
        self._print(self._paint(BLUE, rule))

    def section(self, title: str):
        self._print()
        self._print(self._paint(BLUE, f"{INFO} {title}"))

    def info(self, message: str):
        self._print(f"  {message}")

    def warning(self, message: str):
        self.warnings.append(message)
        self._print(f"{self._paint(YELLOW, f'{WARN} WARNING:')} {message}")

    def check(self, report: CheckReport):
        self.checks.append(report)
        self._result(report["name"], report["residual"], report["tolerance"], report["passed"])
        if report["detail"]:
            self._print(f"    {report['detail']}")

    def certificate(self, report: CertificateReport):
        self.certificates.append(report)
        self._result(
            f"certificate {report['name']}",
            report["residual"],
            report["tolerance"],
            report["passed"],
        )

    def _result(self, name: str, residual: float, tolerance: float, passed: bool):
        tag = self._paint(GREEN, f"{CHECK} PASS:") if passed else self._paint(RED, f"{CROSS} FAIL:")
        self._print(f"{tag} {name} residual {residual:.3e} (tolerance {tolerance:.1e})")

    def error(self, exc: UnitaryFusionError):
        self.error_info = exc.to_dict()
        self._print(f"{self._paint(RED, f'{CROSS} ERROR:')} [{exc.code.value}] {exc.message}")

    def timing(self, stage: str, milliseconds: float):
        self.timings_ms[stage] = milliseconds

    @property
    def passed(self) -> bool:
        return (
            self.error_info is None
            and all(r["passed"] for r in self.checks)
            and all(r["passed"] for r in self.certificates)
        )

    def summary(self):
        results = self.checks + self.certificates
        failed = sum(not r["passed"] for r in results)
        rule = "=" * 60
        self._print()
        self._print(self._paint(BLUE, rule))
        self._print(self._paint(BLUE, "Summary:"))
        self._print(self._paint(GREEN, f"  Passed: {len(results) - failed}"))
        self._print(self._paint(YELLOW, f"  Warnings: {len(self.warnings)}"))
        self._print(self._paint(RED, f"  Failed: {failed}"))
        self._print(self._paint(BLUE, rule))
        if self.error_info is not None:
            self._print(self._paint(RED, f"{self.command} ABORTED"))
        elif self.passed:
            self._print(self._paint(GREEN, f"{self.command} PASSED"))
        else:
            self._print(self._paint(RED, f"{self.command} FAILED"))

    def to_report(self, timings: bool = False) -> RunReport:
        report = RunReport(
            command=self.command,
            dataset=self.dataset,
            checks=list(self.checks),
            passed=self.passed,
        )
        if self.certificates:
            report["certificates"] = list(self.certificates)
        if self.error_info is not None:
            report["error"] = self.error_info
        if timings:
            report["timings_ms"] = dict(self.timings_ms)
        return report


def _to_json(value):
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def report_text(report: Union[RunReport, dict]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_to_json) + "\n"


def write_text(path: Union[str, Path], text: str):
    """
    Raises:
        InputError: If the file cannot be written
    """
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None
