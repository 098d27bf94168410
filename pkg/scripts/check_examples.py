#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Example Check Script for unitary-fusion

Verifies that every built-in example passes the checks it declares, that
emitting a parsed example is idempotent, and that the dataset files under
tests/data/ still load.

Reference: docs/DATASET_FORMAT.md, src/unitary_fusion/cli_io/library.py
"""

import sys
from pathlib import Path
from typing import List

# Fix Windows encoding issues
if sys.platform == "win32":
    import io

    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding="utf-8", errors="replace")
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding="utf-8", errors="replace")

PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / "tests" / "data"
sys.path.insert(0, str(PROJECT_ROOT / "src"))

import jsonschema  # noqa: E402

from unitary_fusion.cli_io.dataset import dataset_schema, emit_dataset, parse_dataset  # noqa: E402
from unitary_fusion.cli_io.library import EXAMPLES, builtin_dataset, run_checks  # noqa: E402
from unitary_fusion.config import DEFAULT_TOL  # noqa: E402
from unitary_fusion.errors import DatasetSyntaxError, UnitaryFusionError  # noqa: E402

# Color codes for terminal output (ASCII-safe alternatives)
RED = "\033[91m"
GREEN = "\033[92m"
YELLOW = "\033[93m"
BLUE = "\033[94m"
RESET = "\033[0m"

# ASCII-safe symbols
CHECK = "[OK]"
CROSS = "[X]"
WARN = "[!]"
INFO = "[*]"


class ExampleChecker:
    """Checks the built-in example library and the shipped dataset files"""

    def __init__(self):
        self.errors: List[str] = []
        self.warnings: List[str] = []
        self.checks_passed = 0
        self.checks_failed = 0

    def error(self, message: str):
        """Record an error"""
        self.errors.append(message)
        self.checks_failed += 1
        print(f"{RED}{CROSS} ERROR:{RESET} {message}")

    def warning(self, message: str):
        """Record a warning"""
        self.warnings.append(message)
        print(f"{YELLOW}{WARN} WARNING:{RESET} {message}")

    def success(self, message: str):
        """Record a success"""
        self.checks_passed += 1
        print(f"{GREEN}{CHECK} PASS:{RESET} {message}")

    def check_schema(self) -> bool:
        """The packaged schema is itself a valid draft-07 schema"""
        print(f"\n{BLUE}{INFO} Checking dataset schema...{RESET}")
        try:
            jsonschema.Draft7Validator.check_schema(dataset_schema())
        except jsonschema.SchemaError as exc:
            self.error(f"dataset.schema.json is invalid: {exc.message}")
            return False
        self.success("dataset.schema.json is a valid draft-07 schema")
        return True

    def check_declared_checks(self) -> bool:
        """Every builtin passes the checks it declares"""
        print(f"\n{BLUE}{INFO} Checking built-in examples against their declared checks...{RESET}")
        ok = True
        for name in EXAMPLES:
            try:
                ds = builtin_dataset(name)
                reports = run_checks(ds, ds.checks, DEFAULT_TOL)
            except UnitaryFusionError as exc:
                self.error(f"{name}: {exc.message}")
                ok = False
                continue
            failed = [r for r in reports if not r["passed"]]
            if failed:
                worst = failed[0]
                self.error(f"{name}: {worst['name']} residual {worst['residual']:.3e}")
                ok = False
            else:
                self.success(f"{name}: {', '.join(ds.checks)}")
        return ok

    def check_round_trip(self) -> bool:
        """emit(parse(emit(x))) == emit(x) for every builtin"""
        print(f"\n{BLUE}{INFO} Checking emit/parse idempotence...{RESET}")
        ok = True
        for name in EXAMPLES:
            text = emit_dataset(builtin_dataset(name))
            try:
                again = emit_dataset(parse_dataset(text))
            except UnitaryFusionError as exc:
                self.error(f"{name}: emitted dataset does not parse: {exc.message}")
                ok = False
                continue
            if again != text:
                self.error(f"{name}: emitted dataset changes after a round trip")
                ok = False
            else:
                self.success(f"{name}: round trip is stable")
        return ok

    def check_data_files(self) -> bool:
        """Dataset files under tests/data/ load; truncated_* files must fail with a syntax error"""
        print(f"\n{BLUE}{INFO} Checking tests/data/ dataset files...{RESET}")
        files = sorted(DATA_DIR.glob("*.json"))
        if not files:
            self.warning("no dataset files under tests/data/")
            return True
        ok = True
        for path in files:
            text = path.read_text(encoding="utf-8")
            expect_syntax_error = path.name.startswith("truncated")
            try:
                ds = parse_dataset(text)
            except DatasetSyntaxError as exc:
                if expect_syntax_error:
                    self.success(f"{path.name}: rejected ({exc.message})")
                else:
                    self.error(f"{path.name}: {exc.message}")
                    ok = False
                continue
            except UnitaryFusionError as exc:
                self.error(f"{path.name}: {exc.message}")
                ok = False
                continue
            if expect_syntax_error:
                self.error(f"{path.name}: expected a syntax error")
                ok = False
                continue
            failed = [r for r in run_checks(ds, ds.checks, DEFAULT_TOL) if not r["passed"]]
            if failed:
                self.error(f"{path.name}: {failed[0]['name']} fails")
                ok = False
            else:
                self.success(f"{path.name}: {', '.join(ds.checks) or 'parses'}")
        return ok

    def run_all_checks(self) -> bool:
        """Run all example checks"""
        print(f"{BLUE}{'=' * 60}{RESET}")
        print(f"{BLUE}unitary-fusion - Example Check{RESET}")
        print(f"{BLUE}{'=' * 60}{RESET}")

        checks = [
            self.check_schema,
            self.check_declared_checks,
            self.check_round_trip,
            self.check_data_files,
        ]

        for check in checks:
            try:
                check()
            except Exception as e:
                self.error(f"Check failed with exception: {e}")

        # Print summary
        print(f"\n{BLUE}{'=' * 60}{RESET}")
        print(f"{BLUE}Summary:{RESET}")
        print(f"  {GREEN}Passed: {self.checks_passed}{RESET}")
        print(f"  {YELLOW}Warnings: {len(self.warnings)}{RESET}")
        print(f"  {RED}Errors: {len(self.errors)}{RESET}")
        print(f"{BLUE}{'=' * 60}{RESET}")

        if self.errors:
            print(f"\n{RED}Example check FAILED with {len(self.errors)} error(s){RESET}")
            return False
        elif self.warnings:
            print(f"\n{YELLOW}Example check PASSED with {len(self.warnings)} warning(s){RESET}")
            return True
        else:
            print(f"\n{GREEN}Example check PASSED with no issues{RESET}")
            return True


def main():
    """Main entry point"""
    checker = ExampleChecker()
    success = checker.run_all_checks()
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
