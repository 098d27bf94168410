"""
Shared fixtures: built-in F/R-symbol sets and seeded random generators.

Reference: src/unitary_fusion/cli_io/library.py (built-in examples)
"""

from pathlib import Path

import numpy as np
import pytest

from unitary_fusion.cli_io.library import (
    fibonacci_fsymbols,
    fibonacci_rsymbols,
    ising_fsymbols,
    ising_rsymbols,
    semion_fsymbols,
    yang_lee_fsymbols,
)

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def fibonacci():
    return fibonacci_fsymbols()


@pytest.fixture
def fibonacci_r():
    return fibonacci_rsymbols()


@pytest.fixture
def yang_lee():
    return yang_lee_fsymbols()


@pytest.fixture
def ising():
    return ising_fsymbols()


@pytest.fixture
def ising_r():
    return ising_rsymbols()


@pytest.fixture
def semion():
    return semion_fsymbols()
