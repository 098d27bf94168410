"""
Runtime settings.

Precedence for the tolerance: CLI flag > dataset `tolerance` > environment > default.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .errors import InputError

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITERS = 200
DEFAULT_SEED = 0

# Pipeline certificate budgets, as multiples of the base tolerance.
UNITARITY_FACTOR = 10.0
COHERENCE_FACTOR = 100.0

TOL_ENV = "UNITARY_FUSION_TOL"
LOG_LEVEL_ENV = "UNITARY_FUSION_LOG_LEVEL"

_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    max_iters: int = DEFAULT_MAX_ITERS
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Read defaults from the environment.

        Args:
            environ: Mapping to read from (defaults to os.environ)

        Returns:
            Settings with environment overrides applied

        Raises:
            InputError: If UNITARY_FUSION_TOL is not a positive float or the
                log level is not a logging level name
        """
        env = os.environ if environ is None else environ
        settings = cls()
        raw_tol = env.get(TOL_ENV)
        if raw_tol:
            try:
                tol = float(raw_tol)
            except ValueError:
                raise InputError(f"{TOL_ENV}={raw_tol!r} is not a number") from None
            settings = settings.with_tol(tol)
        raw_level = env.get(LOG_LEVEL_ENV)
        if raw_level:
            level = raw_level.upper()
            if not isinstance(logging.getLevelName(level), int):
                raise InputError(f"{LOG_LEVEL_ENV}={raw_level!r} is not a logging level")
            settings = replace(settings, log_level=level)
        return settings

    def with_tol(self, tol: Optional[float]) -> "Settings":
        if tol is None:
            return self
        if not tol > 0:
            raise InputError(f"tolerance must be positive, got {tol}")
        return replace(self, tol=float(tol))


def configure_logging(level: str = "WARNING") -> None:
    """Install a single stderr handler on the package logger (CLI only)."""
    root = logging.getLogger("unitary_fusion")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(_LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
