"""Runtime configuration for rbolab."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .kernel import Tolerance

try:
    from dotenv import load_dotenv
except ImportError:  # pragma: no cover - optional dependency
    load_dotenv = None

DEFAULT_SEED = 0xB01
OUTPUT_FORMATS = ("text", "json", "csv")


class ConfigError(RuntimeError):
    """Raised when an environment value cannot be parsed."""


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be a number, got {raw!r}") from exc


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc


@dataclass
class Settings:
    """Container for runtime configuration values."""

    tol_abs: float = 1e-12
    tol_rel: float = 1e-9
    check_tol: float = 1e-9
    seed: int = DEFAULT_SEED
    samples: int = 100
    radius: float = 0.3
    fd_step: float = 1e-5
    output_format: str = "text"
    kmax: int = 3
    debug: bool = os.getenv("DEBUG", "false").lower() == "true"

    def tolerance(self) -> Tolerance:
        return Tolerance(abs=self.tol_abs, rel=self.tol_rel)

    def validate(self) -> None:
        """Reject values no command can run with."""
        if self.tol_abs < 0 or self.tol_rel < 0 or (self.tol_abs == 0 and self.tol_rel == 0):
            raise ConfigError("tolerances must be nonnegative and not both zero")
        if self.check_tol <= 0:
            raise ConfigError("check tolerance must be positive")
        if self.samples <= 0:
            raise ConfigError("sample count must be positive")
        if self.radius <= 0:
            raise ConfigError("radius must be positive")
        if self.fd_step <= 0:
            raise ConfigError("finite-difference step must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}")
        if self.kmax < 1:
            raise ConfigError("kmax must be at least 1")


def load_settings() -> Settings:
    """Load settings from environment (optionally via python-dotenv)."""
    if load_dotenv:
        config_path = os.environ.get(
            "RBOLAB_CONFIG",
            str(
                Path(os.environ.get("XDG_CONFIG_HOME", Path.home() / ".config"))
                / "rbolab"
                / "config.env"
            ),
        )
        if os.path.exists(config_path):
            load_dotenv(config_path)

    # Environment variables are read after the config file so they take effect
    return Settings(
        tol_abs=_env_float("RBOLAB_TOL_ABS", 1e-12),
        tol_rel=_env_float("RBOLAB_TOL_REL", 1e-9),
        check_tol=_env_float("RBOLAB_CHECK_TOL", 1e-9),
        seed=_env_int("RBOLAB_SEED", DEFAULT_SEED),
        samples=_env_int("RBOLAB_SAMPLES", 100),
        radius=_env_float("RBOLAB_RADIUS", 0.3),
        fd_step=_env_float("RBOLAB_FD_STEP", 1e-5),
        output_format=os.getenv("RBOLAB_FORMAT", "text").lower(),
        kmax=_env_int("RBOLAB_KMAX", 3),
        debug=os.getenv("DEBUG", "false").lower() == "true",
    )
