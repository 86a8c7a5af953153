"""
rbolab package.

Numerical laboratory for relative Rota-Baxter operators of weight 1 on Lie
algebras and on matrix Lie groups: verification, cohomology, deformations,
the differentiation/integration correspondence and its applications.
"""

from .config import Settings, load_settings  # noqa: F401
from .log import get_logger, setup_logging  # noqa: F401

__version__ = "1.0.0"

__all__ = ["Settings", "load_settings", "setup_logging", "get_logger", "__version__"]
