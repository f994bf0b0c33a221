"""Exact dominance solver and epistemic Kripke model checker for 2-player games."""

from .errors import EgkError, FormatError, InputError

__all__ = ["EgkError", "FormatError", "InputError"]
__version__ = "0.1.0"
