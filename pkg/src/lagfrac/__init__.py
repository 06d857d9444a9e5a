"""Fractional integrals of Laguerre-type operators: special functions, heat and
potential kernels, operator families, the harmonic-oscillator reduction and
numerical bound certificates."""

from ._core import BACKEND
from .specfun import FracParams, LaguerreIndex, DomainError

__version__ = "0.1.0"

__all__ = ["BACKEND", "FracParams", "LaguerreIndex", "DomainError", "__version__"]
