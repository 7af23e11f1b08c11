"""Exact tools for differential operators: Weyl algebra, Newton-Ramis
polygons, local data at regular singularities, a generalized Laplace
transform and p-adic valuation asymptotics."""

from .errors import DomainError, ParseError
from .parser import parse
from .weyl import ThetaForm, WeylOp

__all__ = ["DomainError", "ParseError", "ThetaForm", "WeylOp", "parse"]
__version__ = "0.1.0"
