"""Exact lambda-ring arithmetic for motivic zeta functions and their measures."""

from .graded import GradedElement
from .k0 import K0Expr, SymRuleSet, kapranov_zeta
from .measures import HodgeData, distinguish_sym_powers, mu1, mu1_sym, mu1_sym_sequence
from .rationality import AnalysisContext, RationalityVerdict, analyze
from .series import TruncatedSeries
from .zm import MElement, ZMElement

__all__ = [
    "AnalysisContext",
    "GradedElement",
    "HodgeData",
    "K0Expr",
    "MElement",
    "RationalityVerdict",
    "SymRuleSet",
    "TruncatedSeries",
    "ZMElement",
    "analyze",
    "distinguish_sym_powers",
    "kapranov_zeta",
    "mu1",
    "mu1_sym",
    "mu1_sym_sequence",
]
