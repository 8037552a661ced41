"""Upper bounds for the point-evaluation constant C_p of Paley-Wiener spaces.

C_p <= 2 sup E_p(tau), the supremum running over separated zero
sequences tau; the package evaluates E_p with bracketed tails, the
closed-form suprema for 2 <= p <= 5, and the resulting bounds.
"""

from .bounds import BoundResult, Method, cp_reference, cp_upper, figure1_table, sup_value_high, sup_value_low
from .errors import ConvergenceError, DomainError, InfeasibleError, ParseError, PWBoundsError, RangeError
from .kernel import Regime
from .objective import ep, ep_truncated, ray_sum, s_local
from .quadrature import DEFAULT_SETTINGS, Bracket, QuadSettings
from .sequences import FamilyT1, FamilyT2, SeparationParams, ZeroSequence, validate_membership

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "Method",
    "cp_reference",
    "cp_upper",
    "figure1_table",
    "sup_value_high",
    "sup_value_low",
    "ConvergenceError",
    "DomainError",
    "InfeasibleError",
    "ParseError",
    "PWBoundsError",
    "RangeError",
    "Regime",
    "ep",
    "ep_truncated",
    "ray_sum",
    "s_local",
    "DEFAULT_SETTINGS",
    "Bracket",
    "QuadSettings",
    "FamilyT1",
    "FamilyT2",
    "SeparationParams",
    "ZeroSequence",
    "validate_membership",
]
