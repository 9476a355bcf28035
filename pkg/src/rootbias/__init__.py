"""Root-number bias for newforms of cubic level N^3, computed three ways.

* the class-number closed form ``bias_closed_form``;
* the analytic exact formula ``m_sharp`` at s = 1;
* the Petersson geometric side ``m_sharp_via_petersson`` (Re s > 3/2), which
  cross-checks the analytic formula away from s = 1.
"""

from .bias import (
    BiasReport,
    Level,
    Weight,
    asymptotic_main_term,
    bias_closed_form,
    bias_report,
    c_constant,
    dim_star_cubic,
    dim_star_squarefree,
    l_minus_4N_closed,
    m0,
    m1,
    m2,
    m_sharp,
    m_sharp_detailed,
    signed_counts,
)
from .errors import ConvergenceError, DomainError
from .petersson import PeterssonTruncation, delta_sharp, delta_star, m_sharp_via_petersson
from .quadratic import QuadDiscriminant, class_number, decompose, dirichlet_L, unit_count
from .zagier import kloosterman, kloosterman_square_sum, rho, zagier_L, zagier_L_series

__version__ = "0.1.0"

__all__ = [
    "BiasReport",
    "ConvergenceError",
    "DomainError",
    "Level",
    "PeterssonTruncation",
    "QuadDiscriminant",
    "Weight",
    "asymptotic_main_term",
    "bias_closed_form",
    "bias_report",
    "c_constant",
    "class_number",
    "decompose",
    "delta_sharp",
    "delta_star",
    "dim_star_cubic",
    "dim_star_squarefree",
    "dirichlet_L",
    "kloosterman",
    "kloosterman_square_sum",
    "l_minus_4N_closed",
    "m0",
    "m1",
    "m2",
    "m_sharp",
    "m_sharp_detailed",
    "m_sharp_via_petersson",
    "rho",
    "signed_counts",
    "unit_count",
    "zagier_L",
    "zagier_L_series",
]
