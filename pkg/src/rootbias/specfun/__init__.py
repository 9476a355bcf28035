"""Analytic kernels: gamma, zeta functions, Bessel J, 2F1 and Mellin-Barnes integrals."""

from .bessel import bessel_envelope, bessel_j
from .gamma import gamma, loggamma
from .hypergeometric import gauss_2f1, gauss_2f1_array
from .mellin import ContourSpec, bessel_j_mellin_barnes, i_ks, i_ks_quadrature
from .zeta import f_series, hurwitz_zeta, hurwitz_zeta_regular, partial_zeta, riemann_zeta

__all__ = [
    "ContourSpec",
    "bessel_envelope",
    "bessel_j",
    "bessel_j_mellin_barnes",
    "f_series",
    "gamma",
    "gauss_2f1",
    "gauss_2f1_array",
    "hurwitz_zeta",
    "hurwitz_zeta_regular",
    "i_ks",
    "i_ks_quadrature",
    "loggamma",
    "partial_zeta",
    "riemann_zeta",
]
