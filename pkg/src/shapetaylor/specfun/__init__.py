"""Cylinder special functions used by the Helmholtz kernels and circle series."""

from .exceptions import SpecialFunctionDomainError
from .functions import (
    CylEval,
    bessel_derivative,
    cyl_bessel,
    cyl_bessel_prime,
    cyl_eval,
    hankel1,
    hankel1_derivative,
    hankel1_prime,
)

__all__ = (
    "CylEval",
    "SpecialFunctionDomainError",
    "bessel_derivative",
    "cyl_bessel",
    "cyl_bessel_prime",
    "cyl_eval",
    "hankel1",
    "hankel1_derivative",
    "hankel1_prime",
)
