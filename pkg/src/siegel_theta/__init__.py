"""Certified Riemann theta functions, Siegel modular forms and their identities."""

from .errors import *  # noqa: F401,F403
from .theta import (
    CertifiedComplex,
    Characteristic,
    SiegelPoint,
    TruncationSpec,
    theta,
    theta_constant,
    theta_offdiag_deriv,
    theta_z_grad,
)

__version__ = "0.1.0"
