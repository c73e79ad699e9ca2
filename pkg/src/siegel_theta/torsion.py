"""Closed-form analytic torsion values and the L2 Gram matrix of theta functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, OnDiscriminantLocus, UnsupportedGenus, WrongGenus
from .siegel import delta_g_normalized, delta_weight, even_characteristics
from .theta import Characteristic, SiegelPoint, TruncationSpec, theta, theta_constant


@dataclass(frozen=True)
class PolarizedTorus:
    """A principally polarized abelian variety with the line bundle ``L^m``.

    ``rho_L = m^g`` is the self-intersection ``c1(L^m)^g / g!`` and
    ``rho_omega = 1`` normalizes the invariant volume.
    """

    g: int
    tau: SiegelPoint | None = None
    m: int = 1

    def __post_init__(self):
        if int(self.g) != self.g or self.g < 1:
            raise DomainError("g must be a positive integer")
        if int(self.m) != self.m:
            raise DomainError("m must be an integer")
        if self.tau is not None:
            tau = SiegelPoint.coerce(self.tau)
            if tau.g != self.g:
                raise WrongGenus(f"tau has genus {tau.g}, expected {self.g}")
            object.__setattr__(self, "tau", tau)

    @property
    def rho_L(self) -> int:
        return abs(self.m) ** self.g

    @property
    def rho_omega(self) -> float:
        return 1.0


def torsion_abelian(pt: PolarizedTorus) -> float:
    """``log tau(A, L^m, omega)`` for a flat line bundle power on a torus.

    ``m > 0`` gives ``1/2 m^g log(m^g / (2 pi)^g)``, ``m = 0`` gives 0 and
    ``m < 0`` the dual value ``(-1)^(g+1)`` times that of ``|m|``.
    """
    g, m = pt.g, pt.m
    if m == 0:
        return 0.0
    k = abs(m) ** g
    value = 0.5 * k * (math.log(k) - g * math.log(2 * math.pi))
    return value if m > 0 else (-1) ** (g + 1) * value


def _on_locus(g: int, tau: SiegelPoint, spec) -> bool:
    # chi_g vanishes iff one of its factors does; compare each factor with the largest
    vals = [theta_constant(c, tau, spec) for c in even_characteristics(g).evens]
    scale = max(abs(v.value) for v in vals)
    return any(abs(v.value) < 1e-12 * scale or abs(v.value) <= v.err for v in vals)


def torsion_theta_divisor(g: int, tau, spec: TruncationSpec | None = None) -> float:
    """Analytic torsion of the theta divisor, ``||Delta_g||^((-1)^(g+1) 2 / (g+1)!)``.

    The Petersson norm has weight ``(g+3) g! / 2``. For g = 2 the value is
    absolute; for g = 3 the normalizing constant of ``Delta_3`` is unknown and
    the result is only meaningful in ratios.

    Raises
    ------
    OnDiscriminantLocus
        If some even theta constant is below ``1e-12`` times the largest one
        or below its own error bound, so that ``chi_g(tau)`` vanishes.
    """
    if g not in (2, 3):
        raise UnsupportedGenus("theta-divisor torsion is available for g = 2, 3")
    tau = SiegelPoint.coerce(tau)
    if tau.g != g:
        raise WrongGenus(f"tau has genus {tau.g}, expected {g}")
    if _on_locus(g, tau, spec):
        raise OnDiscriminantLocus("chi_g vanishes: the theta divisor is singular")
    delta = delta_g_normalized(g, tau, spec).value
    weight = float(delta_weight(g))
    exponent = float(Fraction((-1) ** (g + 1) * 2, math.factorial(g + 1)))
    log_norm = 0.5 * (weight * math.log(tau.det_imag()) + 2 * math.log(abs(delta.value)))
    return math.exp(exponent * log_norm)


def l2_gram_quadrature(g: int, m: int, tau, grid_n: int = 200, spec: TruncationSpec | None = None) -> np.ndarray:
    """Gram matrix of the level-m theta basis in the hermitian metric of ``L^m``.

    The basis is ``theta[a, 0](m z, m tau)`` with ``a = 0, 1/m, ..., (m-1)/m``;
    the integrand ``theta_a conj(theta_b) exp(-2 pi m (Im z)^2 / Im tau)`` is
    averaged with the midpoint rule over ``z = x + tau y``, ``(x, y)`` in
    ``[0, 1)^2``. Exact value: ``(2 m Im tau)^(-1/2)`` on the diagonal.
    """
    if g != 1:
        raise UnsupportedGenus("the quadrature is implemented for g = 1")
    if m < 1:
        raise DomainError("m must be positive")
    if grid_n < 100:
        raise DomainError("grid_n must be at least 100")
    t = complex(SiegelPoint.coerce(tau).tau[0, 0])
    pts = (np.arange(grid_n) + 0.5) / grid_n
    x, y = np.meshgrid(pts, pts, indexing="ij")
    z = (x + t * y).ravel()
    spec = spec or TruncationSpec(1e-15)
    mt = m * t
    vals = np.stack(
        [theta(Characteristic([Fraction(k, m)], [0]), m * z, mt, spec).value for k in range(m)]
    )
    weight = np.exp(-2 * math.pi * m * t.imag * y.ravel() ** 2)
    return (vals * weight) @ vals.conj().T / z.size
