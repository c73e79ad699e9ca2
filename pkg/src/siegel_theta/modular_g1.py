"""Genus-one modular forms: theta constants, Delta, Eisenstein invariants, Epstein zeta."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from .errors import NonPositiveDefinite, PoleAt1
from .incgamma import scaled_upper_gamma
from .theta import CertifiedComplex, Characteristic, TruncationSpec, theta, theta_constant

TWO_PI = 2 * math.pi

THETA00 = Characteristic.half("00")
THETA10 = Characteristic.half("10")
THETA01 = Characteristic.half("01")
THETA11 = Characteristic.half("11")

_WEIGHTS = {
    "Delta": Fraction(12),
    "chi1": Fraction(3, 2),
    "g2": Fraction(4),
    "g3": Fraction(6),
    "theta00": Fraction(1, 2),
    "theta10": Fraction(1, 2),
    "theta01": Fraction(1, 2),
    "E_epstein": Fraction(0),
}


def _upper(tau) -> complex:
    t = complex(np.asarray(tau).reshape(-1)[0]) if np.ndim(tau) else complex(tau)
    if not t.imag > 0:
        raise NonPositiveDefinite(f"Im(tau) must be positive, got {t!r}")
    return t


@dataclass(frozen=True)
class ModularValue:
    """A value of a genus-one modular form together with its weight."""

    tau: complex
    value: complex
    weight: Fraction
    kind: str

    def __post_init__(self):
        _upper(self.tau)
        if self.kind not in _WEIGHTS:
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def of(cls, kind: str, tau, value) -> ModularValue:
        if kind not in _WEIGHTS:
            raise ValueError(f"unknown kind {kind!r}")
        return cls(_upper(tau), complex(value), _WEIGHTS[kind], kind)

    @property
    def petersson_norm_sq(self) -> float:
        return self.tau.imag ** float(self.weight) * abs(self.value) ** 2


# ---------------------------------------------------------------------------
# theta constants and chi_1
# ---------------------------------------------------------------------------


def theta00(tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    return theta_constant(THETA00, _upper(tau), spec)


def theta10(tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    return theta_constant(THETA10, _upper(tau), spec)


def theta01(tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    return theta_constant(THETA01, _upper(tau), spec)


def chi1(tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    """Product of the three even theta constants of genus one."""
    return theta00(tau, spec) * theta10(tau, spec) * theta01(tau, spec)


# ---------------------------------------------------------------------------
# Delta and the Weierstrass invariants
# ---------------------------------------------------------------------------


def _terms_for(aq: float, power: int, coef: float, tol: float = 1e-18) -> int:
    n = 1
    while coef * (n + 1) ** power * aq ** (n + 1) / max(1 - aq * (1 + 1 / (n + 1)) ** power, 1e-300) > tol:
        n += 1
        if n > 100000:
            raise NonPositiveDefinite("Im(tau) too small for the q-expansion")
    return n


def delta_product(tau, n_terms: int | None = None) -> CertifiedComplex:
    """Jacobi's Delta as ``q prod_{n<=N} (1 - q^n)^24``.

    The discarded factors change ``log`` of the product by at most
    ``eta = 24 |q|^(N+1) / (1 - |q|)^2``, hence ``err = |value| (e^eta - 1)``.
    """
    t = _upper(tau)
    q = np.exp(2j * np.pi * t)
    aq = abs(q)
    if n_terms is None:
        n_terms = _terms_for(aq, 0, 24.0 / (1 - aq) ** 2)
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    n = np.arange(1, n_terms + 1)
    log_prod = 24 * np.sum(np.log1p(-(q**n)))
    value = q * np.exp(log_prod)
    eta = 24 * aq ** (n_terms + 1) / (1 - aq) ** 2
    return CertifiedComplex(complex(value), abs(value) * math.expm1(eta))


def _lambert(q: complex, k: int, n_terms: int) -> complex:
    n = np.arange(1, n_terms + 1, dtype=float)
    qn = q**n
    return complex(np.sum(n**k * qn / (1 - qn)))


def eisenstein_g2_g3(tau, n_terms: int | None = None) -> tuple[CertifiedComplex, CertifiedComplex]:
    """Weierstrass invariants of the lattice ``Z + Z tau``.

    ``g2 = (4 pi^4 / 3) E4`` and ``g3 = (8 pi^6 / 27) E6`` with the
    normalized Eisenstein series ``E4 = 1 + 240 sum sigma_3(n) q^n`` and
    ``E6 = 1 - 504 sum sigma_5(n) q^n``. The tail uses
    ``sigma_k(n) <= zeta(k) n^k``.
    """
    t = _upper(tau)
    q = np.exp(2j * np.pi * t)
    aq = abs(q)
    out = []
    for k, c, scale in ((3, 240.0, 4 * math.pi**4 / 3), (5, -504.0, 8 * math.pi**6 / 27)):
        zk = float(special.zeta(k))
        n = n_terms or _terms_for(aq, k, abs(c) * zk)
        tail = abs(c) * zk * (n + 1) ** k * aq ** (n + 1) / (1 - aq * (1 + 1 / (n + 1)) ** k)
        e = 1 + c * _lambert(q, k, n)
        out.append(CertifiedComplex(scale * e, scale * tail))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Epstein zeta of the lattice Z + Z tau
# ---------------------------------------------------------------------------


def _lattice_form(t: complex) -> np.ndarray:
    v = t.imag
    return np.array([[1.0, t.real], [t.real, abs(t) ** 2]]) / v


def _shell_points(form: np.ndarray, tol: float = 1e-20) -> tuple[np.ndarray, float]:
    mu = float(np.linalg.eigvalsh(form)[0])
    radius = 1
    while 8 * radius * math.exp(-math.pi * mu * radius**2) > tol * mu:
        radius += 1
    r = np.arange(-radius, radius + 1)
    m, n = np.meshgrid(r, r, indexing="ij")
    mn = np.stack([m.ravel(), n.ravel()], axis=-1)
    mn = mn[np.any(mn != 0, axis=1)]
    x = math.pi * np.einsum("ni,ij,nj->n", mn, form, mn)
    return x, mu, radius


def _g_bound(sigma: float, x: float) -> float:
    # |int_1^inf t^(s-1) e^(-x t) dt| for Re s = sigma
    excess = max(sigma - 1.0, 0.0)
    return math.exp(-x) / (x - excess) if x > excess else math.inf


def _tail(sigma: float, mu: float, radius: int) -> float:
    k = np.arange(radius + 1, radius + 200, dtype=float)
    x = math.pi * mu * k**2
    vals = [8 * kk * (_g_bound(sigma, xx) + _g_bound(1 - sigma, xx)) for kk, xx in zip(k, x)]
    return float(np.sum(vals))


def epstein_zeta(tau, s: complex) -> CertifiedComplex:
    """Continuation of ``(2 pi)^-2s sum' (Im tau)^s / |m + n tau|^2s``.

    Uses the theta-lift splitting at ``t = 1``::

        pi^-s Gamma(s) Z(s) = -1/s - 1/(1-s) + sum' [G(s, pi Q) + G(1-s, pi Q)]

    with ``G(s, x) = int_1^inf t^(s-1) e^(-xt) dt`` and
    ``Q(m, n) = |m + n tau|^2 / Im tau`` (a form of determinant one, so it
    equals its own dual up to equivalence).
    """
    t = _upper(tau)
    s = complex(s)
    if abs(s - 1) < 1e-9:
        raise PoleAt1("the Epstein zeta function has a pole at s = 1")
    if s == 0:
        return CertifiedComplex(-1.0 + 0j, 0.0)
    x, mu, radius = _shell_points(_lattice_form(t))
    lam = -1 / s - 1 / (1 - s) + np.sum(scaled_upper_gamma(s, x) + scaled_upper_gamma(1 - s, x))
    pref = (TWO_PI ** (-2 * s)) * (math.pi**s) * special.rgamma(s)
    err = abs(pref) * _tail(s.real, mu, radius)
    return CertifiedComplex(complex(pref * lam), err)


def epstein_zeta_deriv0(tau) -> CertifiedComplex:
    """``d/ds`` of :func:`epstein_zeta` at ``s = 0``.

    From the Laurent expansions of ``pi^s / Gamma(s)`` and of the bracket
    above: ``Z'(0) = c0 - euler_gamma - log pi`` with
    ``c0 = -1 + sum' [E1(pi Q) + e^(-pi Q) / (pi Q)]``, and the
    ``(2 pi)^-2s`` prefactor contributes ``-2 log(2 pi) Z(0) = 2 log(2 pi)``.
    """
    t = _upper(tau)
    x, mu, radius = _shell_points(_lattice_form(t))
    c0 = -1.0 + float(np.sum(special.exp1(x) + np.exp(-x) / x))
    value = 2 * math.log(TWO_PI) + c0 - np.euler_gamma - math.log(math.pi)
    return CertifiedComplex(complex(value), _tail(0.0, mu, radius))


def torsion_elliptic(tau) -> float:
    """Analytic torsion ``exp(zeta_tau'(0))`` of the flat elliptic curve ``E_tau``."""
    return math.exp(epstein_zeta_deriv0(tau).value.real)


def kronecker_torsion(tau) -> float:
    """Closed form ``(2 pi)^2 ||Delta(tau)||^(-1/6)`` with weight-12 Petersson norm."""
    t = _upper(tau)
    d = delta_product(t).value
    norm_sq = t.imag**12 * abs(d) ** 2
    return TWO_PI**2 * norm_sq ** (-1 / 12)


# ---------------------------------------------------------------------------
# integral of log ||theta||^2 over the torus
# ---------------------------------------------------------------------------


def log_theta_norm_integral(tau, grid_n: int = 400) -> float:
    """Midpoint-rule mean of ``log(|theta(z)|^2 exp(-2 pi (Im z)^2 / Im tau))``.

    Coordinates ``z = x + tau y`` with ``(x, y)`` on ``[0, 1)^2``; in them the
    normalized invariant volume is ``dx dy``. With an even ``grid_n`` no node
    hits the zero of theta at ``(1/2, 1/2)``; the logarithmic singularity is
    integrable and the rule converges like ``h^2 log h``.
    """
    t = _upper(tau)
    pts = (np.arange(grid_n) + 0.5) / grid_n
    x, y = np.meshgrid(pts, pts, indexing="ij")
    z = x + t * y
    vals = theta(THETA00, z, t, TruncationSpec(1e-14)).value
    integrand = np.log(np.abs(vals) ** 2) - 2 * math.pi * t.imag * y**2
    return float(integrand.mean())
