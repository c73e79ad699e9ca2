"""The Kummer quartic of an abelian surface and the discriminant of |2 Theta|.

Coordinates ``w = (x, y, z, t)`` are the level-two theta values
``theta[1/2 0, 0 0], theta[1/2 1/2, 0 0], theta[0 1/2, 0 0], theta[0 0, 0 0]``
at ``(2z, 2 tau)``; dual coordinates ``u = (u0, u1, u2, u3)`` pair with them
in the same order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateOrbit, DimensionMismatch, DomainError, WrongGenus
from .siegel import C22
from .theta import CertifiedComplex, Characteristic, SiegelPoint, TruncationSpec, cprod, theta

LEVEL2_CHARS = tuple(Characteristic.half(s) for s in ("1000", "1100", "0100", "0000"))

# sigma_1 .. sigma_4 as signed permutation matrices acting on column vectors
SIGMA = (
    np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
    np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    np.diag([1, 1, -1, -1]),
    np.diag([1, -1, 1, -1]),
)
ORBIT_LABELS = tuple(itertools.product((0, 1), repeat=4))


def _label_matrix(label) -> np.ndarray:
    # sigma_1^e1 sigma_2^e2 sigma_3^e3 sigma_4^e4, sigma_4 applied first
    m = np.eye(4, dtype=int)
    for e, s in zip(label, SIGMA):
        if e:
            m = m @ s
    return m


HEISENBERG = tuple(_label_matrix(lab) for lab in ORBIT_LABELS)


def _genus2(tau) -> SiegelPoint:
    tau = SiegelPoint.coerce(tau)
    if tau.g != 2:
        raise WrongGenus("the Kummer construction needs genus 2")
    return tau


def _vec4(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape[-1] != 4:
        raise DimensionMismatch("projective points need 4 coordinates")
    if np.any(np.all(w == 0, axis=-1)):
        raise DomainError("the zero vector is not a projective point")
    return w


def normalize(w) -> np.ndarray:
    """Scale so the coordinate of largest modulus equals 1."""
    w = np.asarray(w, dtype=complex)
    k = np.argmax(np.abs(w), axis=-1)
    return w / np.take_along_axis(w, k[..., None], axis=-1)


@dataclass(frozen=True)
class ThetaFourTuple:
    """Level-two theta constants ``alpha, beta, gamma, delta`` at ``(0, 2 tau)``."""

    tau: SiegelPoint
    alpha: CertifiedComplex
    beta: CertifiedComplex
    gamma: CertifiedComplex
    delta: CertifiedComplex

    @classmethod
    def at(cls, tau, spec: TruncationSpec | None = None) -> ThetaFourTuple:
        tau = _genus2(tau)
        two = SiegelPoint(2 * tau.tau)
        vals = [theta(c, None, two, spec) for c in LEVEL2_CHARS]
        return cls(tau, *vals)

    def as_array(self) -> np.ndarray:
        return np.array([complex(x.value) for x in (self.alpha, self.beta, self.gamma, self.delta)])


def level2_map(z, tau, spec: TruncationSpec | None = None) -> np.ndarray:
    """The morphism ``z -> (x : y : z : t)``; accepts a batch of points, shape ``(..., 2)``."""
    tau = _genus2(tau)
    two = SiegelPoint(2 * tau.tau)
    z2 = 2 * np.asarray(z, dtype=complex)
    return np.stack([theta(c, z2, two, spec).value for c in LEVEL2_CHARS], axis=-1)


def kummer_coeffs(tau, spec: TruncationSpec | None = None) -> tuple[CertifiedComplex, ...]:
    """Coefficients ``(A, B, C, D, E)`` of the Kummer quartic.

    ``E`` carries the factor ``(alpha^2 + beta^2 + gamma^2 + delta^2)``: it is the
    unique value making the level-two theta constants a singular point.
    """
    f = ThetaFourTuple.at(tau, spec)
    return _coeffs_from(f.alpha, f.beta, f.gamma, f.delta)


def _coeffs_from(al, be, ga, de):
    a2, b2, g2, d2 = al * al, be * be, ga * ga, de * de
    a4, b4, g4, d4 = a2 * a2, b2 * b2, g2 * g2, d2 * d2
    p = a2 * d2 - b2 * g2
    q = b2 * d2 - g2 * a2
    r = g2 * d2 - a2 * b2
    A = p * q * r
    B = (b4 + g4 - a4 - d4) * q * r
    C = (g4 + a4 - b4 - d4) * p * r
    D = (a4 + b4 - g4 - d4) * p * q
    E = (
        al * be * ga * de
        * (d2 + a2 - b2 - g2)
        * (d2 + b2 - g2 - a2)
        * (d2 + g2 - a2 - b2)
        * (a2 + b2 + g2 + d2)
    )
    return A, B, C, D, E


def _quartic(coeffs, w):
    A, B, C, D, E = coeffs
    x, y, z, t = (w[..., i] for i in range(4))
    x2, y2, z2, t2 = x * x, y * y, z * z, t * t
    return (
        A * (x2 * x2 + y2 * y2 + z2 * z2 + t2 * t2)
        + B * (x2 * t2 + y2 * z2)
        + C * (y2 * t2 + z2 * x2)
        + D * (z2 * t2 + x2 * y2)
        + 2 * E * x * y * z * t
    )


def _quartic_grad(coeffs, w):
    A, B, C, D, E = coeffs
    x, y, z, t = (w[..., i] for i in range(4))
    x2, y2, z2, t2 = x * x, y * y, z * z, t * t
    return np.stack(
        [
            4 * A * x * x2 + 2 * B * x * t2 + 2 * C * x * z2 + 2 * D * x * y2 + 2 * E * y * z * t,
            4 * A * y * y2 + 2 * B * y * z2 + 2 * C * y * t2 + 2 * D * y * x2 + 2 * E * x * z * t,
            4 * A * z * z2 + 2 * B * z * y2 + 2 * C * z * x2 + 2 * D * z * t2 + 2 * E * x * y * t,
            4 * A * t * t2 + 2 * B * t * x2 + 2 * C * t * y2 + 2 * D * t * z2 + 2 * E * x * y * z,
        ],
        axis=-1,
    )


def kummer_quartic_eval(w, tau, spec: TruncationSpec | None = None, coeffs=None) -> CertifiedComplex:
    """``F(w, tau)``; ``w`` may be a batch with trailing axis 4 (then the value is an array)."""
    w = _vec4(w)
    coeffs = coeffs or kummer_coeffs(tau, spec)
    vals = _quartic([complex(c.value) for c in coeffs], w)
    # coefficient errors times monomial sizes; w is exact
    aw = np.abs(w)
    ax, ay, az, at = (aw[..., i] for i in range(4))
    e = [float(c.err) for c in coeffs]
    err = (
        e[0] * (ax**4 + ay**4 + az**4 + at**4)
        + e[1] * (ax**2 * at**2 + ay**2 * az**2)
        + e[2] * (ay**2 * at**2 + az**2 * ax**2)
        + e[3] * (az**2 * at**2 + ax**2 * ay**2)
        + 2 * e[4] * ax * ay * az * at
    )
    if w.ndim == 1:
        return CertifiedComplex(complex(vals), float(err))
    return CertifiedComplex(vals, err)


def kummer_quartic_grad(w, tau, spec: TruncationSpec | None = None, coeffs=None) -> np.ndarray:
    """Exact polynomial gradient ``dF/dw`` (values only)."""
    w = _vec4(w)
    coeffs = coeffs or kummer_coeffs(tau, spec)
    return _quartic_grad([complex(c.value) for c in coeffs], w)


def coefficient_scale(coeffs) -> float:
    return max(abs(complex(c.value)) for c in coeffs)


# ---------------------------------------------------------------------------
# Heisenberg orbit, tropes and the discriminant
# ---------------------------------------------------------------------------


def heisenberg_orbit(seed, tol: float = 1e-10) -> list[np.ndarray]:
    """The 16 images of ``seed`` under the Heisenberg group, in label order.

    Labels ``(e1, e2, e3, e4)`` run lexicographically; label ``e`` acts as
    ``sigma_1^e1 sigma_2^e2 sigma_3^e3 sigma_4^e4``. Raises
    :class:`DegenerateOrbit` when two images agree projectively.
    """
    seed = _vec4(seed)
    orbit = [m @ seed for m in HEISENBERG]
    normed = normalize(np.array(orbit))
    for i in range(16):
        for k in range(i):
            if np.max(np.abs(normed[i] - normed[k])) < tol:
                raise DegenerateOrbit(
                    f"orbit elements {ORBIT_LABELS[k]} and {ORBIT_LABELS[i]} coincide"
                )
    return orbit


@dataclass(frozen=True, eq=False)
class KummerModel:
    """Coefficients, nodes and dual forms of the Kummer quartic at one tau."""

    tau: SiegelPoint
    coeffs: tuple
    nodes: np.ndarray = field(repr=False)
    node_errs: np.ndarray = field(repr=False)

    @classmethod
    def at(cls, tau, spec: TruncationSpec | None = None) -> KummerModel:
        f = ThetaFourTuple.at(tau, spec)
        coeffs = _coeffs_from(f.alpha, f.beta, f.gamma, f.delta)
        nodes = np.array(heisenberg_orbit(f.as_array()))
        errs = np.array([float(x.err) for x in (f.alpha, f.beta, f.gamma, f.delta)])
        # each node is a signed permutation of the seed
        node_errs = np.array([np.abs(m) @ errs for m in HEISENBERG])
        nodes.setflags(write=False)
        return cls(f.tau, coeffs, nodes, node_errs)

    @property
    def dual_forms(self) -> np.ndarray:
        """Row k holds the coefficients of the k-th trope ``u -> nodes[k] . u``."""
        return self.nodes

    def F(self, w) -> CertifiedComplex:
        return kummer_quartic_eval(w, self.tau, coeffs=self.coeffs)

    def grad(self, w) -> np.ndarray:
        return kummer_quartic_grad(w, self.tau, coeffs=self.coeffs)

    @property
    def scale(self) -> float:
        return coefficient_scale(self.coeffs)

    def G(self, u) -> CertifiedComplex:
        u = _vec4(u)
        factors = [
            CertifiedComplex(complex(n @ u), float(e @ np.abs(u)))
            for n, e in zip(self.nodes, self.node_errs)
        ]
        return cprod(factors)


def dual_form_product(u, tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    """``G(u, tau)``: product of the 16 linear forms dual to the nodes."""
    return KummerModel.at(tau, spec).G(u)


@dataclass(frozen=True)
class DiscriminantValue:
    u: np.ndarray
    tau: SiegelPoint
    value: CertifiedComplex
    constant_used: str = "2^-80 pi^-56 exp(48 zeta'(-1))"
    constant: float = C22


def discriminant_2_2(u, tau, spec: TruncationSpec | None = None) -> DiscriminantValue:
    """``C_{2,2} F(u, tau)^2 G(u, tau)``, homogeneous of degree 24 in ``u``."""
    u = _vec4(u)
    model = KummerModel.at(tau, spec)
    f = model.F(u)
    value = cprod([CertifiedComplex(C22), f, f, model.G(u)])
    return DiscriminantValue(u.copy(), model.tau, value)


def tangent_plane(p, tau, spec: TruncationSpec | None = None) -> np.ndarray:
    """Dual coordinates of the tangent plane at a smooth point: the gradient of F."""
    return kummer_quartic_grad(p, tau, spec)
