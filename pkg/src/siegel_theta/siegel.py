"""Symplectic action, even characteristics and the forms chi_g, Delta_g."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, DomainError, SingularFactor, UnsupportedGenus
from .fixtures import ZETA_PRIME_MINUS_ONE
from .theta import (
    CertifiedComplex,
    Characteristic,
    SiegelPoint,
    TruncationSpec,
    cprod,
    theta_constant,
)

C2 = 2.0**-22 * math.pi**-14 * math.exp(12 * ZETA_PRIME_MINUS_ONE)
C22 = 2.0**-80 * math.pi**-56 * math.exp(48 * ZETA_PRIME_MINUS_ONE)


# ---------------------------------------------------------------------------
# symplectic group
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymplecticElement:
    """Integer matrix ``[[A, B], [C, D]]`` in Sp(2g, Z)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        blocks = [np.array(x, dtype=np.int64) for x in (self.A, self.B, self.C, self.D)]
        g = blocks[0].shape[0]
        if any(b.shape != (g, g) for b in blocks):
            raise DimensionMismatch("all blocks must be g x g")
        A, B, C, D = blocks
        if not (
            np.array_equal(A.T @ C, C.T @ A)
            and np.array_equal(B.T @ D, D.T @ B)
            and np.array_equal(A.T @ D - C.T @ B, np.eye(g, dtype=np.int64))
        ):
            raise DomainError("blocks violate the symplectic relations")
        for name, b in zip("ABCD", blocks):
            b.setflags(write=False)
            object.__setattr__(self, name, b)

    @classmethod
    def from_matrix(cls, m) -> SymplecticElement:
        m = np.asarray(m, dtype=np.int64)
        g = m.shape[0] // 2
        return cls(m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:])

    @classmethod
    def identity(cls, g: int) -> SymplecticElement:
        return cls.from_matrix(np.eye(2 * g, dtype=np.int64))

    @classmethod
    def J(cls, g: int) -> SymplecticElement:
        z, i = np.zeros((g, g), dtype=np.int64), np.eye(g, dtype=np.int64)
        return cls(z, -i, i, z)

    @classmethod
    def translation(cls, B) -> SymplecticElement:
        B = np.asarray(B, dtype=np.int64)
        g = B.shape[0]
        i = np.eye(g, dtype=np.int64)
        return cls(i, B, np.zeros((g, g), dtype=np.int64), i)

    @property
    def g(self) -> int:
        return self.A.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.A, self.B], [self.C, self.D]])

    def __matmul__(self, other: SymplecticElement) -> SymplecticElement:
        return SymplecticElement.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> SymplecticElement:
        return SymplecticElement(self.D.T, -self.B.T, -self.C.T, self.A.T)

    def __eq__(self, other):
        return isinstance(other, SymplecticElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    @property
    def in_gamma12(self) -> bool:
        """Membership in Igusa's subgroup: diagonals of tA C and tB D are even."""
        return bool(
            np.all(np.diag(self.A.T @ self.C) % 2 == 0) and np.all(np.diag(self.B.T @ self.D) % 2 == 0)
        )

    def j(self, tau) -> complex:
        """Automorphy factor ``det(C tau + D)``."""
        tau = SiegelPoint.coerce(tau)
        return complex(np.linalg.det(self.C @ tau.tau + self.D))


def generators(g: int) -> list[SymplecticElement]:
    """``J`` and the translations by elementary symmetric integer matrices."""
    out = [SymplecticElement.J(g)]
    for i in range(g):
        for k in range(i, g):
            b = np.zeros((g, g), dtype=np.int64)
            b[i, k] = b[k, i] = 1
            out.append(SymplecticElement.translation(b))
    return out


def random_word(g: int, length: int, rng: np.random.Generator) -> tuple[SymplecticElement, list[int]]:
    """Random product of generators and their inverses; returns the element and the letters.

    Letters are ``k + 1`` for generator ``k`` and ``-(k + 1)`` for its inverse.
    """
    gens = generators(g)
    element = SymplecticElement.identity(g)
    letters = []
    for _ in range(length):
        k = int(rng.integers(len(gens)))
        inv = bool(rng.integers(2))
        element = element @ (gens[k].inverse() if inv else gens[k])
        letters.append(-(k + 1) if inv else k + 1)
    return element, letters


def sympl_act(gamma: SymplecticElement, z, tau) -> tuple[np.ndarray, SiegelPoint]:
    """``gamma . (z, tau) = (t(C tau + D)^-1 z, (A tau + B)(C tau + D)^-1)``."""
    tau = SiegelPoint.coerce(tau)
    if gamma.g != tau.g:
        raise DimensionMismatch("gamma and tau have different genus")
    factor = gamma.C @ tau.tau + gamma.D
    if abs(np.linalg.det(factor)) < 1e-12:
        raise SingularFactor("det(C tau + D) vanishes")
    inv = np.linalg.inv(factor)
    new_tau = SiegelPoint.symmetrized((gamma.A @ tau.tau + gamma.B) @ inv)
    z = np.zeros(tau.g, dtype=complex) if z is None else np.asarray(z, dtype=complex).reshape(tau.g)
    return inv.T @ z, new_tau


# ---------------------------------------------------------------------------
# characteristics and chi_g
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacteristicTable:
    g: int
    evens: tuple

    def __len__(self):
        return len(self.evens)


@lru_cache(maxsize=None)
def even_characteristics(g: int) -> CharacteristicTable:
    """All even half-integral characteristics of genus g, lexicographic in their bit labels."""
    if g < 1:
        raise UnsupportedGenus("genus must be positive")
    evens = []
    for bits in itertools.product((0, 1), repeat=2 * g):
        c = Characteristic.half(bits)
        if c.is_even:
            evens.append(c)
    return CharacteristicTable(g, tuple(evens))


def chi_g(g: int, tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    """Product of all even theta constants."""
    tau = SiegelPoint.coerce(tau)
    if tau.g != g:
        raise DimensionMismatch(f"tau has genus {tau.g}, expected {g}")
    return cprod(theta_constant(c, tau, spec) for c in even_characteristics(g).evens)


def chi_weight(g: int) -> Fraction:
    """Weight of chi_g: 3/2, 5, and 2^(g-2)(2^g+1) for g > 2."""
    if g == 1:
        return Fraction(3, 2)
    return Fraction(2 ** (g - 2) * (2**g + 1)) if g > 2 else Fraction(5)


def petersson_norm_sq(value, weight, tau) -> float:
    """``(det Im tau)^weight |value|^2``."""
    tau = SiegelPoint.coerce(tau)
    return tau.det_imag() ** float(weight) * abs(complex(value)) ** 2


def delta_weight(g: int) -> Fraction:
    return Fraction((g + 3) * math.factorial(g), 2)


@dataclass(frozen=True)
class DeltaValue:
    value: CertifiedComplex
    g: int
    up_to_constant: bool


def delta_g_normalized(g: int, tau, spec: TruncationSpec | None = None) -> DeltaValue:
    """Delta_g for g = 2 (exact normalization) and g = 3 (up to an unknown constant).

    For g = 2 this is ``2^-22 pi^-14 e^(12 zeta'(-1)) chi_2``; for g = 3 the
    returned value is ``chi_3`` and must only enter scale-free ratios.
    """
    if g == 2:
        return DeltaValue(C2 * chi_g(2, tau, spec), 2, False)
    if g == 3:
        return DeltaValue(chi_g(3, tau, spec), 3, True)
    raise UnsupportedGenus("Delta_g is available for g = 2, 3 only")


def chi2_character(gamma: SymplecticElement, tau, spec: TruncationSpec | None = None) -> complex:
    """Measured ``chi_2(gamma tau) / (det(C tau + D)^5 chi_2(tau))``."""
    _, gt = sympl_act(gamma, None, tau)
    return complex(chi_g(2, gt, spec).value / (gamma.j(tau) ** 5 * chi_g(2, tau, spec).value))
