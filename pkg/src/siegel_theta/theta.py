"""Riemann theta functions with rational characteristics.

All series are summed over the shifted lattice ``v = n + a`` inside the box
``|v|_inf <= R`` and returned as :class:`CertifiedComplex` values whose
``err`` field bounds the discarded tail. Round-off is not part of ``err``;
in binary64 it stays far below 1e-12 for the radii and genera used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonPositiveDefinite,
    NonSymmetric,
    ToleranceUnreachable,
    WrongGenus,
)

__all__ = [
    "CertifiedComplex",
    "Characteristic",
    "SiegelPoint",
    "TruncationSpec",
    "theta",
    "theta_constant",
    "theta_z_grad",
    "theta_offdiag_deriv",
    "tail_bound",
    "choose_radius",
]


# ---------------------------------------------------------------------------
# certified values
# ---------------------------------------------------------------------------


def _parts(x):
    if isinstance(x, CertifiedComplex):
        return x.value, x.err
    return x, 0.0


@dataclass(frozen=True)
class CertifiedComplex:
    """A complex value (or array of values) with an absolute error bound."""

    value: complex | np.ndarray
    err: float | np.ndarray = 0.0

    def __post_init__(self):
        if np.any(np.asarray(self.err) < 0) or np.any(np.isnan(self.err)):
            raise ValueError("err must be nonnegative")

    # arithmetic propagates bounds conservatively; plain numbers are exact
    def __add__(self, other):
        v, e = _parts(other)
        return CertifiedComplex(self.value + v, self.err + e)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedComplex(-self.value, self.err)

    def __sub__(self, other):
        v, e = _parts(other)
        return CertifiedComplex(self.value - v, self.err + e)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v, e = _parts(other)
        err = np.abs(self.value) * e + np.abs(v) * self.err + self.err * e
        return CertifiedComplex(self.value * v, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, e = _parts(other)
        av = np.abs(v)
        with np.errstate(divide="ignore", invalid="ignore"):
            err = (self.err * av + np.abs(self.value) * e) / (av * (av - e))
            err = np.where(av > e, err, np.inf)
        if np.ndim(err) == 0:
            err = float(err)
        return CertifiedComplex(self.value / v, err)

    def __rtruediv__(self, other):
        return CertifiedComplex(other, 0.0) / self

    def __pow__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError("only nonnegative integer powers are certified")
        result = CertifiedComplex(np.ones_like(self.value) if np.ndim(self.value) else 1.0 + 0j)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __getitem__(self, idx):
        err = self.err[idx] if np.ndim(self.err) else self.err
        return CertifiedComplex(self.value[idx], err)

    def conj(self) -> CertifiedComplex:
        return CertifiedComplex(np.conj(self.value), self.err)

    @property
    def rel_err(self):
        with np.errstate(divide="ignore"):
            return self.err / np.abs(self.value)

    def __complex__(self):
        return complex(self.value)

    def __repr__(self):
        return f"CertifiedComplex(value={self.value!r}, err={self.err!r})"


def cprod(factors: Iterable[CertifiedComplex]) -> CertifiedComplex:
    """Product of certified values, accumulated in log space.

    Relative errors combine as ``prod(1 + r_i) - 1`` which is the exact
    worst case of the pairwise rule and never overflows on long products.
    """
    factors = list(factors)
    log_abs = 0.0
    phase = 1.0 + 0j
    log_rel = 0.0
    for f in factors:
        v, e = _parts(f)
        v = complex(v)
        a = abs(v)
        if a == 0.0:
            return CertifiedComplex(0j, _zero_product_err(factors))
        log_abs += math.log(a)
        phase *= v / a
        log_rel += math.log1p(e / a)
    value = phase * math.exp(log_abs)
    return CertifiedComplex(value, math.exp(log_abs) * math.expm1(log_rel))


def _zero_product_err(factors):
    # fall back to pairwise propagation when a factor is exactly zero
    out = CertifiedComplex(1.0 + 0j)
    for f in factors:
        out = out * f
    return float(out.err)


# ---------------------------------------------------------------------------
# characteristics
# ---------------------------------------------------------------------------


def _frac_mod1(x) -> Fraction:
    q = x if isinstance(x, Fraction) else Fraction(x)
    return q - math.floor(q)


@dataclass(frozen=True)
class Characteristic:
    """A theta characteristic ``(a, b)``, both reduced to ``[0, 1)``.

    Entries are stored as exact :class:`fractions.Fraction` values. Floats
    are accepted only when they convert exactly (``0.5``, ``0.25``...).
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        a = tuple(_frac_mod1(x) for x in self.a)
        b = tuple(_frac_mod1(x) for x in self.b)
        if len(a) != len(b) or not a:
            raise DimensionMismatch("a and b must be nonempty vectors of equal length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def half(cls, bits: str | Sequence[int]) -> Characteristic:
        """Half-integer characteristic from 2g bits ``a_1..a_g b_1..b_g``.

        ``Characteristic.half("1100")`` is ``a = (1/2, 1/2), b = (0, 0)``.
        """
        bits = [int(c) for c in bits]
        if len(bits) % 2:
            raise DimensionMismatch("need an even number of bits")
        g = len(bits) // 2
        return cls(tuple(Fraction(x, 2) for x in bits[:g]), tuple(Fraction(x, 2) for x in bits[g:]))

    @classmethod
    def zero(cls, g: int) -> Characteristic:
        return cls((0,) * g, (0,) * g)

    @property
    def g(self) -> int:
        return len(self.a)

    @property
    def is_half_integral(self) -> bool:
        return all((2 * x).denominator == 1 for x in self.a + self.b)

    @property
    def parity(self) -> int:
        """0 for even, 1 for odd; defined for half-integral characteristics."""
        if not self.is_half_integral:
            raise ValueError("parity is defined only for characteristics in (1/2)Z^g")
        s = 4 * sum(x * y for x, y in zip(self.a, self.b))
        return int(s) % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    @property
    def label(self) -> str:
        if self.is_half_integral:
            return "".join(str(int(2 * x)) for x in self.a + self.b)
        return f"{[str(x) for x in self.a]}|{[str(x) for x in self.b]}"

    def a_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.a])

    def b_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.b])


# ---------------------------------------------------------------------------
# points of the Siegel upper half space
# ---------------------------------------------------------------------------

PIVOT_RTOL = 1e-12


def _ldl_pivots(m: np.ndarray) -> np.ndarray:
    g = m.shape[0]
    L = np.eye(g)
    d = np.zeros(g)
    for k in range(g):
        d[k] = m[k, k] - np.sum(L[k, :k] ** 2 * d[:k])
        for i in range(k + 1, g):
            L[i, k] = (m[i, k] - np.sum(L[i, :k] * L[k, :k] * d[:k])) / d[k] if d[k] != 0 else np.inf
    return d


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """Symmetric complex ``g x g`` matrix with positive definite imaginary part."""

    tau: np.ndarray
    lam_min: float = field(init=False, repr=False)

    def __post_init__(self):
        t = np.array(self.tau, dtype=complex)
        if t.ndim == 0:
            t = t.reshape(1, 1)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise DimensionMismatch(f"tau must be square, got shape {t.shape}")
        if not np.all(np.isfinite(t)):
            raise NonPositiveDefinite("tau has non-finite entries")
        if np.any(t != t.T):
            raise NonSymmetric("tau must be exactly symmetric")
        im = t.imag
        scale = np.max(np.abs(im))
        pivots = _ldl_pivots(im)
        if scale == 0 or np.any(~(pivots > PIVOT_RTOL * scale)):
            raise NonPositiveDefinite("Im(tau) is not positive definite")
        t.setflags(write=False)
        object.__setattr__(self, "tau", t)
        object.__setattr__(self, "lam_min", float(np.linalg.eigvalsh(im)[0]))

    @classmethod
    def coerce(cls, tau) -> SiegelPoint:
        return tau if isinstance(tau, SiegelPoint) else cls(tau)

    @classmethod
    def symmetrized(cls, tau) -> SiegelPoint:
        """Build from a numerically computed matrix, removing round-off asymmetry."""
        t = np.asarray(tau, dtype=complex)
        return cls((t + t.T) / 2)

    @property
    def g(self) -> int:
        return self.tau.shape[0]

    @property
    def imag(self) -> np.ndarray:
        return self.tau.imag

    def det_imag(self) -> float:
        return float(np.linalg.det(self.tau.imag))

    def scaled(self, c: float) -> SiegelPoint:
        return SiegelPoint(c * self.tau)

    def __repr__(self):
        return f"SiegelPoint({self.tau.tolist()!r})"


@dataclass(frozen=True)
class TruncationSpec:
    """Target absolute tolerance for the truncated lattice sums."""

    target_abs_tol: float = 1e-15
    max_radius: int = 200
    strict: bool = False

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")
        if self.max_radius < 1:
            raise ValueError("max_radius must be a positive integer")


DEFAULT_SPEC = TruncationSpec()

# ---------------------------------------------------------------------------
# tail bounds
# ---------------------------------------------------------------------------

_N_SHELLS = 64


def _log_weight_zero(r):
    return np.zeros_like(r)


def tail_bound(
    radius: int,
    g: int,
    lam_min: float,
    y_norm: float = 0.0,
    log_weight: Callable[[np.ndarray], np.ndarray] = _log_weight_zero,
) -> float:
    """Bound on the sum of ``|term|`` over ``|v|_inf > radius``.

    Each term satisfies ``|term| <= W(r) exp(-pi lam |v|^2 + 2 pi |y| |v|)``
    where ``W`` is the weight bound on the shell ``r - 1 < |v|_inf <= r``
    (``log_weight`` receives ``r``). A shell holds at most
    ``2 g (2 r + 1)^(g - 1)`` points and every point in it has
    ``|v|_2 > r - 1``. Valid once ``radius >= y_norm / lam_min`` so the
    Gaussian factor is decreasing.
    """
    r = radius + np.arange(1, _N_SHELLS + 1, dtype=float)
    rho = r - 1.0
    log_terms = (
        math.log(2 * g)
        + (g - 1) * np.log(2 * r + 1)
        + log_weight(r)
        - math.pi * lam_min * rho**2
        + 2 * math.pi * y_norm * rho
    )
    top = np.max(log_terms)
    if top < -745:
        return 0.0
    total = float(np.sum(np.exp(log_terms - top)))
    # geometric majorant for shells beyond the table; the ratio only shrinks
    q = math.exp(min(log_terms[-1] - log_terms[-2], 0.0))
    if q >= 1.0:
        return math.inf
    total += math.exp(log_terms[-1] - top) * q / (1 - q)
    return math.exp(top) * total


def choose_radius(
    g: int,
    lam_min: float,
    y_norm: float,
    spec: TruncationSpec,
    log_weight: Callable[[np.ndarray], np.ndarray] = _log_weight_zero,
) -> tuple[int, float]:
    """Smallest radius whose tail bound meets ``spec.target_abs_tol``."""
    r = max(1, math.ceil(y_norm / lam_min))
    while True:
        bound = tail_bound(r, g, lam_min, y_norm, log_weight)
        if bound <= spec.target_abs_tol:
            return r, bound
        if r >= spec.max_radius:
            if spec.strict:
                raise ToleranceUnreachable(
                    f"tail bound {bound:.3g} at radius cap {spec.max_radius} exceeds "
                    f"{spec.target_abs_tol:.3g}"
                )
            return r, bound
        r += 1


def _box(a: np.ndarray, radius: int) -> np.ndarray:
    axes = [
        np.arange(math.ceil(-radius - ai), math.floor(radius - ai) + 1, dtype=float) + ai
        for ai in a
    ]
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack([x.ravel() for x in grid], axis=-1)


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

_CHUNK = 1 << 21


def _prepare_z(z, g: int) -> np.ndarray:
    if z is None:
        return np.zeros(g, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if g == 1 and (z.ndim == 0 or z.shape[-1] != 1):
        z = z[..., None]
    if z.shape[-1] != g:
        raise DimensionMismatch(f"z has trailing dimension {z.shape[-1]}, expected {g}")
    return z


def _series(char, z, tau, spec, weight=None, log_weight=_log_weight_zero):
    tau = SiegelPoint.coerce(tau)
    spec = spec or DEFAULT_SPEC
    g = tau.g
    if char.g != g:
        raise DimensionMismatch(f"characteristic has genus {char.g}, tau has genus {g}")
    z = _prepare_z(z, g)
    batch_shape = z.shape[:-1]
    zf = z.reshape(-1, g)
    y_norm = float(np.max(np.linalg.norm(zf.imag, axis=-1))) if zf.size else 0.0
    radius, err = choose_radius(g, tau.lam_min, y_norm, spec, log_weight)

    a = char.a_array()
    v = _box(a, radius)
    quad = np.einsum("ni,ij,nj->n", v, tau.tau, v)
    w = None if weight is None else weight(v)  # (N,) or (N, k)
    shift = zf + char.b_array()

    rows = max(1, _CHUNK // max(len(v), 1))
    out = []
    for start in range(0, len(zf), rows):
        expo = 1j * np.pi * quad[None, :] + 2j * np.pi * (shift[start : start + rows] @ v.T)
        terms = np.exp(expo)
        out.append(terms @ w if w is not None else terms.sum(axis=1))
    values = np.concatenate(out, axis=0)
    values = values.reshape(batch_shape + values.shape[1:])
    if values.ndim == 0:
        values = complex(values)
    elif w is not None and w.ndim == 2:
        err = np.full(values.shape, err)
    return CertifiedComplex(values, err)


def theta(char: Characteristic, z, tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    """Evaluate ``theta[a, b](z, tau)``.

    ``z`` may be ``None`` (theta constant), a g-vector, or an array of
    g-vectors with shape ``(..., g)``; for genus 1 a scalar or plain array of
    scalars is also accepted. The error bound is computed for the largest
    ``|Im z|`` in the batch.
    """
    return _series(char, z, tau, spec)


def theta_constant(char: Characteristic, tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    return _series(char, None, tau, spec)


def theta_z_grad(char: Characteristic, z, tau, spec: TruncationSpec | None = None) -> CertifiedComplex:
    """Gradient of theta in ``z``; the trailing axis of the value has length g."""
    tau = SiegelPoint.coerce(tau)
    g = tau.g
    sqrt_g = math.sqrt(g)
    return _series(
        char,
        z,
        tau,
        spec,
        weight=lambda v: 2j * np.pi * v,
        log_weight=lambda r: np.log(2 * np.pi * sqrt_g * r),
    )


def theta_offdiag_deriv(
    char: Characteristic, tau, order: int = 1, spec: TruncationSpec | None = None
) -> CertifiedComplex:
    """``d^order/dt^order`` of ``theta[a, b](0, tau + t [[0, 1], [1, 0]])`` at ``t = 0``.

    Genus 2 only. Term-wise the derivative brings down ``2 pi i v1 v2`` per order.
    """
    tau = SiegelPoint.coerce(tau)
    if tau.g != 2:
        raise WrongGenus("off-diagonal derivative is defined for genus 2")
    if order not in (0, 1, 2, 3, 4):
        raise ValueError("order must be between 0 and 4")
    if order == 0:
        return _series(char, None, tau, spec)
    return _series(
        char,
        None,
        tau,
        spec,
        weight=lambda v: (2j * np.pi * v[:, 0] * v[:, 1]) ** order,
        log_weight=lambda r: order * np.log(2 * np.pi * r**2),
    )
