"""Upper incomplete gamma function for complex order and positive argument.

Only what the Epstein zeta continuation needs: ``x > 0`` real (vectorized),
``s`` a complex scalar. Large arguments use the Legendre continued fraction
(modified Lentz), small arguments the power series of the lower function.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

CF_THRESHOLD = 1.0
_EPS = 1e-16
_MAX_ITER = 2000


def _nonpositive_integer(s: complex) -> int | None:
    if abs(s.imag) < 1e-14 and s.real <= 0.5 and abs(s.real - round(s.real)) < 1e-14:
        return int(round(s.real))
    return None


def _gamma_cf(s: complex, x: np.ndarray) -> np.ndarray:
    # Gamma(s,x) = e^-x x^s / (x+1-s- 1(1-s)/(x+3-s- 2(2-s)/(x+5-s- ...)))
    tiny = 1e-300
    b = x + 1.0 - s
    c = np.full(x.shape, 1.0 / tiny, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    done = np.zeros(x.shape, dtype=bool)
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b + an / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(done, h, h * delta)
        done |= np.abs(delta - 1.0) < _EPS
        if done.all():
            break
    return np.exp(-x + s * np.log(x)) * h


def _lower_series(s: complex, x: np.ndarray) -> np.ndarray:
    # gamma(s,x) = x^s e^-x sum_n x^n / (s (s+1) ... (s+n))
    term = 1.0 / s + np.zeros(x.shape, dtype=complex)
    total = term.copy()
    for n in range(1, _MAX_ITER):
        term = term * x / (s + n)
        total = total + term
        if np.all(np.abs(term) < _EPS * np.abs(total)):
            break
    return np.exp(-x + s * np.log(x)) * total


def _gamma_neg_int(k: int, x: np.ndarray) -> np.ndarray:
    # Gamma(-k, x) = (-1)^k / k! [E1(x) - e^-x sum_{j<k} (-1)^j j! / x^(j+1)]
    acc = special.exp1(x).astype(complex)
    corr = np.zeros_like(acc)
    for j in range(k):
        corr = corr + (-1) ** j * math.factorial(j) / x ** (j + 1)
    return (-1) ** k / math.factorial(k) * (acc - np.exp(-x) * corr)


_ZETA_K = special.zeta(np.arange(2, 80))


def _loggamma1p(s: complex) -> complex:
    # log Gamma(1 + s) = -euler_gamma s + sum_k (-1)^k zeta(k) s^k / k, |s| < 1
    k = np.arange(2, 80)
    return -np.euler_gamma * s + np.sum((-s) ** k * _ZETA_K / k)


def _upper_near_zero(s0: complex, x: np.ndarray) -> np.ndarray:
    # Gamma(s,x) = (Gamma(1+s) - 1)/s - (x^s - 1)/s - x^s sum_{n>=1} (-x)^n / (n! (s+n)),
    # written so nothing cancels as s -> 0
    head = np.expm1(_loggamma1p(s0)) / s0 - np.expm1(s0 * np.log(x)) / s0
    term = np.ones(x.shape, dtype=complex)
    total = np.zeros(x.shape, dtype=complex)
    for n in range(1, _MAX_ITER):
        term = term * (-x) / n
        inc = term / (s0 + n)
        total = total + inc
        if np.all(np.abs(inc) < _EPS * np.maximum(np.abs(total), 1e-300)):
            break
    return head - np.exp(s0 * np.log(x)) * total


def _upper_small_x(s: complex, x: np.ndarray) -> np.ndarray:
    m = -round(s.real)
    if m < 0 or abs(s - (-m)) >= 0.25:
        return special.gamma(s) - _lower_series(s, x)
    # step down from s + m, which sits near zero
    out = _upper_near_zero(s + m, x)
    for j in range(m - 1, -1, -1):
        out = (out - np.exp((s + j) * np.log(x) - x)) / (s + j)
    return out


def upper_gamma(s: complex, x) -> np.ndarray:
    """``Gamma(s, x) = int_x^inf t^(s-1) e^-t dt`` for real ``x > 0``."""
    s = complex(s)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x must be positive")
    k = _nonpositive_integer(s)
    if k is not None:
        return _gamma_neg_int(-k, x)
    out = np.empty(x.shape, dtype=complex)
    big = x > max(CF_THRESHOLD, s.real)
    if big.any():
        out[big] = _gamma_cf(s, x[big])
    if (~big).any():
        out[~big] = _upper_small_x(s, x[~big])
    return out


def scaled_upper_gamma(s: complex, x) -> np.ndarray:
    """``int_1^inf t^(s-1) e^(-x t) dt = x^-s Gamma(s, x)``."""
    x = np.asarray(x, dtype=float)
    return np.exp(-complex(s) * np.log(x)) * upper_gamma(s, x)
