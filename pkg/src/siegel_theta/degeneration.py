"""Checks along the degenerating family ``tau(t) = [[tau, t], [t, tau]]``.

At ``t = 0`` the period matrix splits as ``E_tau x E_tau``, chi_2 vanishes to
first order and the Kummer invariant ``I = F(e)^2 G(e)`` to fourth order.
Each check evaluates the relevant leading coefficient by an exact
term-differentiated series and by finite differences with Richardson
extrapolation, and compares both with the closed forms.

Two closed forms are reported per limit. ``nominal`` uses the constants
``-pi^2``, ``-2 pi i`` and ``16 pi^4``; ``corrected`` uses ``-pi^2/16``,
``-pi i/2`` and ``pi^4/16``, which follow from the classical
``theta_11'(0) = -pi theta_00 theta_10 theta_01`` and are what the series
produce. Route agreement is checked separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fixtures
from .errors import DomainError, NonPositiveDefinite
from .kummer import HEISENBERG, ThetaFourTuple, KummerModel, _coeffs_from, _quartic
from .modular_g1 import chi1, theta00, theta01, theta10
from .records import CheckCase, ResidualReport, rel
from .siegel import chi_g
from .theta import Characteristic, SiegelPoint, TruncationSpec, theta_constant, theta_offdiag_deriv

C1100 = Characteristic.half("1100")
C0000 = Characteristic.half("0000")
C1000 = Characteristic.half("1000")
C0100 = Characteristic.half("0100")
C1111 = Characteristic.half("1111")

SPEC = TruncationSpec(1e-16)


@dataclass(frozen=True)
class DegenerationFamily:
    """``tau(t) = [[base_tau, t], [t, base_tau]]`` sampled at decreasing ``t``."""

    base_tau: complex
    t_samples: tuple = fixtures.DEGENERATION_T_SAMPLES

    def __post_init__(self):
        b = complex(self.base_tau)
        if not b.imag > 0:
            raise NonPositiveDefinite("base_tau must lie in the upper half plane")
        ts = tuple(float(t) for t in self.t_samples)
        if len(ts) < 3 or any(t <= 0 for t in ts) or any(a <= b for a, b in zip(ts, ts[1:])):
            raise DomainError("t_samples must be at least 3 decreasing positive numbers")
        if ts[0] >= b.imag:
            raise NonPositiveDefinite("|t| must stay below Im(base_tau)")
        object.__setattr__(self, "base_tau", b)
        object.__setattr__(self, "t_samples", ts)

    def tau_at(self, t: complex) -> SiegelPoint:
        b = self.base_tau
        return SiegelPoint(np.array([[b, t], [t, b]], dtype=complex))

    @property
    def ts(self) -> np.ndarray:
        return np.array(self.t_samples)


def richardson(ts, values, levels: int = 2) -> tuple[complex, float]:
    """Extrapolate ``f(t) = f0 + c1 t^2 + c2 t^4 + ...`` to ``t = 0``.

    Neville's scheme in ``h = t^2`` on the ``levels + 1`` largest samples (any
    spacing). Returns the estimate and the size of the last correction.
    """
    h = np.asarray(ts[: levels + 1], dtype=float) ** 2
    p = [complex(v) for v in values[: levels + 1]]
    prev = p[-1]
    for k in range(1, levels + 1):
        prev = p[-1]
        p = [(h[i + k] * p[i] - h[i] * p[i + 1]) / (h[i + k] - h[i]) for i in range(len(p) - 1)]
    return p[0], abs(p[0] - prev)


def loglog_slope(ts, values) -> float:
    return float(np.polyfit(np.log(np.asarray(ts)), np.log(np.abs(np.asarray(values))), 1)[0])


def _family(base_tau, family):
    return family if family is not None else DegenerationFamily(base_tau)


# ---------------------------------------------------------------------------
# second derivative of beta delta - alpha gamma
# ---------------------------------------------------------------------------


def _combo(tau, spec):
    th = {c: theta_constant(c, tau, spec).value for c in (C1100, C0000, C1000, C0100)}
    return th[C1100] * th[C0000] - th[C1000] * th[C0100]


def _combo_derivs(tau, spec) -> tuple[complex, complex]:
    d = {
        c: [complex(theta_offdiag_deriv(c, tau, k, spec).value) for k in range(3)]
        for c in (C1100, C0000, C1000, C0100)
    }

    def prod(f, g):
        return f[1] * g[0] + f[0] * g[1], f[2] * g[0] + 2 * f[1] * g[1] + f[0] * g[2]

    p1, p2 = prod(d[C1100], d[C0000])
    q1, q2 = prod(d[C1000], d[C0100])
    return p1 - q1, p2 - q2


def check_second_deriv_identity(
    base_tau, family: DegenerationFamily | None = None, spec: TruncationSpec = SPEC
) -> ResidualReport:
    """Second t-derivative at 0 of ``th1100 th0000 - th1000 th0100`` against ``c chi_1(tau/2)^4``."""
    fam = _family(base_tau, family)
    tau0 = fam.tau_at(0)
    first, exact = _combo_derivs(tau0, spec)
    h0 = _combo(tau0, spec)
    ts = fam.ts
    fd = [(_combo(fam.tau_at(t), spec) + _combo(fam.tau_at(-t), spec) - 2 * h0) / t**2 for t in ts]
    fd_first = (_combo(fam.tau_at(ts[0]), spec) - _combo(fam.tau_at(-ts[0]), spec)) / (2 * ts[0])
    extrap, fd_err = richardson(ts, fd)

    c = complex(chi1(fam.base_tau / 2, spec).value) ** 4
    nominal = -math.pi**2 * c
    corrected = -math.pi**2 / 16 * c
    tol = fixtures.TOLERANCES
    tag = "second-derivative-closed-form"
    cases = (
        CheckCase("second-derivative/exact-vs-nominal", tag, rel(exact, nominal), tol["second-derivative-exact"]),
        CheckCase("second-derivative/fd-vs-nominal", tag, rel(extrap, nominal), tol["second-derivative-fd"]),
        CheckCase("second-derivative/exact-vs-corrected", tag, rel(exact, corrected), tol["second-derivative-exact"]),
        CheckCase("second-derivative/fd-vs-corrected", tag, rel(extrap, corrected), tol["second-derivative-fd"]),
        CheckCase("second-derivative/route-agreement", tag, rel(extrap, exact), tol["second-derivative-fd"]),
        CheckCase(
            "second-derivative/first-derivative-vanishes",
            tag,
            max(abs(first), abs(fd_first)) / abs(exact),
            tol["second-derivative-fd"],
        ),
    )
    info = {"exact": exact, "extrapolated": extrap, "fd_error_estimate": fd_err, "nominal": nominal, "corrected": corrected}
    return ResidualReport("second-derivative", cases, info)


# ---------------------------------------------------------------------------
# chi_2(tau(t)) / t
# ---------------------------------------------------------------------------


def check_chi2_limit(
    base_tau, family: DegenerationFamily | None = None, spec: TruncationSpec = SPEC
) -> ResidualReport:
    """``lim chi_2(tau(t)) / t`` against ``c chi_1(tau)^8``, extrapolated and factorized."""
    fam = _family(base_tau, family)
    ts = fam.ts
    ratios = [complex(chi_g(2, fam.tau_at(t), spec).value) / t for t in ts]
    extrap, _ = richardson(ts, ratios)
    c1 = complex(chi1(fam.base_tau, spec).value)
    factorized = c1**6 * complex(theta_offdiag_deriv(C1111, fam.tau_at(0), 1, spec).value)
    nominal = -2j * math.pi * c1**8
    corrected = -0.5j * math.pi * c1**8
    # before extrapolation the ratio approaches the limit like t^2
    raw = [abs(r - factorized) for r in ratios[:3]]
    order = loglog_slope(ts[:3], raw)
    tol = fixtures.TOLERANCES
    tag = "chi2-first-order-vanishing"
    cases = (
        CheckCase("chi2-limit/factorized-vs-nominal", tag, rel(factorized, nominal), tol["chi2-limit-factorized"]),
        CheckCase("chi2-limit/extrapolated-vs-nominal", tag, rel(extrap, nominal), tol["chi2-limit-extrapolated"]),
        CheckCase("chi2-limit/factorized-vs-corrected", tag, rel(factorized, corrected), tol["chi2-limit-factorized"]),
        CheckCase("chi2-limit/extrapolated-vs-corrected", tag, rel(extrap, corrected), tol["chi2-limit-extrapolated"]),
        CheckCase("chi2-limit/route-agreement", tag, rel(extrap, factorized), tol["chi2-limit-extrapolated"]),
        CheckCase("chi2-limit/raw-residual-order", tag, abs(order - 2), 0.1),
    )
    info = {"factorized": factorized, "extrapolated": extrap, "raw_order": order}
    return ResidualReport("chi2-limit", cases, info)


# ---------------------------------------------------------------------------
# I(tau(t)) / t^4
# ---------------------------------------------------------------------------


def kummer_invariant(tau_half: SiegelPoint, e, spec: TruncationSpec = SPEC) -> complex:
    """``I = F(e, tau')^2 G(e, tau')`` at ``tau' = tau/2``; the theta constants live at ``tau``."""
    f = ThetaFourTuple.at(tau_half, spec)
    coeffs = [complex(c.value) for c in _coeffs_from(f.alpha, f.beta, f.gamma, f.delta)]
    e = np.asarray(e, dtype=complex)
    F = complex(_quartic(coeffs, e))
    seed = f.as_array()
    # no distinctness check: at t = 0 the orbit degenerates but the product is still defined
    G = complex(np.prod([(m @ seed) @ e for m in HEISENBERG]))
    return F * F * G


def check_I_limit(
    base_tau, family: DegenerationFamily | None = None, spec: TruncationSpec = SPEC, e=None
) -> ResidualReport:
    """``lim I(tau(t)) / t^4`` against ``c chi_1(tau)^32`` plus the values at ``t = 0``."""
    fam = _family(base_tau, family)
    e = fixtures.KUMMER_UNIT_VECTOR if e is None else e
    ts = fam.ts
    halves = [SiegelPoint(fam.tau_at(t).tau / 2) for t in ts]
    ratios = [kummer_invariant(h, e, spec) / t**4 for h, t in zip(halves, ts)]
    extrap, _ = richardson(ts, ratios)

    b = fam.base_tau
    c1 = complex(chi1(b, spec).value)
    t00, t10, t01 = (complex(f(b, spec).value) for f in (theta00, theta10, theta01))
    nominal = 16 * math.pi**4 * c1**32
    corrected = math.pi**4 / 16 * c1**32

    f0 = ThetaFourTuple.at(SiegelPoint(fam.tau_at(0).tau / 2), spec)
    al, be, ga, de = f0.as_array()
    intermediate = max(
        rel(al, t00 * t10),
        rel(be, t10**2),
        rel(ga, t00 * t10),
        rel(de, t00**2),
        rel(al**2 * de**2 - be**2 * ga**2, c1**2 * t01**2),
        rel(ga**2 * de**2 - be**2 * al**2, c1**2 * t01**2),
        rel(be * de + ga * al, 2 * t00**2 * t10**2),
        rel(al * be * ga * de, t00**4 * t10**4),
    )

    diffs = []
    for h in halves:
        f = ThetaFourTuple.at(h, spec)
        x = f.as_array()
        diffs.append(x[1] * x[3] - x[2] * x[0])
    slope = loglog_slope(ts, diffs)

    # which unit vectors satisfy F(e)^2 G(e) = chi_2(2 tau')^4 at the first sample
    chi_ref = complex(chi_g(2, fam.tau_at(ts[0]), spec).value) ** 4
    unit_res = {}
    for k in range(4):
        u = [0, 0, 0, 0]
        u[k] = 1
        unit_res[tuple(u)] = rel(kummer_invariant(halves[0], u, spec), chi_ref)

    tol = fixtures.TOLERANCES
    tag = "kummer-invariant-fourth-order-vanishing"
    cases = [
        CheckCase("I-limit/extrapolated-vs-nominal", tag, rel(extrap, nominal), tol["I-limit-extrapolated"]),
        CheckCase("I-limit/extrapolated-vs-corrected", tag, rel(extrap, corrected), tol["I-limit-extrapolated"]),
        CheckCase("I-limit/theta-values-at-split-point", "split-point-theta-values", intermediate, tol["I-limit-intermediate"]),
        CheckCase("I-limit/beta-delta-minus-gamma-alpha-slope", "beta-delta-second-order", abs(slope - 2), tol["beta-delta-slope"]),
    ]
    for u, r in unit_res.items():
        label = "".join(str(x) for x in u)
        cases.append(CheckCase(f"I-limit/unit-vector-{label}", "kummer-unit-vector-chi2", r, tol["unit-vector-chi2"]))
    info = {
        "extrapolated": extrap,
        "nominal": nominal,
        "corrected": corrected,
        "slope": slope,
        "unit_vectors_passing": [u for u, r in unit_res.items() if r <= tol["unit-vector-chi2"]],
    }
    return ResidualReport("I-limit", tuple(cases), info)
