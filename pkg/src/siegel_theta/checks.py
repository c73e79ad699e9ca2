"""Identity suites: each returns a list of :class:`CheckCase` records.

Suites are deterministic given ``(seed, tau)``. When ``tau`` is supplied and
its genus matches what a suite needs it replaces the sampled points.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import fixtures
from .degeneration import check_chi2_limit, check_I_limit, check_second_deriv_identity, loglog_slope
from .kummer import KummerModel, discriminant_2_2, level2_map, normalize
from .modular_g1 import (
    THETA11,
    chi1,
    delta_product,
    eisenstein_g2_g3,
    epstein_zeta_deriv0,
    kronecker_torsion,
    log_theta_norm_integral,
    theta00,
    theta01,
    theta10,
)
from .records import CheckCase, rel
from .siegel import C22, chi_g, delta_g_normalized, petersson_norm_sq, random_word, sympl_act
from .theta import SiegelPoint, TruncationSpec, theta_z_grad
from .torsion import PolarizedTorus, l2_gram_quadrature, torsion_abelian, torsion_theta_divisor

SPEC = TruncationSpec(1e-16)
TOL = fixtures.TOLERANCES
SUITES = ("g1-identities", "siegel-covariance", "kummer", "degeneration", "torsion")


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def random_siegel(g: int, rng: np.random.Generator, eig=(0.8, 2.5), re=0.5) -> SiegelPoint:
    """Rejection sample: Im symmetric with eigenvalues in ``eig``, Re entries in ``[-re, re]``."""
    while True:
        y = rng.uniform(-eig[1], eig[1], size=(g, g))
        y = (y + y.T) / 2
        ev = np.linalg.eigvalsh(y)
        if ev[0] >= eig[0] and ev[-1] <= eig[1]:
            break
    x = rng.uniform(-re, re, size=(g, g))
    x = np.triu(x) + np.triu(x, 1).T
    return SiegelPoint(x + 1j * y)


def random_upper(rng: np.random.Generator) -> complex:
    return complex(random_siegel(1, rng).tau[0, 0])


def _taus(g: int, n: int, rng, tau) -> list[SiegelPoint]:
    if tau is not None and tau.g == g:
        return [tau]
    return [random_siegel(g, rng) for _ in range(n)]


def _scalar(tau) -> complex | None:
    return complex(tau.tau[0, 0]) if tau is not None and tau.g == 1 else None


# ---------------------------------------------------------------------------
# genus one
# ---------------------------------------------------------------------------


def suite_g1(rng: np.random.Generator, tau: SiegelPoint | None = None) -> list[CheckCase]:
    t1 = _scalar(tau)
    grid = [x + 1j * y for x in (-0.4, 0.0, 0.3) for y in (0.9, 1.3, 2.0)] if t1 is None else [t1]
    res = 0.0
    for t in grid:
        g2, g3 = eisenstein_g2_g3(t)
        d = (2 * math.pi) ** 12 * complex(delta_product(t).value)
        res = max(res, rel(complex(g2.value) ** 3 - 27 * complex(g3.value) ** 2, d))
    cases = [CheckCase("g1/jacobi-discriminant", "jacobi-discriminant", res, TOL["jacobi-discriminant"])]

    pts = [random_upper(rng) for _ in range(20)] if t1 is None else [t1]
    r_delta = r_deriv = r_dbl = r_half = r_quart = 0.0
    for t in pts:
        c = complex(chi1(t, SPEC).value)
        a, b, d0 = (complex(f(t, SPEC).value) for f in (theta00, theta10, theta01))
        r_delta = max(r_delta, rel(c**8, 2**8 * complex(delta_product(t).value)))
        deriv = complex(theta_z_grad(THETA11, 0, t, SPEC).value[0]) / math.pi
        r_deriv = max(r_deriv, rel(deriv, fixtures.JACOBI_DERIVATIVE_SIGN * c))
        h = t / 2
        a2, b2, d2 = (complex(f(h, SPEC).value) for f in (theta00, theta10, theta01))
        r_dbl = max(r_dbl, rel(b2**2, 2 * a * b), rel(a2 * d2, d0**2))
        r_half = max(r_half, rel(complex(chi1(h, SPEC).value) ** 2, 2 * c * d0**3))
        r_quart = max(r_quart, rel(a**4, b**4 + d0**4))
    cases += [
        CheckCase("g1/chi1-eighth-power", "chi1-delta", r_delta, TOL["chi1-delta"]),
        CheckCase("g1/jacobi-derivative", "jacobi-derivative", r_deriv, TOL["jacobi-derivative"]),
        CheckCase("g1/theta-doubling", "theta-doubling", r_dbl, TOL["theta-doubling"]),
        CheckCase("g1/chi1-half-period", "chi1-half-period", r_half, TOL["theta-doubling"]),
        CheckCase("g1/jacobi-quartic", "jacobi-quartic", r_quart, TOL["jacobi-quartic"]),
    ]

    kron = [1j, 1 + 2j, 0.4 + 1.1j] if t1 is None else [t1]
    r_nom = r_cor = 0.0
    for t in kron:
        val = math.exp(epstein_zeta_deriv0(t).value.real)
        closed = kronecker_torsion(t)
        r_nom = max(r_nom, abs(val - closed) / closed)
        r_cor = max(r_cor, rel(val, closed / (2 * math.pi) ** 2))
    cases += [
        CheckCase("g1/kronecker-limit-nominal", "kronecker-limit", r_nom, TOL["kronecker-limit"]),
        CheckCase("g1/kronecker-limit-corrected", "kronecker-limit", r_cor, TOL["kronecker-limit"]),
    ]

    t = 1j if t1 is None else t1
    integral = log_theta_norm_integral(t)
    target = math.log(abs(complex(delta_product(t).value))) / 12
    cases.append(CheckCase("g1/faltings-integral", "faltings-integral", abs(integral - target), TOL["faltings-integral"]))
    return cases


# ---------------------------------------------------------------------------
# genus two covariance
# ---------------------------------------------------------------------------


def _word_eps(letters) -> int:
    eps = 1
    for k in letters:
        eps *= fixtures.CHI2_EPSILON[fixtures.GENERATOR_NAMES[abs(k) - 1]]
    return eps


def suite_siegel(rng: np.random.Generator, tau: SiegelPoint | None = None) -> list[CheckCase]:
    taus = _taus(2, 3, rng, tau)
    r_det = r_pet = r_eps = r_tor = 0.0
    for t in taus:
        base_pet = petersson_norm_sq(chi_g(2, t, SPEC).value, 5, t)
        base_tor = torsion_theta_divisor(2, t, SPEC)
        chi_t = complex(chi_g(2, t, SPEC).value)
        for _ in range(10):
            gamma, letters = random_word(2, 6, rng)
            _, gt = sympl_act(gamma, None, t)
            j = gamma.j(t)
            r_det = max(r_det, rel(gt.det_imag(), abs(j) ** -2 * t.det_imag()))
            chi_gt = complex(chi_g(2, gt, SPEC).value)
            r_pet = max(r_pet, rel(petersson_norm_sq(chi_gt, 5, gt), base_pet))
            r_eps = max(r_eps, rel(chi_gt, _word_eps(letters) * j**5 * chi_t))
            r_tor = max(r_tor, rel(torsion_theta_divisor(2, gt, SPEC), base_tor))
    return [
        CheckCase("siegel/det-imag-automorphy", "det-imag-automorphy", r_det, TOL["det-imag-automorphy"]),
        CheckCase("siegel/chi2-petersson-invariance", "chi2-petersson-invariance", r_pet, TOL["chi2-petersson-invariance"]),
        CheckCase("siegel/chi2-character", "chi2-character", r_eps, TOL["chi2-character"]),
        CheckCase(
            "siegel/theta-divisor-torsion-invariance",
            "theta-divisor-torsion-invariance",
            r_tor,
            TOL["theta-divisor-torsion-invariance"],
        ),
    ]


# ---------------------------------------------------------------------------
# Kummer surface
# ---------------------------------------------------------------------------


def _random_torus_points(t: SiegelPoint, n: int, rng) -> np.ndarray:
    xy = rng.uniform(0, 1, size=(n, 2, 2))
    return xy[:, 0] + xy[:, 1] @ t.tau.T


def suite_kummer(rng: np.random.Generator, tau: SiegelPoint | None = None) -> list[CheckCase]:
    taus = _taus(2, 3, rng, tau)
    r_van = r_node = r_dual = r_inc = r_hom = r_tan = 0.0
    for t in taus:
        model = KummerModel.at(t, SPEC)
        s = model.scale
        w = normalize(level2_map(_random_torus_points(t, 50, rng), t, SPEC))
        r_van = max(r_van, float(np.max(np.abs(model.F(w).value))) / s)
        nodes = normalize(model.nodes)
        r_node = max(
            r_node,
            float(np.max(np.abs(model.F(nodes).value))) / s,
            float(np.max(np.abs(model.grad(nodes)))) / s,
        )
        # self-duality: tangent planes at smooth points lie on the surface again
        p = w[:20]
        u = normalize(model.grad(p))
        r_dual = max(r_dual, float(np.max(np.abs(model.F(u).value))) / s)
        # each node on exactly six tropes
        inc = np.abs(nodes @ nodes.T) < 1e-8 * np.max(np.abs(nodes))
        r_inc = max(r_inc, float(np.max(np.abs(inc.sum(axis=1) - 6))))
        generic = rng.normal(size=4) + 1j * rng.normal(size=4)
        d_gen = discriminant_2_2(generic, t, SPEC).value
        d_scaled = discriminant_2_2(1.7 * generic, t, SPEC).value
        r_hom = max(r_hom, rel(d_scaled.value, 1.7**24 * d_gen.value))
        u0 = u[0]
        d1 = discriminant_2_2(u0, t, SPEC).value
        g_abs = abs(model.G(u0).value)
        # Delta = C22 F^2 G, so this is |F(u)| / scale recovered from the discriminant
        r_tan = max(r_tan, math.sqrt(abs(d1.value) / (C22 * g_abs)) / s)

    cases = [
        CheckCase("kummer/quartic-vanishing", "kummer-vanishing", r_van, TOL["kummer-vanishing"]),
        CheckCase("kummer/nodes-singular", "kummer-nodes", r_node, TOL["kummer-nodes"]),
        CheckCase("kummer/self-duality", "kummer-self-dual", r_dual, TOL["kummer-self-dual"]),
        CheckCase("kummer/sixteen-six-configuration", "kummer-16-6", r_inc, 0.0),
        CheckCase("kummer/discriminant-degree-24", "discriminant-homogeneity", r_hom, 1e-12),
        CheckCase("kummer/discriminant-tangent-plane", "discriminant-tangent-plane", r_tan, TOL["kummer-self-dual"]),
    ]

    e = fixtures.KUMMER_UNIT_VECTOR
    taus5 = _taus(2, 5, rng, tau)
    r_prop = r_cons = 0.0
    for k, t in enumerate(taus5):
        model = KummerModel.at(t, SPEC)
        f = model.F(e)
        lhs = complex(f.value) ** 2 * complex(model.G(e).value)
        two = SiegelPoint(2 * t.tau)
        r_prop = max(r_prop, rel(lhs, complex(chi_g(2, two, SPEC).value) ** 4))
        if k < 3:
            d22 = complex(discriminant_2_2(e, t, SPEC).value.value)
            r_cons = max(r_cons, rel(d22, 2**8 * complex(delta_g_normalized(2, two, SPEC).value.value) ** 4))
    cases += [
        CheckCase("kummer/unit-vector-chi2", "kummer-unit-vector-chi2", r_prop, TOL["unit-vector-chi2"]),
        CheckCase(
            "kummer/discriminant-chi2-consistency",
            "discriminant-chi2-consistency",
            r_cons,
            TOL["discriminant-chi2-consistency"],
        ),
    ]
    return cases


# ---------------------------------------------------------------------------
# degeneration and torsion
# ---------------------------------------------------------------------------


def suite_degeneration(rng: np.random.Generator, tau: SiegelPoint | None = None) -> list[CheckCase]:
    t1 = _scalar(tau)
    bases = [2j, 1 + 2j] if t1 is None else [t1]
    cases = []
    for b in bases:
        label = f"{b.real:g}{b.imag:+g}i"
        for check in (check_second_deriv_identity, check_chi2_limit, check_I_limit):
            for c in check(b).cases:
                cases.append(CheckCase(f"degeneration/{label}/{c.id}", c.tag, c.residual, c.tolerance))
    return cases


def divergence_slope(base_tau: complex = 2j, ts=fixtures.DEGENERATION_T_SAMPLES) -> float:
    vals = [torsion_theta_divisor(2, [[base_tau, t], [t, base_tau]], SPEC) for t in ts]
    return loglog_slope(ts, vals)


def suite_torsion(rng: np.random.Generator, tau: SiegelPoint | None = None) -> list[CheckCase]:
    dual = 0.0
    for g in (1, 2, 3):
        for m in (1, 2, 3):
            a = torsion_abelian(PolarizedTorus(g, m=-m))
            b = torsion_abelian(PolarizedTorus(g, m=m))
            dual = max(dual, abs(a - (-1) ** (g + 1) * b))
    zero = abs(torsion_abelian(PolarizedTorus(2, m=0)))
    minus = abs(torsion_abelian(PolarizedTorus(2, m=-1)) - (-1) ** 3 * 0.5 * math.log((2 * math.pi) ** -2))
    cases = [
        CheckCase("torsion/abelian-duality", "abelian-torsion-duality", dual, 0.0),
        CheckCase("torsion/abelian-trivial-bundle", "abelian-torsion", zero, 0.0),
        CheckCase("torsion/abelian-dual-principal", "abelian-torsion", minus, 1e-15),
    ]
    diag = off = 0.0
    for m in (1, 2):
        gram = l2_gram_quadrature(1, m, 1j, 800)
        target = (2 * m) ** -0.5
        diag = max(diag, float(np.max(np.abs(np.diag(gram) - target))))
        off = max(off, float(np.max(np.abs(gram - np.diag(np.diag(gram))))))
    cases += [
        CheckCase("torsion/gram-diagonal", "l2-gram", diag, TOL["gram-diagonal"]),
        CheckCase("torsion/gram-offdiagonal", "l2-gram", off, TOL["gram-offdiagonal"]),
        CheckCase(
            "torsion/theta-divisor-divergence-exponent",
            "theta-divisor-torsion-exponent",
            abs(divergence_slope() + 1 / 3),
            TOL["theta-divisor-torsion-exponent"],
        ),
    ]
    return cases


SUITE_FUNCS: dict[str, Callable] = {
    "g1-identities": suite_g1,
    "siegel-covariance": suite_siegel,
    "kummer": suite_kummer,
    "degeneration": suite_degeneration,
    "torsion": suite_torsion,
}


def run_suites(names, seed: int = 0, tau: SiegelPoint | None = None) -> list[CheckCase]:
    """Run suites in canonical order; each suite gets its own seeded generator."""
    if "all" in names:
        names = SUITES
    out = []
    for k, name in enumerate(SUITES):
        if name in names:
            rng = np.random.default_rng([seed, k])
            out.extend(SUITE_FUNCS[name](rng, tau))
    return out
