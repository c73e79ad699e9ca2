import numpy as np
import pytest

from siegel_theta import errors, fixtures
from siegel_theta.checks import random_siegel
from siegel_theta.kummer import (
    HEISENBERG,
    ORBIT_LABELS,
    KummerModel,
    ThetaFourTuple,
    _coeffs_from,
    discriminant_2_2,
    heisenberg_orbit,
    kummer_coeffs,
    kummer_quartic_eval,
    level2_map,
    normalize,
    tangent_plane,
)
from siegel_theta.siegel import C22, chi_g, delta_g_normalized
from siegel_theta.theta import Characteristic, SiegelPoint, theta


@pytest.fixture
def tau2(tau2):
    return SiegelPoint.coerce(tau2)


@pytest.fixture
def model(tau2):
    return KummerModel.at(tau2)


def torus_points(t, n, rng):
    xy = rng.uniform(0, 1, size=(n, 2, 2))
    return xy[:, 0] + xy[:, 1] @ t.tau.T


def test_coefficients_finite_and_certified(tau2):
    for c in kummer_coeffs(tau2):
        assert np.isfinite(c.value) and 0 <= c.err < 1e-10 * max(1.0, abs(c.value))


def test_wrong_genus():
    with pytest.raises(errors.WrongGenus):
        kummer_coeffs(SiegelPoint(np.array([[1j]])))


def test_quartic_invariant_under_heisenberg(model, rng):
    w = rng.normal(size=4) + 1j * rng.normal(size=4)
    f0 = complex(model.F(w).value)
    for m in HEISENBERG:
        assert abs(complex(model.F(m @ w).value) - f0) < 1e-12 * abs(f0)


def test_orbit_has_sixteen_distinct_points(model):
    orbit = heisenberg_orbit(model.nodes[0])
    assert len(orbit) == 16
    assert np.allclose(orbit, model.nodes)


def test_degenerate_orbit():
    with pytest.raises(errors.DegenerateOrbit):
        heisenberg_orbit([1, 0, 0, 0])


def test_level2_image_lies_on_quartic(model, tau2, rng):
    w = normalize(level2_map(torus_points(tau2, 40, rng), tau2))
    assert np.max(np.abs(model.F(w).value)) / model.scale < 1e-10


def test_level2_map_is_even(tau2, rng):
    z = torus_points(tau2, 5, rng)
    assert np.allclose(level2_map(z, tau2), level2_map(-z, tau2), rtol=1e-13)


def test_nodes_are_singular(model):
    nodes = normalize(model.nodes)
    assert np.max(np.abs(model.F(nodes).value)) / model.scale < 1e-11
    assert np.max(np.abs(model.grad(nodes))) / model.scale < 1e-11


def test_printed_alternative_e_breaks_vanishing(tau2):
    f = ThetaFourTuple.at(tau2)
    A, B, C, D, E = _coeffs_from(f.alpha, f.beta, f.gamma, f.delta)
    a2, b2, g2, d2 = (complex(x.value) ** 2 for x in (f.alpha, f.beta, f.gamma, f.delta))
    alt = complex(E.value) * (a2 + b2 - g2 - d2) / (a2 + b2 + g2 + d2)
    coeffs = (A, B, C, D, type(E)(alt))
    node = normalize(f.as_array())
    good = abs(complex(kummer_quartic_eval(node, tau2).value))
    bad = abs(complex(kummer_quartic_eval(node, tau2, coeffs=coeffs).value))
    assert good < 1e-12 * bad


def test_self_duality(model, tau2, rng):
    p = normalize(level2_map(torus_points(tau2, 10, rng), tau2))
    u = normalize(tangent_plane(p, tau2))
    assert np.max(np.abs(model.F(u).value)) / model.scale < 1e-8


def test_sixteen_six_configuration(model):
    nodes = normalize(model.nodes)
    inc = np.abs(nodes @ nodes.T) < 1e-8
    assert np.all(inc.sum(axis=0) == 6)
    assert np.all(inc.sum(axis=1) == 6)


def test_g_sign_table(model, rng):
    u = rng.normal(size=4) + 1j * rng.normal(size=4)
    g0 = complex(model.G(u).value)
    for lab, m in zip(ORBIT_LABELS, HEISENBERG):
        ratio = complex(model.G(m @ u).value) / g0
        assert abs(ratio - fixtures.G_SIGN_TABLE[lab]) < 1e-10, lab


@pytest.mark.parametrize("e", fixtures.KUMMER_UNIT_VECTORS_PASSING)
def test_unit_vectors_recover_chi2(e, rng):
    t = random_siegel(2, rng)
    model = KummerModel.at(t)
    lhs = complex(model.F(e).value) ** 2 * complex(model.G(e).value)
    rhs = complex(chi_g(2, SiegelPoint(2 * t.tau)).value) ** 4
    assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_discriminant_homogeneous_degree_24(tau2, rng):
    u = rng.normal(size=4) + 1j * rng.normal(size=4)
    d1 = complex(discriminant_2_2(u, tau2).value.value)
    d2 = complex(discriminant_2_2((0.6 - 0.3j) * u, tau2).value.value)
    assert abs(d2 - (0.6 - 0.3j) ** 24 * d1) < 1e-12 * abs(d2)


def test_discriminant_matches_chi2(tau2):
    d = discriminant_2_2(fixtures.KUMMER_UNIT_VECTOR, tau2)
    assert d.constant == C22
    target = 2**8 * complex(delta_g_normalized(2, SiegelPoint(2 * tau2.tau)).value.value) ** 4
    assert abs(complex(d.value.value) - target) < 1e-10 * abs(target)


def test_discriminant_vanishes_on_tangent_planes(model, tau2, rng):
    p = normalize(level2_map(torus_points(tau2, 3, rng), tau2))
    u = normalize(tangent_plane(p[0], tau2))
    generic = normalize(rng.normal(size=4) + 1j * rng.normal(size=4))
    small = abs(complex(discriminant_2_2(u, tau2).value.value))
    large = abs(complex(discriminant_2_2(generic, tau2).value.value))
    assert small < 1e-12 * large


def test_zero_vector_rejected(tau2):
    with pytest.raises(errors.DomainError):
        discriminant_2_2([0, 0, 0, 0], tau2)
    with pytest.raises(errors.DimensionMismatch):
        discriminant_2_2([1, 0, 0], tau2)


def test_diagonal_tau_factorizes():
    t1, t2 = 0.1 + 1.1j, -0.2 + 0.9j
    t = SiegelPoint(np.diag([t1, t2]))
    f = ThetaFourTuple.at(t)
    one = lambda c, s: complex(theta(Characteristic.half(c), None, SiegelPoint(np.array([[2 * s]]))).value)
    assert complex(f.alpha.value) == pytest.approx(one("10", t1) * one("00", t2), rel=1e-13)
    assert complex(f.beta.value) == pytest.approx(one("10", t1) * one("10", t2), rel=1e-13)
    assert complex(f.gamma.value) == pytest.approx(one("00", t1) * one("10", t2), rel=1e-13)
    assert complex(f.delta.value) == pytest.approx(one("00", t1) * one("00", t2), rel=1e-13)


def test_model_nodes_read_only(model):
    with pytest.raises(ValueError):
        model.nodes[0, 0] = 0
