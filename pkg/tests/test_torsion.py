import math

import numpy as np
import pytest

from siegel_theta import errors
from siegel_theta.checks import divergence_slope, random_siegel
from siegel_theta.siegel import random_word, sympl_act
from siegel_theta.theta import SiegelPoint
from siegel_theta.torsion import (
    PolarizedTorus,
    l2_gram_quadrature,
    torsion_abelian,
    torsion_theta_divisor,
)


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 5])
def test_abelian_closed_form_and_duality(g, m):
    k = m**g
    expected = 0.5 * k * math.log(k / (2 * math.pi) ** g)
    assert torsion_abelian(PolarizedTorus(g, m=m)) == pytest.approx(expected, rel=1e-15)
    assert torsion_abelian(PolarizedTorus(g, m=-m)) == (-1) ** (g + 1) * torsion_abelian(PolarizedTorus(g, m=m))


def test_abelian_trivial_bundle():
    assert torsion_abelian(PolarizedTorus(2, m=0)) == 0.0


def test_polarized_torus_validation():
    assert PolarizedTorus(2, m=3).rho_L == 9
    assert PolarizedTorus(2).rho_omega == 1.0
    with pytest.raises(errors.DomainError):
        PolarizedTorus(0)
    with pytest.raises(errors.DomainError):
        PolarizedTorus(2, m=1.5)
    with pytest.raises(errors.WrongGenus):
        PolarizedTorus(2, tau=[[1j]])


def test_theta_divisor_invariance_g2(rng, tau2):
    base = torsion_theta_divisor(2, tau2)
    for _ in range(10):
        gamma, _ = random_word(2, 6, rng)
        _, gt = sympl_act(gamma, None, tau2)
        assert torsion_theta_divisor(2, gt) == pytest.approx(base, rel=1e-7)


def test_theta_divisor_ratio_invariance_g3(rng):
    a, b = random_siegel(3, rng), random_siegel(3, rng)
    ratio = torsion_theta_divisor(3, a) / torsion_theta_divisor(3, b)
    for _ in range(3):
        gamma, _ = random_word(3, 4, rng)
        _, ga = sympl_act(gamma, None, a)
        _, gb = sympl_act(gamma, None, b)
        assert torsion_theta_divisor(3, ga) / torsion_theta_divisor(3, gb) == pytest.approx(ratio, rel=1e-6)


def test_g2_value_is_delta_power(tau2):
    from siegel_theta.siegel import delta_g_normalized

    t = SiegelPoint.coerce(tau2)
    d = abs(complex(delta_g_normalized(2, t).value.value))
    norm = math.sqrt(t.det_imag() ** 5 * d**2)
    assert torsion_theta_divisor(2, t) == pytest.approx(norm ** (-1 / 3), rel=1e-12)


def test_on_locus():
    with pytest.raises(errors.OnDiscriminantLocus):
        torsion_theta_divisor(2, np.diag([1j, 0.3 + 1.2j]))


def test_divergence_exponent_near_locus():
    assert abs(divergence_slope() + 1 / 3) < 1e-2


def test_unsupported_genus():
    with pytest.raises(errors.UnsupportedGenus):
        torsion_theta_divisor(4, 1j * np.eye(4))
    with pytest.raises(errors.WrongGenus):
        torsion_theta_divisor(2, 1j * np.eye(3))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_gram_matrix(m):
    t = 0.3 + 1.1j
    gram = l2_gram_quadrature(1, m, t, 200)
    assert np.allclose(gram, np.eye(m) * (2 * m * t.imag) ** -0.5, atol=1e-10)
    assert np.allclose(gram, gram.conj().T, atol=1e-14)


def test_gram_refinement():
    exact = 2**-0.5
    e1 = abs(l2_gram_quadrature(1, 1, 1j, 100)[0, 0] - exact)
    e2 = abs(l2_gram_quadrature(1, 1, 1j, 200)[0, 0] - exact)
    assert e2 <= e1 / 4 or (e1 <= 1e-12 and e2 <= 1e-12)


def test_gram_validation():
    with pytest.raises(errors.DomainError):
        l2_gram_quadrature(1, 1, 1j, 50)
    with pytest.raises(errors.DomainError):
        l2_gram_quadrature(1, 0, 1j)
    with pytest.raises(errors.UnsupportedGenus):
        l2_gram_quadrature(2, 1, 1j * np.eye(2))
