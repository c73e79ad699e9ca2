import numpy as np
import pytest

from siegel_theta import errors
from siegel_theta.degeneration import (
    DegenerationFamily,
    check_chi2_limit,
    check_I_limit,
    check_second_deriv_identity,
    loglog_slope,
    richardson,
)

BASES = [2j, 1 + 2j, 0.3 + 1.5j]


def test_richardson_exact_on_even_polynomial():
    ts = np.array([0.1, 0.03, 0.01])
    f = 2.5 - 3 * ts**2 + 7 * ts**4
    est, corr = richardson(ts, f)
    assert est == pytest.approx(2.5, abs=1e-13)
    assert corr < 1e-2


def test_loglog_slope():
    ts = np.array([1e-2, 1e-3, 1e-4])
    assert loglog_slope(ts, 5 * ts**3) == pytest.approx(3, abs=1e-12)


def test_family_validation():
    with pytest.raises(errors.NonPositiveDefinite):
        DegenerationFamily(-1j)
    with pytest.raises(errors.DomainError):
        DegenerationFamily(2j, (1e-2, 1e-3))
    with pytest.raises(errors.DomainError):
        DegenerationFamily(2j, (1e-3, 1e-2, 1e-4))
    with pytest.raises(errors.NonPositiveDefinite):
        DegenerationFamily(0.5j, (1.0, 0.1, 0.01))
    assert DegenerationFamily(2j).tau_at(0.1).tau[0, 1] == 0.1


def _split(report):
    return [c for c in report.cases if "nominal" not in c.id], [c for c in report.cases if "nominal" in c.id]


@pytest.mark.parametrize("base", BASES)
@pytest.mark.parametrize(
    "check,factor",
    [(check_second_deriv_identity, 1 / 16), (check_chi2_limit, 1 / 4), (check_I_limit, 1 / 256)],
)
def test_corrected_forms_and_exact_factor(base, check, factor):
    report = check(base)
    rest, nominal = _split(report)
    assert all(c.passed for c in rest), [(c.id, c.residual) for c in rest if not c.passed]
    # the nominal constants are off by an exact rational factor
    for c in nominal:
        assert c.residual == pytest.approx(1 - factor, abs=1e-6), c.id


def test_unit_vectors_reported():
    info = check_I_limit(2j).info
    assert len(info["unit_vectors_passing"]) == 4


def test_report_lookup():
    report = check_chi2_limit(2j)
    assert report.case("chi2-limit/route-agreement").passed
    with pytest.raises(KeyError):
        report.case("missing")
    assert not report.passed
