import math
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from compacta.asympt import (
    FitResult,
    TABLE1_REFERENCE,
    _richardson,
    dominant_root,
    exponent_regression,
    fit_constant,
    proportion_exponent,
    singularity_data,
    table1,
)


def test_data_relaxed_two():
    d = singularity_data(2, "relaxed")
    assert abs(float(d.growth) - 2.618034) < 1e-6
    assert abs(float(d.rho) - 1 / 2.618034) < 1e-6
    assert d.delta1 == Fraction(1)
    assert d.exponent == Fraction(-1)


def test_data_compacted_one():
    d = singularity_data(1, "compacted")
    assert abs(float(d.delta1) - 1.25) < 1e-12
    assert abs(float(d.exponent) + 0.75) < 1e-12
    assert d.indicial_roots[0] == 0
    assert abs(float(d.indicial_roots[-1]) + 0.25) < 1e-12


def test_data_compacted_three():
    d = singularity_data(3, "compacted")
    assert abs(float(d.growth) - 3.0) < 1e-12
    assert abs(float(d.exponent) + 16 / 9) < 1e-12


def test_relaxed_delta1_exact_to_forty():
    for k in range(1, 41):
        d = singularity_data(k, "relaxed")  # raises if the identity fails
        assert d.delta1 == Fraction(k, 2)
        assert d.exponent == Fraction(-k, 2)


def test_compacted_delta1_cross_check_to_twenty():
    # the constructor enforces |closed form - coefficient ratio| <= 1e-9
    for k in range(0, 21):
        singularity_data(k, "compacted")


def test_indicial_roots_relaxed():
    assert singularity_data(1, "relaxed").indicial_roots == (Fraction(-1, 2),)
    assert singularity_data(2, "relaxed").indicial_roots == (-1,)
    assert singularity_data(3, "relaxed").indicial_roots == (0, Fraction(-1, 2))
    assert singularity_data(4, "relaxed").indicial_roots == (0, -1)


def test_rho_decreases_to_quarter():
    prev = None
    for k in range(0, 200):
        rho = float(dominant_root(k))
        assert rho > 0.25
        if prev is not None:
            assert rho < prev
        prev = rho
    assert prev < 0.2501


def test_growth_special_values():
    assert abs(float(singularity_data(1, "relaxed").growth) - 2) < 1e-15
    assert abs(float(singularity_data(3, "relaxed").growth) - 3) < 1e-15


def test_table1_rows():
    rows = table1()
    assert [r.k for r in rows] == list(range(1, 8))
    assert all(r.matches_reference for r in rows)
    by_k = {r.k: r for r in rows}
    assert abs(by_k[4].growth - 3.247) < 5e-4
    assert abs(by_k[4].alpha + 2.275) < 5e-4
    assert by_k[4].beta == Fraction(-2)
    assert abs(by_k[7].alpha + 3.766) < 5e-4
    assert abs(by_k[1].growth - 2.0) < 1e-12


def test_proportion_exponent_values():
    assert abs(proportion_exponent(1) + 0.25) < 1e-12
    assert abs(proportion_exponent(2) + 0.276393) < 1e-6
    assert abs(proportion_exponent(5) + 0.271447) < 1e-6
    for k in range(1, 51):
        assert proportion_exponent(k) <= -0.25 + 0.01


def test_proportion_matches_table_difference():
    for k in range(1, 8):
        alpha = float(singularity_data(k, "compacted").exponent)
        beta = -k / 2
        assert abs(proportion_exponent(k) - (alpha - beta)) < 1e-12


def test_richardson_on_synthetic_sequence():
    with mp.workprec(80):
        pts = [(n, mpf(3) + mpf(5) / n + mpf(7) / n**2) for n in (40, 80, 160, 320, 640)]
        est, diag = _richardson(pts, 3)
        assert abs(est - 3) < mpf("1e-10")
        assert len(diag) == 4


def test_fit_constant_exact_family():
    fit = fit_constant(0, "relaxed", 200)
    assert isinstance(fit, FitResult)
    assert all(u == 1.0 for _, u in fit.ladder)
    assert fit.estimate == pytest.approx(1.0, abs=1e-12)


def test_fit_constant_known_compacted():
    fit = fit_constant(1, "compacted", 3000)
    target = 2 * math.exp(0.25) / math.gamma(0.25)
    assert abs(fit.estimate - target) / target < 0.01


def test_fit_constant_relaxed_one_reciprocal_root_pi():
    # (2n-1)!! = 2^n Gamma(n + 1/2)/sqrt(pi), so the constant is 1/sqrt(pi)
    fit = fit_constant(1, "relaxed", 2000)
    assert abs(fit.estimate - 1 / math.sqrt(math.pi)) < 0.01


@pytest.mark.parametrize("family", ["relaxed", "compacted"])
@pytest.mark.parametrize("k", range(5))
def test_exponent_regression_recovers_slope(k, family):
    expected = float(singularity_data(k, family).exponent)
    slope = exponent_regression(k, family, 500, 2000, 100)
    assert abs(slope - expected) < 0.05


def test_fit_warns_when_not_converged():
    with pytest.warns(UserWarning, match="not converged"):
        fit_constant(4, "compacted", 48)


def test_reference_table_is_three_decimal():
    for k, (g, a, b) in TABLE1_REFERENCE.items():
        assert round(g, 3) == g and round(a, 3) == a
