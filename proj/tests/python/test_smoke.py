import math

import pytest

import binbell

TWO_SQRT2 = 2.0 * math.sqrt(2.0)


def test_chsh_value_and_bound():
    spec = binbell.BinningSpec.preset("t1", 2)
    coeffs = binbell.build_coefficients(spec)
    value = binbell.bell_expectation(coeffs, binbell.optimal_t1_phases())
    assert abs(value - TWO_SQRT2) < 1e-9
    assert binbell.lr_max(coeffs) == 2.0
    assert binbell.count_max_configs(coeffs) == 8


def test_tightness_report():
    report = binbell.tightness_certificate(binbell.BinningSpec(3, [0], [0], [0], [0]))
    assert report.m_counted == 45
    assert report.m_counted == report.m_formula


def test_bad_binning_raises():
    with pytest.raises(ValueError):
        binbell.BinningSpec(3, [3], [0], [0], [0])
    with pytest.raises(ValueError):
        binbell.tightness_certificate(binbell.BinningSpec.preset("t1", 40))


def test_operator_matrix():
    spec = binbell.BinningSpec.preset("t2", 4)
    coeffs = binbell.build_coefficients(spec)
    phases = binbell.PhaseSettings(0.1, 0.6, -0.3, 0.2)
    op = binbell.bell_operator(coeffs, phases)
    assert op.shape == (16, 16)
    assert binbell.bell_operator_norm(coeffs, phases) <= TWO_SQRT2 + 1e-9
    assert binbell.verify_operator_identity(spec, phases) < 1e-9


def test_optimizer_even_t1():
    res = binbell.optimize_phases(binbell.BinningSpec.preset("t1", 6), grid_points=20)
    assert abs(res.value - TWO_SQRT2) < 1e-6


def test_cv_closed_form():
    for s in (1, 9):
        for r in (0.3, 1.0, 2.5):
            assert abs(binbell.cv.bell_expectation(s, r) - binbell.cv.closed_form(s, r)) < 1e-10
    f, r_min = binbell.cv.squeezing_threshold(9, 1e-3)
    assert abs(binbell.cv.closed_form(9, r_min) - (TWO_SQRT2 - 1e-3)) < 1e-9
    with pytest.raises(ValueError):
        binbell.cv.closed_form(2, 1.0)


def test_bw_correlation():
    a, b = complex(0.2, 0.1), complex(-0.1, 0.3)
    fock = binbell.bw.correlation(0.5, a, b)
    assert abs(fock - binbell.bw.wigner_correlation(0.5, a, b)) < 1e-6
