import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylbounds import spectra
from weylbounds.bounds import Expansion
from weylbounds.exceptions import PreconditionError
from weylbounds.verify import identities

PI2 = math.pi ** 2


@pytest.fixture(scope="module")
def square():
    return spectra.box_spectrum((1.0, 1.0), "dirichlet", 400)


@pytest.fixture(scope="module")
def disk():
    return spectra.ball_spectrum(2, 1.0, 300)


# left Riemann sum --------------------------------------------------------


def test_left_riemann_examples():
    assert identities.check_left_riemann(2, 1)
    for n in range(2, 8):
        assert identities.check_left_riemann(n, 10 ** 4)


def test_left_riemann_against_exact_sums():
    # independent scalar check with math.fsum at a few k
    for n in (2, 5):
        a = 2.0 / n
        for k in (1, 2, 10, 777, 10 ** 4):
            lhs = math.fsum(j ** a for j in range(k))
            assert lhs < k ** (1 + a) / (1 + a)


def test_left_riemann_validation():
    with pytest.raises(PreconditionError):
        identities.check_left_riemann(2, 0)


# Legendre transform ------------------------------------------------------


def test_legendre_examples(square):
    num, closed = identities.check_legendre_identity(square, 1.0)
    assert num == pytest.approx(2 * PI2, rel=1e-14) and closed == pytest.approx(2 * PI2, rel=1e-14)
    num, closed = identities.check_legendre_identity(square, 1.5)
    assert closed == pytest.approx(4.5 * PI2, rel=1e-14)
    assert num == pytest.approx(closed, rel=1e-8)
    assert identities.check_legendre_identity(square, 0.0) == (0.0, 0.0)


@pytest.mark.parametrize("which", ["square", "disk"])
def test_legendre_twenty_values(which, request):
    spec = request.getfixturevalue(which)
    for p in np.linspace(0.3, 150.0, 20):
        num, closed = identities.check_legendre_identity(spec, p)
        assert abs(num - closed) <= 1e-8 * abs(closed)


def test_legendre_numeric_does_not_exceed_brute_grid(square):
    # brute-force oracle: dense grid plus all breakpoints
    p = 12.7
    grid = np.concatenate([np.linspace(0, square.cutoff, 20001), square.eigenvalues])
    brute = float(np.max(identities.legendre_objective(square, p, grid)))
    num, closed = identities.check_legendre_identity(square, p)
    assert num == pytest.approx(brute, rel=1e-12)


@given(st.floats(min_value=0.0, max_value=300.0))
@settings(max_examples=60, deadline=None)
def test_legendre_property(p):
    spec = spectra.box_spectrum((1.0, 1.0), "dirichlet", 400)
    num, closed = identities.check_legendre_identity(spec, p)
    assert abs(num - closed) <= 1e-8 * max(1.0, abs(closed))


def test_legendre_rejects_short_spectrum():
    spec = spectra.box_spectrum((1.0, 1.0), "dirichlet", 3)
    with pytest.raises(PreconditionError):
        identities.check_legendre_identity(spec, len(spec) + 5.0)
    with pytest.raises(PreconditionError):
        identities.check_legendre_identity(spec, -1.0)


# asymptotic decay --------------------------------------------------------

N_LIST = [50, 100, 200, 400]


def test_ppw_expansion_decay():
    report = identities.check_asymptotic_decay(Expansion.PPW_EXP, N_LIST)
    assert report.passed
    assert abs(report.slope + 8 / 3) <= 0.3


def test_asymp1_log_space_decay():
    # the exponentiated expansion carries a (log n)^2 / n^2 term; in log space the remainder is O(n^-2)
    report = identities.check_asymptotic_decay(Expansion.ASYMP1, N_LIST)
    assert abs(report.log_slope + 2) <= 0.1
    assert report.slope > -2 + 0.3  # shallower than n^-2 in linear space


def test_asymp1_linear_residual_contains_log_squared_term():
    report = identities.check_asymptotic_decay(Expansion.ASYMP1, N_LIST)
    for n, res, lres in zip(report.n_values, report.residuals, report.log_residuals):
        corr = 2 / (3 * n) * math.log(4 * n ** 4 / 1.1131028 ** 6)
        # exp(x) - 1 - x = x^2/2 + ..., accounts for most of the linear residual
        assert res == pytest.approx(corr ** 2 / 2 + lres, rel=0.1)


def test_ab_power_leading_term():
    report = identities.check_asymptotic_decay(Expansion.AB_POWER, N_LIST)
    assert report.leading_ok
    assert report.passed


def test_decay_validation():
    with pytest.raises(PreconditionError):
        identities.check_asymptotic_decay(Expansion.PPW_EXP, [100, 50])
    with pytest.raises(PreconditionError):
        identities.check_asymptotic_decay(Expansion.PPW_EXP, [100, 800])


# comparison curve --------------------------------------------------------


def test_curve_rows_match_tables():
    rows = identities.comparison_curve(2, 127)
    r1, r31, r127 = rows[0], rows[30], rows[126]
    assert (r1["ppw"], round(r1["not_ppw"], 3), round(r1["new1"], 3), round(r1["ab94"], 3)) == (3.0, 6.133, 6.133, 2.539)
    assert r31["index"] == 32
    assert r31["ppw"] == pytest.approx(6.177e14, rel=1e-3)
    assert r31["new4"] == pytest.approx(122.334, abs=1e-3)
    assert r31["new1"] == pytest.approx(160.112, abs=1e-3)
    assert r31["ab94"] == pytest.approx(105.46, abs=1e-2)
    assert r127["index"] == 128
    rows3 = identities.comparison_curve(3, 127)
    assert rows3[126]["new4"] == pytest.approx(75.911, abs=1e-3)
    assert rows3[126]["new1"] == pytest.approx(97.808, abs=1e-3)
    assert rows3[126]["ab94"] == pytest.approx(149.957, abs=1e-3)
    assert rows3[126]["ppw"] == pytest.approx(5.408e46, rel=1e-3)


def test_curve_crossover_structure():
    # ab94 beats both new bounds at small k, loses at large k
    rows = identities.comparison_curve(2, 200)
    assert rows[2]["ab94"] < min(rows[2]["new4"], rows[2]["new1"])
    # ab94 is a staircase in k; compare where it jumps (index 128)
    assert rows[126]["ab94"] > rows[126]["new4"]
    assert all(r["new4"] <= r["new1"] for r in rows[1:])


def test_curve_csv():
    buf = io.StringIO()
    identities.write_curve_csv(identities.comparison_curve(2, 3), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(identities.CURVE_COLUMNS)
    assert lines[1].startswith("1,2,3,6.1326458592")
    assert lines[2].split(",")[3] == ""


# new4 / new1 -------------------------------------------------------------


def test_limit_n2():
    assert abs(identities.new4_new1_limit_simplified(2) - 0.75) <= 1e-12
    assert abs(identities.new4_new1_limit(2) - 0.75) <= 1e-12
    assert abs(identities.new4_new1_ratio(2, 10 ** 6) - 0.75) <= 1e-4


@pytest.mark.parametrize("n", range(3, 8))
def test_limit_true_vs_simplified(n):
    assert identities.new4_new1_limit(n) < 1
    assert identities.new4_new1_limit(n) == pytest.approx(identities.new4_new1_limit_simplified(n) * n / 2)
    assert identities.new4_new1_ratio(n, 10 ** 12) == pytest.approx(identities.new4_new1_limit(n), abs=2e-3)
