import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylbounds import spectra
from weylbounds.exceptions import BudgetExceededError, DimensionError, PreconditionError

PI2 = math.pi ** 2


@pytest.fixture(scope="module")
def square():
    return spectra.box_spectrum((1.0, 1.0), "dirichlet", 600)


def _brute_box(sides, start, count):
    # independent oracle: triple loop over a generous index range
    vals = []
    top = 60
    for m in itertools.product(range(start, top), repeat=len(sides)):
        vals.append(PI2 * sum((mi / a) ** 2 for mi, a in zip(m, sides)))
    vals.sort()
    return vals[:count]


def test_box_examples():
    s = spectra.box_spectrum((1, 1), "dirichlet", 3)
    assert np.allclose(s.eigenvalues[:3], [2 * PI2, 5 * PI2, 5 * PI2], rtol=1e-15)
    assert spectra.box_spectrum((1, 1), "neumann", 1)[1] == 0.0
    s = spectra.box_spectrum((1, 2), "dirichlet", 2)
    assert np.allclose(s.eigenvalues[:2], [1.25 * PI2, 2 * PI2], rtol=1e-15)


@pytest.mark.parametrize("sides,boundary", [((1.0, 2.0), "dirichlet"), ((1.0, 1.3), "neumann"), ((1.0, 2.0, 3.0), "dirichlet")])
def test_box_matches_brute_force(sides, boundary):
    count = 300
    s = spectra.box_spectrum(sides, boundary, count)
    ref = _brute_box(sides, 1 if boundary == "dirichlet" else 0, count)
    assert np.allclose(s.eigenvalues[:count], ref, rtol=1e-14)


def test_box_completeness_below_cutoff():
    s = spectra.box_spectrum((1.0, 1.7), "dirichlet", 200)
    # nothing from the brute-force list below the cutoff is missing
    ref = [v for v in _brute_box((1.0, 1.7), 1, 5000) if v <= s.cutoff]
    assert len(ref) == len(s)
    assert s.eigenvalues.flags.writeable is False


def test_box_validation():
    with pytest.raises(PreconditionError):
        spectra.box_spectrum((1.0, -1.0), "dirichlet", 3)
    with pytest.raises(PreconditionError):
        spectra.box_spectrum((1.0, 1.0), "robin", 3)
    with pytest.raises(DimensionError):
        spectra.box_spectrum((1.0,), "dirichlet", 3)
    with pytest.raises(PreconditionError):
        spectra.box_spectrum((1.0, 1.0), "dirichlet", 0)
    with pytest.raises(BudgetExceededError):
        spectra.box_spectrum((1.0, 1.0), "dirichlet", 1000, budget=100)


def test_ball_examples():
    j01 = 2.404825557695773
    assert spectra.ball_spectrum(2, 1.0, 1)[1] == pytest.approx(j01 ** 2, rel=1e-14)
    s = spectra.ball_spectrum(3, 1.0, 4)
    assert s[1] == pytest.approx(PI2, rel=1e-14)
    j32 = float(mpmath.besseljzero(1.5, 1))
    assert s.eigenvalues[1:4] == pytest.approx([j32 ** 2] * 3, rel=1e-13)
    assert spectra.ball_spectrum(2, 2.0, 1)[1] == pytest.approx(j01 ** 2 / 4, rel=1e-14)


def test_ball_matches_mpmath_oracle():
    s = spectra.ball_spectrum(2, 1.0, 60)
    ref = []
    for l in range(0, 20):
        mult = 1 if l == 0 else 2
        for p in range(1, 10):
            ref.extend([float(mpmath.besseljzero(l, p)) ** 2] * mult)
    ref.sort()
    assert np.allclose(s.eigenvalues[:60], ref[:60], rtol=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_ball_scaling(dim):
    a = spectra.ball_spectrum(dim, 1.0, 80)
    b = spectra.ball_spectrum(dim, 2.5, 80)
    assert np.allclose(b.eigenvalues[:80], a.eigenvalues[:80] / 2.5 ** 2, rtol=1e-12, atol=0)


def test_ball_rejects_neumann():
    with pytest.raises(PreconditionError):
        spectra.DomainSpec("ball", 2, "neumann", radius=1.0)


@pytest.mark.parametrize("dim,l,expected", [(2, 0, 1), (2, 3, 2), (3, 2, 5), (4, 2, 9), (4, 0, 1), (5, 1, 5)])
def test_spherical_multiplicity(dim, l, expected):
    assert spectra.spherical_multiplicity(dim, l) == expected


@given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=30))
@settings(max_examples=100, deadline=None)
def test_multiplicity_counts_harmonic_polynomials(dim, l):
    # harmonic degree-l = homogeneous degree-l minus homogeneous degree-(l-2)
    hom = lambda d: math.comb(d + dim - 1, dim - 1) if d >= 0 else 0
    assert spectra.spherical_multiplicity(dim, l) == hom(l) - hom(l - 2)


def test_counting_examples(square):
    assert spectra.counting_function(square, 2 * PI2) == 1
    assert spectra.counting_function(square, 5 * PI2) == 3
    assert spectra.counting_function(square, PI2) == 0


def test_partial_sums(square):
    assert spectra.partial_sum(square, 1) == pytest.approx(2 * PI2, rel=1e-15)
    assert spectra.partial_sum(square, 3) == pytest.approx(12 * PI2, rel=1e-15)
    with pytest.raises(PreconditionError):
        spectra.partial_sum(square, 0)


def test_riesz_examples(square):
    assert spectra.riesz_mean_1(square, 5 * PI2) == pytest.approx(3 * PI2, rel=1e-14)
    assert spectra.riesz_mean_1(square, 6 * PI2) == pytest.approx(6 * PI2, rel=1e-14)
    assert spectra.riesz_mean_1(square, 1.5 * PI2) == 0.0


def test_riesz_identity_random_levels(square):
    rng = np.random.default_rng(7)
    for lam in rng.uniform(0.0, square.cutoff, 50):
        riesz = spectra.riesz_mean_1(square, lam)
        step = spectra.counting_integral(square, lam)
        assert abs(riesz - step) <= 1e-10 * max(1.0, riesz)


def test_levels_beyond_cutoff_rejected(square):
    with pytest.raises(PreconditionError):
        spectra.counting_function(square, square.cutoff * 2)


def test_weyl_consistency():
    s = spectra.box_spectrum((1.0, 1.0), "dirichlet", 900)
    ratio = spectra.counting_function(s, 1e4) / (1e4 / (4 * math.pi))
    assert abs(ratio - 1) < 0.05


def test_faber_krahn_spot_check():
    disk = spectra.ball_spectrum(2, math.sqrt(1 / math.pi), 1)
    assert 2 * PI2 > disk[1]


@pytest.mark.parametrize("sides", [(1.0, 1.0), (1.0, 1.0, 1.0)])
def test_payne_friedlander_on_boxes(sides):
    d = spectra.box_spectrum(sides, "dirichlet", 501)
    nm = spectra.box_spectrum(sides, "neumann", 502)
    for k in range(1, 501):
        assert nm[k + 1] <= d[k]


def test_spectrum_indexing(square):
    assert square[1] == square.eigenvalues[0]
    with pytest.raises(IndexError):
        square[0]
    assert square.dim == 2
    assert square.volume == 1.0


def test_csv_round_trip(tmp_path, square):
    path = tmp_path / "spec.csv"
    spectra.write_spectrum_csv(square, path)
    meta, values = spectra.read_spectrum_csv(path)
    assert meta["domain"] == "box[1x1]/dirichlet"
    assert meta["boundary"] == "dirichlet"
    assert float(meta["cutoff"]) == pytest.approx(square.cutoff, rel=1e-11)
    assert np.allclose(values, square.eigenvalues, rtol=1e-11)
    first = path.read_text().splitlines()
    assert first[0].startswith("# domain=") and first[1] == "eigenvalue"


def test_domain_labels():
    assert spectra.box(1, 2).label == "box[1x2]/dirichlet"
    assert spectra.ball(3).label == "ball[n=3,r=1]/dirichlet"
    assert spectra.ball(2).volume == pytest.approx(math.pi)
