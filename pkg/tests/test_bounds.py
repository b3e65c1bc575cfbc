import numpy as np
import pytest

from toeplitz_gft import bounds as bd
from toeplitz_gft import generators as gen
from toeplitz_gft import series as ps
from toeplitz_gft.errors import ConditionNotMetError


def test_halfplane_values_exact():
    phi = gen.halfplane()
    assert bd.bound_t22(phi) == 13.0
    assert bd.bound_t31(phi) == 24.0
    assert bd.bound_b2(phi) == 2.0


def test_dets_against_linalg():
    rng = np.random.default_rng(1)
    z = rng.standard_normal((10_000, 2)) + 1j * rng.standard_normal((10_000, 2))
    for b2, b3 in z[:2000]:
        c = bd.CoeffPair(b2, b3)
        assert bd.det_t31(c) == pytest.approx(np.linalg.det(bd.toeplitz_matrix(c)), rel=1e-10, abs=1e-10)
        m2 = np.array([[b2, b3], [b3, b2]])
        assert bd.det_t22(c) == pytest.approx(np.linalg.det(m2), rel=1e-10, abs=1e-10)


def test_alpha_polynomials_grid():
    for a in np.linspace(0, 0.999, 200):
        phi = gen.order_alpha(a)
        assert bd.bound_t22(phi) == pytest.approx(bd.alpha_t22(a), abs=1e-12)
    for a in np.linspace(0, 2 / 3, 200):
        assert bd.bound_t31(gen.order_alpha(a)) == pytest.approx(bd.alpha_t31(a), abs=1e-12)


def test_beta_polynomials_grid():
    for b in np.linspace(1 / 3, 1, 200):
        phi = gen.strong_beta(b)
        assert bd.bound_t22(phi) == pytest.approx(bd.beta_t22(b), abs=1e-12)
        assert bd.bound_t31(phi) == pytest.approx(bd.beta_t31(b), abs=1e-12)


def test_condition_errors_and_force():
    phi = gen.order_alpha(0.8)
    with pytest.raises(ConditionNotMetError) as ei:
        bd.bound_t31(phi)
    assert ei.value.inequality == bd.THM2_TEXT
    assert bd.bound_t31(phi, force=True) == pytest.approx(bd.alpha_t31(0.8))
    bad = gen.custom(ps.TruncatedSeries([1, 1, -1], 5), 1.0, -2.0)
    with pytest.raises(ConditionNotMetError):
        bd.bound_t22(bad)


def test_bound_report():
    r = bd.bound_report(gen.order_alpha(0.8))
    assert r.thm1_ok and not r.thm2_ok
    assert r.B31 is None and r.B22 == pytest.approx(bd.alpha_t22(0.8))
    f = bd.bound_report(gen.order_alpha(0.8), force=True)
    assert f.B31 == pytest.approx(bd.alpha_t31(0.8))
    low = bd.bound_report(gen.strong_beta(0.25))
    assert not low.thm1_ok and not low.thm2_ok and low.B22 is None


def test_triangle_inequality_on_admissible_pairs():
    # |b2| <= d1 and |b3| <= (d2 + 2 d1^2)/4 give the cheap bounds below
    rng = np.random.default_rng(3)
    for phi in (gen.halfplane(), gen.order_alpha(0.2), gen.strong_beta(0.7)):
        d1, d2 = phi.d1, phi.d2
        top = (d2 + 2 * d1**2) / 4
        for _ in range(500):
            c = bd.CoeffPair(d1 * rng.uniform() * np.exp(2j * np.pi * rng.uniform()),
                             top * rng.uniform() * np.exp(2j * np.pi * rng.uniform()))
            assert abs(bd.det_t22(c)) <= d1**2 + top**2 + 1e-12


def test_extremal_pair_attains_both():
    for phi in (gen.halfplane(), gen.order_alpha(0.25), gen.strong_beta(0.6)):
        c = bd.CoeffPair(1j * phi.d1, -(phi.d2 + 2 * phi.d1**2) / 4)
        assert abs(bd.det_t22(c)) == pytest.approx(bd.bound_t22(phi), rel=1e-14)
        assert abs(bd.det_t31(c)) == pytest.approx(bd.bound_t31(phi), rel=1e-14)


def test_fs_bound_examples():
    h = gen.halfplane()
    # d1 = 2, d2 = 4: (1/2)*2*max(1, |1 + 2 (1 - 2 lam)|)
    assert bd.fs_bound(h, 0) == 3.0
    assert bd.fs_bound(h, 1) == 1.0
    assert bd.fs_bound(h, 0.75) == 1.0
    assert bd.fs_bound(h, 2) == 5.0
    # at lam = 1/2 the Koebe value |a3 - a2^2/2| = 1 is the max{1, 1} corner
    assert bd.fs_bound(h, 0.5) == 1.0
    phi = gen.strong_beta(0.5)
    lam = 2.0
    assert bd.fs_bound(phi, lam) == pytest.approx(
        phi.d1 / 2 * abs(phi.d2 / (2 * phi.d1) - 3 * phi.d1))
