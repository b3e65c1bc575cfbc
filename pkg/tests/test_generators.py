import numpy as np
import pytest

from toeplitz_gft import generators as gen
from toeplitz_gft import series as ps
from toeplitz_gft.errors import InvalidInputError


def builtins():
    return [gen.halfplane(), gen.order_alpha(0.3), gen.strong_beta(0.5), gen.order_alpha(0.0),
            gen.strong_beta(1.0), gen.strong_beta(0.2)]


def test_halfplane_series_geometric_oracle():
    # (1 + z) * sum z^k
    oracle = np.convolve([1, 1], np.ones(4))[:4]
    np.testing.assert_allclose(gen.phi_series(gen.halfplane(), 3).coeffs, oracle)


@pytest.mark.parametrize("n", [3, 10, 24])
def test_degenerate_parameters(n):
    h = gen.phi_series(gen.halfplane(), n).coeffs
    np.testing.assert_allclose(gen.phi_series(gen.order_alpha(0), n).coeffs, h)
    np.testing.assert_allclose(gen.phi_series(gen.strong_beta(1), n).coeffs, h, atol=1e-13)


@pytest.mark.parametrize("phi", builtins(), ids=lambda p: p.name)
def test_stored_derivatives_match_series(phi):
    c = gen.phi_series(phi, 24).coeffs
    assert abs(c[1] - phi.d1) <= 1e-13
    assert abs(2 * c[2] - phi.d2) <= 1e-13


@pytest.mark.parametrize("phi", builtins(), ids=lambda p: p.name)
def test_pointwise_matches_series(phi):
    z = np.array([0.1, -0.2j, 0.15 + 0.1j])
    np.testing.assert_allclose(phi.value(z), gen.phi_series(phi, 40)(z), rtol=1e-12)
    np.testing.assert_allclose(phi.inverse(phi.value(z)), z, atol=1e-13)


def test_halfplane_inverse_series():
    psi = gen.phi_inverse_series(gen.halfplane(), 10)
    # (q-1)/(q+1) = x/(2+x) = sum (-1)^(k-1) x^k / 2^k,  x = q - 1
    oracle = [0] + [(-1) ** (k - 1) / 2**k for k in range(1, 11)]
    np.testing.assert_allclose(psi.coeffs, oracle, atol=1e-14)


@pytest.mark.parametrize("phi", [gen.halfplane(), gen.order_alpha(0.3), gen.strong_beta(0.5)],
                         ids=lambda p: p.name)
def test_inverse_germ_contract(phi):
    N = 20
    s = gen.phi_series(phi, N)
    psi = gen.phi_inverse_series(phi, N)
    assert psi.coeffs[0] == 0
    shifted = ps.TruncatedSeries(np.r_[0, s.coeffs[1:]], N)
    np.testing.assert_allclose(ps.compose(shifted, psi).coeffs, ps.identity(N).coeffs, atol=1e-10)


def test_condition_thm1():
    assert gen.condition_thm1(gen.halfplane())
    for a in np.linspace(0, 0.999, 50):
        assert gen.condition_thm1(gen.order_alpha(a))
    c = gen.custom(ps.TruncatedSeries([1, 1, -1], 5), 1.0, -2.0)
    assert not gen.condition_thm1(c)


def test_condition_thm2_examples():
    assert gen.condition_thm2(gen.halfplane())
    assert not gen.condition_thm2(gen.strong_beta(0.25))
    assert gen.condition_thm2(gen.strong_beta(1 / 3))
    assert not gen.condition_thm2(gen.order_alpha(0.8))
    assert gen.condition_thm2(gen.order_alpha(2 / 3))


def test_condition_thm2_beta_grid():
    for b in np.linspace(0.01, 1.0, 100):
        assert gen.condition_thm2(gen.strong_beta(b)) == (b >= 1 / 3 - 1e-15)


@pytest.mark.parametrize("phi", builtins(), ids=lambda p: p.name)
def test_thm2_implies_strict_lower(phi):
    if gen.condition_thm2(phi):
        assert phi.d2 + 2 * phi.d1**2 > 2 * phi.d1


def test_custom_cross_validation():
    s = ps.TruncatedSeries([1, 1, 0.5], 8)
    phi = gen.custom(s, 1.0, 1.0)
    assert phi.kind == gen.CUSTOM
    with pytest.raises(InvalidInputError):
        gen.custom(s, 1.0, 2.0)
    with pytest.raises(InvalidInputError):
        gen.custom(ps.TruncatedSeries([1, 1, 0.5j], 8), 1.0, 1j)
    with pytest.raises(InvalidInputError):
        gen.custom(ps.TruncatedSeries([1, -1, 0.5], 8), -1.0, 1.0)


def test_parameter_ranges():
    for bad in (lambda: gen.order_alpha(1.0), lambda: gen.order_alpha(-0.1),
                lambda: gen.strong_beta(0.0), lambda: gen.strong_beta(1.2)):
        with pytest.raises(InvalidInputError):
            bad()


def test_parse():
    assert gen.parse("halfplane").kind == gen.HALFPLANE
    assert gen.parse("alpha=0.25").param == 0.25
    assert gen.parse("beta=0.6").kind == gen.STRONG_BETA
    for bad in ("alpha", "gamma=1", "beta=x"):
        with pytest.raises(InvalidInputError):
            gen.parse(bad)


def test_strong_beta_membership_sector():
    phi = gen.strong_beta(0.5)
    # |arg q| < pi/4 is inside; the wrapped point at 0.9 pi must be outside
    assert phi.contains(np.exp(0.2j))
    assert not phi.contains(np.exp(0.9j * np.pi))
    assert not phi.contains(-1.0)
