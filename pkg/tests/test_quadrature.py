import numpy as np
import pytest

from fredet.quadrature import (MAX_NODES, gauss_legendre, rectangle,
                               singular_moments, spectral_ops)


def _monomial_exact(k):
    # int_{-1}^{1} x^k dx
    return 0.0 if k % 2 else 2.0 / (k + 1)


def test_gauss_legendre_exactness_to_2n_minus_1():
    for n in (2, 5, 8, 12):
        rule = gauss_legendre(n)
        for k in range(2 * n):
            got = rule.weights @ rule.nodes**k
            assert abs(got - _monomial_exact(k)) < 1e-12, (n, k)


def test_gauss_legendre_basic_structure():
    rule = gauss_legendre(16)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - 2.0) < 1e-14
    # symmetry of nodes and weights
    assert np.allclose(rule.nodes, -rule.nodes[::-1], atol=1e-15)
    assert np.allclose(rule.weights, rule.weights[::-1], atol=1e-15)


def test_gauss_legendre_mapped_interval():
    rule = gauss_legendre(10, 0.0, 1.0)
    assert abs(rule.weights @ rule.nodes**3 - 0.25) < 1e-14
    assert rule.a == 0.0 and rule.b == 1.0
    assert rule.kind == "gauss_legendre"


def test_gauss_legendre_single_node_is_midpoint():
    rule = gauss_legendre(1, 2.0, 4.0)
    assert abs(rule.nodes[0] - 3.0) < 1e-15
    assert abs(rule.weights[0] - 2.0) < 1e-15


def test_gauss_legendre_validation():
    with pytest.raises(ValueError):
        gauss_legendre(0)
    with pytest.raises(ValueError):
        gauss_legendre(MAX_NODES + 1)
    with pytest.raises(ValueError):
        gauss_legendre(4, 1.0, 1.0)
    with pytest.raises(ValueError):
        gauss_legendre(4, 0.0, np.inf)


def test_rectangle_midpoints():
    rule = rectangle(4, 0.0, 1.0)
    assert np.allclose(rule.nodes, [0.125, 0.375, 0.625, 0.875], atol=1e-15)
    assert np.allclose(rule.weights, 0.25, atol=1e-15)
    # midpoint rule is exact on affine functions
    assert abs(rule.weights @ (3.0 * rule.nodes - 1.0) - 0.5) < 1e-14
    assert rule.kind == "rectangle"


def test_spectral_points_are_lobatto():
    ops = spectral_ops(9)
    assert ops.points[0] == -1.0 and ops.points[-1] == 1.0
    assert np.all(np.diff(ops.points) > 0)
    assert ops.points[4] == 0.0  # midpoint snapped exactly
    assert np.allclose(ops.C @ ops.Cinv, np.eye(9), atol=1e-10)


def test_spectral_integration_exact_on_low_degree():
    for n in (6, 11):
        ops = spectral_ops(n)
        left = ops.C @ ops.Sl @ ops.Cinv
        right = ops.C @ ops.Sr @ ops.Cinv
        x = ops.points
        for k in range(n - 1):  # degrees 0 .. n-2
            q = x**k
            lo = (x ** (k + 1) - (-1.0) ** (k + 1)) / (k + 1)
            hi = (1.0 - x ** (k + 1)) / (k + 1)
            assert np.max(np.abs(left @ q - lo)) < 1e-10, (n, k)
            assert np.max(np.abs(right @ q - hi)) < 1e-10, (n, k)


def test_spectral_ops_validation():
    with pytest.raises(ValueError):
        spectral_ops(1)


# independently computed with 30-digit adaptive quadrature, then frozen
_MOMENTS_HALF_037 = [3.9283907687826778, 0.71783999113133712, -1.9320731865198559,
                     -1.3178495043616891, -0.015291190609417304, 1.0337500475310162,
                     0.56738942608330389, -0.45638003109771375]
_MOMENTS_03_M02 = [2.8450209388454848, -0.1695675826842114, -1.3195826497599117,
                   0.31746794857183952, 0.19818117329127391, -0.31587409606641403]
_MOMENTS_HALF_10 = [2.8284271247461898, 0.94280904158206291, -0.18856180831641242,
                    0.080812203564176177]


def test_singular_moments_frozen_oracle_values():
    assert np.allclose(singular_moments(0.5, 0.37, 8), _MOMENTS_HALF_037, atol=1e-10)
    assert np.allclose(singular_moments(0.3, -0.2, 6), _MOMENTS_03_M02, atol=1e-10)
    assert np.allclose(singular_moments(0.5, 1.0, 4), _MOMENTS_HALF_10, atol=1e-10)


def test_singular_moments_closed_forms():
    # beta_0(x) = ((1+x)^(1-a) + (1-x)^(1-a)) / (1-a) on [-1, 1]
    for alpha in (0.5, 0.3, 0.75):
        for x in (-0.9, -0.2, 0.0, 0.37, 1.0):
            b0 = ((1 + x) ** (1 - alpha) + (1 - x) ** (1 - alpha)) / (1 - alpha)
            assert abs(singular_moments(alpha, x, 1)[0] - b0) < 1e-10, (alpha, x)
    # beta_1 for alpha = 1/2: x*beta_0 + (2/3)((1-x)^(3/2) - (1+x)^(3/2))
    for x in (-0.6, 0.0, 0.37, 1.0):
        b0 = 2.0 * ((1 + x) ** 0.5 + (1 - x) ** 0.5)
        b1 = x * b0 + (2.0 / 3.0) * ((1 - x) ** 1.5 - (1 + x) ** 1.5)
        assert abs(singular_moments(0.5, x, 2)[1] - b1) < 1e-10, x


def test_singular_moments_alpha_zero_is_plain_chebyshev_integral():
    # int_{-1}^{1} T_j: 2, 0, -2/3, 0, -2/15
    got = singular_moments(0.0, 0.3, 5)
    assert np.allclose(got, [2.0, 0.0, -2.0 / 3.0, 0.0, -2.0 / 15.0], atol=1e-12)


def test_singular_moments_symmetry_at_center():
    mom = singular_moments(0.5, 0.0, 8)
    assert np.allclose(mom[1::2], 0.0, atol=1e-10)  # odd polynomials cancel
    assert abs(mom[0] - 4.0) < 1e-10
    assert abs(mom[2] - (-12.0 / 5.0)) < 1e-10


def test_singular_moments_validation():
    with pytest.raises(ValueError):
        singular_moments(1.0, 0.0, 4)
    with pytest.raises(ValueError):
        singular_moments(-0.1, 0.0, 4)
    with pytest.raises(ValueError):
        singular_moments(0.5, 2.0, 4)
    with pytest.raises(ValueError):
        singular_moments(0.5, 0.0, 0)
