"""Tests for Gauss-Legendre and Gauss-Hermite quadrature."""

import math

import numpy as np
import pytest

from sweep_hand.quadrature import (
    adaptive_gauss_legendre,
    gauss_hermite,
    gauss_legendre,
)


class TestGaussLegendre:
    """Tests for gauss_legendre function."""

    def test_exact_for_polynomials(self) -> None:
        """n nodes integrate degree 2n − 1 exactly."""
        nodes, weights = gauss_legendre(0.5, 2.0, 4)
        integral = float(np.dot(weights, nodes**7))
        assert integral == pytest.approx((2.0**8 - 0.5**8) / 8, rel=1e-13)

    def test_weights_sum_to_length(self) -> None:
        _, weights = gauss_legendre(-1.0, 3.0, 10)
        assert weights.sum() == pytest.approx(4.0)

    def test_reversed_interval_negates(self) -> None:
        _, weights = gauss_legendre(1.0, 0.0, 5)
        assert weights.sum() == pytest.approx(-1.0)


class TestGaussHermite:
    """Tests for gauss_hermite function."""

    def test_standard_normal_moments(self) -> None:
        nodes, weights = gauss_hermite(33)
        assert weights.sum() == pytest.approx(1.0, abs=1e-13)
        assert float(np.dot(weights, nodes)) == pytest.approx(0.0, abs=1e-13)
        assert float(np.dot(weights, nodes**2)) == pytest.approx(1.0, abs=1e-12)
        assert float(np.dot(weights, nodes**4)) == pytest.approx(3.0, abs=1e-11)

    def test_rule_is_read_only(self) -> None:
        nodes, _ = gauss_hermite(5)
        with pytest.raises(ValueError):
            nodes[0] = 0.0


class TestAdaptiveGaussLegendre:
    """Tests for adaptive_gauss_legendre function."""

    def test_sine(self) -> None:
        assert adaptive_gauss_legendre(np.sin, 0.0, math.pi) == pytest.approx(
            2.0, abs=1e-12
        )

    def test_reversed_bounds(self) -> None:
        value = adaptive_gauss_legendre(np.exp, 1.0, 0.0)
        assert value == pytest.approx(1.0 - math.e, abs=1e-12)

    def test_empty_interval(self) -> None:
        assert adaptive_gauss_legendre(np.exp, 0.3, 0.3) == 0.0

    def test_kink(self) -> None:
        """Bisection should resolve a non-smooth integrand."""
        value = adaptive_gauss_legendre(lambda x: np.abs(x - 0.3), 0.0, 1.0, 1e-10)
        assert value == pytest.approx(0.045 + 0.245, abs=1e-9)
