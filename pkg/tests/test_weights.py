"""Weight functions: evaluation, analytic coefficients, r-fold reduction."""

import math

import numpy as np
import pytest

from gausslab import weights
from gausslab.errors import BadInterval


def riemann_coefficient(a, b, k, n_grid=200_000):
    """Independent oracle: midpoint quadrature of the indicator coefficient."""
    x = (np.arange(n_grid) + 0.5) / n_grid
    inside = (x >= a) & (x < b)
    return complex(np.sum(np.exp(-2j * np.pi * k * x[inside])) / n_grid)


class TestEvaluate:
    def test_constant(self):
        w = weights.constant_weight()
        for x in (0.0, 0.3, 0.999):
            assert weights.evaluate(w, x) == 1

    def test_indicator_half(self):
        w = weights.interval_indicator(0.0, 0.5, cutoff=8)
        assert weights.evaluate(w, 0.25) == 1
        assert weights.evaluate(w, 0.75) == 0
        assert weights.evaluate(w, 0.0) == 1
        assert weights.evaluate(w, 0.5) == 0  # half-open right endpoint

    def test_single_mode(self):
        w = weights.fourier_weight({1: 1.0})
        assert weights.evaluate(w, 0.5) == pytest.approx(-1.0)

    def test_periodicity(self):
        w = weights.fourier_weight({-2: 0.5j, 1: 1.0})
        assert weights.evaluate(w, 0.3) == pytest.approx(weights.evaluate(w, 1.3))

    def test_vectorized_matches_scalar(self):
        w = weights.fourier_weight({-1: 2.0, 0: 1.0, 3: -1j})
        xs = np.linspace(0, 1, 17, endpoint=False)
        vec = weights.evaluate(w, xs)
        for x, v in zip(xs, vec):
            assert v == pytest.approx(weights.evaluate(w, float(x)))


class TestIndicatorCoefficients:
    def test_full_interval(self):
        coeffs = weights.indicator_coefficients(0.0, 1.0, 16)
        assert coeffs[0] == 1
        assert all(abs(coeffs[k]) < 1e-15 for k in coeffs if k != 0)

    def test_half_interval_formula(self):
        coeffs = weights.indicator_coefficients(0.0, 0.5, 16)
        assert coeffs[0] == pytest.approx(0.5)
        for k in range(1, 17):
            expected = (1 - (-1) ** k) / (2j * math.pi * k)
            assert coeffs[k] == pytest.approx(expected)
            assert coeffs[-k] == pytest.approx((1 - (-1) ** k) / (-2j * math.pi * k))

    def test_reference_interval_mean(self):
        coeffs = weights.indicator_coefficients(0.0, 1 / math.sqrt(7), 8)
        assert coeffs[0] == pytest.approx(0.37796447300922720, abs=1e-12)

    @pytest.mark.parametrize("a,b", [(0.0, 0.3), (0.2, 0.9), (0.125, 0.625)])
    def test_against_quadrature(self, a, b):
        coeffs = weights.indicator_coefficients(a, b, 5)
        for k in range(-5, 6):
            assert coeffs[k] == pytest.approx(riemann_coefficient(a, b, k), abs=5e-5)

    def test_bad_interval(self):
        with pytest.raises(BadInterval):
            weights.indicator_coefficients(0.5, 0.5, 8)
        with pytest.raises(BadInterval):
            weights.indicator_coefficients(0.9, 0.2, 8)

    def test_truncation_error_bound(self):
        # L2 mass beyond the cutoff obeys the explicit 1/k^2 tail bound
        a, b, cutoff = 0.0, 1 / math.sqrt(7), 64
        w = weights.interval_indicator(a, b, cutoff)
        grid = 1 << 15
        x = (np.arange(grid) + 0.5) / grid
        indicator = ((x >= a) & (x < b)).astype(float)
        series = np.zeros(grid, dtype=complex)
        for k, c in w.coefficients.items():
            series += c * np.exp(2j * np.pi * k * x)
        err_sq = float(np.mean(np.abs(indicator - series) ** 2))
        tail_bound = (1 / math.pi**2) * sum(2 / k**2 for k in range(cutoff + 1, 10**6))
        assert err_sq <= tail_bound + 1e-4


class TestParseval:
    def test_series_mean_square(self):
        rng = np.random.default_rng(7)
        ks = rng.choice(np.arange(-32, 33), size=20, replace=False)
        w = weights.fourier_weight({int(k): complex(rng.normal(), rng.normal()) for k in ks})
        m = 4096
        grid = weights.evaluate(w, np.arange(m) / m)
        lhs = float(np.mean(np.abs(grid) ** 2))
        rhs = sum(abs(c) ** 2 for c in w.coefficients.values())
        assert abs(lhs - rhs) < 1e-8


class TestReduceWeight:
    def test_identity(self):
        w = weights.fourier_weight({-2: 1j, 0: 2.0, 5: 1.0})
        assert weights.reduce_weight(w, 1) is w

    def test_constant(self):
        w = weights.constant_weight()
        for r in (2, 3, 7):
            reduced = weights.reduce_weight(w, r)
            assert reduced.coefficients == {0: complex(r)}

    def test_coefficient_identity(self):
        rng = np.random.default_rng(11)
        w = weights.fourier_weight({int(k): complex(rng.normal(), rng.normal())
                                    for k in range(-9, 10)})
        r = 3
        reduced = weights.reduce_weight(w, r)
        for n, c in reduced.coefficients.items():
            assert c == pytest.approx(r * w.coefficients[r * n])
        assert set(reduced.coefficients) == {-3, -2, -1, 0, 1, 2, 3}

    @pytest.mark.parametrize("r", [2, 3, 5])
    def test_matches_direct_fold_sum(self, r):
        rng = np.random.default_rng(13)
        w = weights.fourier_weight({int(k): complex(rng.normal(), rng.normal())
                                    for k in range(-8, 9)})
        reduced = weights.reduce_weight(w, r)
        for x in rng.random(20):
            direct = sum(weights.evaluate(w, (x + k) / r) for k in range(r))
            assert abs(weights.evaluate(reduced, float(x)) - direct) < 1e-10

    def test_annihilated_support(self):
        # no index divisible by 2: the compressed weight vanishes identically
        w = weights.fourier_weight({1: 1.0, -3: 2.0})
        reduced = weights.reduce_weight(w, 2)
        assert weights.evaluate(reduced, 0.37) == 0


class TestGridEvaluation:
    def test_fft_path_matches_direct(self):
        rng = np.random.default_rng(17)
        w = weights.fourier_weight({int(k): complex(rng.normal(), rng.normal())
                                    for k in range(-150, 151)})
        q = 101
        grid = weights.evaluate_grid(w, q)
        direct = weights.evaluate(w, np.arange(q) / q)
        assert np.max(np.abs(grid - direct)) < 1e-9

    def test_indicator_grid(self):
        w = weights.interval_indicator(0.0, 0.5, cutoff=4)
        grid = weights.evaluate_grid(w, 4)
        assert grid.tolist() == [1, 1, 0, 0]


class TestConversion:
    def test_as_fourier_series(self):
        w = weights.interval_indicator(0.2, 0.7, cutoff=32)
        s = weights.as_fourier_series(w)
        assert s.kind == weights.FOURIER
        assert s.coefficients == w.coefficients

    def test_coefficient_norm_finite(self):
        w = weights.interval_indicator(0.0, 0.5, cutoff=64)
        assert w.coefficient_norm(2) < math.inf
        assert w.mean == pytest.approx(0.5)
