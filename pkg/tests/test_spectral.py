"""谱（Hoffman 型）下界与 E8 相关的恒等式"""
import math
from fractions import Fraction

import numpy as np
import pytest

from src.errors import InputError, UnknownName
from src.services.catalog import catalog
from src.services.spectral import (
    an_critical_values,
    construction_a_matches_e8,
    critical_values,
    dn_critical_values,
    e8_roots_from_h8,
    e8_trig_identity_check,
    en_reference_values,
    fourier_value,
    fourier_value_batch,
    minimize_fourier,
    oracle_minimum,
    p_grid_minimum,
    spectral_bound,
)


class TestFourierValue:
    def test_value_at_origin_is_count(self, vor_of):
        _, vor = vor_of("D", 4)
        value, grad = fourier_value(np.array(vor.vectors), np.zeros(4))
        assert value == pytest.approx(24.0)
        assert np.allclose(grad, 0.0)

    @pytest.mark.parametrize(
        "name, n",
        [
            ("Z", 3), ("A", 2), ("A", 3), ("A", 4), ("A*", 2), ("A*", 3), ("D", 4), ("D", 5),
            ("D*", 4), ("E", 6), ("E", 7), ("E8", None), ("E6*", None),
        ],
    )
    def test_gradient_matches_central_differences(self, vor_of, name, n):
        _, vor = vor_of(name, n)
        vectors = np.array(vor.vectors, dtype=float)
        dim = vectors.shape[1]
        points = np.random.default_rng(0).random((100, dim))
        _, grads = fourier_value_batch(vectors, points)
        h = 1e-6
        numeric = np.empty_like(grads)
        for i in range(dim):
            step = np.zeros(dim)
            step[i] = h
            plus, _ = fourier_value_batch(vectors, points + step)
            minus, _ = fourier_value_batch(vectors, points - step)
            numeric[:, i] = (plus - minus) / (2 * h)
        error = np.linalg.norm(grads - numeric, axis=1)
        scale = np.maximum(np.linalg.norm(grads, axis=1), 1.0)
        assert np.all(error / scale < 1e-5)

    def test_single_point_matches_batch(self, vor_of):
        _, vor = vor_of("A", 3)
        vectors = np.array(vor.vectors)
        x = np.array([0.13, 0.41, 0.77])
        value, grad = fourier_value(vectors, x)
        values, grads = fourier_value_batch(vectors, x[None, :])
        assert value == pytest.approx(values[0])
        assert np.allclose(grad, grads[0])

    def test_weights(self, vor_of):
        _, vor = vor_of("Z", 2)
        value, _ = fourier_value(np.array(vor.vectors), np.zeros(2), np.full(4, 0.5))
        assert value == pytest.approx(2.0)


class TestCriticalValues:
    def test_an(self):
        assert an_critical_values(3) == {Fraction(12), Fraction(-4)}

    def test_dn_minimum(self):
        assert min(dn_critical_values(4)) == -8
        assert min(dn_critical_values(5)) == -8
        assert max(dn_critical_values(6)) == 60

    def test_e_series(self):
        assert en_reference_values("E8")[0] == -16
        assert en_reference_values("E8")[-1] == 240
        assert en_reference_values("E6")[-1] == 72
        with pytest.raises(UnknownName):
            en_reference_values("E9")

    def test_oracle_lookup(self):
        assert oracle_minimum(catalog("Z3")) == -6
        assert oracle_minimum(catalog("A4")) == -5
        assert oracle_minimum(catalog("E7")) == -14
        assert oracle_minimum(catalog("A2*")) is None
        assert critical_values(catalog("D4*")) is None


class TestMinimize:
    def test_a2_deep_hole(self, vor_of):
        lattice, vor = vor_of("A", 2)
        result = minimize_fourier(vor, starts=16, seed=0, lattice=lattice)
        assert result.min_value == pytest.approx(-3.0, abs=1e-6)
        assert result.hoffman_int == 3
        assert result.certified
        assert result.starts_used == 16
        assert all(0.0 <= y < 1.0 for y in result.argmin)

    def test_z3(self, vor_of):
        lattice, vor = vor_of("Z", 3)
        result = spectral_bound(lattice, vor, starts=64, seed=1)
        assert result.min_value == pytest.approx(-6.0, abs=1e-6)
        assert result.hoffman_int == 2
        assert result.certified

    # Aₙ: −(n+1)；Dₙ: −2n（n 偶）或 −2(n−1)（n 奇）；E6: −9；E7: −14
    @pytest.mark.parametrize(
        "name, n, minimum, bound",
        [
            ("A", 2, -3, 3),
            ("A", 3, -4, 4),
            ("A", 4, -5, 5),
            ("A", 5, -6, 6),
            ("A", 6, -7, 7),
            ("D", 4, -8, 4),
            ("D", 5, -8, 6),
            ("D", 6, -12, 6),
            ("D", 7, -12, 8),
            ("E", 6, -9, 9),
            ("E", 7, -14, 10),
        ],
    )
    def test_default_starts_reach_exact_minimum(self, vor_of, name, n, minimum, bound):
        lattice, vor = vor_of(name, n)
        result = spectral_bound(lattice, vor, seed=0)
        assert result.starts_used == 64 * n
        assert result.min_value == pytest.approx(minimum, abs=1e-6)
        assert result.hoffman_int == bound
        assert result.certified
        # 每个收敛的局部极小值都是精确临界值
        exact = [float(v) for v in critical_values(lattice)]
        assert result.local_minima
        for value in result.local_minima:
            assert min(abs(value - c) for c in exact) < 1e-6

    @pytest.mark.slow
    def test_e8(self, e8):
        lattice, vor = e8
        result = spectral_bound(lattice, vor)
        assert result.min_value == pytest.approx(-16.0, abs=1e-6)
        assert result.hoffman_int == 16
        assert result.certified

    def test_same_seed_same_result(self, vor_of):
        _, vor = vor_of("A", 3)
        first = minimize_fourier(vor, starts=8, seed=7)
        second = minimize_fourier(vor, starts=8, seed=7)
        assert first == second

    def test_heuristic_without_oracle(self, vor_of):
        lattice, vor = vor_of("A*", 2)
        result = spectral_bound(lattice, vor, starts=16)
        assert result.oracle_min is None
        assert not result.certified
        assert result.hoffman_int >= 2

    def test_weighted_is_never_certified(self, vor_of):
        lattice, vor = vor_of("Z", 2)
        result = minimize_fourier(vor, starts=8, weights={0: 2.0}, lattice=lattice)
        assert result.weighted
        assert result.total_weight == pytest.approx(6.0)
        assert not result.certified

    def test_starts_must_be_positive(self, vor_of):
        _, vor = vor_of("Z", 2)
        with pytest.raises(InputError) as info:
            minimize_fourier(vor, starts=0)
        assert info.value.code == "InvalidStarts"
        assert info.value.exit_code == 2



class TestE8Identities:
    def test_roots(self):
        roots = e8_roots_from_h8()
        assert roots.shape == (240, 8)
        assert np.allclose(np.sum(roots ** 2, axis=1), 2.0)

    def test_trig_identity(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            assert e8_trig_identity_check(rng.uniform(-math.pi, math.pi, 8)) < 1e-9

    def test_polynomial_is_nonnegative_on_grid(self):
        value, _ = p_grid_minimum(5)
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_construction_a(self):
        assert construction_a_matches_e8()
