"""End-to-end tests for the project -> 1-D seed -> lift pipeline."""

import numpy as np
import pytest

from prone.baseline import cost_with_nearest
from prone.dataset import as_dataset, gen_gaussian_mixture
from prone.pipeline import ProneConfig, ProneResult, prone, prone_center_cost


class TestProne:
    def test_k_equals_n_zero_cost(self):
        pts = np.random.default_rng(0).standard_normal((8, 3))
        res = prone(as_dataset(pts), ProneConfig(k=8, seed=4))
        assert res.model.cost == 0.0
        assert res.model.k == 8

    def test_two_far_singletons(self):
        data = as_dataset([[0.0, 0.0], [1000.0, 1000.0]])
        for seed in range(25):
            res = prone(data, ProneConfig(k=2, seed=seed))
            assert res.model.cost == 0.0
            assert res.model.assignment[0] != res.model.assignment[1]

    def test_deterministic_bit_for_bit(self):
        data, _ = gen_gaussian_mixture(5, 40, 6, 100.0, rng=3)
        a = prone(data, ProneConfig(k=5, z=2, seed=42))
        b = prone(data, ProneConfig(k=5, z=2, seed=42))
        np.testing.assert_array_equal(a.model.centers, b.model.centers)
        np.testing.assert_array_equal(a.model.assignment, b.model.assignment)
        assert a.model.cost == b.model.cost
        np.testing.assert_array_equal(a.projection.direction, b.projection.direction)

    def test_seed_changes_output(self):
        data, _ = gen_gaussian_mixture(5, 40, 6, 100.0, rng=3)
        a = prone(data, ProneConfig(k=5, seed=1))
        b = prone(data, ProneConfig(k=5, seed=2))
        assert not np.array_equal(a.projection.direction, b.projection.direction)

    def test_mixture_quality_vs_ground_truth(self):
        # separation >> noise: assignment cost within 10x of true-center cost
        data, true_centers = gen_gaussian_mixture(20, 500, 10, 1e5, rng=11)
        true_cost = cost_with_nearest(data, true_centers, z=2)
        ratios = []
        for seed in range(30):
            res = prone(data, ProneConfig(k=20, z=2, seed=seed))
            ratios.append(res.model.cost / true_cost)
        assert np.median(ratios) <= 10.0

    def test_exhausted_duplicates(self):
        data = as_dataset([[1.0], [1.0], [1.0], [5.0]])
        res = prone(data, ProneConfig(k=4, seed=0))
        assert res.exhausted
        assert res.model.k == 2

    def test_k_greater_than_n_rejected(self):
        with pytest.raises(ValueError):
            prone(as_dataset([[1.0], [2.0]]), ProneConfig(k=3, seed=0))

    def test_variants_run(self):
        data, _ = gen_gaussian_mixture(4, 30, 5, 200.0, rng=8)
        for variant in ("standard", "variance", "covariance"):
            res = prone(data, ProneConfig(k=4, variant=variant, seed=9))
            assert res.projection.variant == variant
            assert np.isfinite(res.model.cost)

    def test_timings_cover_phases(self):
        data, _ = gen_gaussian_mixture(3, 20, 4, 100.0, rng=1)
        res = prone(data, ProneConfig(k=3, seed=2))
        assert set(res.timings) >= {"project", "seed", "lift", "assign"}

    def test_scale_equivariance(self):
        rng = np.random.default_rng(23)
        pts = rng.standard_normal((60, 4))
        lam = 4.0
        for z in (1.0, 2.0):
            a = prone(as_dataset(pts), ProneConfig(k=6, z=z, seed=77))
            b = prone(as_dataset(lam * pts), ProneConfig(k=6, z=z, seed=77))
            np.testing.assert_array_equal(a.model.assignment, b.model.assignment)
            assert b.model.cost == pytest.approx(lam**z * a.model.cost, rel=1e-9)


class TestProneCenterCost:
    def test_never_exceeds_assignment_cost(self):
        data, _ = gen_gaussian_mixture(6, 50, 5, 50.0, rng=5)
        for seed in range(10):
            res = prone(data, ProneConfig(k=6, seed=seed))
            assert prone_center_cost(data, res) <= res.model.cost + 1e-9

    def test_k_equals_n(self):
        pts = np.random.default_rng(3).standard_normal((7, 2))
        data = as_dataset(pts)
        res = prone(data, ProneConfig(k=7, seed=1))
        assert prone_center_cost(data, res) == 0.0

    def test_matches_direct_nearest_cost(self):
        data, _ = gen_gaussian_mixture(4, 25, 3, 30.0, rng=6)
        res = prone(data, ProneConfig(k=4, seed=3))
        assert prone_center_cost(data, res) == pytest.approx(
            cost_with_nearest(data, res.model.centers, 2.0), rel=1e-12
        )
