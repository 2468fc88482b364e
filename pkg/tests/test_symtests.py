import math

import numpy as np
import pytest
from scipy import stats as sp_stats

from circsym.angles import wrap
from circsym.distributions import Cardioid, SineSkewed, Uniform, VonMises
from circsym.errors import DegenerateSampleError
from circsym.montecarlo import derive_stream
from circsym.symtests import (
    modified_runs_test,
    parametric_statistic,
    parametric_test,
    rayleigh_cardioid_test,
    runs_count,
    simulate_runs_null,
    studentized_statistic,
    symmetry_test,
)


class TestStudentizedStatistic:
    def test_symmetric_pair_gives_zero(self):
        theta = 0.6
        for k in (1, 2, 3):
            value = studentized_statistic([theta + 0.4, theta - 0.4], theta, k)
            assert value == pytest.approx(0.0, abs=1e-14)

    def test_all_sines_one_gives_root_n(self):
        for k, n in ((1, 9), (2, 16), (3, 25)):
            sample = np.full(n, 0.2 + np.pi / (2 * k))
            assert studentized_statistic(sample, 0.2, k) == pytest.approx(math.sqrt(n), rel=1e-13)

    def test_rotation_equivariance(self):
        rng = np.random.default_rng(1)
        sample = rng.uniform(-np.pi, np.pi, 40)
        base_value = studentized_statistic(sample, 0.3, 2)
        for shift in (0.9, -2.5, np.pi):
            rotated = wrap(sample + shift)
            assert studentized_statistic(rotated, wrap(0.3 + shift), 2) == pytest.approx(
                base_value, abs=1e-10
            )

    def test_reflection_negates(self):
        rng = np.random.default_rng(2)
        theta = -0.7
        sample = rng.uniform(-np.pi, np.pi, 60)
        plain = studentized_statistic(sample, theta, 3)
        mirrored = studentized_statistic(wrap(2 * theta - sample), theta, 3)
        assert mirrored == pytest.approx(-plain, abs=1e-10)

    def test_b2star_form(self):
        # k = 2 statistic is the ratio of the mean of sin 2(x - theta)
        # to its root mean square, times sqrt(n)
        rng = np.random.default_rng(3)
        sample = rng.uniform(-np.pi, np.pi, 30)
        s = np.sin(2 * (sample - 0.1))
        expected = math.sqrt(30) * s.mean() / math.sqrt(np.mean(s**2))
        assert studentized_statistic(sample, 0.1, 2) == pytest.approx(expected, rel=1e-13)

    def test_degenerate_sample_rejected(self):
        # every observation sits exactly at the centre, so sin(k(x - theta)) == 0
        sample = [0.0] * 6
        with pytest.raises(DegenerateSampleError):
            studentized_statistic(sample, 0.0, 2)

    def test_needs_two_observations(self):
        with pytest.raises(ValueError, match="two observations"):
            studentized_statistic([0.5], 0.0, 1)


class TestSymmetryTest:
    def test_symmetric_pair_p_one(self):
        result = symmetry_test([0.8, -0.8], 0.0, 1)
        assert result.p_value == pytest.approx(1.0)
        assert not result.reject

    def test_two_sided_p_value_formula(self):
        rng = np.random.default_rng(4)
        sample = rng.uniform(-np.pi, np.pi, 50)
        result = symmetry_test(sample, 0.4, 2)
        assert result.p_value == pytest.approx(
            2 * sp_stats.norm.sf(abs(result.statistic)), rel=1e-12
        )

    def test_one_sided_alternatives(self):
        sample = np.full(16, 0.2 + np.pi / 4)  # positive sines about 0.2, k=2
        right = symmetry_test(sample, 0.2, 2, alternative="right")
        left = symmetry_test(sample, 0.2, 2, alternative="left")
        assert right.statistic == pytest.approx(4.0)
        assert right.p_value < 1e-4
        assert left.p_value == pytest.approx(1.0, abs=1e-4)
        assert right.p_value == pytest.approx(sp_stats.norm.sf(4.0), rel=1e-10)

    def test_result_metadata(self):
        result = symmetry_test([0.5, -0.2, 0.9], 0.0, 3, alpha=0.1)
        assert result.n == 3
        assert result.k == 3
        assert result.reject_at == 0.1
        assert result.method == "sine-symmetry-studentized:k=3"
        payload = result.to_dict()
        assert payload["n"] == 3 and "reject" in payload

    def test_bad_alternative_rejected(self):
        with pytest.raises(ValueError, match="alternative"):
            symmetry_test([0.1, 0.2], 0.0, 1, alternative="both")


class TestParametricTest:
    def test_uniform_base_is_scaled_sine_mean(self):
        rng = np.random.default_rng(5)
        sample = rng.uniform(-np.pi, np.pi, 80)
        stat = parametric_statistic(sample, 0.3, 1, Uniform())
        direct = math.sqrt(2.0) * abs(
            math.sqrt(80) * np.mean(np.sin(sample - 0.3))
        )
        assert stat == pytest.approx(direct, rel=1e-12)

    def test_symmetric_pair_gives_zero(self):
        assert parametric_statistic([1.0, -1.0], 0.0, 2, VonMises(1.0)) == pytest.approx(
            0.0, abs=1e-14
        )

    def test_agrees_with_studentized_under_true_base(self):
        # the two statistics differ by o_P(1) under the base itself
        base = VonMises(1.0)
        gaps = []
        for rep in range(1000):
            rng = derive_stream(99, "student-vs-parametric", rep)
            sample = base.sample(rng, 100)
            a = studentized_statistic(sample, 0.0, 2)
            b = parametric_statistic(sample, 0.0, 2, base)
            gaps.append(abs(abs(a) - b))
        assert np.mean(gaps) < 0.05

    def test_result_method_names_base(self):
        result = parametric_test([0.4, 0.5, -0.2], 0.0, 2, Cardioid(0.5))
        assert result.method == "sine-symmetry-parametric:cardioid:0.5:k=2"


class TestRayleighCardioid:
    def test_all_at_direction(self):
        sample = np.full(8, 1.1)
        result = rayleigh_cardioid_test(sample, 1.1)
        assert result.statistic == pytest.approx(4.0, rel=1e-13)
        assert result.p_value == pytest.approx(sp_stats.norm.sf(4.0), rel=1e-10)

    def test_antipodal_data_p_near_one(self):
        sample = np.full(50, wrap(1.1 + np.pi))
        result = rayleigh_cardioid_test(sample, 1.1)
        assert result.statistic == pytest.approx(-10.0, rel=1e-12)
        assert result.p_value > 0.999999

    def test_equals_uniform_parametric_statistic(self):
        rng = np.random.default_rng(6)
        sample = rng.uniform(-np.pi, np.pi, 64)
        direction = 0.8
        rayleigh = rayleigh_cardioid_test(sample, direction)
        # the same statistic through the parametric route at theta = direction - pi/2
        parametric = parametric_statistic(sample, direction - np.pi / 2, 1, Uniform())
        assert abs(rayleigh.statistic) == pytest.approx(parametric, abs=1e-12)

    def test_null_size(self):
        hits = 0
        reps = 2000
        for rep in range(reps):
            rng = derive_stream(123, "rayleigh-null", rep)
            sample = Uniform().sample(rng, 100)
            hits += rayleigh_cardioid_test(sample, 0.4).reject
        assert hits / reps == pytest.approx(0.05, abs=0.02)


class TestRunsMachinery:
    def test_runs_count_examples(self):
        assert runs_count([1, 1, 1]) == 1
        assert runs_count([1, -1, 1, -1]) == 4
        assert runs_count([1, 1, -1, -1, 1]) == 3
        assert runs_count([]) == 0

    def test_null_simulation_moments(self):
        # runs among m fair coins: mean 1 + (m-1)/2, variance (m-1)/4
        rng = np.random.default_rng(7)
        counts = simulate_runs_null(41, 40_000, rng)
        assert counts.mean() == pytest.approx(21.0, abs=0.1)
        assert counts.var() == pytest.approx(10.0, abs=0.35)


class TestModifiedRuns:
    def test_alternating_signs_large_p(self):
        # maximally alternating signs: run count at the top of the null range
        n = 40
        eps = np.where(np.arange(n) % 2 == 0, 0.01, -0.01)
        sample = wrap(0.5 + eps * (1 + np.arange(n)))
        result = modified_runs_test(sample, 0.5, p=0.6)
        assert result.p_value > 0.999

    def test_single_run_tiny_p(self):
        rng = np.random.default_rng(8)
        sample = wrap(0.5 + np.abs(rng.uniform(0.1, 2.9, size=60)))
        result = modified_runs_test(sample, 0.5, p=0.6, calibration_reps=4000)
        assert result.statistic == 1.0
        assert result.p_value == pytest.approx(1.0 / 4001.0, abs=1e-9)

    def test_injected_null_table_matches_own_simulation(self):
        rng = np.random.default_rng(9)
        sample = VonMises(1.0).sample(rng, 50)
        table = simulate_runs_null(30, 5000, np.random.default_rng(10))
        a = modified_runs_test(sample, 0.0, null_counts=table)
        b = modified_runs_test(sample, 0.0, null_counts=table)
        assert a.p_value == b.p_value
        assert a.extra["calibration_reps"] == 5000

    def test_metadata_fields(self):
        rng = np.random.default_rng(11)
        sample = SineSkewed(VonMises(1.0), 0.5, k=1).sample(rng, 100)
        result = modified_runs_test(sample, 0.0, p=0.6)
        assert result.extra["subset_size"] == 60
        assert result.alternative == "left"
        assert 0.0 < result.p_value <= 1.0

    def test_needs_ten_observations(self):
        with pytest.raises(ValueError, match="ten"):
            modified_runs_test(np.linspace(-1, 1, 9), 0.0)

    def test_percentile_validated(self):
        with pytest.raises(ValueError, match="percentile"):
            modified_runs_test(np.linspace(-1, 1, 20), 0.0, p=1.5)

    def test_valid_but_conservative_and_consistent(self):
        # the discrete runs count keeps the exact test below nominal level,
        # while strong skewness still multiplies the rejection rate
        table = simulate_runs_null(60, 10_000, np.random.default_rng(5))
        model = SineSkewed(VonMises(1.0), 0.8, k=1)
        reps = 600
        null_rejections = skew_rejections = 0
        for i in range(reps):
            rng = derive_stream(50, "modrun-size", i)
            flat = modified_runs_test(rng.uniform(-np.pi, np.pi, 100), 0.0,
                                      null_counts=table)
            null_rejections += flat.p_value < 0.05
            rng = derive_stream(51, "modrun-power", i)
            skewed = modified_runs_test(model.sample(rng, 100), 0.0,
                                        null_counts=table)
            skew_rejections += skewed.p_value < 0.05
        size = null_rejections / reps
        power = skew_rejections / reps
        assert 0.005 <= size <= 0.07
        assert power > 0.2
        assert power > 3 * size
