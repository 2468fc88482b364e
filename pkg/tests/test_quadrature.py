import numpy as np
import pytest

from circsym.distributions import VonMises
from circsym.errors import QuadratureConvergenceError
from circsym.quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate_periodic

TWO_PI = 2.0 * np.pi


class TestIntegratePeriodic:
    def test_uniform_density(self):
        assert integrate_periodic(lambda x: np.full_like(x, 1.0 / TWO_PI)) == pytest.approx(1.0, abs=1e-12)

    def test_sine_squared(self):
        assert integrate_periodic(lambda x: np.sin(x) ** 2 / TWO_PI) == pytest.approx(0.5, abs=1e-12)

    def test_von_mises_normalization_vs_trapezoid(self):
        # independent oracle: dense trapezoid sum at 2^20 nodes
        pdf = VonMises(1.0).pdf
        grid = np.linspace(-np.pi, np.pi, 2**20 + 1)
        oracle = np.trapezoid(pdf(grid), grid)
        assert integrate_periodic(pdf) == pytest.approx(oracle, abs=1e-10)
        assert integrate_periodic(pdf) == pytest.approx(1.0, abs=1e-10)

    def test_scalar_only_integrand_accepted(self):
        import math

        assert integrate_periodic(lambda x: math.cos(x) ** 2 / math.pi) == pytest.approx(1.0, abs=1e-10)

    def test_non_finite_integrand_rejected(self):
        with np.errstate(divide="ignore"):
            with pytest.raises(ValueError, match="finite"):
                integrate_periodic(lambda x: 1.0 / x)

    def test_convergence_failure_carries_last_estimate(self):
        # an oscillation far beyond what the refinement budget can resolve
        spec = QuadratureSpec(abs_tolerance=1e-14, max_refinements=2)
        rough = lambda x: np.sin(997.0 * x) ** 2
        with pytest.raises(QuadratureConvergenceError, match="refinements") as err:
            integrate_periodic(rough, spec)
        assert np.isfinite(err.value.last_estimate)

    def test_wrapped_cauchy_near_one_converges(self):
        from circsym.distributions import WrappedCauchy

        assert integrate_periodic(WrappedCauchy(0.99).pdf) == pytest.approx(1.0, abs=1e-8)


class TestQuadratureSpec:
    def test_defaults(self):
        assert DEFAULT_QUADRATURE.abs_tolerance == 1e-10
        assert DEFAULT_QUADRATURE.max_refinements == 16

    def test_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tolerance=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_refinements=0)
