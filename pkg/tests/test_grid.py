"""Time grids and sampled functions."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wfrac import DomainError, SampledFunction, TimeGrid


class TestTimeGrid:
    def test_rejects_nonpositive_start(self):
        with pytest.raises(DomainError):
            TimeGrid(np.array([0.0, 1.0]))
        with pytest.raises(DomainError):
            TimeGrid(np.array([-1.0, 1.0]))

    def test_rejects_nonmonotone(self):
        with pytest.raises(DomainError):
            TimeGrid(np.array([1.0, 1.0, 2.0]))
        with pytest.raises(DomainError):
            TimeGrid(np.array([1.0, 0.5]))

    def test_single_point_allowed(self):
        g = TimeGrid(np.array([2.0]))
        assert len(g) == 1 and g.t_min == g.t_max == 2.0

    def test_uniform(self):
        g = TimeGrid.uniform(0.5, 2.0, 4)
        assert_allclose(g.points, [0.5, 1.0, 1.5, 2.0])
        assert g.spacing == "uniform"

    def test_graded_clusters_to_origin(self):
        g = TimeGrid.graded(1.0, 10, exponent=2.0)
        assert_allclose(g.points, (np.arange(1, 11) / 10.0) ** 2)
        assert g.grading_exponent == 2.0
        # spacing near the origin is much finer than near the end
        d = np.diff(g.points)
        assert d[0] < d[-1] / 5

    def test_logspaced(self):
        g = TimeGrid.logspaced(1e-3, 1.0, 4)
        assert_allclose(g.points, [1e-3, 1e-2, 1e-1, 1.0], rtol=1e-12)

    def test_describe_mentions_shape(self):
        assert "graded" in TimeGrid.graded(1.0, 8).describe()
        assert "uniform" in TimeGrid.uniform(0.1, 1.0, 8).describe()


class TestSampledFunction:
    def test_length_mismatch_rejected(self):
        g = TimeGrid.uniform(0.1, 1.0, 5)
        with pytest.raises(DomainError):
            SampledFunction(g, np.zeros(4))

    def test_from_callable_captures_origin(self):
        g = TimeGrid.uniform(0.5, 1.0, 2)
        f = SampledFunction.from_callable(lambda t: 2.0 * t + 1.0, g)
        assert f.value_at_zero == 1.0
        assert_allclose(f.values, [2.0, 3.0])

    def test_nonfinite_origin_rejected(self):
        g = TimeGrid.uniform(0.5, 1.0, 2)
        with pytest.raises(DomainError):
            SampledFunction(g, np.zeros(2), value_at_zero=float("nan"))
