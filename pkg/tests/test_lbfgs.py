from collections import deque
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy.stats import special_ortho_group
from texsynth.errors import NonFiniteError
from texsynth.optimizers import (LbfgsOptions, CONVERGED, LINE_SEARCH_FAILED, MAX_ITERATIONS, minimize, strong_wolfe,
                                 two_loop)
import texsynth.optimizers.lbfgs


def rosenbrock(x):
    value = 100.0 * (x[1] - x[0] ** 2) ** 2 + (1.0 - x[0]) ** 2
    grad = np.array([-400.0 * x[0] * (x[1] - x[0] ** 2) - 2.0 * (1.0 - x[0]), 200.0 * (x[1] - x[0] ** 2)])
    return value, grad


@pytest.fixture
def quadratic():
    rotation = special_ortho_group.rvs(10, random_state=3)
    hessian = rotation @ np.diag(np.linspace(1.0, 2.0, 10)) @ rotation.T
    b = np.arange(1.0, 11.0)
    minimum = np.linalg.solve(hessian, b)

    def f_and_grad(x):
        return 0.5 * x @ hessian @ x - b @ x, hessian @ x - b

    return f_and_grad, minimum


@pytest.fixture
def wolfe_audit(monkeypatch):
    """
    Record whether every accepted line search step satisfies the strong Wolfe conditions
    """
    violations = []
    accepted = []

    def audited(f_and_grad, x, f0, g0, direction, alpha=1.0, c1=1e-4, c2=0.9, max_steps=20):
        result = strong_wolfe(f_and_grad, x, f0, g0, direction, alpha, c1, c2, max_steps)
        if result.success:
            point, slope0 = result.point, np.dot(g0, direction)
            accepted.append(point.alpha)
            if point.f > f0 + c1 * point.alpha * slope0 or abs(np.dot(point.g, direction)) > c2 * abs(slope0):
                violations.append(point.alpha)
        return result

    monkeypatch.setattr(texsynth.optimizers.lbfgs, 'strong_wolfe', audited)
    return accepted, violations


class TestOptions:

    @pytest.mark.parametrize('kwargs', [{'memory': 0}, {'wolfe_c1': 0.95}, {'wolfe_c2': 1.0}, {'max_iterations': -1},
                                        {'line_search': 'backtracking'}, {'max_line_search_steps': 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            LbfgsOptions(**kwargs)


class TestTwoLoop:

    def test_no_memory_is_identity(self, rng):
        g = rng.standard_normal(5)
        assert_array_equal(two_loop(g, deque()), g)

    def test_secant_condition(self, rng):
        hessian = np.diag(np.linspace(1.0, 5.0, 6))
        pairs = deque(maxlen=4)
        for __ in range(4):
            s = rng.standard_normal(6)
            y = hessian @ s
            pairs.append((s, y, 1.0 / np.dot(s, y)))

        s, y, __ = pairs[-1]
        assert_allclose(two_loop(y, pairs), s, rtol=1e-10)


class TestMinimize:

    def test_quadratic(self, quadratic):
        f_and_grad, minimum = quadratic
        x, trace = minimize(f_and_grad, np.zeros(10), LbfgsOptions(max_iterations=15, gradient_tolerance=1e-10))
        assert np.linalg.norm(x - minimum) < 1e-8
        assert trace.iterations <= 15

    def test_rosenbrock(self):
        x, trace = minimize(rosenbrock, np.array([-1.2, 1.0]), LbfgsOptions(max_iterations=100,
                                                                            gradient_tolerance=1e-9))
        assert np.linalg.norm(x - 1.0) < 1e-6
        assert trace.iterations <= 100

    def test_strong_wolfe_on_every_accepted_step(self, wolfe_audit):
        accepted, violations = wolfe_audit
        minimize(rosenbrock, np.array([-1.2, 1.0]), LbfgsOptions(max_iterations=100))
        assert accepted
        assert not violations

    def test_losses_never_increase(self):
        __, trace = minimize(rosenbrock, np.array([-1.2, 1.0]), LbfgsOptions(max_iterations=60))
        losses = trace.losses
        assert all(b <= a for a, b in zip(losses, losses[1:]))
        assert [r.iteration for r in trace] == list(range(len(trace)))

    def test_trace_records(self, quadratic):
        f_and_grad, __ = quadratic
        seen = []
        __, trace = minimize(f_and_grad, np.zeros(10), LbfgsOptions(max_iterations=5), callback=seen.append)
        assert seen == trace.records
        assert trace.records[0].iteration == 0
        assert trace.records[0].step == 0.0
        assert trace.fevals >= trace.iterations + 1
        assert all(r.wall_time >= 0 for r in trace)

    def test_zero_iterations(self, quadratic):
        f_and_grad, __ = quadratic
        x0 = np.ones(10)
        x, trace = minimize(f_and_grad, x0, LbfgsOptions(max_iterations=0))
        assert_array_equal(x, x0)
        assert len(trace) == 1
        assert trace.status == MAX_ITERATIONS

    def test_stationary_start(self):
        __, trace = minimize(rosenbrock, np.array([1.0, 1.0]))
        assert trace.status == CONVERGED
        assert trace.iterations == 0

    def test_deterministic(self):
        x1, t1 = minimize(rosenbrock, np.array([-1.2, 1.0]), LbfgsOptions(max_iterations=30))
        x2, t2 = minimize(rosenbrock, np.array([-1.2, 1.0]), LbfgsOptions(max_iterations=30))
        assert_array_equal(x1, x2)
        assert t1.losses == t2.losses

    def test_non_finite_start(self):
        with pytest.raises(NonFiniteError):
            minimize(lambda x: (np.nan, np.zeros_like(x)), np.zeros(3))

    def test_line_search_failure_keeps_best_point(self):
        # The reported gradient points uphill: no trial step decreases the value
        def lying(x):
            return float(np.sum(x ** 2)), -np.ones_like(x) * 1e3

        x0 = np.full(3, 2.0)
        x, trace = minimize(lying, x0, LbfgsOptions(max_iterations=10))
        assert trace.status == LINE_SEARCH_FAILED
        assert np.sum(x ** 2) <= np.sum(x0 ** 2)
        assert trace.message
