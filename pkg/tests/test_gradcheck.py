import numpy as np
import pytest
from texsynth.generators import GradcheckReport
from texsynth.gradcheck import CheckResult, central_difference, relative_error, run_checks
import texsynth.gradcheck.checks


@pytest.fixture(scope='module')
def results():
    return run_checks(seed=0)


def test_central_difference_of_a_cubic():
    x = np.array([1.0, -2.0, 0.5])
    partials = central_difference(lambda v: float(np.sum(v ** 3)), x, [0, 1, 2], 1e-5)
    assert np.max(np.abs(partials - 3 * x ** 2)) < 1e-8
    assert x.tolist() == [1.0, -2.0, 0.5]


def test_relative_error():
    assert relative_error([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert relative_error([0.0], [0.0]) == 0.0
    assert relative_error([1.0], [1.1]) == pytest.approx(0.1 / 1.1)
    assert relative_error([1e-9], [2e-9], floor=1.0) == pytest.approx(1e-9)


def test_check_result():
    assert CheckResult('x', 1e-6, 1e-4, 3).passed
    assert not CheckResult('x', 1e-3, 1e-4, 3).passed


def test_all_checks_pass(results):
    assert [r.name for r in results] == ['stft_adjoint', 'compress_ri_adjoint', 'forward_adjoint', 'gram_adjoint',
                                         'loss_and_gradient']
    for result in results:
        assert result.passed, '{n}: {e:.3e}'.format(n=result.name, e=result.error)
    assert results[-1].samples == 20


def test_corrupted_adjoint_is_detected(monkeypatch):
    exact = texsynth.gradcheck.checks.gram_adjoint

    def scaled(*args, **kwargs):
        return [1.1 * g for g in exact(*args, **kwargs)]

    monkeypatch.setattr(texsynth.gradcheck.checks, 'gram_adjoint', scaled)
    failed = [r.name for r in run_checks(seed=0) if not r.passed]
    assert failed == ['gram_adjoint']


def test_checks_compare_every_coordinate_without_a_floor(monkeypatch):
    floors = []

    def recorded(expected, actual, floor=0.0):
        floors.append(floor)
        return relative_error(expected, actual, floor)

    monkeypatch.setattr(texsynth.gradcheck.checks, 'relative_error', recorded)
    assert all(r.passed for r in run_checks(seed=1))
    assert len(floors) == 5
    assert not any(floors)


def test_small_partials_are_held_to_the_tolerance():
    numeric = np.array([10.0, 1e-6])
    assert relative_error(numeric, np.array([10.0, 1.1e-6])) > 1e-4


def test_report_is_reproducible(results):
    first = GradcheckReport(results, 0).template
    assert GradcheckReport(run_checks(seed=0), 0).template == first
    assert 'Gradient checks (seed 0)' in first
    assert 'all checks passed' in first


def test_report_flags_failures():
    text = GradcheckReport([CheckResult('gram_adjoint', 0.09, 1e-4, 60)], 3).template
    assert 'FAILED' in text
    assert 'gradient checks FAILED' in text
