import time
import logging
from collections import deque, namedtuple
import numpy as np
from texsynth.errors import NonFiniteError
from texsynth.optimizers.linesearch import strong_wolfe

STRONG_WOLFE = 'strong_wolfe'

CONVERGED = 'converged'
MAX_ITERATIONS = 'max_iterations'
LINE_SEARCH_FAILED = 'line_search_failed'

# Curvature pairs with s.y below this fraction of |s||y| are skipped
CURVATURE_TOLERANCE = 1e-10

IterationRecord = namedtuple('IterationRecord', ['iteration', 'loss', 'grad_inf_norm', 'step', 'fevals',
                                                 'wall_time'])


class LbfgsOptions(object):
    """
    Limited-memory BFGS settings
    """
    def __init__(self, memory=10, max_iterations=5000, gradient_tolerance=1e-9, line_search=STRONG_WOLFE,
                 wolfe_c1=1e-4, wolfe_c2=0.9, max_line_search_steps=20):
        """
        @param  memory:             Number of (s, y) pairs kept
        @type   memory:             int
        @type   max_iterations:     int
        @param  gradient_tolerance: Stop once the gradient infinity norm drops to this value
        @type   gradient_tolerance: float
        @type   line_search:        str
        @type   wolfe_c1:           float
        @type   wolfe_c2:           float
        @param  max_line_search_steps:  Objective evaluations allowed per line search
        @type   max_line_search_steps:  int
        """
        if memory < 1:
            raise ValueError('L-BFGS memory must be at least 1')
        if not 0 < wolfe_c1 < wolfe_c2 < 1:
            raise ValueError('Wolfe constants must satisfy 0 < c1 < c2 < 1')
        if line_search != STRONG_WOLFE:
            raise ValueError('Unsupported line search: {ls}'.format(ls=line_search))
        if max_iterations < 0 or max_line_search_steps < 1:
            raise ValueError('Iteration limits must be non-negative')

        self.memory = int(memory)
        self.max_iterations = int(max_iterations)
        self.gradient_tolerance = float(gradient_tolerance)
        self.line_search = line_search
        self.wolfe_c1 = float(wolfe_c1)
        self.wolfe_c2 = float(wolfe_c2)
        self.max_line_search_steps = int(max_line_search_steps)


class RunTrace(object):
    """
    Per-iteration optimizer records; iteration 0 is the starting point
    """
    def __init__(self):
        self.records = []
        self.status = None
        self.message = ''
        self.skipped_pairs = 0

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def append(self, record):
        self.records.append(record)

    @property
    def iterations(self):
        return self.records[-1].iteration if self.records else 0

    @property
    def losses(self):
        return [r.loss for r in self.records]

    @property
    def fevals(self):
        return self.records[-1].fevals if self.records else 0


def two_loop(grad, pairs):
    """
    Apply the inverse Hessian approximation held in pairs to grad
    @param  pairs:  (s, y, rho) triples, oldest first
    @type   pairs:  collections.deque
    @rtype: numpy.ndarray
    """
    q = grad.copy()
    alphas = []
    for s, y, rho in reversed(pairs):
        a = rho * np.dot(s, q)
        q -= a * y
        alphas.append(a)

    if pairs:
        s, y, __ = pairs[-1]
        q *= np.dot(s, y) / np.dot(y, y)

    for (s, y, rho), a in zip(pairs, reversed(alphas)):
        b = rho * np.dot(y, q)
        q += (a - b) * s

    return q


def _check_finite(f, g, where):
    if not np.isfinite(f) or not np.all(np.isfinite(g)):
        raise NonFiniteError('Objective returned a non-finite value or gradient at {w}'.format(w=where))


def minimize(f_and_grad, x0, opts=None, callback=None):
    """
    Minimize a smooth function with L-BFGS and a strong Wolfe line search
    @param  f_and_grad: Objective returning (value, gradient) for a vector
    @type   f_and_grad: callable
    @type   x0:         numpy.ndarray
    @type   opts:       LbfgsOptions or None
    @param  callback:   Called with every IterationRecord as it is recorded
    @type   callback:   callable or None
    @return:    Final point (the best one found) and the run trace
    @rtype:     tuple of (numpy.ndarray, RunTrace)
    @raise  NonFiniteError: The objective returned a non-finite value or gradient
    """
    log = logging.getLogger('texsynth.lbfgs')
    opts = opts or LbfgsOptions()
    trace = RunTrace()
    started = time.time()

    def record(iteration, loss, grad, step, fevals):
        entry = IterationRecord(iteration, loss, float(np.max(np.abs(grad))) if grad.size else 0.0, step, fevals,
                                time.time() - started)
        trace.append(entry)
        if callback:
            callback(entry)
        return entry

    x = np.array(x0, dtype=np.float64)
    f, g = f_and_grad(x)
    f, g = float(f), np.asarray(g, dtype=np.float64)
    _check_finite(f, g, 'the starting point')
    fevals = 1
    entry = record(0, f, g, 0.0, fevals)

    if entry.grad_inf_norm <= opts.gradient_tolerance:
        trace.status, trace.message = CONVERGED, 'starting point is stationary'
        return x, trace

    pairs = deque(maxlen=opts.memory)
    trace.status, trace.message = MAX_ITERATIONS, 'iteration limit reached'
    for iteration in range(1, opts.max_iterations + 1):
        direction = -two_loop(g, pairs)
        if not np.dot(g, direction) < 0:
            log.info('Iteration %d: not a descent direction, resetting curvature memory', iteration)
            pairs.clear()
            direction = -g

        # Unscaled steepest descent steps start from a unit-norm move
        alpha = 1.0 if pairs else min(1.0, 1.0 / np.sum(np.abs(g)))
        result = strong_wolfe(f_and_grad, x, f, g, direction, alpha, opts.wolfe_c1, opts.wolfe_c2,
                              opts.max_line_search_steps)
        fevals += result.evaluations

        if not result.success:
            trace.status = LINE_SEARCH_FAILED
            trace.message = 'line search failed at iteration {i}: {m}'.format(i=iteration, m=result.message)
            log.warning(trace.message)
            best = result.point
            if best is not None and best.f < f:
                x, f, g = best.x, best.f, best.g
                record(iteration, f, g, best.alpha, fevals)
            break

        point = result.point
        s, y = point.x - x, point.g - g
        sy = float(np.dot(s, y))
        if sy > CURVATURE_TOLERANCE * np.linalg.norm(s) * np.linalg.norm(y):
            pairs.append((s, y, 1.0 / sy))
        else:
            trace.skipped_pairs += 1
            log.debug('Iteration %d: skipping curvature pair (s.y = %.3g)', iteration, sy)

        x, f, g = point.x, point.f, point.g
        entry = record(iteration, f, g, point.alpha, fevals)
        log.debug('Iteration %d: loss %.10g, |g|inf %.3g, step %.3g', iteration, f, entry.grad_inf_norm,
                  point.alpha)

        if entry.grad_inf_norm <= opts.gradient_tolerance:
            trace.status, trace.message = CONVERGED, 'gradient tolerance reached'
            break

    log.info('L-BFGS finished after %d iterations (%d evaluations): %s', trace.iterations, fevals, trace.message)
    return x, trace
