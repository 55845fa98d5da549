import logging
import numpy as np
from texsynth.errors import NonFiniteError

# Interpolated trial steps closer than these fractions of the bracket to its ends fall back to safer choices
_CUBIC_MARGIN = 0.2
_QUADRATIC_MARGIN = 0.1


class LinePoint(object):
    """
    Objective sample along the search direction
    """
    __slots__ = ('alpha', 'x', 'f', 'g', 'slope')

    def __init__(self, alpha, x, f, g, slope):
        self.alpha = alpha
        self.x = x
        self.f = f
        self.g = g
        self.slope = slope


class LineSearchResult(object):
    """
    Outcome of a strong Wolfe line search
    """
    def __init__(self, point, evaluations, success, message=''):
        """
        @param  point:          Accepted point, or the best point seen when the search failed (None if no trial
                                decreased the objective)
        @type   point:          LinePoint or None
        @type   evaluations:    int
        @type   success:        bool
        @type   message:        str
        """
        self.point = point
        self.evaluations = evaluations
        self.success = success
        self.message = message


def _cubicmin(a, fa, fpa, b, fb, c, fc):
    """
    Minimizer of the cubic through (a, fa), (b, fb), (c, fc) with slope fpa at a, or None
    """
    with np.errstate(divide='raise', over='raise', invalid='raise'):
        try:
            db = b - a
            dc = c - a
            denom = (db * dc) ** 2 * (db - dc)
            d1 = np.array([[dc ** 2, -db ** 2], [-dc ** 3, db ** 3]])
            coef_a, coef_b = np.dot(d1, np.array([fb - fa - fpa * db, fc - fa - fpa * dc])) / denom
            radical = coef_b * coef_b - 3 * coef_a * fpa
            xmin = a + (-coef_b + np.sqrt(radical)) / (3 * coef_a)
        except (ArithmeticError, ValueError):
            return None
    if not np.isfinite(xmin):
        return None
    return float(xmin)


def _quadmin(a, fa, fpa, b, fb):
    """
    Minimizer of the quadratic through (a, fa), (b, fb) with slope fpa at a, or None
    """
    with np.errstate(divide='raise', over='raise', invalid='raise'):
        try:
            db = b - a
            coef_b = (fb - fa - fpa * db) / (db * db)
            xmin = a - fpa / (2.0 * coef_b)
        except ArithmeticError:
            return None
    if not np.isfinite(xmin):
        return None
    return float(xmin)


def strong_wolfe(f_and_grad, x, f0, g0, direction, alpha=1.0, c1=1e-4, c2=0.9, max_steps=20):
    """
    Find a step length satisfying the strong Wolfe conditions (bracketing followed by zoom)
    @param  f_and_grad: Objective returning (value, gradient)
    @type   f_and_grad: callable
    @param  x:          Current point
    @type   x:          numpy.ndarray
    @type   f0:         float
    @type   g0:         numpy.ndarray
    @param  direction:  Descent direction
    @type   direction:  numpy.ndarray
    @param  alpha:      Initial trial step
    @type   alpha:      float
    @param  max_steps:  Maximum number of objective evaluations
    @type   max_steps:  int
    @rtype: LineSearchResult
    @raise  NonFiniteError: The objective returned a non-finite value or gradient
    """
    log = logging.getLogger('texsynth.lbfgs.linesearch')
    slope0 = float(np.dot(g0, direction))
    state = {'evals': 0, 'best': None}

    def evaluate(step):
        xs = x + step * direction
        fs, gs = f_and_grad(xs)
        state['evals'] += 1
        fs, gs = float(fs), np.asarray(gs, dtype=np.float64)
        if not np.isfinite(fs) or not np.all(np.isfinite(gs)):
            raise NonFiniteError('Objective returned a non-finite value or gradient at step length {a:.6g}'
                                 .format(a=step))

        point = LinePoint(step, xs, fs, gs, float(np.dot(gs, direction)))
        if fs < f0 and (state['best'] is None or fs < state['best'].f):
            state['best'] = point
        return point

    def armijo(point):
        return point.f <= f0 + c1 * point.alpha * slope0

    def curvature(point):
        return abs(point.slope) <= -c2 * slope0

    def failed(message):
        log.debug('Line search failed after %d evaluations: %s', state['evals'], message)
        return LineSearchResult(state['best'], state['evals'], False, message)

    def zoom(lo, hi):
        recent = None
        while state['evals'] < max_steps:
            width = hi.alpha - lo.alpha
            low, high = min(lo.alpha, hi.alpha), max(lo.alpha, hi.alpha)
            if abs(width) <= np.finfo(float).eps * max(1.0, high):
                return failed('bracket collapsed')

            trial = None
            if recent is not None:
                trial = _cubicmin(lo.alpha, lo.f, lo.slope, hi.alpha, hi.f, recent.alpha, recent.f)
                margin = _CUBIC_MARGIN * abs(width)
                if trial is not None and not (low + margin <= trial <= high - margin):
                    trial = None
            if trial is None:
                trial = _quadmin(lo.alpha, lo.f, lo.slope, hi.alpha, hi.f)
                margin = _QUADRATIC_MARGIN * abs(width)
                if trial is None or not (low + margin <= trial <= high - margin):
                    trial = lo.alpha + 0.5 * width

            point = evaluate(trial)
            if not armijo(point) or point.f >= lo.f:
                recent, hi = hi, point
                continue

            if curvature(point):
                return LineSearchResult(point, state['evals'], True)
            if point.slope * (hi.alpha - lo.alpha) >= 0:
                recent, hi = hi, lo
            else:
                recent = lo
            lo = point

        return failed('no conforming step within {n} evaluations'.format(n=max_steps))

    if not slope0 < 0:
        return failed('search direction is not a descent direction')

    previous = LinePoint(0.0, x, f0, g0, slope0)
    step = alpha
    while state['evals'] < max_steps:
        point = evaluate(step)
        if not armijo(point) or (previous.alpha > 0 and point.f >= previous.f):
            return zoom(previous, point)
        if curvature(point):
            return LineSearchResult(point, state['evals'], True)
        if point.slope >= 0:
            return zoom(point, previous)

        previous = point
        step *= 2.0

    return failed('no bracketing step within {n} evaluations'.format(n=max_steps))
