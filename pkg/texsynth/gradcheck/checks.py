import math
import logging
import numpy as np
from texsynth.audio import AudioBuffer
from texsynth.common import generator
from texsynth.featurebank import DIRECT, FeatureMaps, init_bank, select_layers, forward, forward_adjoint, gram, \
    gram_adjoint
from texsynth.objective import TextureObjective, analyze, relative_distances
from texsynth.tfr import ComplexSpectrogram, StftConfig, RIStack, compress_ri, compress_ri_adjoint, stft, \
    stft_adjoint

DEFAULT_TOLERANCE = 1e-4


class CheckResult(object):
    """
    Outcome of a single gradient check
    """
    def __init__(self, name, error, tolerance, samples):
        """
        @type   name:       str
        @param  error:      Largest relative error observed
        @type   error:      float
        @type   tolerance:  float
        @param  samples:    Number of compared quantities
        @type   samples:    int
        """
        self.name = name
        self.error = float(error)
        self.tolerance = float(tolerance)
        self.samples = samples

    @property
    def passed(self):
        return self.error < self.tolerance


def central_difference(func, x, coordinates, eps):
    """
    Central finite-difference partial derivatives of a scalar function
    @type   func:           callable
    @type   x:              numpy.ndarray
    @param  coordinates:    Flat indices to differentiate along
    @type   coordinates:    list of int
    @type   eps:            float
    @rtype: numpy.ndarray
    """
    flat = x.reshape(-1)
    partials = np.zeros(len(coordinates))
    for k, index in enumerate(coordinates):
        original = flat[index]
        flat[index] = original + eps
        f_plus = func(x)
        flat[index] = original - eps
        f_minus = func(x)
        flat[index] = original
        partials[k] = (f_plus - f_minus) / (2.0 * eps)
    return partials


def relative_error(expected, actual, floor=0.0):
    """
    Largest elementwise |expected - actual| / max(|expected|, |actual|, floor)
    @rtype: float
    """
    expected, actual = np.atleast_1d(expected), np.atleast_1d(actual)
    scale = np.maximum(np.maximum(np.abs(expected), np.abs(actual)), floor)
    scale[scale == 0] = 1.0
    return float(np.max(np.abs(expected - actual) / scale))


def _pairing(values, cotangent):
    # Exactly rounded inner product
    return math.fsum((np.asarray(values) * cotangent).ravel())


def check_stft(rng, tolerance):
    """
    Adjoint identity <stft(x), u> = <x, stft_adjoint(u)>
    """
    cfg = StftConfig(window_length=32, hop=16, fft_size=32, sample_rate=16000)
    x = rng.standard_normal(200)
    spec = stft(x, cfg)
    u = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)

    lhs = np.sum(spec.bins.real * u.real + spec.bins.imag * u.imag)
    rhs = np.dot(x, stft_adjoint(u, cfg, x.size))
    return CheckResult('stft_adjoint', relative_error(lhs, rhs), tolerance, 1)


def check_compression(rng, tolerance, compression=10.0):
    """
    compress_ri_adjoint against finite differences on a 4 x 3 spectrogram
    """
    cfg = StftConfig(window_length=6, hop=3, fft_size=6, sample_rate=16000)
    parts = 0.1 * rng.standard_normal((4, 3, 2))
    cotangent = rng.standard_normal((4, 3, 2))
    scale = 1.5

    def objective(p):
        spec = ComplexSpectrogram(p[..., 0] + 1j * p[..., 1], cfg)
        return _pairing(compress_ri(spec, compression, scale).data, cotangent)

    spec = ComplexSpectrogram(parts[..., 0] + 1j * parts[..., 1], cfg)
    grad = compress_ri_adjoint(cotangent, spec, compression, scale)
    analytic = np.stack((grad.real, grad.imag), axis=-1).reshape(-1)
    numeric = central_difference(objective, parts.copy(), list(range(parts.size)), 1e-6)
    return CheckResult('compress_ri_adjoint', relative_error(numeric, analytic), tolerance,
                       parts.size)


def check_forward(rng, tolerance, seed):
    """
    forward_adjoint against finite differences on a 12 x 12 x 2 input with a two-layer toy bank
    """
    bank = init_bank(seed, num_filters=3, shapes=[(3, 3), (2, 5)])
    data = rng.uniform(-1.0, 1.0, size=(12, 12, 2))
    maps = forward(RIStack(data, 1.0, 1.0), bank, DIRECT)
    cotangents = [rng.standard_normal(m.shape) for m in maps]

    def objective(d):
        return math.fsum(_pairing(m, c) for m, c in zip(forward(RIStack(d, 1.0, 1.0), bank, DIRECT), cotangents))

    analytic = forward_adjoint(cotangents, RIStack(data, 1.0, 1.0), bank, maps, DIRECT).reshape(-1)
    numeric = central_difference(objective, data.copy(), list(range(data.size)), 1e-6)
    return CheckResult('forward_adjoint', relative_error(numeric, analytic), tolerance, data.size)


def check_gram(rng, tolerance):
    """
    gram_adjoint against finite differences on small random feature maps
    """
    fmap = rng.uniform(0.0, 1.0, size=(3, 4, 5))
    cotangent = rng.standard_normal((3, 3, 4))

    def objective(f):
        return _pairing(gram(FeatureMaps([f]), True)[0], cotangent)

    analytic = gram_adjoint([cotangent], FeatureMaps([fmap]), True)[0].reshape(-1)
    numeric = central_difference(objective, fmap.copy(), list(range(fmap.size)), 1e-6)
    return CheckResult('gram_adjoint', relative_error(numeric, analytic), tolerance, fmap.size)


def _loss_and_pattern(objective, x):
    __, __, __, maps, params = objective.features(x)
    return float(sum(relative_distances(params, objective.target))), [m > 0 for m in maps]


def check_end_to_end(rng, tolerance, seed, filters=8, layers=(0, 1), duration=0.25, coordinates=20):
    """
    loss_and_gradient against finite differences on random coordinates of a short signal. Coordinates whose
    stencil switches a ReLU on or off are replaced by others.
    """
    log = logging.getLogger('texsynth.gradcheck')
    cfg = StftConfig()
    bank = select_layers(init_bank(seed, num_filters=filters), list(layers))
    num_samples = int(round(duration * cfg.sample_rate))

    target = AudioBuffer(0.1 * rng.standard_normal(num_samples), cfg.sample_rate)
    objective = TextureObjective(analyze(target, bank, cfg, method=DIRECT), method=DIRECT)
    x = 0.1 * rng.standard_normal(num_samples)

    value, grad = objective.loss_and_gradient(x)
    eps = 1e-6 * np.max(np.abs(x))
    picks, numeric, skipped = [], [], 0
    for index in rng.permutation(num_samples):
        if len(picks) == coordinates:
            break
        plus, minus = x.copy(), x.copy()
        plus[index] += eps
        minus[index] -= eps
        f_plus, pattern_plus = _loss_and_pattern(objective, plus)
        f_minus, pattern_minus = _loss_and_pattern(objective, minus)
        if any(not np.array_equal(a, b) for a, b in zip(pattern_plus, pattern_minus)):
            skipped += 1
            continue
        picks.append(int(index))
        numeric.append((f_plus - f_minus) / (2.0 * eps))

    analytic = grad[picks]
    log.debug('End-to-end loss %.6g, |g|inf %.3g, %d kinked coordinates skipped', value, np.max(np.abs(grad)),
              skipped)
    return CheckResult('loss_and_gradient', relative_error(np.array(numeric), analytic),
                       tolerance, len(picks))


def run_checks(seed=0, filters=8, layers=(0, 1), duration=0.25, coordinates=20, tolerance=DEFAULT_TOLERANCE):
    """
    Run every stage-wise check and the end-to-end check
    @type   seed:           int
    @param  filters:        Filters per layer of the end-to-end bank
    @type   filters:        int
    @param  layers:         Default-shape layer indices of the end-to-end bank
    @type   layers:         tuple of int
    @param  duration:       End-to-end signal length in seconds
    @type   duration:       float
    @param  coordinates:    Number of end-to-end sample coordinates checked
    @type   coordinates:    int
    @type   tolerance:      float
    @rtype: list of CheckResult
    """
    log = logging.getLogger('texsynth.gradcheck')
    rng = generator(seed)
    results = [
        check_stft(rng, tolerance),
        check_compression(rng, tolerance),
        check_forward(rng, tolerance, seed),
        check_gram(rng, tolerance),
        check_end_to_end(rng, tolerance, seed, filters, layers, duration, coordinates),
    ]
    for result in results:
        log.info('%s: relative error %.3e over %d values (%s)', result.name, result.error, result.samples,
                 'pass' if result.passed else 'FAIL')
    return results
