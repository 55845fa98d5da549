import numpy as np
from texsynth.errors import DegenerateInputError, ShapeMismatchError

DEFAULT_COMPRESSION = 10.0

OWN_MAX = 'own_max'

REAL, IMAG = 0, 1


class RIStack(object):
    """
    Compressed real / imaginary STFT parts stacked as two channels (bins x frames x 2)
    """
    def __init__(self, data, scale, compression):
        """
        @type   data:           numpy.ndarray
        @param  scale:          Normalizer applied to the spectrogram before compression
        @type   scale:          float
        @param  compression:    Sigmoid compression factor
        @type   compression:    float
        """
        self.data = data
        self.scale = float(scale)
        self.compression = float(compression)

    @property
    def shape(self):
        return self.data.shape

    @property
    def real(self):
        return self.data[..., REAL]

    @property
    def imag(self):
        return self.data[..., IMAG]


def _squash(z, compression):
    # 2 * sigmoid(c * z) - 1, exactly odd in z
    return np.tanh(0.5 * compression * z)


def resolve_scale(spec, scale=OWN_MAX):
    """
    Resolve a scale mode to the normalizer applied to a spectrogram
    @type   spec:   texsynth.tfr.stft.ComplexSpectrogram
    @param  scale:  OWN_MAX, or a fixed positive normalizer
    @type   scale:  str or float
    @rtype: float
    """
    if scale == OWN_MAX:
        peak = float(np.max(np.abs(spec.bins)))
        if not peak > 0:
            raise DegenerateInputError('Cannot normalize an all-zero spectrogram by its own maximum')
        return peak

    scale = float(scale)
    if not scale > 0:
        raise ValueError('Fixed spectrogram scale must be positive, got {s}'.format(s=scale))
    return scale


def compress_ri(spec, compression=DEFAULT_COMPRESSION, scale=OWN_MAX):
    """
    Normalize a spectrogram and squash its real and imaginary parts into (-1, 1)
    @type   spec:           texsynth.tfr.stft.ComplexSpectrogram
    @type   compression:    float
    @param  scale:          OWN_MAX to divide by the spectrogram's maximum modulus, or a fixed normalizer
    @type   scale:          str or float
    @rtype: RIStack
    """
    if not compression > 0:
        raise ValueError('Compression factor must be positive, got {c}'.format(c=compression))

    scale = resolve_scale(spec, scale)
    normalized = spec.bins / scale
    data = np.stack((_squash(normalized.real, compression), _squash(normalized.imag, compression)), axis=-1)
    return RIStack(data, scale, compression)


def compress_ri_adjoint(grad_ri, spec, compression, scale):
    """
    Vector-Jacobian product of compress_ri with the scale held constant
    @param  grad_ri:    Cotangent with the RIStack layout
    @type   grad_ri:    numpy.ndarray
    @type   spec:       texsynth.tfr.stft.ComplexSpectrogram
    @type   compression:    float
    @type   scale:      float
    @return:    Complex cotangent over the spectrogram (Re part + 1j * Im part)
    @rtype:     numpy.ndarray
    """
    grad_ri = np.asarray(grad_ri, dtype=np.float64)
    if grad_ri.shape != spec.shape + (2,):
        raise ShapeMismatchError('RI cotangent has shape {s}, expected {e}'.format(s=grad_ri.shape,
                                                                                  e=spec.shape + (2,)))

    def local(z):
        squashed = _squash(z / scale, compression)
        return 0.5 * compression * (1.0 - squashed ** 2) / scale

    return grad_ri[..., REAL] * local(spec.bins.real) + 1j * grad_ri[..., IMAG] * local(spec.bins.imag)
