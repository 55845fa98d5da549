import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import get_window
from texsynth.audio import AudioBuffer
from texsynth.errors import ShapeMismatchError, SignalTooShortError

# Overlap-add normalization floor
_WINDOW_FLOOR = 1e-10


class StftConfig(object):
    """
    STFT framing parameters
    """
    def __init__(self, window_length=512, hop=256, fft_size=None, sample_rate=16000):
        """
        @type   window_length:  int
        @type   hop:            int
        @param  fft_size:       Transform size (defaults to the window length)
        @type   fft_size:       int or None
        @type   sample_rate:    int
        """
        self.window_length = int(window_length)
        self.hop = int(hop)
        self.fft_size = int(fft_size or window_length)
        self.sample_rate = int(sample_rate)

        if min(self.window_length, self.hop, self.sample_rate) <= 0:
            raise ValueError('STFT window, hop and sample rate must be positive')
        if self.hop > self.window_length:
            raise ValueError('Hop ({h}) must not exceed the window length ({w})'
                             .format(h=self.hop, w=self.window_length))
        if self.fft_size < self.window_length:
            raise ValueError('FFT size ({n}) must be at least the window length ({w})'
                             .format(n=self.fft_size, w=self.window_length))

    def __eq__(self, other):
        return isinstance(other, StftConfig) and self.as_tuple() == other.as_tuple()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'StftConfig(window_length={w}, hop={h}, fft_size={n}, sample_rate={r})'.format(
            w=self.window_length, h=self.hop, n=self.fft_size, r=self.sample_rate)

    def as_tuple(self):
        return self.window_length, self.hop, self.fft_size, self.sample_rate

    @property
    def bins(self):
        return self.fft_size // 2 + 1

    @property
    def window(self):
        """
        Periodic Hann analysis / synthesis window
        @rtype: numpy.ndarray
        """
        return get_window('hann', self.window_length, fftbins=True)

    def frame_count(self, num_samples):
        """
        Number of frames the STFT of num_samples samples yields (no edge padding)
        @type   num_samples:    int
        @rtype: int
        """
        if num_samples < self.window_length:
            return 0
        return 1 + (num_samples - self.window_length) // self.hop

    def samples_for(self, num_frames):
        """
        Minimum signal length producing num_frames frames
        @type   num_frames: int
        @rtype: int
        """
        return (num_frames - 1) * self.hop + self.window_length


class ComplexSpectrogram(object):
    """
    One-sided STFT (frequency bins x frames)
    """
    def __init__(self, bins, config):
        """
        @type   bins:   numpy.ndarray
        @type   config: StftConfig
        """
        self.bins = np.asarray(bins, dtype=np.complex128)
        self.config = config

    @property
    def shape(self):
        return self.bins.shape

    @property
    def num_frames(self):
        return self.bins.shape[1]


def _samples(x):
    return x.samples if isinstance(x, AudioBuffer) else np.asarray(x, dtype=np.float64)


def _overlap_add(frames, hop, length):
    out = np.zeros(length)
    width = frames.shape[1]
    for t, frame in enumerate(frames):
        out[t * hop:t * hop + width] += frame
    return out


def stft(buf, cfg):
    """
    Hann windowed short-time Fourier transform, non-negative frequencies only
    @param  buf:    Signal (buffer or raw samples)
    @type   buf:    AudioBuffer or numpy.ndarray
    @type   cfg:    StftConfig
    @rtype: ComplexSpectrogram
    """
    x = _samples(buf)
    if x.size < cfg.window_length:
        raise SignalTooShortError('Signal of {n} samples is shorter than one window ({w} samples)'
                                  .format(n=x.size, w=cfg.window_length))

    frames = sliding_window_view(x, cfg.window_length)[::cfg.hop]
    spectrum = np.fft.rfft(frames * cfg.window, n=cfg.fft_size, axis=1)
    return ComplexSpectrogram(spectrum.T, cfg)


def istft(spec):
    """
    Weighted overlap-add inverse of stft, normalized by the summed squared window
    @type   spec:   ComplexSpectrogram
    @rtype: AudioBuffer
    """
    cfg = spec.config
    window = cfg.window
    length = cfg.samples_for(spec.num_frames)

    frames = np.fft.irfft(spec.bins.T, n=cfg.fft_size, axis=1)[:, :cfg.window_length] * window
    signal = _overlap_add(frames, cfg.hop, length)
    weight = _overlap_add(np.tile(window ** 2, (spec.num_frames, 1)), cfg.hop, length)

    nonzero = weight > _WINDOW_FLOOR
    signal[nonzero] /= weight[nonzero]
    return AudioBuffer(signal, cfg.sample_rate)


def stft_adjoint(grad_spec, cfg, num_samples):
    """
    Vector-Jacobian product of stft, real and imaginary parts taken as independent outputs
    @param  grad_spec:      Cotangent, either complex (Re cotangent + 1j * Im cotangent) or real with a trailing
                            axis of size 2
    @type   grad_spec:      numpy.ndarray
    @type   cfg:            StftConfig
    @type   num_samples:    int
    @return:    Gradient over the samples
    @rtype:     numpy.ndarray
    """
    grad = np.asarray(grad_spec)
    if not np.iscomplexobj(grad) and grad.ndim == 3 and grad.shape[-1] == 2:
        grad = grad[..., 0] + 1j * grad[..., 1]

    expected = (cfg.bins, cfg.frame_count(num_samples))
    if grad.shape != expected:
        raise ShapeMismatchError('STFT cotangent has shape {s}, expected {e}'.format(s=grad.shape, e=expected))

    # irfft doubles every bin but DC (and Nyquist for even sizes)
    spectrum = grad.T.astype(np.complex128)
    spectrum[:, 1:] *= 0.5
    if cfg.fft_size % 2 == 0:
        spectrum[:, -1] *= 2.0

    frames = cfg.fft_size * np.fft.irfft(spectrum, n=cfg.fft_size, axis=1)[:, :cfg.window_length]
    return _overlap_add(frames * cfg.window, cfg.hop, num_samples)
