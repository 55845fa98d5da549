import logging
from math import gcd
import numpy as np
from scipy.ndimage import uniform_filter1d
from scipy.signal import firwin, resample_poly
from texsynth.audio.buffer import AudioBuffer
from texsynth.common import generator
from texsynth.errors import DegenerateInputError, SignalTooShortError

# Resampling filter: Kaiser windowed sinc, 64 taps per polyphase branch
TAPS_PER_PHASE = 64
KAISER_BETA = 8.6
CUTOFF = 0.9

# Moving average width (in DFT bins) applied to the anchor magnitude
ANCHOR_SMOOTHING = 9


def resample(buf, target_rate):
    """
    Windowed-sinc rate conversion
    @type   buf:            AudioBuffer
    @param  target_rate:    Target sample rate in Hz
    @type   target_rate:    int
    @rtype: AudioBuffer
    """
    target_rate = int(target_rate)
    if target_rate <= 0:
        raise ValueError('Target sample rate must be positive, got {r}'.format(r=target_rate))
    if target_rate == buf.sample_rate:
        return buf.copy()

    common = gcd(buf.sample_rate, target_rate)
    up, down = target_rate // common, buf.sample_rate // common
    ratio = max(up, down)

    # Cutoff at 0.9x the Nyquist frequency of the lower of both rates
    taps = firwin(TAPS_PER_PHASE * ratio + 1, CUTOFF / ratio, window=('kaiser', KAISER_BETA))
    logging.getLogger('texsynth.audio.dsp').info('Resampling %d Hz -> %d Hz (up=%d, down=%d, %d taps)',
                                                 buf.sample_rate, target_rate, up, down, taps.size)

    return AudioBuffer(resample_poly(buf.samples, up, down, window=taps), target_rate)


def normalize_energy(buf, target_variance):
    """
    Mean-center a buffer and scale it to the requested variance
    @type   buf:                AudioBuffer
    @type   target_variance:    float
    @rtype: AudioBuffer
    """
    if target_variance <= 0:
        raise ValueError('Target variance must be positive, got {v}'.format(v=target_variance))

    centered = buf.samples - buf.samples.mean()
    variance = np.mean(centered ** 2)
    if not variance > 0:
        raise DegenerateInputError('Cannot normalize the energy of a constant signal')

    return buf.copy(centered * np.sqrt(target_variance / variance))


def crop(buf, start=0.0, duration=None):
    """
    Extract a segment of a buffer
    @param  start:      Segment start in seconds
    @type   start:      float
    @param  duration:   Segment length in seconds, or None to keep everything after start
    @type   duration:   float or None
    @rtype: AudioBuffer
    """
    if start < 0:
        raise ValueError('Segment start must not be negative')
    if duration is not None and duration <= 0:
        raise ValueError('Segment duration must be positive')

    first = int(round(start * buf.sample_rate))
    last = len(buf) if duration is None else first + int(round(duration * buf.sample_rate))
    segment = buf.samples[first:last]
    if not segment.size:
        raise SignalTooShortError('Segment starting at {s:.3f}s is empty ({d:.3f}s of audio available)'
                                  .format(s=start, d=buf.duration))

    return buf.copy(segment)


def make_anchor(reference, seed=0):
    """
    Gaussian white noise filtered to the (smoothed) magnitude spectrum of a reference
    @type   reference:  AudioBuffer
    @type   seed:       int
    @rtype: AudioBuffer
    """
    if not len(reference):
        raise SignalTooShortError('Cannot build an anchor from an empty reference')

    log = logging.getLogger('texsynth.audio.anchor')
    length = len(reference)
    noise = generator(seed).standard_normal(length)

    magnitude = uniform_filter1d(np.abs(np.fft.rfft(reference.samples)), ANCHOR_SMOOTHING, mode='nearest')
    phase = np.angle(np.fft.rfft(noise))
    log.debug('Substituting %d magnitude bins (seed %d)', magnitude.size, seed)

    anchor = AudioBuffer(np.fft.irfft(magnitude * np.exp(1j * phase), n=length), reference.sample_rate)
    return normalize_energy(anchor, np.var(reference.samples))
