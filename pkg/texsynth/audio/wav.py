import logging
import numpy as np
from scipy.io import wavfile
from texsynth.audio.buffer import AudioBuffer
from texsynth.errors import AudioFormatError

# PCM16 full scale
_INT16_SCALE = 32768.0


def read_wav(path):
    """
    Read a PCM16 or IEEE float32 WAV file, mixing multichannel audio down to mono
    @type   path:   str
    @rtype: AudioBuffer
    @raise  AudioFormatError:   Unreadable file, unsupported codec or zero-length audio
    """
    log = logging.getLogger('texsynth.audio.wav')
    log.debug('Reading WAV file: %s', path)
    try:
        rate, data = wavfile.read(path)
    except ValueError as e:
        raise AudioFormatError('Unreadable WAV file {p}: {e}'.format(p=path, e=e))

    if data.dtype == np.int16:
        data = data.astype(np.float64) / _INT16_SCALE
    elif data.dtype == np.float32:
        data = data.astype(np.float64)
    else:
        raise AudioFormatError('Unsupported sample format {dt} in {p} (expected PCM16 or float32)'
                               .format(dt=data.dtype, p=path))

    if data.ndim > 1:
        log.info('Mixing %d channels down to mono', data.shape[1])
        data = data.mean(axis=1)

    if not data.size:
        raise AudioFormatError('WAV file contains no audio: {p}'.format(p=path))

    log.info('Loaded %d samples at %d Hz from %s', data.size, rate, path)
    return AudioBuffer(data, rate)


def write_wav(buf, path):
    """
    Write a buffer as a mono IEEE float32 WAV file
    @type   buf:    AudioBuffer
    @type   path:   str
    """
    if not len(buf):
        raise AudioFormatError('Refusing to write an empty buffer to {p}'.format(p=path))

    logging.getLogger('texsynth.audio.wav').debug('Writing %d samples at %d Hz to %s',
                                                  len(buf), buf.sample_rate, path)
    wavfile.write(path, buf.sample_rate, buf.samples.astype(np.float32))
