import numpy as np


class AudioBuffer(object):
    """
    Mono time domain signal
    """
    def __init__(self, samples, sample_rate):
        """
        @param  samples:        Real amplitudes, nominally within [-1, 1]
        @type   samples:        numpy.ndarray
        @param  sample_rate:    Sample rate in Hz
        @type   sample_rate:    int
        """
        sample_rate = int(sample_rate)
        if sample_rate <= 0:
            raise ValueError('Sample rate must be positive, got {r}'.format(r=sample_rate))

        self.samples = np.asarray(samples, dtype=np.float64).reshape(-1)
        self.sample_rate = sample_rate

    def __len__(self):
        return self.samples.size

    def __repr__(self):
        return '<AudioBuffer {n} samples @ {r} Hz>'.format(n=len(self), r=self.sample_rate)

    @property
    def duration(self):
        """
        @return:    Duration in seconds
        @rtype:     float
        """
        return len(self) / float(self.sample_rate)

    @property
    def rms(self):
        """
        @rtype: float
        """
        if not len(self):
            return 0.0

        return float(np.sqrt(np.mean(self.samples ** 2)))

    def copy(self, samples=None):
        """
        Copy this buffer, optionally swapping in new samples at the same rate
        @type   samples:    numpy.ndarray or None
        @rtype: AudioBuffer
        """
        return AudioBuffer(self.samples.copy() if samples is None else samples, self.sample_rate)
