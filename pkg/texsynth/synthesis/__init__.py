import csv
import copy
import logging
import numpy as np
from texsynth.audio import AudioBuffer, normalize_energy, resample
from texsynth.common import generator
from texsynth.errors import SignalTooShortError
from texsynth.featurebank import AUTO
from texsynth.objective import TextureObjective, analyze
from texsynth.optimizers import LbfgsOptions, minimize
from texsynth.tfr import DEFAULT_COMPRESSION

GAUSSIAN_NOISE = 'gaussian_noise'

TARGET_VARIANCE = 0.01

TRACE_COLUMNS = ('iter', 'loss', 'grad_inf_norm', 'step', 'fevals', 'wall_time')


def prepare(buf, sample_rate, target_variance=TARGET_VARIANCE):
    """
    Bring a recording to the analysis rate and energy
    @type   buf:                AudioBuffer
    @type   sample_rate:        int
    @type   target_variance:    float
    @rtype: AudioBuffer
    """
    return normalize_energy(resample(buf, sample_rate), target_variance)


def analyze_recording(buf, bank, stft_config, compression=DEFAULT_COMPRESSION, normalize_frames=True,
                      target_variance=TARGET_VARIANCE, method=AUTO, workers=1):
    """
    Resample, energy-normalize and analyze a decoded recording
    @type   buf:                AudioBuffer
    @type   bank:               texsynth.featurebank.FilterBank
    @type   stft_config:        texsynth.tfr.StftConfig
    @rtype: texsynth.featurebank.ParameterSet
    """
    original = prepare(buf, stft_config.sample_rate, target_variance)
    shortest = stft_config.samples_for(bank.max_width)
    if len(original) < shortest:
        raise SignalTooShortError('input shorter than minimum analyzable duration ({d:.3f}s < {m:.3f}s)'
                                  .format(d=original.duration, m=shortest / float(stft_config.sample_rate)))

    return analyze(original, bank, stft_config, compression, normalize_frames, method, workers)


class SynthConfig(object):
    """
    Synthesis settings
    """
    def __init__(self, duration=None, iterations=5000, init=GAUSSIAN_NOISE, init_rms=0.1, seed=0, lbfgs=None,
                 peak_level=0.9):
        """
        @param  duration:   Output length in seconds (None: the analyzed original's duration)
        @type   duration:   float or None
        @param  iterations: L-BFGS iteration budget
        @type   iterations: int
        @param  init:       Base signal kind
        @type   init:       str
        @param  init_rms:   RMS of the base signal
        @type   init_rms:   float
        @param  seed:       Base signal seed
        @type   seed:       int
        @param  lbfgs:      Optimizer settings (max_iterations is overridden by iterations)
        @type   lbfgs:      texsynth.optimizers.LbfgsOptions or None
        @param  peak_level: Peak amplitude of the written output
        @type   peak_level: float
        """
        if init != GAUSSIAN_NOISE:
            raise ValueError('Unsupported base signal: {i}'.format(i=init))
        if duration is not None and duration <= 0:
            raise ValueError('Duration must be positive')
        if not init_rms > 0 or not peak_level > 0:
            raise ValueError('Base signal RMS and peak level must be positive')
        if iterations < 0:
            raise ValueError('Iteration count must not be negative')

        self.duration = duration
        self.iterations = int(iterations)
        self.init = init
        self.init_rms = float(init_rms)
        self.seed = int(seed)
        self.lbfgs = copy.copy(lbfgs) if lbfgs else LbfgsOptions()
        self.lbfgs.max_iterations = self.iterations
        self.peak_level = float(peak_level)


class SynthesisRun(object):
    """
    Result of one parameter imposition
    """
    def __init__(self, output, raw, initial, trace):
        """
        @param  output:     Peak-normalized synthesized texture
        @type   output:     AudioBuffer
        @param  raw:        Optimized signal before peak normalization
        @type   raw:        AudioBuffer
        @param  initial:    Base signal the optimization started from
        @type   initial:    AudioBuffer
        @type   trace:      texsynth.optimizers.RunTrace
        """
        self.output = output
        self.raw = raw
        self.initial = initial
        self.trace = trace

    @property
    def initial_loss(self):
        return self.trace.records[0].loss

    @property
    def final_loss(self):
        return self.trace.records[-1].loss


def min_samples(params):
    """
    Shortest signal the parameter set's filter bank can be imposed on
    @type   params: texsynth.featurebank.ParameterSet
    @rtype: int
    """
    return params.stft_config.samples_for(params.bank.max_width)


def base_signal(num_samples, config, sample_rate):
    """
    Seeded Gaussian noise scaled to the configured RMS
    @type   num_samples:    int
    @type   config:         SynthConfig
    @type   sample_rate:    int
    @rtype: AudioBuffer
    """
    noise = generator(config.seed).standard_normal(num_samples)
    noise *= config.init_rms / np.sqrt(np.mean(noise ** 2))
    return AudioBuffer(noise, sample_rate)


def peak_normalize(buf, level):
    """
    @type   buf:    AudioBuffer
    @type   level:  float
    @rtype: AudioBuffer
    """
    peak = np.max(np.abs(buf.samples))
    if not peak > 0:
        return buf.copy()
    return buf.copy(buf.samples * (level / peak))


class Synthesizer(object):
    """
    Imposes a parameter set onto a noise base signal by optimizing its time samples
    """
    def __init__(self, params, config=None, method=AUTO, workers=1, scale=None):
        """
        @type   params:     texsynth.featurebank.ParameterSet
        @type   config:     SynthConfig or None
        @param  method:     Convolution method
        @type   method:     str
        @param  workers:    Threads used per objective evaluation
        @type   workers:    int
        @param  scale:      Spectrogram normalizer override (OWN_MAX renormalizes every candidate)
        @type   scale:      float or str or None
        """
        self.log = logging.getLogger('texsynth.synthesis')
        self.params = params
        self.config = config or SynthConfig()
        self.objective = TextureObjective(params, scale=scale, method=method, workers=workers)
        self.sample_rate = params.stft_config.sample_rate

    @property
    def num_samples(self):
        """
        Output length: the configured duration, or the span of the analyzed frames
        @rtype: int
        """
        if self.config.duration is None:
            if not self.params.num_frames:
                raise ValueError('Parameter set does not record its frame count; a duration is required')
            return self.params.stft_config.samples_for(self.params.num_frames)

        return int(round(self.config.duration * self.sample_rate))

    def run(self, callback=None):
        """
        @param  callback:   Receives every iteration record
        @type   callback:   callable or None
        @rtype: SynthesisRun
        """
        num_samples = self.num_samples
        shortest = min_samples(self.params)
        if num_samples < shortest:
            raise SignalTooShortError('Requested {d:.3f}s of audio; the filter bank needs at least {m:.3f}s'
                                      .format(d=num_samples / float(self.sample_rate),
                                              m=shortest / float(self.sample_rate)))

        initial = base_signal(num_samples, self.config, self.sample_rate)
        self.log.info('Synthesizing %d samples over at most %d iterations', num_samples, self.config.iterations)

        x, trace = minimize(self.objective.loss_and_gradient, initial.samples, self.config.lbfgs, callback)
        raw = AudioBuffer(x, self.sample_rate)
        self.log.info('Loss %.6g -> %.6g (%s)', trace.records[0].loss, trace.records[-1].loss, trace.status)
        return SynthesisRun(peak_normalize(raw, self.config.peak_level), raw, initial, trace)


def write_trace(trace, path):
    """
    Write a run trace as CSV
    @type   trace:  texsynth.optimizers.RunTrace
    @type   path:   str
    """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(TRACE_COLUMNS)
        for record in trace:
            writer.writerow([record.iteration, repr(record.loss), repr(record.grad_inf_norm), repr(record.step),
                             record.fevals, '{t:.3f}'.format(t=record.wall_time)])
