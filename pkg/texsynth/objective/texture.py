import logging
import numpy as np
from texsynth.audio import AudioBuffer
from texsynth.errors import DegenerateInputError, SignalTooShortError
from texsynth.featurebank import AUTO, forward, forward_adjoint, gram, gram_adjoint
from texsynth.tfr import DEFAULT_COMPRESSION, OWN_MAX, compress_ri, compress_ri_adjoint, stft, stft_adjoint

# Layers closer than this (relative to the target norm) contribute no gradient
STATIONARY_TOLERANCE = 1e-12


def relative_distances(grams, targets):
    """
    Per-layer relative Frobenius distances ||target - H|| / ||target||
    @type   grams:      list of numpy.ndarray
    @type   targets:    list of numpy.ndarray
    @rtype: list of float
    """
    return [float(np.linalg.norm(t - h)) / float(np.linalg.norm(t)) for h, t in zip(grams, targets)]


def _check_signal(x, cfg, bank):
    if isinstance(x, AudioBuffer):
        if x.sample_rate != cfg.sample_rate:
            raise ValueError('Signal is sampled at {r} Hz, analysis expects {e} Hz; resample it first'
                             .format(r=x.sample_rate, e=cfg.sample_rate))
        x = x.samples

    x = np.asarray(x, dtype=np.float64).reshape(-1)
    frames = cfg.frame_count(x.size)
    if frames < bank.max_width or cfg.bins < bank.max_height:
        raise SignalTooShortError('Signal of {n} samples yields {f} frames; the filter bank needs at least {w} '
                                  '({m} samples)'.format(n=x.size, f=frames, w=bank.max_width,
                                                         m=cfg.samples_for(bank.max_width)))
    return x


def analyze(buf, bank, cfg, compression=DEFAULT_COMPRESSION, normalize_frames=True, method=AUTO, workers=1):
    """
    Extract the Gram parameters of a recording, normalizing its spectrogram by its own maximum
    @type   buf:                AudioBuffer
    @type   bank:               texsynth.featurebank.FilterBank
    @type   cfg:                texsynth.tfr.StftConfig
    @type   compression:        float
    @type   normalize_frames:   bool
    @rtype: texsynth.featurebank.ParameterSet
    """
    log = logging.getLogger('texsynth.objective.analyze')
    x = _check_signal(buf, cfg, bank)

    spec = stft(x, cfg)
    ri = compress_ri(spec, compression, OWN_MAX)
    log.info('Analyzing %d frames (spectrogram scale %.6g)', spec.num_frames, ri.scale)

    params = gram(forward(ri, bank, method, workers), normalize_frames)
    params.bank = bank
    params.stft_config = cfg
    params.compression = float(compression)
    params.scale = ri.scale
    params.num_frames = spec.num_frames
    return params


class TextureObjective(object):
    """
    Relative Gram distance to a target texture, evaluated with the target's fixed spectrogram scale
    """
    def __init__(self, target, bank=None, stft_config=None, compression=None, scale=None, method=AUTO,
                 workers=1):
        """
        @param  target:     Target parameters; unspecified settings are taken from its metadata
        @type   target:     texsynth.featurebank.ParameterSet
        @type   bank:       texsynth.featurebank.FilterBank or None
        @type   stft_config:    texsynth.tfr.StftConfig or None
        @type   compression:    float or None
        @param  scale:      Fixed spectrogram normalizer, or OWN_MAX to renormalize every candidate
        @type   scale:      float or str or None
        @param  method:     Convolution method (see texsynth.featurebank.conv)
        @type   method:     str
        @type   workers:    int
        """
        self.target = target
        self.bank = bank or target.bank
        self.stft_config = stft_config or target.stft_config
        self.compression = float(compression if compression is not None else target.compression)
        self.scale = scale if scale is not None else target.scale
        self.normalize_frames = target.normalize_frames
        self.method = method
        self.workers = workers

        if self.bank is None or self.stft_config is None or self.scale is None:
            raise ValueError('Objective needs a filter bank, an STFT configuration and a scale')
        if len(self.target) != len(self.bank):
            raise ValueError('Target has {t} Gram tensors but the bank has {b} layers'
                             .format(t=len(self.target), b=len(self.bank)))

        self.target_norms = [float(np.linalg.norm(h)) for h in self.target]
        for l, norm in enumerate(self.target_norms):
            if not norm > 0:
                raise DegenerateInputError('Target Gram tensor of layer {l} is all zero'.format(l=l))

    def features(self, x):
        """
        Forward pass from samples to Gram tensors
        @type   x:  AudioBuffer or numpy.ndarray
        @return:    (samples, spectrogram, RI stack, feature maps, parameters)
        @rtype:     tuple
        """
        x = _check_signal(x, self.stft_config, self.bank)
        spec = stft(x, self.stft_config)
        ri = compress_ri(spec, self.compression, self.scale)
        maps = forward(ri, self.bank, self.method, self.workers)
        return x, spec, ri, maps, gram(maps, self.normalize_frames)

    def layer_losses(self, x):
        """
        @type   x:  AudioBuffer or numpy.ndarray
        @return:    Relative distance of every layer
        @rtype:     list of float
        """
        return relative_distances(self.features(x)[-1], self.target)

    def loss(self, x):
        """
        @type   x:  AudioBuffer or numpy.ndarray
        @rtype: float
        """
        return float(sum(self.layer_losses(x)))

    def loss_and_gradient(self, x):
        """
        Loss and its exact gradient with respect to the time samples
        @type   x:  AudioBuffer or numpy.ndarray
        @rtype: tuple of (float, numpy.ndarray)
        """
        x, spec, ri, maps, params = self.features(x)
        distances = [float(np.linalg.norm(target - h)) for target, h in zip(self.target, params)]
        value = float(sum(d / n for d, n in zip(distances, self.target_norms)))

        grad_h = []
        for h, target, dist, norm in zip(params, self.target, distances, self.target_norms):
            if dist < STATIONARY_TOLERANCE * norm:
                grad_h.append(np.zeros_like(h))
            else:
                grad_h.append((h - target) / (norm * dist))

        grad_maps = gram_adjoint(grad_h, maps, self.normalize_frames)
        grad_ri = forward_adjoint(grad_maps, ri, self.bank, maps, self.method, self.workers)
        grad_spec = compress_ri_adjoint(grad_ri, spec, self.compression, ri.scale)
        return value, stft_adjoint(grad_spec, self.stft_config, x.size)


def loss(x, obj):
    """
    @type   x:      AudioBuffer or numpy.ndarray
    @type   obj:    TextureObjective
    @rtype: float
    """
    return obj.loss(x)


def layer_losses(x, obj):
    """
    @type   x:      AudioBuffer or numpy.ndarray
    @type   obj:    TextureObjective
    @rtype: list of float
    """
    return obj.layer_losses(x)


def loss_and_gradient(x, obj):
    """
    @type   x:      AudioBuffer or numpy.ndarray
    @type   obj:    TextureObjective
    @rtype: tuple of (float, numpy.ndarray)
    """
    return obj.loss_and_gradient(x)


def score(candidate, params, method=AUTO, workers=1):
    """
    Per-layer texture loss of an arbitrary recording against stored parameters
    @type   candidate:  AudioBuffer
    @type   params:     texsynth.featurebank.ParameterSet
    @rtype: list of float
    """
    return TextureObjective(params, method=method, workers=workers).layer_losses(candidate)
