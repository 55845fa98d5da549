import logging
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import fftconvolve
from texsynth.errors import ShapeMismatchError, SignalTooShortError

DIRECT, FFT, AUTO = 'direct', 'fft', 'auto'

# Above this many multiply-adds per layer, AUTO switches to FFT correlation
_DIRECT_LIMIT = 5e6

# Filters per FFT block (bounds the memory of batched transforms)
_FFT_BLOCK = 16


class FeatureMaps(object):
    """
    Post-ReLU feature maps, one num_filters x out_height x out_width tensor per layer
    """
    def __init__(self, maps):
        """
        @type   maps:   list of numpy.ndarray
        """
        self.maps = list(maps)

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __getitem__(self, item):
        return self.maps[item]

    @property
    def shapes(self):
        return [m.shape for m in self.maps]


def _pick(method, layer, bins, frames):
    if method not in (DIRECT, FFT, AUTO):
        raise ValueError('Unknown convolution method: {m}'.format(m=method))
    if method != AUTO:
        return method

    oh, ow = layer.output_shape(bins, frames)
    cost = float(oh) * ow * layer.height * layer.width * layer.weights.shape[3] * layer.num_filters
    return DIRECT if cost <= _DIRECT_LIMIT else FFT


def correlate(x, weights, method=DIRECT):
    """
    Valid multi-channel cross-correlation (no kernel flip), stride 1
    @param  x:          Input, height x width x channels
    @type   x:          numpy.ndarray
    @param  weights:    num_filters x h x w x channels
    @type   weights:    numpy.ndarray
    @rtype: numpy.ndarray
    """
    num_filters, h, w, channels = weights.shape
    if method == DIRECT:
        windows = sliding_window_view(x, (h, w), axis=(0, 1))
        return np.einsum('mnchw,fhwc->fmn', windows, weights)

    out = np.zeros((num_filters, x.shape[0] - h + 1, x.shape[1] - w + 1))
    for start in range(0, num_filters, _FFT_BLOCK):
        block = weights[start:start + _FFT_BLOCK]
        for c in range(channels):
            out[start:start + _FFT_BLOCK] += fftconvolve(x[None, :, :, c], block[:, ::-1, ::-1, c],
                                                         mode='valid', axes=(1, 2))
    return out


def correlate_adjoint(grad, weights, method=DIRECT):
    """
    Adjoint of correlate: full convolution of the output cotangent with the kernels
    @param  grad:       num_filters x out_height x out_width cotangent
    @type   grad:       numpy.ndarray
    @type   weights:    numpy.ndarray
    @return:    height x width x channels gradient
    @rtype:     numpy.ndarray
    """
    num_filters, h, w, channels = weights.shape
    if method == DIRECT:
        padded = np.pad(grad, ((0, 0), (h - 1, h - 1), (w - 1, w - 1)))
        windows = sliding_window_view(padded, (h, w), axis=(1, 2))
        return np.einsum('fpqab,fabc->pqc', windows, weights[:, ::-1, ::-1, :])

    out = np.zeros((grad.shape[1] + h - 1, grad.shape[2] + w - 1, channels))
    for start in range(0, num_filters, _FFT_BLOCK):
        block = grad[start:start + _FFT_BLOCK]
        for c in range(channels):
            out[:, :, c] += fftconvolve(block, weights[start:start + _FFT_BLOCK, :, :, c],
                                        mode='full', axes=(1, 2)).sum(axis=0)
    return out


def _check_extent(data, bank):
    bins, frames = data.shape[:2]
    if bins < bank.max_height or frames < bank.max_width:
        raise SignalTooShortError('RI input of {b} bins x {f} frames is smaller than the largest filter '
                                  '({h} x {w})'.format(b=bins, f=frames, h=bank.max_height, w=bank.max_width))


def _map_layers(func, layers, workers):
    if workers > 1 and len(layers) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, layers))

    return [func(layer) for layer in layers]


def forward(ri, bank, method=AUTO, workers=1):
    """
    Run every layer of the bank over an RI stack: valid correlation followed by a ReLU
    @type   ri:         texsynth.tfr.RIStack
    @type   bank:       texsynth.featurebank.FilterBank
    @param  method:     DIRECT (reference), FFT or AUTO
    @type   method:     str
    @param  workers:    Threads used for layer-level parallelism
    @type   workers:    int
    @rtype: FeatureMaps
    """
    data = ri.data
    _check_extent(data, bank)
    bins, frames = data.shape[:2]

    def run(layer):
        return np.maximum(correlate(data, layer.weights, _pick(method, layer, bins, frames)), 0.0)

    maps = FeatureMaps(_map_layers(run, bank.layers, workers))
    logging.getLogger('texsynth.featurebank').debug('Feature map shapes: %s', maps.shapes)
    return maps


def forward_adjoint(grad_maps, ri, bank, maps=None, method=AUTO, workers=1):
    """
    Vector-Jacobian product of forward, accumulated over every layer
    @param  grad_maps:  Per-layer cotangents shaped like the feature maps
    @type   grad_maps:  list of numpy.ndarray
    @type   ri:         texsynth.tfr.RIStack
    @type   bank:       texsynth.featurebank.FilterBank
    @param  maps:       Feature maps from the matching forward pass (recomputed when omitted)
    @type   maps:       FeatureMaps or None
    @rtype: numpy.ndarray
    """
    data = ri.data
    if maps is None:
        maps = forward(ri, bank, method, workers)

    grad_maps = list(grad_maps)
    if len(grad_maps) != len(bank) or any(g.shape != m.shape for g, m in zip(grad_maps, maps)):
        raise ShapeMismatchError('Feature map cotangent shapes {g} do not match {m}'
                                 .format(g=[np.shape(g) for g in grad_maps], m=maps.shapes))

    bins, frames = data.shape[:2]

    def run(args):
        layer, grad, activations = args
        # ReLU gate: the activation is positive exactly where the pre-activation is
        gated = np.where(activations > 0, grad, 0.0)
        return correlate_adjoint(gated, layer.weights, _pick(method, layer, bins, frames))

    grads = _map_layers(run, list(zip(bank.layers, grad_maps, maps)), workers)
    total = np.zeros_like(data)
    for grad in grads:
        total += grad
    return total
