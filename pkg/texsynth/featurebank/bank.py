import logging
import numpy as np
from texsynth.common import generator

# (frequency, time) extents of the eight single-layer networks
DEFAULT_SHAPES = [(101, 2), (53, 3), (11, 5), (3, 3), (5, 5), (11, 11), (19, 19), (27, 27)]
DEFAULT_FILTERS = 128
WEIGHT_BOUND = 0.05
CHANNELS = 2


class Layer(object):
    """
    Untrained convolutional layer: num_filters x height x width x channels weights, no bias
    """
    def __init__(self, weights):
        """
        @type   weights:    numpy.ndarray
        """
        self.weights = np.asarray(weights, dtype=np.float64)
        if self.weights.ndim != 4:
            raise ValueError('Layer weights must be 4-dimensional, got shape {s}'.format(s=self.weights.shape))

    def __repr__(self):
        return '<Layer {f} filters of {h}x{w}>'.format(f=self.num_filters, h=self.height, w=self.width)

    @property
    def num_filters(self):
        return self.weights.shape[0]

    @property
    def height(self):
        return self.weights.shape[1]

    @property
    def width(self):
        return self.weights.shape[2]

    @property
    def shape(self):
        return self.height, self.width

    def output_shape(self, bins, frames):
        """
        Valid correlation output extent for a bins x frames input
        @rtype: tuple
        """
        return bins - self.height + 1, frames - self.width + 1


class FilterBank(object):
    """
    Ordered set of independent single-layer networks
    """
    def __init__(self, layers, seed=None):
        """
        @type   layers: list of Layer
        @param  seed:   Seed the weights were drawn with (informational)
        @type   seed:   int or None
        """
        self.layers = list(layers)
        self.seed = seed

    def __len__(self):
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def __getitem__(self, item):
        return self.layers[item]

    def __repr__(self):
        return '<FilterBank seed={s} layers={l}>'.format(s=self.seed, l=[layer.shape for layer in self.layers])

    @property
    def shapes(self):
        return [layer.shape for layer in self.layers]

    @property
    def max_height(self):
        return max(layer.height for layer in self.layers)

    @property
    def max_width(self):
        return max(layer.width for layer in self.layers)


def init_bank(seed=0, num_filters=DEFAULT_FILTERS, shapes=None, bound=WEIGHT_BOUND):
    """
    Draw a filter bank with i.i.d. uniform weights from a Philox generator
    @type   seed:           int
    @type   num_filters:    int
    @param  shapes:         (frequency, time) filter extents, one layer each
    @type   shapes:         list of tuple or None
    @param  bound:          Weights are drawn from [-bound, bound)
    @type   bound:          float
    @rtype: FilterBank
    """
    shapes = DEFAULT_SHAPES if shapes is None else shapes
    if num_filters < 1:
        raise ValueError('A layer needs at least one filter')

    rng = generator(seed)
    layers = [Layer(rng.uniform(-bound, bound, size=(num_filters, h, w, CHANNELS))) for h, w in shapes]
    logging.getLogger('texsynth.featurebank').info('Initialized %d layers of %d filters (seed %d)',
                                                   len(layers), num_filters, seed)
    return FilterBank(layers, seed)


def select_layers(bank, indices):
    """
    Sub-bank holding the requested layers, in the requested order
    @type   bank:       FilterBank
    @type   indices:    list of int
    @rtype: FilterBank
    """
    if not indices or any(i < 0 or i >= len(bank) for i in indices):
        raise ValueError('Layer indices {i} out of range; the bank has {n} layers'.format(i=indices, n=len(bank)))

    return FilterBank([bank.layers[i] for i in indices], bank.seed)
