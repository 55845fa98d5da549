import numpy as np
from texsynth.errors import ShapeMismatchError

# Only loss-norm convention currently implemented: Frobenius norm over the full (i, j, m) tensor
FROBENIUS = 'frobenius'


class ParameterSet(object):
    """
    Per-layer Gram tensors (num_filters x num_filters x out_height) and the analysis settings behind them
    """
    def __init__(self, grams, normalize_frames=True, bank=None, stft_config=None, compression=None, scale=None,
                 num_frames=None, loss_norm=FROBENIUS):
        """
        @type   grams:              list of numpy.ndarray
        @param  normalize_frames:   Whether the time sums were divided by the map width
        @type   normalize_frames:   bool
        @type   bank:               texsynth.featurebank.FilterBank or None
        @type   stft_config:        texsynth.tfr.StftConfig or None
        @type   compression:        float or None
        @param  scale:              Spectrogram normalizer used during analysis
        @type   scale:              float or None
        @param  num_frames:         STFT frame count of the analyzed signal
        @type   num_frames:         int or None
        @type   loss_norm:          str
        """
        self.grams = [np.asarray(g, dtype=np.float64) for g in grams]
        self.normalize_frames = bool(normalize_frames)
        self.bank = bank
        self.stft_config = stft_config
        self.compression = compression
        self.scale = scale
        self.num_frames = num_frames
        self.loss_norm = loss_norm

    def __len__(self):
        return len(self.grams)

    def __iter__(self):
        return iter(self.grams)

    def __getitem__(self, item):
        return self.grams[item]

    @property
    def shapes(self):
        return [g.shape for g in self.grams]


def gram(maps, normalize_frames=True):
    """
    Time-summed filter cross-correlations: H[i, j, m] = sum_n F[i, m, n] F[j, m, n]
    @type   maps:               texsynth.featurebank.FeatureMaps
    @param  normalize_frames:   Divide by the map width so signals of different durations compare
    @type   normalize_frames:   bool
    @rtype: ParameterSet
    """
    grams = []
    for fmap in maps:
        by_position = fmap.transpose(1, 0, 2)
        h = np.matmul(by_position, by_position.transpose(0, 2, 1)).transpose(1, 2, 0)
        h = 0.5 * (h + h.transpose(1, 0, 2))
        if normalize_frames:
            h /= fmap.shape[2]
        grams.append(h)

    return ParameterSet(grams, normalize_frames)


def gram_adjoint(grad_h, maps, normalize_frames=True):
    """
    Vector-Jacobian product of gram: dF[i, m, n] = sum_j (G[i, j, m] + G[j, i, m]) F[j, m, n]
    @param  grad_h:     Per-layer cotangents shaped like the Gram tensors
    @type   grad_h:     list of numpy.ndarray
    @type   maps:       texsynth.featurebank.FeatureMaps
    @type   normalize_frames:   bool
    @rtype: list of numpy.ndarray
    """
    grad_h = list(grad_h)
    if len(grad_h) != len(maps):
        raise ShapeMismatchError('Got {g} Gram cotangents for {m} layers'.format(g=len(grad_h), m=len(maps)))

    grads = []
    for g, fmap in zip(grad_h, maps):
        num_filters, height, width = fmap.shape
        if np.shape(g) != (num_filters, num_filters, height):
            raise ShapeMismatchError('Gram cotangent has shape {s}, expected {e}'
                                     .format(s=np.shape(g), e=(num_filters, num_filters, height)))

        sym = (g + g.transpose(1, 0, 2)).transpose(2, 0, 1)
        df = np.matmul(sym, fmap.transpose(1, 0, 2)).transpose(1, 0, 2)
        if normalize_frames:
            df /= width
        grads.append(df)

    return grads
