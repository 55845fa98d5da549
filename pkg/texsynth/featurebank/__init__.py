from .bank import Layer, FilterBank, init_bank, select_layers, DEFAULT_SHAPES, DEFAULT_FILTERS, WEIGHT_BOUND
from .conv import FeatureMaps, forward, forward_adjoint, DIRECT, FFT, AUTO
from .gram import ParameterSet, gram, gram_adjoint, FROBENIUS
