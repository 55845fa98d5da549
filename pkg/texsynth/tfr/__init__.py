from .stft import StftConfig, ComplexSpectrogram, stft, istft, stft_adjoint
from .compression import RIStack, OWN_MAX, DEFAULT_COMPRESSION, compress_ri, compress_ri_adjoint, resolve_scale
