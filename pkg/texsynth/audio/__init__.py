from .buffer import AudioBuffer
from .wav import read_wav, write_wav
from .dsp import resample, normalize_energy, crop, make_anchor
