import numpy as np
import pytest
from scipy.io import wavfile
from scipy.signal import lfilter
from texsynth.audio import AudioBuffer
from texsynth.common import generator
from texsynth.featurebank import init_bank
from texsynth.tfr import StftConfig

RATE = 16000


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='Run desk-scale synthesis tests')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: desk-scale runs taking minutes')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


def pink_noise(seconds, seed=0, rate=RATE):
    """
    Approximately 1/f noise from a third order IIR filter, variance 0.01
    """
    white = generator(seed).standard_normal(int(round(seconds * rate)))
    b = [0.049922035, -0.095993537, 0.050612699, -0.004408786]
    a = [1, -2.494956002, 2.017265875, -0.522189400]
    pink = lfilter(b, a, white)
    pink -= pink.mean()
    return AudioBuffer(pink * (0.1 / pink.std()), rate)


@pytest.fixture
def rng():
    return generator(1234)


@pytest.fixture
def stft_config():
    return StftConfig()


@pytest.fixture
def small_bank():
    """Two narrow layers with four filters each"""
    return init_bank(0, num_filters=4, shapes=[(11, 2), (5, 3)])


@pytest.fixture
def texture():
    """A quarter second of pink noise"""
    return pink_noise(0.25, seed=1)


@pytest.fixture
def texture_wav(tmp_path):
    """Write 0.6 s of pink noise as a PCM16 WAV at 16 kHz"""
    path = tmp_path / 'texture.wav'
    samples = pink_noise(0.6, seed=2).samples
    wavfile.write(str(path), RATE, np.round(samples * 32767).astype(np.int16))
    return str(path)


@pytest.fixture
def pink():
    return pink_noise
