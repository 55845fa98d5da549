import struct
import numpy as np
import pytest
from numpy.testing import assert_array_equal
from texsynth.errors import ParamFileError, ParamFileVersionError
from texsynth.featurebank import DIRECT, FROBENIUS, FilterBank
from texsynth.models import paramfile
from texsynth.objective import TextureObjective, analyze


@pytest.fixture
def params(texture, small_bank, stft_config):
    return analyze(texture, small_bank, stft_config, method=DIRECT)


def test_header(params):
    data = paramfile.dumps(params)
    assert data[:4] == b'TXP1'
    assert struct.unpack('<H', data[4:6])[0] == paramfile.VERSION == 1
    assert struct.unpack('<IIII', data[6:22]) == (512, 256, 512, 16000)


def test_round_trip_is_byte_identical(params):
    data = paramfile.dumps(params)
    assert paramfile.dumps(paramfile.loads(data)) == data


def test_round_trip_restores_everything(params):
    restored = paramfile.loads(paramfile.dumps(params))
    assert restored.stft_config == params.stft_config
    assert restored.compression == params.compression
    assert restored.scale == params.scale
    assert restored.normalize_frames is True
    assert restored.loss_norm == FROBENIUS
    assert restored.num_frames == params.num_frames
    assert restored.bank.seed == 0
    assert restored.bank.shapes == params.bank.shapes
    for a, b in zip(restored.bank, params.bank):
        assert_array_equal(a.weights, b.weights)
    for a, b in zip(restored, params):
        assert_array_equal(a, b)


def test_file_reproduces_the_objective(params, pink):
    candidate = pink(0.25, seed=4)
    restored = paramfile.loads(paramfile.dumps(params))
    original = TextureObjective(params, method=DIRECT).loss_and_gradient(candidate)
    reloaded = TextureObjective(restored, method=DIRECT).loss_and_gradient(candidate)
    assert original[0] == reloaded[0]
    assert_array_equal(original[1], reloaded[1])


def test_unseeded_bank(params):
    params.bank = FilterBank(params.bank.layers, None)
    data = paramfile.dumps(params)
    assert paramfile.loads(data).bank.seed is None
    assert paramfile.dumps(paramfile.loads(data)) == data


def test_save_and_load(params, tmp_path):
    path = str(tmp_path / 'texture.txp')
    paramfile.save(params, path)
    with open(path, 'rb') as f:
        assert f.read() == paramfile.dumps(params)
    assert paramfile.load(path).shapes == params.shapes


def test_bad_magic(params):
    data = paramfile.dumps(params)
    with pytest.raises(ParamFileError):
        paramfile.loads(b'RIFF' + data[4:])


def test_version_mismatch(params):
    data = paramfile.dumps(params)
    with pytest.raises(ParamFileVersionError):
        paramfile.loads(data[:4] + struct.pack('<H', 2) + data[6:])


@pytest.mark.parametrize('cut', [3, 30, -1])
def test_truncated(params, cut):
    data = paramfile.dumps(params)
    with pytest.raises(ParamFileError):
        paramfile.loads(data[:cut])


def test_trailing_data(params):
    with pytest.raises(ParamFileError):
        paramfile.loads(paramfile.dumps(params) + b'\x00')


def test_unanalyzed_parameters(params):
    params.scale = None
    with pytest.raises(ParamFileError):
        paramfile.dumps(params)


def test_unknown_loss_norm(params):
    data = paramfile.dumps(params)
    assert data[39:49] == b'\x09frobenius'
    with pytest.raises(ParamFileError, match='loss norm'):
        paramfile.loads(data[:40] + b'spectral1' + data[49:])
