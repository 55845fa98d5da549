import io
import struct
import logging
import numpy as np
from texsynth.errors import ParamFileError, ParamFileVersionError
from texsynth.featurebank import FROBENIUS, FilterBank, Layer, ParameterSet
from texsynth.tfr import StftConfig

MAGIC = b'TXP1'
VERSION = 1

# Stored in place of the seed for banks that were not drawn from a seed
NO_SEED = -1

_HEADER = struct.Struct('<4sH')
_STFT = struct.Struct('<IIII')
_SETTINGS = struct.Struct('<ddB')
_UINT32 = struct.Struct('<I')
_UINT8 = struct.Struct('<B')
_INT64 = struct.Struct('<q')
_DIMS3 = struct.Struct('<III')
_DIMS4 = struct.Struct('<IIII')
_FLOAT = np.dtype('<f8')


class _Reader(object):
    def __init__(self, data):
        self.stream = io.BytesIO(data)

    def read(self, size):
        chunk = self.stream.read(size)
        if len(chunk) != size:
            raise ParamFileError('Parameter file is truncated')
        return chunk

    def unpack(self, fmt):
        return fmt.unpack(self.read(fmt.size))

    def array(self, shape):
        count = int(np.prod(shape))
        return np.frombuffer(self.read(count * _FLOAT.itemsize), dtype=_FLOAT).astype(np.float64).reshape(shape)

    def at_end(self):
        return not self.stream.read(1)


def dumps(params):
    """
    Serialize a parameter set, including its verbatim filter bank
    @type   params: texsynth.featurebank.ParameterSet
    @rtype: bytes
    """
    if params.bank is None or params.stft_config is None or params.scale is None:
        raise ParamFileError('Only parameter sets produced by an analysis can be serialized')

    cfg = params.stft_config
    tag = params.loss_norm.encode('ascii')
    out = io.BytesIO()
    out.write(_HEADER.pack(MAGIC, VERSION))
    out.write(_STFT.pack(cfg.window_length, cfg.hop, cfg.fft_size, cfg.sample_rate))
    out.write(_SETTINGS.pack(params.compression, params.scale, int(params.normalize_frames)))
    out.write(_UINT8.pack(len(tag)) + tag)
    out.write(_UINT32.pack(params.num_frames or 0))

    out.write(_INT64.pack(NO_SEED if params.bank.seed is None else params.bank.seed))
    out.write(_UINT32.pack(len(params.bank)))
    for layer in params.bank:
        out.write(_DIMS4.pack(*layer.weights.shape))
        out.write(layer.weights.astype(_FLOAT).tobytes())

    out.write(_UINT32.pack(len(params)))
    for h in params:
        out.write(_DIMS3.pack(*h.shape))
        out.write(h.astype(_FLOAT).tobytes())

    return out.getvalue()


def loads(data):
    """
    Deserialize a parameter set
    @type   data:   bytes
    @rtype: texsynth.featurebank.ParameterSet
    @raise  ParamFileError:         Not a parameter file, a truncated one or an unknown loss norm
    @raise  ParamFileVersionError:  Written by an incompatible format version
    """
    reader = _Reader(data)
    magic, version = reader.unpack(_HEADER)
    if magic != MAGIC:
        raise ParamFileError('Not a texture parameter file (bad magic {m!r})'.format(m=magic))
    if version != VERSION:
        raise ParamFileVersionError('Parameter file version {v} is not supported (expected {e})'
                                    .format(v=version, e=VERSION))

    cfg = StftConfig(*reader.unpack(_STFT))
    compression, scale, normalize = reader.unpack(_SETTINGS)
    tag = reader.read(reader.unpack(_UINT8)[0])
    if tag != FROBENIUS.encode('ascii'):
        raise ParamFileError('Unsupported loss norm {t!r} (expected {e!r})'.format(t=tag, e=FROBENIUS))
    tag = FROBENIUS
    num_frames = reader.unpack(_UINT32)[0]

    seed = reader.unpack(_INT64)[0]
    layers = [Layer(reader.array(reader.unpack(_DIMS4))) for __ in range(reader.unpack(_UINT32)[0])]
    grams = [reader.array(reader.unpack(_DIMS3)) for __ in range(reader.unpack(_UINT32)[0])]
    if not reader.at_end():
        raise ParamFileError('Unexpected trailing data in parameter file')

    bank = FilterBank(layers, None if seed == NO_SEED else seed)
    return ParameterSet(grams, bool(normalize), bank=bank, stft_config=cfg, compression=compression, scale=scale,
                        num_frames=num_frames or None, loss_norm=tag)


def save(params, path):
    """
    @type   params: texsynth.featurebank.ParameterSet
    @type   path:   str
    """
    data = dumps(params)
    with open(path, 'wb') as f:
        f.write(data)
    logging.getLogger('texsynth.paramfile').info('Wrote %d bytes of parameters to %s', len(data), path)


def load(path):
    """
    @type   path:   str
    @rtype: texsynth.featurebank.ParameterSet
    """
    with open(path, 'rb') as f:
        data = f.read()
    logging.getLogger('texsynth.paramfile').debug('Read %d bytes of parameters from %s', len(data), path)
    return loads(data)
