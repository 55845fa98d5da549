import os
import re
import click
import logging
import numpy as np
from configparser import ConfigParser
import texsynth

_SHAPE_PATTERN = re.compile(r'^\s*(\d+)\s*[xX]\s*(\d+)\s*$')


def config(path=None):
    """
    Load system configuration
    @param  path:   Optional configuration file read on top of the packaged defaults
    @type   path:   str or None
    @rtype: ConfigParser
    """
    cfg = ConfigParser()
    cfg.read(os.path.join(os.path.dirname(os.path.realpath(texsynth.__file__)), 'config', 'texsynth.conf'))
    if path:
        logging.getLogger('texsynth.common.config').debug('Reading configuration overrides: %s', path)
        cfg.read(path)

    return cfg


def parse_shapes(value):
    """
    Parse a filter shape list such as "101x2,53x3"
    @type   value:  str
    @return:    List of (height, width) tuples
    @rtype:     list of tuple
    """
    shapes = []
    for item in str(value).split(','):
        if not item.strip():
            continue
        match = _SHAPE_PATTERN.match(item)
        if not match:
            raise ValueError('Invalid filter shape: {s}'.format(s=item.strip()))
        shape = (int(match.group(1)), int(match.group(2)))
        if min(shape) < 1:
            raise ValueError('Filter dimensions must be positive: {s}'.format(s=item.strip()))
        shapes.append(shape)

    if not shapes:
        raise ValueError('No filter shapes provided')

    return shapes


def unparse_shapes(shapes):
    """
    Return the textual representation of a shape list
    @type   shapes: list of tuple
    @rtype: str
    """
    return ','.join('{h}x{w}'.format(h=h, w=w) for h, w in shapes)


def parse_int_list(value):
    """
    Parse a comma separated list of integers ("0,3,5")
    @type   value:  str
    @rtype: list of int
    """
    try:
        return [int(item) for item in str(value).split(',') if item.strip()]
    except ValueError:
        raise ValueError('Invalid integer list: {v}'.format(v=value))


def styled_status(passed, bold=True):
    """
    Generate a styled pass / fail string
    @param  passed: Pass / Fail boolean
    @type   passed: bool
    @type   bold:   bool
    @rtype: str
    """
    return click.style('PASS' if passed else 'FAIL', 'green' if passed else 'red', bold=bold)


def generator(seed):
    """
    Seeded random generator backed by the counter-based Philox bit generator
    @type   seed:   int
    @rtype: numpy.random.Generator
    """
    return np.random.Generator(np.random.Philox(int(seed)))
