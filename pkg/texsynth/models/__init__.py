from . import paramfile
