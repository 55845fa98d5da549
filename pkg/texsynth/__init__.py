__author__     = "Makoto Fujimoto"
__copyright__  = 'Copyright 2020, Makoto Fujimoto'
__license__    = "MIT"
__version__    = "0.1.0"
__maintainer__ = "Makoto Fujimoto"
