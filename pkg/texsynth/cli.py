import os
import click
import logging
import pkgutil
import importlib
from texsynth import __version__
from texsynth.common import config, parse_shapes
from texsynth.featurebank import init_bank, select_layers
from texsynth.optimizers import LbfgsOptions
from texsynth.tfr import OWN_MAX, StftConfig

CONTEXT_SETTINGS = dict(auto_envvar_prefix='TEXSYNTH', max_content_width=100)


class Context(object):
    """
    CLI Context
    """
    def __init__(self):
        self.config = config()
        self.config_path = None
        self.log = None
        self.deterministic = False
        self.basedir = os.path.join(os.path.dirname(os.path.realpath(__file__)))

    def load_config(self, path):
        """
        (Re-)load the configuration file on top of the packaged defaults
        """
        self.config_path = path
        self.config = config(path)

    @property
    def workers(self):
        """
        Threads available to a single objective evaluation
        @rtype: int
        """
        if self.deterministic:
            return 1
        return os.cpu_count() or 1

    def stft_config(self):
        """
        @rtype: texsynth.tfr.StftConfig
        """
        section = 'Analysis'
        return StftConfig(self.config.getint(section, 'WindowLength'), self.config.getint(section, 'Hop'),
                          self.config.getint(section, 'FftSize'), self.config.getint(section, 'SampleRate'))

    def analysis_settings(self):
        """
        Keyword arguments shared by every analysis of a recording
        @rtype: dict
        """
        section = 'Analysis'
        return {
            'compression': self.config.getfloat(section, 'Compression'),
            'normalize_frames': self.config.getboolean(section, 'NormalizeFrames'),
            'target_variance': self.config.getfloat(section, 'TargetVariance'),
        }

    @property
    def scale_mode(self):
        """
        Spectrogram normalizer applied to synthesis candidates
        @return:    None for the analyzed original's fixed scale, or OWN_MAX
        @rtype:     str or None
        """
        mode = self.config.get('Analysis', 'ScaleMode').strip().lower()
        if mode not in ('fixed', OWN_MAX):
            raise click.BadParameter('Unknown ScaleMode: {m}'.format(m=mode))
        return OWN_MAX if mode == OWN_MAX else None

    def filter_bank(self, seed=None, filters=None, layers=None):
        """
        Draw the configured filter bank
        @param  seed:       Overrides [Network] Seed
        @type   seed:       int or None
        @param  filters:    Overrides [Network] Filters
        @type   filters:    int or None
        @param  layers:     Indices of the configured shapes to keep
        @type   layers:     list of int or None
        @rtype: texsynth.featurebank.FilterBank
        """
        section = 'Network'
        bank = init_bank(self.config.getint(section, 'Seed') if seed is None else seed,
                         self.config.getint(section, 'Filters') if filters is None else filters,
                         parse_shapes(self.config.get(section, 'Shapes')),
                         self.config.getfloat(section, 'WeightBound'))
        return select_layers(bank, layers) if layers else bank

    @property
    def conv_method(self):
        return self.config.get('Network', 'ConvMethod')

    def lbfgs_options(self, iterations=None):
        """
        @param  iterations: Overrides [Synthesis] Iterations
        @type   iterations: int or None
        @rtype: texsynth.optimizers.LbfgsOptions
        """
        section = 'Synthesis'
        return LbfgsOptions(memory=self.config.getint(section, 'Memory'),
                            max_iterations=self.config.getint(section, 'Iterations') if iterations is None
                            else iterations,
                            gradient_tolerance=self.config.getfloat(section, 'GradientTolerance'),
                            wolfe_c1=self.config.getfloat(section, 'WolfeC1'),
                            wolfe_c2=self.config.getfloat(section, 'WolfeC2'),
                            max_line_search_steps=self.config.getint(section, 'MaxLineSearchSteps'))


# noinspection PyAbstractClass
class TexsynthCLI(click.MultiCommand):
    """
    Sound Texture Synthesis Commandline Interface
    """
    def list_commands(self, ctx):
        """
        List CLI commands
        @type   ctx:    Context
        @rtype: list
        """
        commands_path = os.path.join(os.path.dirname(os.path.realpath(__file__)), 'commands')
        command_list = [name for __, name, ispkg in pkgutil.iter_modules([commands_path]) if ispkg]
        command_list.sort()
        return command_list

    def get_command(self, ctx, name):
        """
        Get a bound command method
        @type   ctx:    Context
        @param  name:   Command name
        @type   name:   str
        @rtype: object
        """
        try:
            mod = importlib.import_module('texsynth.commands.{name}'.format(name=name))
            return mod.cli
        except (ImportError, AttributeError):
            return


pass_context = click.make_pass_decorator(Context, ensure=True)


def _enable_deterministic(click_ctx, param, value):
    if value:
        click_ctx.ensure_object(Context).deterministic = True
    return value


deterministic_option = click.option('--deterministic', is_flag=True, expose_value=False,
                                    callback=_enable_deterministic,
                                    help='Force the single-threaded reference mode (bit-reproducible results).')


@click.command(cls=TexsynthCLI, context_settings=CONTEXT_SETTINGS)
@click.option('-v', '--verbose', count=True, default=1,
              help='-v|vv|vvv Increase the verbosity of messages: 1 for normal output, 2 for more verbose output and '
                   '3 for debug')
@click.option('-c', '--config', type=click.Path(dir_okay=False, resolve_path=True),
              envvar='TEXSYNTH_CONFIG_PATH', default='/etc/texsynth/texsynth.conf',
              help='Path to the texsynth configuration file')
@click.version_option(__version__)
@pass_context
def cli(ctx, verbose, config):
    """
    Sound texture analysis and re-synthesis
    """
    assert isinstance(ctx, Context)
    # Set up the logger
    verbose = verbose if (verbose <= 3) else 3
    log_levels = {1: logging.WARN, 2: logging.INFO, 3: logging.DEBUG}
    log_level = log_levels[verbose]

    ctx.log = logging.getLogger('texsynth')
    ctx.log.setLevel(log_level)
    ctx.log.handlers = []

    # Console logger
    console_format = logging.Formatter("[%(levelname)s] %(name)s: %(message)s")
    ch = logging.StreamHandler()
    ch.setLevel(log_level)
    ch.setFormatter(console_format)
    ctx.log.addHandler(ch)

    # Load the configuration
    if os.path.isfile(config):
        ctx.log.debug('Loading configuration: %s', config)
        ctx.load_config(config)
    else:
        ctx.log.debug('Loading default configuration')

    # File logger
    log_dir = ctx.config.get('Paths', 'Log', fallback='')
    if log_dir:
        file_format = logging.Formatter("[%(asctime)s] [%(levelname)s] %(name)s: %(message)s")
        file_logger = logging.FileHandler(os.path.join(log_dir, 'texsynth.log'))
        file_logger.setLevel(log_level)
        file_logger.setFormatter(file_format)
        ctx.log.addHandler(file_logger)
