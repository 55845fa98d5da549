import click
import logging
from texsynth.audio import crop, read_wav
from texsynth.cli import pass_context, deterministic_option, Context
from texsynth.common import parse_int_list
from texsynth.common.progress import Echo
from texsynth.errors import TexsynthError
from texsynth.generators import ParameterSummary
from texsynth.models import paramfile
from texsynth.synthesis import analyze_recording


@click.command('analyze', short_help='Extracts the texture parameters of a recording.')
@click.argument('source', type=click.Path(exists=True, dir_okay=False))
@click.argument('destination', type=click.Path(dir_okay=False, writable=True))
@click.option('-s', '--seed', type=int, help='Filter bank seed. (Default: [Network] Seed)')
@click.option('-f', '--filters', type=click.IntRange(1), help='Filters per layer. (Default: [Network] Filters)')
@click.option('-l', '--layers', help='Comma separated indices of the filter shapes to keep, e.g. "0,3,5".')
@click.option('--offset', type=float, default=0.0, help='Start of the analyzed segment in seconds. (Default: 0)')
@click.option('--length', type=float, help='Length of the analyzed segment in seconds. (Default: until the end)')
@deterministic_option
@pass_context
def cli(ctx, source, destination, seed, filters, layers, offset, length):
    """
    Analyzes a WAV recording and writes its texture parameters to a parameter file.
    """
    assert isinstance(ctx, Context)
    log = logging.getLogger('texsynth.analyze')

    try:
        layers = parse_int_list(layers) if layers else None
        bank = ctx.filter_bank(seed, filters, layers)

        p = Echo('Reading {s}...'.format(s=click.format_filename(source)))
        buf = read_wav(source)
        if offset or length:
            buf = crop(buf, offset, length)
        p.done()
        log.info('Read %.3fs of audio at %d Hz', buf.duration, buf.sample_rate)

        p = Echo('Analyzing {n} layers of {f} filters...'.format(n=len(bank), f=bank[0].num_filters))
        try:
            params = analyze_recording(buf, bank, ctx.stft_config(), method=ctx.conv_method, workers=ctx.workers,
                                       **ctx.analysis_settings())
        except TexsynthError:
            p.done(p.FAIL)
            raise
        p.done()

        paramfile.save(params, destination)
    except (TexsynthError, ValueError, OSError) as e:
        log.debug('Analysis failed', exc_info=True)
        click.secho(str(e), err=True, fg='red', bold=True)
        raise click.Abort

    click.echo(ParameterSummary(params, destination).template, nl=False)
