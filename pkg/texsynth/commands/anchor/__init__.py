import click
import logging
from texsynth.audio import crop, make_anchor, read_wav, write_wav
from texsynth.cli import pass_context, Context
from texsynth.errors import TexsynthError


@click.command('anchor', short_help='Creates a spectrally matched noise anchor.')
@click.argument('source', type=click.Path(exists=True, dir_okay=False))
@click.argument('destination', type=click.Path(dir_okay=False, writable=True))
@click.option('-s', '--seed', type=int, default=0, help='Noise seed. (Default: 0)')
@click.option('--offset', type=float, default=0.0, help='Start of the reference segment in seconds. (Default: 0)')
@click.option('--length', type=float, help='Length of the reference segment in seconds. (Default: until the end)')
@pass_context
def cli(ctx, source, destination, seed, offset, length):
    """
    Filters white noise to the magnitude spectrum of a reference recording.
    """
    assert isinstance(ctx, Context)
    log = logging.getLogger('texsynth.anchor')

    try:
        reference = read_wav(source)
        if offset or length:
            reference = crop(reference, offset, length)
        anchor = make_anchor(reference, seed)
        write_wav(anchor, destination)
    except (TexsynthError, ValueError, OSError) as e:
        log.debug('Anchor generation failed', exc_info=True)
        click.secho(str(e), err=True, fg='red', bold=True)
        raise click.Abort

    log.info('Anchor RMS %.6g (reference %.6g)', anchor.rms, reference.rms)
    click.echo('Wrote {d:.3f}s anchor to {p}'.format(d=anchor.duration, p=click.format_filename(destination)))
