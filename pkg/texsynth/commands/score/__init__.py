import click
import logging
from texsynth.audio import crop, read_wav
from texsynth.cli import pass_context, deterministic_option, Context
from texsynth.errors import TexsynthError
from texsynth.generators import ScoreReport
from texsynth.models import paramfile
from texsynth.objective import score
from texsynth.synthesis import prepare


@click.command('score', short_help='Computes the texture loss of a recording against a parameter file.')
@click.argument('params_path', metavar='PARAMS', type=click.Path(exists=True, dir_okay=False))
@click.argument('candidate', type=click.Path(exists=True, dir_okay=False))
@click.option('--offset', type=float, default=0.0, help='Start of the scored segment in seconds. (Default: 0)')
@click.option('--length', type=float, help='Length of the scored segment in seconds. (Default: until the end)')
@deterministic_option
@pass_context
def cli(ctx, params_path, candidate, offset, length):
    """
    Scores CANDIDATE against the texture parameters stored in PARAMS. The candidate is resampled and
    energy-normalized the same way an analyzed original is.
    """
    assert isinstance(ctx, Context)
    log = logging.getLogger('texsynth.score')

    try:
        params = paramfile.load(params_path)
        buf = read_wav(candidate)
        if offset or length:
            buf = crop(buf, offset, length)
        buf = prepare(buf, params.stft_config.sample_rate, ctx.analysis_settings()['target_variance'])
        losses = score(buf, params, ctx.conv_method, ctx.workers)
    except (TexsynthError, ValueError, OSError) as e:
        log.debug('Scoring failed', exc_info=True)
        click.secho(str(e), err=True, fg='red', bold=True)
        raise click.Abort

    click.echo(ScoreReport(losses, params.bank.shapes, click.format_filename(candidate)).template, nl=False)
