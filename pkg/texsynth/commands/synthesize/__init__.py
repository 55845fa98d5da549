import os
import click
import logging
import numpy as np
from texsynth.audio import read_wav, write_wav
from texsynth.cli import pass_context, deterministic_option, Context
from texsynth.common import parse_int_list
from texsynth.common.progress import Echo, ProgressBar
from texsynth.errors import TexsynthError
from texsynth.models import paramfile
from texsynth.optimizers import LINE_SEARCH_FAILED
from texsynth.synthesis import SynthConfig, Synthesizer, analyze_recording, write_trace


def load_source(ctx, source, seed, filters, layers):
    """
    Load a parameter file, or analyze a WAV recording the same way the analyze command does
    @type   ctx:    Context
    @type   source: str
    @rtype: texsynth.featurebank.ParameterSet
    """
    with open(source, 'rb') as f:
        is_params = f.read(len(paramfile.MAGIC)) == paramfile.MAGIC

    if is_params:
        if filters or layers:
            ctx.log.warning('Filter bank options are ignored for parameter files')
        return paramfile.load(source)

    bank = ctx.filter_bank(seed, filters, parse_int_list(layers) if layers else None)
    return analyze_recording(read_wav(source), bank, ctx.stft_config(), method=ctx.conv_method,
                             workers=ctx.workers, **ctx.analysis_settings())


@click.command('synthesize', short_help='Synthesizes a new texture from parameters or a recording.')
@click.argument('source', type=click.Path(exists=True, dir_okay=False))
@click.argument('destination', type=click.Path(dir_okay=False, writable=True))
@click.option('-s', '--seed', type=int,
              help='Seed of the base noise signal and, for WAV sources, of the filter bank. '
                   '(Default: [Network] Seed)')
@click.option('-i', '--iterations', type=click.IntRange(0), help='L-BFGS iterations. (Default: [Synthesis] Iterations)')
@click.option('-d', '--duration', type=float, help='Output duration in seconds. (Default: the original\'s duration)')
@click.option('-f', '--filters', type=click.IntRange(1), help='Filters per layer when analyzing a WAV recording.')
@click.option('-l', '--layers', help='Filter shape indices to keep when analyzing a WAV recording.')
@click.option('-t', '--trace', type=click.Path(dir_okay=False, writable=True),
              help='Per-iteration trace CSV. (Default: <destination>.csv)')
@click.option('--init-rms', type=float, help='RMS of the base noise signal. (Default: the original\'s RMS)')
@deterministic_option
@pass_context
def cli(ctx, source, destination, seed, iterations, duration, filters, layers, trace, init_rms):
    """
    Imposes the texture parameters of SOURCE (a parameter file or a WAV recording) onto Gaussian noise and writes
    the result to DESTINATION.
    """
    assert isinstance(ctx, Context)
    log = logging.getLogger('texsynth.synthesize')
    trace = trace or '{base}.csv'.format(base=os.path.splitext(destination)[0])

    try:
        p = Echo('Loading texture parameters...')
        try:
            params = load_source(ctx, source, seed, filters, layers)
        except TexsynthError:
            p.done(p.FAIL)
            raise
        p.done()

        lbfgs = ctx.lbfgs_options(iterations)
        seed = ctx.config.getint('Network', 'Seed') if seed is None else seed
        config = SynthConfig(duration=duration, iterations=lbfgs.max_iterations,
                             init_rms=init_rms or np.sqrt(ctx.analysis_settings()['target_variance']),
                             seed=seed, lbfgs=lbfgs, peak_level=ctx.config.getfloat('Synthesis', 'PeakLevel'))
        synthesizer = Synthesizer(params, config, ctx.conv_method, ctx.workers, ctx.scale_mode)
        log.info('Imposing %d Gram tensors onto %d samples', len(params), synthesizer.num_samples)

        progress = None
        if config.iterations:
            progress = ProgressBar(config.iterations, 'Synthesizing')

        def callback(record):
            if progress is not None:
                progress.update(min(record.iteration, config.iterations), loss=record.loss)

        run = synthesizer.run(callback)
        if progress is not None:
            progress.finish()

        p = Echo('Writing {d}...'.format(d=click.format_filename(destination)))
        try:
            write_wav(run.output, destination)
            write_trace(run.trace, trace)
        except (TexsynthError, OSError):
            p.done(p.FAIL)
            raise
        p.done(p.WARN if run.trace.status == LINE_SEARCH_FAILED else p.OK)
        log.info('Trace written to %s', trace)
    except (TexsynthError, ValueError, OSError) as e:
        log.debug('Synthesis failed', exc_info=True)
        click.secho(str(e), err=True, fg='red', bold=True)
        raise click.Abort

    if run.trace.status == LINE_SEARCH_FAILED:
        click.secho('Line search failed after {i} iterations ({m}); the best signal found was written'
                    .format(i=run.trace.iterations, m=run.trace.message), err=True, fg='yellow', bold=True)

    click.echo('Loss {a:.6f} -> {b:.6f} after {i} iterations ({e} evaluations)'
               .format(a=run.initial_loss, b=run.final_loss, i=run.trace.iterations, e=run.trace.fevals))
    click.echo('Wrote {d:.3f}s of audio to {p}'.format(d=run.output.duration, p=click.format_filename(destination)))
