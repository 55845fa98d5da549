import click
from texsynth.cli import pass_context, Context
from texsynth.common import parse_int_list, styled_status
from texsynth.generators import GradcheckReport
from texsynth.gradcheck import run_checks, DEFAULT_TOLERANCE


@click.command('gradcheck', short_help='Verifies the analytic gradients against finite differences.')
@click.option('-s', '--seed', type=int, default=0, help='Seed of the random test instances. (Default: 0)')
@click.option('-f', '--filters', type=click.IntRange(1), default=8,
              help='Filters per layer of the end-to-end bank. (Default: 8)')
@click.option('-l', '--layers', default='0,1', help='Filter shape indices of the end-to-end bank. (Default: 0,1)')
@click.option('-d', '--duration', type=float, default=0.25, help='End-to-end signal length in seconds. (Default: 0.25)')
@click.option('--coordinates', type=click.IntRange(1), default=20,
              help='Sample coordinates checked end-to-end. (Default: 20)')
@click.option('--tolerance', type=float, default=DEFAULT_TOLERANCE,
              help='Largest accepted relative error. (Default: {t})'.format(t=DEFAULT_TOLERANCE))
@pass_context
def cli(ctx, seed, filters, layers, duration, coordinates, tolerance):
    """
    Runs stage-wise and end-to-end finite-difference gradient checks on small random instances.
    """
    assert isinstance(ctx, Context)
    try:
        layers = tuple(parse_int_list(layers))
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--layers')

    results = run_checks(seed, filters, layers, duration, coordinates, tolerance)
    click.echo(GradcheckReport(results, seed).template, nl=False)

    passed = all(r.passed for r in results)
    ctx.log.info('Gradient checks: %s', click.unstyle(styled_status(passed)))
    if not passed:
        click.get_current_context().exit(1)
