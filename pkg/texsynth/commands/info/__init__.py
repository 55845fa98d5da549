import click
from texsynth.cli import pass_context, Context
from texsynth.errors import ParamFileError
from texsynth.generators import ParameterSummary
from texsynth.models import paramfile


@click.command('info', short_help='Displays the header of a parameter file.')
@click.argument('params_path', metavar='PARAMS', type=click.Path(exists=True, dir_okay=False))
@pass_context
def cli(ctx, params_path):
    """
    Displays the settings, filter bank and Gram tensor sizes stored in a parameter file.
    """
    assert isinstance(ctx, Context)
    try:
        params = paramfile.load(params_path)
    except ParamFileError as e:
        click.secho(str(e), err=True, fg='red', bold=True)
        raise click.Abort

    click.echo('Format version: {v}'.format(v=paramfile.VERSION))
    click.echo(ParameterSummary(params, params_path).template, nl=False)
