import csv
import os
import pytest
from click.testing import CliRunner
from texsynth.audio import read_wav
from texsynth.cli import cli
from texsynth.common.progress import Echo
from texsynth.synthesis import TRACE_COLUMNS
import texsynth.gradcheck.checks

BANK = ['--seed', '3', '--filters', '2', '--layers', '0,1']


@pytest.fixture
def runner(tmp_path):
    return CliRunner(env={'TEXSYNTH_CONFIG_PATH': str(tmp_path / 'missing.conf')})


@pytest.fixture
def params_file(runner, texture_wav, tmp_path):
    path = str(tmp_path / 'texture.txp')
    result = runner.invoke(cli, ['analyze', texture_wav, path] + BANK)
    assert result.exit_code == 0, result.output
    return path


def test_commands():
    assert cli.list_commands(None) == ['analyze', 'anchor', 'gradcheck', 'info', 'score', 'synthesize']


def test_unknown_command(runner):
    assert runner.invoke(cli, ['render']).exit_code != 0


class TestAnalyze:

    def test_summary(self, params_file, runner):
        result = runner.invoke(cli, ['info', params_file])
        assert result.exit_code == 0, result.output
        assert 'Format version: 1' in result.output
        assert 'Filter bank seed: 3' in result.output
        assert 'Filter shapes: 101x2,53x3' in result.output

    def test_reproducible(self, runner, texture_wav, tmp_path):
        paths = [str(tmp_path / 'a.txp'), str(tmp_path / 'b.txp')]
        for path in paths:
            result = runner.invoke(cli, ['analyze', texture_wav, path, '--filters', '2', '--deterministic'])
            assert result.exit_code == 0, result.output

        with open(paths[0], 'rb') as a, open(paths[1], 'rb') as b:
            assert a.read() == b.read()

    def test_too_short(self, runner, texture_wav, tmp_path):
        destination = str(tmp_path / 'short.txp')
        result = runner.invoke(cli, ['analyze', texture_wav, destination, '--filters', '2', '--length', '0.3'])
        assert result.exit_code != 0
        assert 'input shorter than minimum analyzable duration' in result.output
        assert not os.path.exists(destination)

    def test_bad_layers(self, runner, texture_wav, tmp_path):
        result = runner.invoke(cli, ['analyze', texture_wav, str(tmp_path / 'x.txp'), '--layers', '0,9'])
        assert result.exit_code != 0


class TestSynthesize:

    def test_parameter_file_and_recording_agree(self, runner, params_file, texture_wav, tmp_path):
        outputs = [str(tmp_path / 'from_params.wav'), str(tmp_path / 'from_wav.wav')]
        for source, output in zip([params_file, texture_wav], outputs):
            result = runner.invoke(cli, ['synthesize', source, output, '--iterations', '3', '--deterministic'] + BANK)
            assert result.exit_code == 0, result.output
            assert 'after 3 iterations' in result.output

        with open(outputs[0], 'rb') as a, open(outputs[1], 'rb') as b:
            assert a.read() == b.read()

    def test_output_and_trace(self, runner, params_file, tmp_path):
        output = str(tmp_path / 'out.wav')
        result = runner.invoke(cli, ['synthesize', params_file, output, '-i', '2', '-d', '0.5'])
        assert result.exit_code == 0, result.output

        buf = read_wav(output)
        assert buf.sample_rate == 16000
        assert len(buf) == 8000

        with open(str(tmp_path / 'out.csv'), newline='') as f:
            rows = list(csv.reader(f))
        assert tuple(rows[0]) == TRACE_COLUMNS
        assert len(rows) >= 2

    def test_explicit_trace_path(self, runner, params_file, tmp_path):
        trace = str(tmp_path / 'run.csv')
        result = runner.invoke(cli, ['synthesize', params_file, str(tmp_path / 'out.wav'), '-i', '0', '-t', trace])
        assert result.exit_code == 0, result.output
        assert os.path.isfile(trace)

    def test_unwritable_destination(self, runner, params_file, tmp_path):
        output = str(tmp_path / 'missing' / 'out.wav')
        result = runner.invoke(cli, ['synthesize', params_file, output, '-i', '0'])
        assert result.exit_code == 1
        assert isinstance(result.exception, SystemExit)
        assert 'No such file or directory' in result.output

    def test_bad_source(self, runner, tmp_path):
        source = tmp_path / 'garbage.txp'
        source.write_bytes(b'not a parameter file')
        result = runner.invoke(cli, ['synthesize', str(source), str(tmp_path / 'out.wav')])
        assert result.exit_code != 0


class TestOtherCommands:

    def test_anchor(self, runner, texture_wav, tmp_path):
        output = str(tmp_path / 'anchor.wav')
        result = runner.invoke(cli, ['anchor', texture_wav, output, '--seed', '1'])
        assert result.exit_code == 0, result.output
        assert 'anchor to' in result.output
        assert len(read_wav(output)) == len(read_wav(texture_wav))

    def test_score_of_the_original(self, runner, params_file, texture_wav):
        result = runner.invoke(cli, ['score', params_file, texture_wav, '--deterministic'])
        assert result.exit_code == 0, result.output
        assert 'Texture loss: 0.000000' in result.output
        assert 'layer 1 (53x3)' in result.output

    def test_info_rejects_other_files(self, runner, texture_wav):
        result = runner.invoke(cli, ['info', texture_wav])
        assert result.exit_code != 0

    def test_gradcheck(self, runner):
        result = runner.invoke(cli, ['gradcheck'])
        assert result.exit_code == 0, result.output
        assert 'all checks passed' in result.output

    def test_gradcheck_detects_a_corrupted_adjoint(self, runner, monkeypatch):
        exact = texsynth.gradcheck.checks.gram_adjoint
        monkeypatch.setattr(texsynth.gradcheck.checks, 'gram_adjoint',
                            lambda *args, **kwargs: [1.1 * g for g in exact(*args, **kwargs)])
        result = runner.invoke(cli, ['gradcheck'])
        assert result.exit_code == 1
        assert 'gradient checks FAILED' in result.output


def test_status_line_warning(capsys):
    Echo('Writing out.wav...').done(Echo.WARN)
    out = capsys.readouterr().out
    assert 'Writing out.wav...' in out
    assert '[WARN]' in out
