import csv
import io
import json
import math

import pytest

from wedgespectra import cli
from wedgespectra.cli import SCHEMA_VERSION, main


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestCurve:

    def test_csv_extreme(self, capsys):
        assert main(['curve', '--alpha', str(math.pi / 3)]) == 0
        rows = read_csv(capsys.readouterr().out)
        plus = [r for r in rows if r['branch'] == 'plus']
        minus = [r for r in rows if r['branch'] == 'minus']
        assert len(plus) == len(minus)
        assert max(abs(float(r['re'])) for r in plus) == pytest.approx(math.sin(math.pi / 3), abs=1e-9)
        assert float(plus[0]['xi']) == -math.inf

    def test_degenerate_curve_is_real(self, capsys):
        assert main(['curve', '--alpha-deg', '90', '--a', '1']) == 0
        rows = read_csv(capsys.readouterr().out)
        plus = [r for r in rows if r['branch'] == 'plus']
        assert all(abs(float(r['im'])) < 1e-15 for r in rows)
        assert all(-0.5 - 1e-12 <= float(r['re']) <= 0.0 for r in plus)

    def test_json_to_file(self, tmp_path, capsys):
        out = tmp_path / 'curve.json'
        assert main(['curve', '--alpha', '1.0', '--format', 'json', '--plane', 'epsilon', '--out', str(out)]) == 0
        assert capsys.readouterr().out == ''
        record = json.loads(out.read_text())
        assert record['schema_version'] == SCHEMA_VERSION
        assert record['plane'] == 'epsilon'
        # xi = +-inf is written as null
        assert record['branches']['plus']['xi'][0] is None
        assert list(tmp_path.iterdir()) == [out]

    @pytest.mark.parametrize('argv', [['curve', '--alpha', '3.14159'], ['curve', '--alpha', '1.0', '--a', '3.0'],
                                      ['curve', '--alpha', '1.0', '--tol', '0']])
    def test_invalid_input(self, argv, capsys):
        assert main(argv) == 2
        assert 'error' in capsys.readouterr().err


class TestCheck:

    def test_illposed(self, capsys):
        assert main(['check', '--alpha-deg', '90', '--eps-re', '-2', '--problem', 'E']) == 3
        record = json.loads(capsys.readouterr().out)
        assert record['wellposed'] is False
        assert record['schema_version'] == SCHEMA_VERSION

    def test_wellposed(self, capsys):
        assert main(['check', '--alpha-deg', '90', '--eps-re', '-0.2', '--problem', 'E']) == 0
        record = json.loads(capsys.readouterr().out)
        assert record['wellposed'] is True
        assert record['lambda'][0] == pytest.approx(2.0 / 3.0)

    def test_pole(self, capsys):
        assert main(['check', '--alpha', '1.0', '--eps-re', '1']) == 2

    def test_angle_is_required(self):
        with pytest.raises(SystemExit):
            main(['check', '--eps-re', '-2'])


class TestDiscretize:

    def test_deterministic(self, capsys):
        argv = ['discretize', '--alpha', str(math.pi / 2), '--n', '2', '--L', '4']
        assert main(argv) == 0
        first = json.loads(capsys.readouterr().out)
        assert main(argv) == 0
        second = json.loads(capsys.readouterr().out)
        assert len(first['eigenvalues']) == 2
        assert first['eigenvalues'] == second['eigenvalues']
        assert first['params']['L'] == 4.0

    def test_toeplitz(self, capsys):
        assert main(['discretize', '--alpha', '1.0', '--operator', 'I', '--n', '8']) == 0
        record = json.loads(capsys.readouterr().out)
        assert record['params']['h'] == 0.05
        assert 0.0 <= record['containment']['fraction_inside'] <= 1.0

    @pytest.mark.parametrize('argv', [['discretize', '--alpha', '1.0', '--n', '5000'],
                                      ['discretize', '--alpha', '1.0', '--n', '1'],
                                      ['--threads', '0', 'discretize', '--alpha', '1.0', '--n', '4'],
                                      ['discretize', '--alpha', '1.0', '--n', '4', '--tolerance', '0'],
                                      ['discretize', '--alpha', '1.0', '--n', '4', '--tolerance', 'nan']])
    def test_invalid_input(self, argv):
        assert main(argv) == 2

    def test_tolerance_checked_before_assembly(self, monkeypatch, capsys):
        def fail(*args, **kwargs):
            raise AssertionError('section assembled')
        monkeypatch.setattr(cli, 'nystrom_T', fail)
        assert main(['discretize', '--alpha', '1.0', '--n', '4000', '--tolerance', '-1']) == 2
        assert '--tolerance' in capsys.readouterr().err


class TestValidate:

    def test_transmission_suite(self, tmp_path):
        report = tmp_path / 'report.json'
        assert main(['validate', '--suite', 'transmission', '--report', str(report)]) == 0
        record = json.loads(report.read_text())
        assert record['passed'] is True
        assert {c['suite'] for c in record['checks']} == {'transmission'}
