import math

import pytest

from wedgespectra import validation
from wedgespectra.cli import main


def overflowing() -> float:
    return math.exp(1e4)


class TestRunSuite:

    def test_any_exception_fails_only_its_check(self, monkeypatch):
        monkeypatch.setitem(validation._REGISTRY, 'transmission',
                            [('overflowing', 1.0, overflowing), ('settled', 1.0, lambda: 0.5)])
        first, second = validation.run_suite('transmission')
        assert not first.passed
        assert first.residual == math.inf
        assert first.detail.startswith('OverflowError')
        assert second.passed and second.residual == 0.5
        assert validation.run('transmission') is False

    def test_failing_check_is_named_on_exit(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setitem(validation._REGISTRY, 'transmission', [('overflowing', 1.0, overflowing)])
        report = tmp_path / 'report.json'
        assert main(['validate', '--suite', 'transmission', '--report', str(report)]) == 1
        assert 'FAILED transmission/overflowing' in capsys.readouterr().err
        assert report.exists()

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            validation.run_suite('nonsense')

    def test_numerics_suite(self):
        results = validation.run_suite('numerics')
        assert {r.name for r in results} == {'quadrature-halving', 'eigenvalue-oracles',
                                             'bessel-k1-asymptotic-windows'}
        assert all(r.passed for r in results), [r for r in results if not r.passed]


class TestCubicOracle:

    def test_known_roots(self):
        # (z - 1)(z + 2)(z - 3)
        roots = sorted(validation._cubic_roots(-2.0, -5.0, 6.0), key=lambda z: z.real)
        assert roots == [pytest.approx(-2.0), pytest.approx(1.0), pytest.approx(3.0)]

    def test_complex_pair(self):
        # (z - 2)(z^2 + 1)
        roots = validation._cubic_roots(-2.0, 1.0, -2.0)
        for expected in (2.0, 1j, -1j):
            assert min(abs(z - expected) for z in roots) < 1e-12

    def test_triple_root(self):
        assert validation._cubic_roots(3.0, 3.0, 1.0) == [-1.0, -1.0, -1.0]
