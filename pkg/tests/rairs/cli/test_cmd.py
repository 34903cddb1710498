import io
import json
import pathlib
import tempfile
from unittest import TestCase
from unittest.mock import patch

import yaml

from rairs.cli.cmd import EXIT_ERROR, run
from rairs.service import OracleResult


@patch('rairs.utils.configure_logging')
class TestRun(TestCase):
    def run_captured(self, *argv):
        with patch('sys.stdout', new_callable=io.StringIO) as out, \
                patch('sys.stderr', new_callable=io.StringIO) as err:
            code = run(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_no_command_prints_help(self, _):
        code, out, _ = self.run_captured()
        self.assertEqual(0, code)
        self.assertIn('usage: rairs', out)

    def test_sweep(self, _):
        with tempfile.TemporaryDirectory() as tmpdir:
            code, _, _ = self.run_captured('--out', tmpdir, '--trials', '1', '--sigma', '2.8', '--seed', '3', 'sweep')
            self.assertEqual(0, code)
            names = {p.name for p in pathlib.Path(tmpdir).iterdir()}
        self.assertEqual({'trials.csv', 'summary.csv', 'trajectories_sigma-2.8.csv', 'metadata.yaml'}, names)

    def test_plan(self, _):
        with tempfile.TemporaryDirectory() as tmpdir:
            code, _, _ = self.run_captured('--out', tmpdir, '--strategy', 'terrestrial', 'plan', '--trial', '4')
            self.assertEqual(0, code)
            names = {p.name for p in pathlib.Path(tmpdir).iterdir()}
        self.assertEqual({'trials.csv', 'plans.csv', 'traffic.csv', 'channel.csv', 'metadata.yaml'}, names)

    def test_negative_trial(self, _):
        with tempfile.TemporaryDirectory() as tmpdir:
            code, _, err = self.run_captured('--out', tmpdir, 'plan', '--trial', '-1')
        self.assertEqual(EXIT_ERROR, code)
        self.assertIn('InvalidArgumentError', err)

    def test_bad_config(self, _):
        with tempfile.TemporaryDirectory() as tmpdir:
            config = pathlib.Path(tmpdir) / 'scenario.yaml'
            config.write_text('radio:\n  eta9: 1.0\n')
            code, _, err = self.run_captured('--config', str(config), '--out', tmpdir, 'sweep')
        self.assertEqual(EXIT_ERROR, code)
        self.assertTrue(err.startswith('error: '))
        payload = json.loads(err[len('error: '):])
        self.assertEqual('ConfigError', payload['type'])
        self.assertIn('eta9', payload['message'])

    def test_missing_config(self, _):
        code, _, err = self.run_captured('--config', '/nonexistent/scenario.yaml', 'energy')
        self.assertEqual(EXIT_ERROR, code)
        self.assertIn('ConfigError', err)

    def test_energy(self, _):
        code, out, _ = self.run_captured('energy')
        self.assertEqual(0, code)
        report = yaml.safe_load(out)
        self.assertEqual(44, report['sized_n_r'])
        self.assertTrue(report['flight_feasible'])

    def test_validate_reports_failure(self, _):
        results = [OracleResult('a', True, 'ok'), OracleResult('b', False, 'off by 3%')]
        with patch('rairs.service.oracle.OracleSuite.run', return_value=results) as run_mock:
            code, out, _ = self.run_captured('validate', '--full')
        run_mock.assert_called_once_with(True)
        self.assertEqual(1, code)
        self.assertIn('FAIL b: off by 3%', out)
        self.assertIn('1/2 checks passed', out)

    def test_validate_passes(self, _):
        with patch('rairs.service.oracle.OracleSuite.run', return_value=[OracleResult('a', True, 'ok')]):
            code, _, _ = self.run_captured('validate')
        self.assertEqual(0, code)
