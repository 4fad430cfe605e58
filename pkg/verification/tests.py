import io
import tempfile
from pathlib import Path

import orjson
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .exceptions import ConfigError
from .models import FAIL, INDETERMINATE, PASS, SUITES, CheckRecord, CheckTask, Report
from .rendering import cyclotomic
from .serializers import SuiteConfigSerializer
from .services import VerificationService, emit_report, run_suite

HEISENBERG = """
gen x order 3
gen y order 3
gen z order 3
rel [x,y] = z
central z
"""


def config(**data):
    data.setdefault('l', 3)
    data.setdefault('precision', 4)
    data.setdefault('gamma_exponent', 1)
    return SuiteConfigSerializer.build(data)


def record(status, key='k'):
    return CheckRecord(suite='lemma6', key=key, group='heisenberg', status=status)


class SuiteConfigTests(SimpleTestCase):

    def test_defaults_from_settings(self):
        built = SuiteConfigSerializer.build({})
        self.assertEqual(built.l, 3)
        self.assertEqual(built.seed, 42)
        self.assertEqual(built.suites, ())

    def test_precision_too_small(self):
        with self.assertRaises(ConfigError):
            config(precision=1)

    def test_even_and_composite_primes_rejected(self):
        for l in (2, 4, 9):
            with self.assertRaises(ConfigError):
                config(l=l)

    def test_all_expands_in_canonical_order(self):
        self.assertEqual(config(suites=['all']).suites, SUITES)
        self.assertEqual(config(suites=['lemma6', 'chars']).suites, ('chars', 'lemma6'))

    def test_width_overflow(self):
        with self.assertRaises(ConfigError) as raised:
            config(precision=20)
        self.assertIn('precision', raised.exception.context)

    def test_unknown_suite(self):
        with self.assertRaises(ConfigError):
            config(suites=['nonsense'])


class ReportTests(SimpleTestCase):

    def test_exit_codes(self):
        self.assertEqual(Report(checks=[record(PASS)]).exit_code, 0)
        self.assertEqual(Report(checks=[record(PASS), record(INDETERMINATE)]).exit_code, 2)
        self.assertEqual(Report(checks=[record(INDETERMINATE), record(FAIL)]).exit_code, 1)

    def test_empty_run(self):
        report = run_suite(config())
        data = orjson.loads(emit_report(report))
        self.assertEqual(data['checks'], [])
        self.assertEqual(data['summary'], {'pass': 0, 'fail': 0, 'indeterminate': 0})
        self.assertEqual(data['config']['suites'], [])
        self.assertNotIn('workers', data['config'])

    def test_seconds_only_with_timings(self):
        report = Report(config=config(), checks=[record(PASS)])
        self.assertNotIn('seconds', orjson.loads(emit_report(report))['checks'][0])
        self.assertIn('seconds', orjson.loads(emit_report(report, timings=True))['checks'][0])

    def test_text_format_has_summary(self):
        report = Report(config=config(), checks=[record(PASS), record(FAIL, key='other')])
        text = emit_report(report, format='text')
        self.assertIn('pass 1  fail 1  indeterminate 0', text)


class RunSuiteTests(SimpleTestCase):

    def test_lemma6_on_heisenberg(self):
        report = run_suite(config(suites=['lemma6']))
        self.assertGreaterEqual(len(report.checks), 18)
        self.assertEqual(report.summary[FAIL], 0)
        self.assertEqual(report.exit_code, 0)
        self.assertTrue(all(r.precision_used is not None for r in report.checks))

    def test_same_config_same_bytes(self):
        built = config(suites=['twotwo'], betas=3)
        self.assertEqual(emit_report(run_suite(built)), emit_report(run_suite(built)))

    def test_workers_do_not_change_the_report(self):
        serial = emit_report(run_suite(config(suites=['lemma6'])))
        parallel = emit_report(run_suite(config(suites=['lemma6'], workers=4)))
        self.assertEqual(serial, parallel)

    def test_unexpected_exception_becomes_a_failure(self):
        def run(rng):
            raise ValueError('broken check')

        task = CheckTask('lemma6', 'broken', 0, 0, run)
        with self.assertLogs('verification.services', level='ERROR'):
            result, error = VerificationService.run_check(task, config(), 'heisenberg')
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.error, {'error': 'ValueError', 'message': 'broken check'})
        self.assertIsInstance(error, ValueError)

    def test_abelian_suites_skipped_for_nonabelian_gprime(self):
        report = run_suite(config(group='heisenberg_by_cyclic', suites=['lemma5']))
        self.assertEqual(report.checks, [])

    def test_presentation_uses_every_marking(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'heis.txt'
            path.write_text(HEISENBERG)
            built = config(presentation=str(path))
            markings = VerificationService.resolve_markings(built)
            report = run_suite(config(presentation=str(path), suites=['lemma5']))
        self.assertEqual(len(markings), 4)
        self.assertEqual(len(report.checks), 4)
        self.assertEqual({r.group for r in report.checks}, {'heis'})


class VerifyCommandTests(SimpleTestCase):

    def test_json_to_stdout(self):
        out = io.StringIO()
        call_command('verify', '--l', '3', '--prec', '4', '--gamma-order', '3', '--suite', 'lemma6', stdout=out)
        data = orjson.loads(out.getvalue())
        self.assertEqual(data['summary']['fail'], 0)
        self.assertEqual(data['config']['gamma_exponent'], 1)

    def test_comma_separated_suites(self):
        out = io.StringIO()
        call_command('verify', '--prec', '4', '--gamma-exponent', '1', '--suite', 'chars,lemma5', stdout=out)
        suites = {check['suite'] for check in orjson.loads(out.getvalue())['checks']}
        self.assertEqual(suites, {'chars', 'lemma5'})

    def test_bad_precision(self):
        with self.assertRaises(CommandError):
            call_command('verify', '--prec', '1', stdout=io.StringIO())

    def test_gamma_order_must_be_a_power(self):
        with self.assertRaises(CommandError):
            call_command('verify', '--gamma-order', '6', stdout=io.StringIO())


class GroupCommandTests(SimpleTestCase):

    def test_describe_json(self):
        out = io.StringIO()
        call_command('group', 'describe', 'heisenberg', '--gamma-exponent', '1', '--format', 'json', stdout=out)
        data = orjson.loads(out.getvalue())
        self.assertEqual(data['order'], 27)
        self.assertEqual(data['derived_order'], 3)
        self.assertEqual(len(data['markings']), 4)

    def test_unknown_group(self):
        with self.assertRaises(CommandError):
            call_command('group', 'describe', 'nonsense', stdout=io.StringIO())


class RenderingTests(SimpleTestCase):

    def test_cyclotomic(self):
        self.assertEqual(cyclotomic([0, 0]), '0')
        self.assertEqual(cyclotomic([2, 0]), '2')
        self.assertEqual(cyclotomic([0, -1]), '-ζ')
        self.assertEqual(cyclotomic([1, -1, 3]), '1 - ζ + 3ζ^2')


class CongruenceCommandTests(SimpleTestCase):

    def test_lemma6_records(self):
        out = io.StringIO()
        call_command(
            'congr', 'lemma6', '--group', 'heisenberg', '--gamma-exponent', '1',
            '--prec', '4', '--element', 'y', stdout=out,
        )
        records = orjson.loads(out.getvalue())
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0]['input'], 'y')
        self.assertEqual(records[0]['status'], 'pass')
        self.assertIn('certificate', records[0])

    def test_orbit_over_all_elements(self):
        out = io.StringIO()
        call_command(
            'congr', 'orbit', '--group', 'modular_l3', '--gamma-exponent', '1',
            '--prec', '4', '--all-elements', stdout=out,
        )
        records = orjson.loads(out.getvalue())
        self.assertEqual(len(records), 9)
        self.assertTrue(all(r['status'] == 'pass' for r in records))

    def test_nonabelian_gprime_rejected(self):
        with self.assertRaises(CommandError):
            call_command('congr', 'lemma5', '--group', 'heisenberg_by_cyclic', '--gamma-exponent', '1', stdout=io.StringIO())


class RingCommandTests(SimpleTestCase):

    def test_selftest_passes(self):
        out = io.StringIO()
        call_command('ring', 'selftest', '--group', 'modular_l3', '--gamma-exponent', '1', '--prec', '3', stdout=out)
        report = orjson.loads(out.getvalue())
        self.assertIn('norm_multiplicative', report)
        self.assertEqual(set(report.values()), {'pass'})

    def test_inverse_of_a_unit_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'u.json'
            path.write_bytes(orjson.dumps({'prec': 3, 'gamma_order': 3, 'coeffs': {'0': [1, 0, 0], '1': [0, 3, 0]}}))
            out = io.StringIO()
            call_command(
                'ring', 'inverse', '--group', 'heisenberg', '--gamma-exponent', '1',
                '--unit', str(path), stdout=out,
            )
        data = orjson.loads(out.getvalue())
        self.assertEqual(data['op'], 'inverse')
        self.assertEqual(data['result']['prec'], 3)

    def test_bad_unit_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'u.json'
            path.write_bytes(orjson.dumps({'prec': 3, 'gamma_order': 9, 'coeffs': {}}))
            with self.assertRaises(CommandError):
                call_command('ring', 'show', '--group', 'heisenberg', '--gamma-exponent', '1', '--unit', str(path))
