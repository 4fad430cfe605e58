import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from verification.commands import describe_error, gamma_exponent
from workbench.exceptions import WorkbenchError
from verification.models import SUITES
from verification.serializers import SuiteConfigSerializer
from verification.services import emit_report, run_suite


class Command(BaseCommand):
    help = 'Run verification suites and write a deterministic report'

    def add_arguments(self, parser):
        parser.add_argument('--l', type=int, dest='l')
        parser.add_argument('--group', default='heisenberg')
        parser.add_argument('--presentation')
        parser.add_argument('--prec', type=int, dest='precision')
        parser.add_argument('--gamma-exponent', type=int, dest='gamma_exponent')
        parser.add_argument('--gamma-order', type=int, dest='gamma_order')
        parser.add_argument('--level', type=int)
        parser.add_argument(
            '--suite', action='append', dest='suites', default=[],
            help=f"one of {', '.join(SUITES)} or all; repeat or comma-separate",
        )
        parser.add_argument('--seed', type=int)
        parser.add_argument('--format', choices=('text', 'json'), default='json')
        parser.add_argument('--out')
        parser.add_argument('--timings', action='store_true')
        parser.add_argument('--workers', type=int)
        parser.add_argument('--units', type=int)
        parser.add_argument('--betas', type=int)

    def handle(self, *args, **options):
        data = {
            key: options[key]
            for key in ('l', 'group', 'presentation', 'precision', 'gamma_exponent', 'level',
                        'seed', 'format', 'timings', 'workers', 'units', 'betas')
            if options.get(key) is not None
        }
        data['suites'] = [s.strip() for chunk in options['suites'] for s in chunk.split(',') if s.strip()]
        if options.get('gamma_order'):
            data['gamma_exponent'] = gamma_exponent(options)

        try:
            config = SuiteConfigSerializer.build(data)
            report = run_suite(config)
        except WorkbenchError as exc:
            raise CommandError(describe_error(exc)) from exc

        output = emit_report(report, config.format, config.timings)
        if isinstance(output, bytes):
            output = output.decode()
        if options.get('out'):
            Path(options['out']).write_text(output)
        else:
            self.stdout.write(output, ending='' if output.endswith('\n') else '\n')

        if report.exit_code:
            sys.exit(report.exit_code)
