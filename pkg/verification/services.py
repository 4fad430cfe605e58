import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import orjson
from rich.console import Console
from rich.table import Table

from characters.services import CharacterService
from lgroups.exceptions import SizeCap
from lgroups.services import GroupService
from rings.exceptions import PrecisionExhausted
from traces.models import ModeledGroup
from workbench.exceptions import WorkbenchError

from .exceptions import ConfigError, GroupTooLarge
from .models import ABELIAN_SUITES, FAIL, INDETERMINATE, SUITES, CheckRecord, CheckTask, Report
from .serializers import INT_WIDTH_LIMIT, CheckRecordSerializer, working_width
from .suites import BUILDERS, SuiteContext

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2


class VerificationService:
    """Suite orchestration: markings, scheduling, error conversion and reports"""

    @staticmethod
    def resolve_markings(config):
        """The catalog group's preferred marking, or every abelian index-l marking of a presentation file"""
        try:
            if config.presentation:
                text = Path(config.presentation).read_text()
                group = GroupService.build_group(text, name=Path(config.presentation).stem)
                markings = GroupService.find_abelian_index_l(group, config.gamma_exponent)
                if not markings:
                    raise ConfigError('presentation has no abelian index-l subgroup', group=group.name)
            else:
                _, marking = GroupService.catalog_group(config.group, config.l, config.gamma_exponent)
                markings = [marking]
        except SizeCap as exc:
            raise GroupTooLarge(exc.message, **exc.context) from exc
        return markings

    @staticmethod
    def context(marking, config):
        level = max(CharacterService.table_level(marking), config.level or 0)
        if working_width(config.l, config.precision, config.gamma_exponent, level) >= INT_WIDTH_LIMIT:
            raise ConfigError('working width exceeds 64-bit arithmetic', group=marking.group.name, level=level)
        return SuiteContext(
            marking=marking,
            model=ModeledGroup.from_marking(marking, level),
            submodel=ModeledGroup.subgroup_of(marking, level),
            precision=config.precision,
            units=config.units,
            betas=config.betas,
        )

    @staticmethod
    def plan(config, markings):
        tasks = []
        contexts = []
        for m, marking in enumerate(markings):
            context = VerificationService.context(marking, config)
            contexts.append(context)
            for suite in config.suites:
                if suite in ABELIAN_SUITES and not marking.is_abelian():
                    logger.info('Skipping %s on %s: G′ is not abelian', suite, marking.group.name)
                    continue
                for index, (key, run) in enumerate(BUILDERS[suite](context)):
                    tasks.append(CheckTask(suite, key, m, index, run))
        return tasks, contexts

    @staticmethod
    def run_check(task, config, group_name):
        """Returns (record, error); mathematical failures never escape"""
        rng = np.random.default_rng([config.seed, SUITES.index(task.suite), task.marking_index, task.index])
        record = CheckRecord(suite=task.suite, key=task.key, group=group_name, status=FAIL)
        started = time.perf_counter()
        error = None
        try:
            details = task.run(rng)
            record.status = details.get('status', FAIL)
            record.precision_used = details.get('precision_used')
            record.details = details
        except PrecisionExhausted as exc:
            record.status = INDETERMINATE
            record.error = exc.as_dict()
            error = exc
        except WorkbenchError as exc:
            record.status = FAIL
            record.error = exc.as_dict()
            error = exc
        except Exception as exc:
            logger.exception('%s %s raised on %s', task.suite, task.key, group_name)
            record.status = FAIL
            record.error = {'error': type(exc).__name__, 'message': str(exc)}
            error = exc
        record.seconds = time.perf_counter() - started
        if record.status == FAIL:
            logger.warning('%s %s failed on %s', task.suite, task.key, group_name)
        return record, error

    @staticmethod
    def run_suite(config):
        markings = VerificationService.resolve_markings(config) if config.suites else []
        tasks, _ = VerificationService.plan(config, markings)
        logger.info('Running %d checks over %d markings', len(tasks), len(markings))

        def run(task):
            return VerificationService.run_check(task, config, markings[task.marking_index].group.name)

        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(run, tasks))
        else:
            results = [run(task) for task in tasks]

        records = sorted(
            (record for record, _ in results),
            key=lambda r: (SUITES.index(r.suite), r.group, r.key),
        )
        return Report(config=config, checks=records)

    @staticmethod
    def report_data(report, timings=False):
        data = {
            'checks': [CheckRecordSerializer(r, context={'timings': timings}).data for r in report.checks],
            'summary': report.summary,
        }
        if report.config is not None:
            data['config'] = report.config.to_dict()
        return data

    @staticmethod
    def emit_report(report, format='json', timings=False):
        """bytes for json, str for text"""
        data = VerificationService.report_data(report, timings)
        if format == 'json':
            return orjson.dumps(data, option=JSON_OPTIONS | orjson.OPT_SERIALIZE_NUMPY)

        buffer = io.StringIO()
        console = Console(file=buffer, width=120, force_terminal=False)
        table = Table(title='Checks')
        for column in ('suite', 'group', 'key', 'status', 'precision'):
            table.add_column(column)
        if timings:
            table.add_column('seconds', justify='right')
        styles = {'pass': 'green', 'fail': 'red', 'indeterminate': 'yellow'}
        for record in data['checks']:
            row = [
                record['suite'], record['group'], record['key'],
                f"[{styles[record['status']]}]{record['status']}[/]",
                '' if record['precision_used'] is None else str(record['precision_used']),
            ]
            if timings:
                row.append(f"{record.get('seconds', 0.0):.3f}")
            table.add_row(*row)
        console.print(table)
        summary = data['summary']
        console.print(f"pass {summary['pass']}  fail {summary['fail']}  indeterminate {summary['indeterminate']}")
        return buffer.getvalue()


run_suite = VerificationService.run_suite
emit_report = VerificationService.emit_report
