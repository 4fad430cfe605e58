import sys

import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from congruences.checks import (
    check_beta_expansion,
    check_column_exactness,
    check_log_pipeline,
    check_power_trace,
    check_res_ver,
    orbit_oracle,
)
from congruences.services import models, random_beta
from traces.services import tr_a
from verification.commands import add_group_arguments, describe_error, dump, load_marking
from verification.models import FAIL, PASS
from workbench.exceptions import WorkbenchError

CHECKS = ('lemma5', 'lemma6', 'orbit', 'twotwo', 'resver', 'pipeline')


def check_record(check, group, value, report):
    """{check, group, input, status, certificate | counterexample, precision_used}"""
    status = report.get('status', FAIL)
    return {
        'check': check,
        'group': group.name,
        'input': value,
        'status': status,
        'certificate' if status == PASS else 'counterexample': report,
        'precision_used': report.get('precision_used'),
    }


class Command(BaseCommand):
    help = 'Run one congruence check on an abelian index-l marking and print JSON records'

    def add_arguments(self, parser):
        parser.add_argument('check', choices=CHECKS)
        add_group_arguments(parser, positional=False)
        parser.add_argument('--element', help='word for g ∈ G′ (lemma6, orbit); defaults to the first generator of G′')
        parser.add_argument('--all-elements', action='store_true', help='every g ∈ G′ (lemma6, orbit)')
        parser.add_argument('--samples', type=int, default=1, help='random units or β′ drawn (twotwo, resver, pipeline)')
        parser.add_argument('--prec', type=int, dest='precision')
        parser.add_argument('--seed', type=int)

    def run(self, check, group, marking, precision, rng, options):
        if check == 'lemma5':
            yield check_record(check, group, None, check_column_exactness(marking, precision))
            return
        if check in ('lemma6', 'orbit'):
            oracle = check_power_trace if check == 'lemma6' else orbit_oracle
            if options['all_elements']:
                elements = [int(g) for g in marking.gprime]
            elif options.get('element'):
                elements = [group.element(options['element'])]
            else:
                elements = [next(int(g) for g in marking.gprime if g != 0)]
            for g in elements:
                yield check_record(check, group, group.label(g), oracle(g, marking, precision))
            return
        model, submodel = models(marking)
        for _ in range(options['samples']):
            if check == 'resver':
                u = model.random_unit(rng, precision)
                yield check_record(check, group, u.to_dict(), check_res_ver(u, marking))
                continue
            beta = random_beta(marking, rng, precision)
            if check == 'twotwo':
                report = check_beta_expansion(beta, marking, precision)
            else:
                y = submodel.one(precision) + tr_a(beta.element(marking, submodel, precision), marking)
                report = check_log_pipeline(y, marking, beta)
            yield check_record(check, group, beta.to_dict(group), report)

    def handle(self, *args, **options):
        group, marking = load_marking(options)
        precision = options.get('precision') or settings.WORKBENCH['PRECISION']
        seed = settings.WORKBENCH['SEED'] if options.get('seed') is None else options['seed']
        rng = np.random.default_rng(seed)
        try:
            records = list(self.run(options['check'], group, marking, precision, rng, options))
        except WorkbenchError as exc:
            raise CommandError(describe_error(exc)) from exc
        except ValueError as exc:
            raise CommandError(str(exc)) from exc
        self.stdout.write(dump(records))
        if any(record['status'] == FAIL for record in records):
            sys.exit(1)
