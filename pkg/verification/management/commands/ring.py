import sys

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from characters.services import CharacterService
from congruences.services import models
from traces.models import ModeledGroup
from traces.services import det_hom, integral_log_unit, restricted_norm
from verification.commands import add_group_arguments, add_unit_arguments, describe_error, dump, load_marking, load_unit
from verification.models import FAIL, PASS
from workbench.exceptions import WorkbenchError

OPERATIONS = ('show', 'inverse', 'psi', 'integral-log', 'restricted-norm', 'selftest')


def selftest(marking, model, rng, prec):
    """Ring identities on seeded random units of G and, when abelian, of G′"""
    u, v, w = (model.random_unit(rng, prec) for _ in range(3))
    one = model.one(prec)
    results = {
        'inverse': u * u.inverse() == one and u.inverse() * u == one,
        'associative': (u * v) * w == u * (v * w),
        'augmentation': (u * v).augmentation() == u.augmentation() * v.augmentation() % u.modulus,
        'det_multiplicative': det_hom(u * v, sigmas=()) == det_hom(u, sigmas=()) * det_hom(v, sigmas=()),
    }
    if marking.is_abelian():
        _, submodel = models(marking)
        x, y = (submodel.random_unit(rng, prec) for _ in range(2))
        results['psi_multiplicative'] = (x * y).psi() == x.psi() * y.psi()
        results['integral_log_additive'] = integral_log_unit(x * y) == integral_log_unit(x) + integral_log_unit(y)
        norm = [restricted_norm(z, marking, submodel) for z in (u * v, u, v)]
        results['norm_multiplicative'] = norm[0] == norm[1] * norm[2]
    return {name: PASS if ok else FAIL for name, ok in results.items()}


class Command(BaseCommand):
    help = 'Apply a group-ring operation to a unit of Z/l^N[G × Γ̄], or run the ring self-test'

    def add_arguments(self, parser):
        parser.add_argument('op', nargs='?', choices=OPERATIONS, default='show')
        add_group_arguments(parser, positional=False)
        add_unit_arguments(parser)

    def handle(self, *args, **options):
        _, marking = load_marking(options)
        model = ModeledGroup.from_marking(marking, CharacterService.table_level(marking))
        operation = options['op']
        try:
            if operation == 'selftest':
                seed = 0 if options.get('seed') is None else options['seed']
                report = selftest(marking, model, np.random.default_rng(seed), options.get('precision') or 4)
                self.stdout.write(dump(report))
                if FAIL in report.values():
                    sys.exit(1)
                return
            u = load_unit(model, options)
            if operation == 'inverse':
                result = u.inverse()
            elif operation == 'psi':
                result = u.psi()
            elif operation == 'integral-log':
                result = integral_log_unit(u)
            elif operation == 'restricted-norm':
                result = restricted_norm(u, marking)
            else:
                result = u
        except WorkbenchError as exc:
            raise CommandError(describe_error(exc)) from exc
        except ValueError as exc:
            raise CommandError(str(exc)) from exc
        self.stdout.write(dump({'op': operation, 'input': u.to_dict(), 'result': result.to_dict()}))
