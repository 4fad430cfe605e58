"""
Check builders, one per suite. Each builder returns (key, run) pairs; run
takes a seeded numpy Generator and returns a report dict carrying 'status'
and 'precision_used'.
"""
from dataclasses import dataclass
from functools import partial

from characters.services import adams, defect_char, induce, inner_product
from congruences.checks import (
    check_beta_expansion,
    check_column_exactness,
    check_log_pipeline,
    check_power_trace,
    check_res_ver,
    orbit_oracle,
)
from congruences.services import models as congruence_models
from congruences.services import random_beta
from restriction.services import RestrictionService, check_hd_square, res_trace, trace_restriction_report
from traces.models import VERIFIED, TraceElement
from traces.services import det_hom, hom_axioms, tr_a

from .models import FAIL, PASS


def status(ok):
    return PASS if ok else FAIL


@dataclass(frozen=True, eq=False)
class SuiteContext:
    marking: object
    model: object
    submodel: object
    precision: int
    units: int
    betas: int

    @property
    def group(self):
        return self.marking.group


def orthogonality(table, rng):
    bad = [
        [i, j]
        for i, first in enumerate(table.irreducibles())
        for j, second in enumerate(table.irreducibles())
        if inner_product(first, second) != int(i == j)
    ]
    return {'status': status(not bad), 'pairs': bad[:5], 'characters': len(table), 'precision_used': None}


def defect_check(context, k, rng):
    marking, table = context.marking, context.model.table
    chi_prime = context.submodel.table.irreducible(k)
    defect = defect_char(chi_prime, marking, table)
    report = {'status': PASS, 'closed_form': PASS, 'precision_used': None}
    if context.group.exponent == marking.l:
        vanishes = adams(defect, marking.l).is_zero()
        report['adams_vanishes'] = status(vanishes)
        report['status'] = status(vanishes)
    return report


def noncommutation_witness(context, rng):
    marking, table = context.marking, context.model.table
    l = marking.l
    for k, chi_prime in enumerate(context.submodel.table.irreducibles()):
        if not adams(induce(chi_prime, marking, table), l) == induce(adams(chi_prime, l), marking, table):
            return {'status': PASS, 'witness': k, 'precision_used': None}
    return {'status': FAIL, 'witness': None, 'precision_used': None}


def chars_checks(context):
    checks = [('orthogonality', partial(orthogonality, context.model.table))]
    for k in context.submodel.table.linear_indices:
        checks.append((f'defect/{k}', partial(defect_check, context, k)))
    if not context.group.is_abelian():
        checks.append(('noncommutation', partial(noncommutation_witness, context)))
    return checks


def class_restriction(context, c, rng):
    marking, model, submodel = context.marking, context.model, context.submodel
    t = TraceElement.basis(model, c, prec=context.precision)
    report = trace_restriction_report(t, marking, submodel, sigmas=(1,))
    closed = res_trace(t, marking, submodel) == RestrictionService.closed_form_trace(
        model.group.classes.reps[c], marking, submodel, context.precision,
    )
    report['closed_form'] = status(closed)
    report['status'] = status(closed and report['status'] == PASS)
    return report


def res_checks(context):
    classes = context.group.classes
    return [
        (f'class/{context.group.label(rep)}', partial(class_restriction, context, c))
        for c, rep in enumerate(classes.reps)
    ]


def unit_square(context, rng):
    u = context.model.random_unit(rng, context.precision)
    square = check_hd_square(u, context.marking, context.submodel)
    _, axioms = hom_axioms(det_hom(u, sigmas=(1,)))
    flags_ok = all(axioms[name] == VERIFIED for name in ('galois_stable', 'twist_compatible', 'integral'))
    return {
        'status': status(square['status'] == PASS and flags_ok),
        'square': square,
        'axioms': axioms,
        'precision_used': square['hom']['precision_used'],
    }


def diagram_checks(context):
    return [(f'unit/{k}', partial(unit_square, context)) for k in range(context.units)]


def lemma5_checks(context):
    return [('lemma5', lambda rng: check_column_exactness(context.marking, context.precision))]


def check_power_traces(context):
    marking = context.marking
    checks = []
    for g in marking.gprime:
        label = context.group.label(int(g))
        checks.append((f'direct/{label}', lambda rng, g=int(g): check_power_trace(g, marking, context.precision)))
        checks.append((f'orbits/{label}', lambda rng, g=int(g): orbit_oracle(g, marking, context.precision)))
    return checks


def beta_expansion(context, rng):
    beta = random_beta(context.marking, rng, context.precision)
    return check_beta_expansion(beta, context.marking, context.precision)


def twotwo_checks(context):
    return [(f'beta/{k}', partial(beta_expansion, context)) for k in range(context.betas)]


def res_ver_unit(context, rng):
    model, _ = congruence_models(context.marking)
    return check_res_ver(model.random_unit(rng, context.precision), context.marking)


def resver_checks(context):
    return [(f'unit/{k}', partial(res_ver_unit, context)) for k in range(context.units)]


def pipeline_unit(context, rng):
    marking = context.marking
    _, submodel = congruence_models(marking)
    beta = random_beta(marking, rng, context.precision)
    y = submodel.one(context.precision) + tr_a(beta.element(marking, submodel, context.precision), marking)
    return check_log_pipeline(y, marking, beta)


def pipeline_checks(context):
    return [(f'beta/{k}', partial(pipeline_unit, context)) for k in range(context.betas)]


BUILDERS = {
    'chars': chars_checks,
    'res': res_checks,
    'diagrams': diagram_checks,
    'lemma5': lemma5_checks,
    'lemma6': check_power_traces,
    'twotwo': twotwo_checks,
    'resver': resver_checks,
    'pipeline': pipeline_checks,
}
