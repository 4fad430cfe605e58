from types import SimpleNamespace

import numpy as np
from django.test import SimpleTestCase

from lgroups.services import catalog_group
from rings.exceptions import PrecisionExhausted
from rings.models import IntMatrix
from traces.services import tr_a

from .checks import (
    check_beta_expansion,
    check_column_exactness,
    check_log_pipeline,
    check_power_trace,
    check_res_ver,
    orbit_oracle,
    power_trace_difference,
)
from .models import AModule, BetaPrime, BetaTerm, IdealSpan
from .services import IdealService, ideal_span, include, models, random_beta, tate_cohomology

PREC = 4


def marked(name):
    group, marking = catalog_group(name, 3, gamma_exponent=1)
    return group, marking


def element(marking, submodel, word, scalar=1, prec=PREC):
    group = marking.group
    return submodel.group_like(marking.gprime_group.local(group.element(word)), scalar=scalar, prec=prec)


class EchelonTests(SimpleTestCase):

    def span(self, rows, prec=2):
        rows = np.array(rows, dtype=np.int64)
        return IdealSpan('test', SimpleNamespace(l=3), rows, tuple(f'v{i}' for i in range(len(rows))), prec)

    def test_zero_is_a_member(self):
        self.assertTrue(self.span([[3, 0], [0, 1]]).contains([0, 0]))

    def test_membership_with_certificate(self):
        span = self.span([[3, 0], [0, 1]])
        result, certificate = span.certificate([6, 2])
        self.assertTrue(result)
        self.assertEqual(dict(certificate['coefficients']), {'v0': 2, 'v1': 2})

    def test_non_member_has_witness(self):
        result, certificate = self.span([[3, 0], [0, 1]]).certificate([1, 0])
        self.assertFalse(result)
        self.assertEqual(certificate['witness']['column'], 0)
        self.assertEqual(certificate['witness']['pivot_valuation'], 1)

    def test_saturation_row(self):
        span = self.span([[3, 1]])
        self.assertTrue(span.contains([0, 3]))
        self.assertFalse(span.contains([0, 1]))

    def test_empty_span(self):
        span = IdealSpan('empty', SimpleNamespace(l=3), np.zeros((0, 2), dtype=np.int64), (), 2)
        self.assertTrue(span.is_zero())
        self.assertTrue(span.contains([0, 9]))
        self.assertFalse(span.contains([0, 1]))

    def test_low_precision_element(self):
        _, marking = marked('heisenberg')
        _, submodel = models(marking)
        span = ideal_span('trace_T′', marking, PREC)
        with self.assertRaises(PrecisionExhausted):
            span.membership(submodel.zero(PREC - 1))


class IdealSpanTests(SimpleTestCase):

    def setUp(self):
        self.group, self.marking = marked('heisenberg')
        self.model, self.submodel = models(self.marking)

    def test_abelian_augmentation_ideal_is_zero(self):
        _, marking = marked('abelian(9,3)')
        self.assertTrue(ideal_span('aug_a', marking, PREC).is_zero())
        self.assertTrue(ideal_span('trace_b′', marking, PREC).is_zero())

    def test_trace_ideal_generators(self):
        span = ideal_span('trace_T′', self.marking, PREC)
        self.assertTrue(span.contains(element(self.marking, self.submodel, '1', scalar=3)))
        orbit = sum(
            (element(self.marking, self.submodel, word) for word in ('y*z', 'y*z^2')),
            element(self.marking, self.submodel, 'y'),
        )
        self.assertTrue(span.contains(orbit))
        self.assertFalse(span.contains(self.submodel.one(PREC)))

    def test_scaled_trace(self):
        span = ideal_span('l_trace', self.marking, PREC)
        y = element(self.marking, self.submodel, 'y')
        self.assertTrue(span.contains(tr_a(y, self.marking).scale(3)))
        self.assertFalse(span.contains(tr_a(y, self.marking)))

    def test_explicit_certificate(self):
        span = ideal_span('l_trace', self.marking, PREC)
        x = sum(
            (element(self.marking, self.submodel, word, scalar=9) for word in ('z', 'z^2')),
            element(self.marking, self.submodel, '1', scalar=9),
        )
        result, certificate = span.certificate(x)
        self.assertTrue(result)
        self.assertTrue(certificate['coefficients'])

    def test_b_prime_inside_a(self):
        span_a = ideal_span('aug_a', self.marking, PREC)
        span_b = ideal_span('aug_b′', self.marking, PREC)
        self.assertFalse(span_b.is_zero())
        for row in span_b.generators:
            x = include(self.submodel.element(row.reshape(self.submodel.shape), PREC), self.marking, self.model)
            self.assertTrue(span_a.contains(x))

    def test_unknown_kind(self):
        with self.assertRaises(Exception):
            ideal_span('nonsense', self.marking, PREC)


class TateCohomologyTests(SimpleTestCase):

    def test_trivial_action(self):
        module = AModule.trivial(3, 2)
        self.assertTrue(tate_cohomology(module, -1).is_zero())
        self.assertEqual(tate_cohomology(module, 0).invariants, (3, 3))
        self.assertEqual(tate_cohomology(module, 0).order, 9)

    def test_regular_lattice(self):
        module = AModule.permutation(3, [1, 2, 0])
        self.assertTrue(tate_cohomology(module, 0).is_zero())
        self.assertTrue(tate_cohomology(module, -1).is_zero())

    def test_periodicity(self):
        module = AModule.trivial(3, 1)
        self.assertEqual(tate_cohomology(module, 2).invariants, tate_cohomology(module, 0).invariants)
        self.assertEqual(tate_cohomology(module, 1).invariants, tate_cohomology(module, -1).invariants)

    def test_action_of_wrong_order(self):
        with self.assertRaises(ValueError):
            AModule(3, IntMatrix.from_rows([[0, 1], [1, 0]]))

    def test_abelianized_gprime(self):
        _, marking = marked('heisenberg')
        module = IdealService.abelianized_gprime_module(marking)
        self.assertEqual(module.rank, 3)
        self.assertTrue(tate_cohomology(module, -1).is_zero())


class ColumnExactnessTests(SimpleTestCase):

    def test_catalog_markings(self):
        for name in ('heisenberg', 'modular_l3', 'abelian(9,3)'):
            _, marking = marked(name)
            report = check_column_exactness(marking, 3)
            self.assertEqual(report['status'], 'pass', msg=f'{name}: {report["parts"]}')

    def test_non_abelian_gprime(self):
        _, marking = marked('heisenberg_by_cyclic')
        with self.assertRaises(ValueError):
            check_column_exactness(marking, 3)


class PowerTraceTests(SimpleTestCase):

    def test_heisenberg_example(self):
        group, marking = marked('heisenberg')
        _, submodel = models(marking)
        difference = power_trace_difference(group.element('y'), marking, submodel, PREC)
        expected = sum(
            (element(marking, submodel, word, scalar=9) for word in ('z', 'z^2')),
            element(marking, submodel, '1', scalar=9),
        )
        self.assertEqual(difference, expected)
        report = check_power_trace(group.element('y'), marking, PREC)
        self.assertEqual(report['status'], 'pass')
        self.assertTrue(report['certificate']['coefficients'])

    def test_every_gprime_element(self):
        for name in ('heisenberg', 'modular_l3'):
            _, marking = marked(name)
            for g in marking.gprime:
                self.assertEqual(check_power_trace(int(g), marking, 3)['status'], 'pass', msg=f'{name} {g}')


class OrbitOracleTests(SimpleTestCase):

    def test_orbit_structure(self):
        group, marking = marked('heisenberg')
        report = orbit_oracle(group.element('y'), marking, PREC)
        self.assertEqual(report['status'], 'pass')
        self.assertEqual(sorted(r['size'] for r in report['orbits']), [3, 3, 3, 9, 9])
        slopes = sorted(r['slope'] for r in report['orbits'] if 'slope' in r)
        self.assertEqual(slopes, [0, 1, 2])

    def test_agrees_with_direct_route(self):
        _, marking = marked('modular_l3')
        for g in marking.gprime:
            report = orbit_oracle(int(g), marking, 3)
            self.assertEqual(report['status'], 'pass')
            self.assertEqual(report['status'], check_power_trace(int(g), marking, 3)['status'])


class BetaExpansionTests(SimpleTestCase):

    def setUp(self):
        self.group, self.marking = marked('heisenberg')

    def test_zero(self):
        self.assertEqual(check_beta_expansion(BetaPrime(()), self.marking, PREC)['status'], 'pass')

    def test_single_term(self):
        beta = BetaPrime((BetaTerm(self.group.element('y'), self.group.element('z'), (1, 0, 0)),))
        report = check_beta_expansion(beta, self.marking, PREC)
        self.assertEqual(report['status'], 'pass')
        lemma6 = next(step for step in report['steps'] if step['step'] == 'lemma6')
        self.assertEqual(len(lemma6['inputs']), 2)

    def test_random_gamma_coefficients(self):
        rng = np.random.default_rng(7)
        for _ in range(3):
            beta = random_beta(self.marking, rng, PREC)
            report = check_beta_expansion(beta, self.marking, PREC)
            self.assertEqual(report['status'], 'pass', msg=report['steps'])


class ResVerTests(SimpleTestCase):

    def test_one(self):
        _, marking = marked('heisenberg')
        model, _ = models(marking)
        report = check_res_ver(model.one(PREC), marking)
        self.assertEqual(report['status'], 'pass')
        self.assertEqual(report['normalized']['status'], 'pass')

    def test_group_like(self):
        group, marking = marked('heisenberg')
        model, _ = models(marking)
        report = check_res_ver(model.group_like(group.element('x*y'), gamma=1, prec=PREC), marking)
        self.assertEqual(report['status'], 'pass')
        self.assertIn('normalized', report)

    def test_random_units(self):
        rng = np.random.default_rng(42)
        for name in ('heisenberg', 'modular_l3', 'abelian(9,3)'):
            _, marking = marked(name)
            model, _ = models(marking)
            for _ in range(5):
                report = check_res_ver(model.random_unit(rng, PREC), marking)
                self.assertEqual(report['status'], 'pass', msg=name)


class LogPipelineTests(SimpleTestCase):

    def setUp(self):
        self.group, self.marking = marked('heisenberg')
        _, self.submodel = models(self.marking)

    def test_one(self):
        report = check_log_pipeline(self.submodel.one(PREC), self.marking)
        self.assertEqual(report['status'], 'pass')
        self.assertEqual(report['precision_used'], PREC - 1)

    def test_trace_of_commutator_term(self):
        y = element(self.marking, self.submodel, 'y')
        yz = element(self.marking, self.submodel, 'y*z')
        unit = self.submodel.one(PREC) + tr_a(yz - y, self.marking)
        report = check_log_pipeline(unit, self.marking)
        self.assertEqual(report['status'], 'pass', msg=report['stages'])
        self.assertEqual(report['stages']['hypothesis']['status'], 'pass')
        self.assertEqual(report['stages']['logarithm']['status'], 'pass')

    def test_precondition_rejection(self):
        y = element(self.marking, self.submodel, 'y')
        report = check_log_pipeline(self.submodel.one(PREC) + tr_a(y, self.marking), self.marking)
        self.assertEqual(report['status'], 'fail')
        self.assertEqual(report['stages']['precondition']['status'], 'fail')
        self.assertNotIn('logarithm', report['stages'])
