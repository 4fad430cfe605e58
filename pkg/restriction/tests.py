import numpy as np
from django.test import SimpleTestCase

from characters.services import CharacterService
from lgroups.services import catalog_group
from rings.exceptions import NotDivisible
from traces.models import HOM_STAR, VERIFIED, HomElement, ModeledGroup, TraceElement
from traces.services import hom_axioms, tau, tr_hom

from .services import RestrictionService, check_hd_square, res_hom, res_natural, res_trace, trace_restriction_report, truncation

PREC = 4


def models(name, gamma_exponent=1):
    _, marking = catalog_group(name, 3, gamma_exponent=gamma_exponent)
    level = CharacterService.table_level(marking)
    model = ModeledGroup.from_marking(marking, level)
    return marking, model, ModeledGroup.subgroup_of(marking, level)


class NaturalRestrictionTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model, self.submodel = models('heisenberg')

    def test_constant(self):
        f = res_natural(HomElement.constant(self.model, PREC), self.marking, self.submodel)
        self.assertEqual(f, HomElement.constant(self.submodel, PREC))

    def test_trace_of_gprime_element(self):
        for g in self.marking.gprime:
            f = res_natural(tr_hom(tau(self.model.group_like(int(g), prec=PREC))), self.marking, self.submodel)
            expected = tr_hom(RestrictionService.closed_form_trace(int(g), self.marking, self.submodel, PREC))
            self.assertEqual(f, expected)

    def test_trace_off_gprime_vanishes(self):
        g = self.marking.a
        f = res_natural(tr_hom(tau(self.model.group_like(g, prec=PREC))), self.marking, self.submodel)
        self.assertTrue(all(value.is_zero() for value in f.values))


class TraceRestrictionTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model, self.submodel = models('heisenberg')
        self.group = self.model.group
        self.sub = self.marking.gprime_group
        self.sub_classes = self.submodel.group.classes

    def basis(self, g):
        return TraceElement.basis(self.submodel, self.sub_classes.class_of[self.sub.local(g)], prec=PREC)

    def test_central_element(self):
        z = self.group.element('z')
        self.assertEqual(res_trace(tau(self.model.group_like(z, prec=PREC)), self.marking, self.submodel), self.basis(z).scale(3))

    def test_outside_gprime(self):
        a = self.marking.a
        result = res_trace(tau(self.model.group_like(a, prec=PREC)), self.marking, self.submodel)
        self.assertEqual(result, self.basis(self.group.power(a, 3)))

    def test_conjugation_orbit(self):
        y = self.group.element('y')
        result = res_trace(tau(self.model.group_like(y, prec=PREC)), self.marking, self.submodel)
        expected = self.basis(y) + self.basis(self.group.element('y*z')) + self.basis(self.group.element('y*z^2'))
        self.assertEqual(result, expected)

    def test_gamma_coefficient_off_gprime(self):
        marking, model, submodel = models('heisenberg', gamma_exponent=2)
        group, sub = model.group, marking.gprime_group
        a = marking.a
        result = res_trace(tau(model.group_like(a, gamma=1, prec=PREC)), marking, submodel)
        a_cubed = submodel.group.classes.class_of[sub.local(group.power(a, 3))]
        self.assertEqual(result, TraceElement.basis(submodel, a_cubed, gamma=3, prec=PREC))

    def test_closed_form_for_every_element(self):
        for name in ('heisenberg', 'modular_l3', 'heisenberg_by_cyclic'):
            marking, model, submodel = models(name)
            for g in range(model.order):
                self.assertEqual(
                    res_trace(tau(model.group_like(g, prec=PREC)), marking, submodel),
                    RestrictionService.closed_form_trace(g, marking, submodel, PREC),
                )

    def test_dual_route_on_class_basis(self):
        for name in ('heisenberg', 'modular_l3'):
            marking, model, submodel = models(name)
            for c in range(len(model.group.classes)):
                t = TraceElement.basis(model, c, prec=PREC)
                report = trace_restriction_report(t, marking, submodel, sigmas=(1, 2))
                self.assertEqual(report['status'], 'pass', msg=f'{name} class {c}')


class SeriesTests(SimpleTestCase):

    def test_exponent_l_group_has_one_term(self):
        marking, model, submodel = models('heisenberg')
        counts = []
        for chi_prime in submodel.table.irreducibles():
            defect, terms = truncation(chi_prime, marking, model.table)
            counts.append(len(terms))
            if terms:
                self.assertEqual(terms[0], defect)
        self.assertLessEqual(max(counts), 1)
        self.assertIn(1, counts)

    def test_r_zero_of_index_l_marking(self):
        marking, _, _ = models('modular_l3')
        self.assertEqual(RestrictionService.r_zero(marking), 1)

    def test_trace_terms_divide_exactly(self):
        marking, model, submodel = models('modular_l3')
        rng = np.random.default_rng(2)
        t = tau(model.element(rng.integers(0, 3 ** PREC, size=model.shape), PREC))
        f, records = res_hom(tr_hom(t), marking, submodel)
        self.assertEqual(len(records), len(submodel.table))
        self.assertEqual(f.prec, PREC - max(r['terms'] for r in records))

    def test_non_integral_term(self):
        marking, model, submodel = models('heisenberg')
        algebra = model.algebra(PREC)
        values = (algebra.one(),) + tuple(algebra.zero() for _ in range(len(model.table) - 1))
        f = HomElement(model, HOM_STAR, values)
        with self.assertRaises(NotDivisible):
            res_hom(f, marking, submodel)

    def test_twist_compatible_output(self):
        marking, model, submodel = models('heisenberg')
        rng = np.random.default_rng(4)
        t = tau(model.element(rng.integers(0, 3 ** PREC, size=model.shape), PREC))
        f, _ = res_hom(tr_hom(t, sigmas=(1, 2)), marking, submodel)
        _, report = hom_axioms(f)
        self.assertEqual(report['twist_compatible'], VERIFIED)
        self.assertEqual(report['galois_stable'], VERIFIED)


class SquareTests(SimpleTestCase):

    def test_one(self):
        marking, model, submodel = models('heisenberg')
        report = check_hd_square(model.one(6), marking, submodel)
        self.assertEqual(report['status'], 'pass')

    def test_group_like(self):
        marking, model, submodel = models('heisenberg')
        report = check_hd_square(model.group_like(model.group.element('x*y'), gamma=1, prec=6), marking, submodel)
        self.assertEqual(report['status'], 'pass')

    def test_random_units(self):
        rng = np.random.default_rng(42)
        for name in ('heisenberg', 'modular_l3'):
            marking, model, submodel = models(name)
            report = check_hd_square(model.random_unit(rng, 6), marking, submodel)
            self.assertEqual(report['status'], 'pass', msg=name)
            self.assertGreaterEqual(report['hom']['precision_used'], 4)
