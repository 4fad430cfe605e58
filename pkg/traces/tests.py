import numpy as np
from django.test import SimpleTestCase

from characters.services import CharacterService
from lgroups.services import GroupService, catalog_group
from rings.models import CycloScalar

from .exceptions import NotAUnit
from .models import FAILED, UNKNOWN, VERIFIED, HOM, GroupRingElement, HomElement, ModeledGroup, TraceElement
from .services import (
    big_l, big_l_split, deflate, det_hom, hom_axioms, integral_log_unit, restrict_scalars,
    restricted_determinant, restricted_norm, restriction_matrix, tau, tr_hom, tr_inverse,
)

PREC = 4


def modeled(name, gamma_exponent=1):
    _, marking = catalog_group(name, 3, gamma_exponent=gamma_exponent)
    level = CharacterService.table_level(marking)
    return marking, ModeledGroup.from_marking(marking, level)


def random_element(model, rng, prec=PREC):
    return model.element(rng.integers(0, 3 ** prec, size=model.shape), prec)


class GroupRingTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.rng = np.random.default_rng(11)

    def test_inverse(self):
        u = self.model.random_unit(self.rng, PREC)
        self.assertEqual(u * u.inverse(), self.model.one(PREC))
        self.assertEqual(u.inverse() * u, self.model.one(PREC))

    def test_non_unit(self):
        x = self.model.group_like(0, scalar=3, prec=PREC)
        with self.assertRaises(NotAUnit):
            x.inverse()

    def test_associative(self):
        x, y, z = (random_element(self.model, self.rng) for _ in range(3))
        self.assertEqual((x * y) * z, x * (y * z))

    def test_gamma_coefficients_are_central(self):
        group = self.model.group
        x = self.model.group_like(group.element('x'), gamma=1, prec=PREC)
        y = self.model.group_like(group.element('y'), prec=PREC)
        self.assertEqual(
            x * y,
            self.model.group_like(group.mul(group.element('x'), group.element('y')), gamma=1, prec=PREC),
        )

    def test_json_round_trip(self):
        u = self.model.random_unit(self.rng, PREC)
        self.assertEqual(GroupRingElement.from_dict(self.model, u.to_dict()), u)


class TauTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.group = self.model.group

    def test_central_element(self):
        z = self.group.element('z')
        t = tau(self.model.group_like(z, prec=PREC))
        expected = TraceElement.basis(self.model, self.group.classes.class_of[z], prec=PREC)
        self.assertEqual(t, expected)

    def test_one_class_for_y_conjugates(self):
        class_of = self.group.classes.class_of
        y, yz, yz2 = (self.group.element(text) for text in ('y', 'y*z', 'y*z^2'))
        self.assertEqual(class_of[y], class_of[yz])
        self.assertEqual(class_of[y], class_of[yz2])

    def test_commutators_vanish(self):
        rng = np.random.default_rng(3)
        for _ in range(3):
            x, y = random_element(self.model, rng), random_element(self.model, rng)
            self.assertEqual(tau(x * y), tau(y * x))


class TraceHomTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.table = self.model.table

    def test_identity(self):
        f = tr_hom(tau(self.model.one(PREC)))
        algebra = self.model.algebra(PREC)
        for k, degree in enumerate(self.table.degrees):
            self.assertEqual(f.values[k], algebra.group_like(0, int(degree)))

    def test_linear_character_on_group_like(self):
        group = self.model.group
        g = group.element('x*y')
        f = tr_hom(tau(self.model.group_like(g, prec=PREC)))
        algebra = self.model.algebra(PREC)
        for k in self.table.linear_indices:
            value = CycloScalar(self.table.ring, self.table.element_values(k)[g])
            self.assertEqual(f.values[k], algebra.group_like(int(self.model.pi[g]), value))

    def test_well_defined(self):
        rng = np.random.default_rng(5)
        x, y = random_element(self.model, rng), random_element(self.model, rng)
        f = tr_hom(tau(x * y - y * x))
        self.assertTrue(all(value.is_zero() for value in f.values))

    def test_inverse_recovers_every_basis_element(self):
        classes = self.model.group.classes
        for c in range(len(classes)):
            for gamma in range(self.model.gamma_order):
                t = TraceElement.basis(self.model, c, gamma, prec=6)
                self.assertEqual(tr_inverse(tr_hom(t)), t)

    def test_twisted_slices_match_twist(self):
        rng = np.random.default_rng(8)
        t = tau(random_element(self.model, rng))
        f = tr_hom(t, sigmas=(1, 2))
        _, report = hom_axioms(f)
        self.assertEqual(report['twist_compatible'], VERIFIED)
        self.assertEqual(report['galois_stable'], VERIFIED)
        self.assertEqual(report['integral'], UNKNOWN)


class DetTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.rng = np.random.default_rng(17)

    def test_one(self):
        f = det_hom(self.model.one(PREC))
        self.assertEqual(f, HomElement.constant(self.model, PREC))

    def test_commutator_subgroup_element(self):
        z = self.model.group.element('z')
        f = det_hom(self.model.group_like(z, prec=PREC))
        self.assertEqual(f, HomElement.constant(self.model, PREC))

    def test_linear_values_of_group_like(self):
        table = self.model.table
        g = self.model.group.element('x')
        f = det_hom(self.model.group_like(g, prec=PREC), sigmas=())
        algebra = self.model.algebra(PREC)
        for k in table.linear_indices:
            value = CycloScalar(table.ring, table.element_values(k)[g])
            self.assertEqual(f.values[k], algebra.group_like(int(self.model.pi[g]), value))

    def test_multiplicative(self):
        u = self.model.random_unit(self.rng, PREC)
        v = self.model.random_unit(self.rng, PREC)
        self.assertEqual(det_hom(u * v, sigmas=()), det_hom(u, sigmas=()) * det_hom(v, sigmas=()))

    def test_non_unit(self):
        with self.assertRaises(NotAUnit):
            det_hom(self.model.zero(PREC))

    def test_axioms_hold(self):
        for name in ('heisenberg', 'modular_l3'):
            _, model = modeled(name)
            for _ in range(2):
                f, report = hom_axioms(det_hom(model.random_unit(self.rng, PREC)))
                self.assertEqual(report['failures'], [])
                self.assertEqual(f.flags, {
                    'galois_stable': VERIFIED, 'twist_compatible': VERIFIED, 'integral': VERIFIED,
                })

    def test_constant_passes(self):
        _, report = hom_axioms(HomElement.constant(self.model, PREC))
        self.assertEqual(report['galois_stable'], VERIFIED)
        self.assertEqual(report['integral'], VERIFIED)

    def test_perturbed_value_breaks_galois(self):
        f = det_hom(self.model.random_unit(self.rng, PREC), sigmas=())
        k = self.model.table.linear_indices[1]
        values = list(f.values)
        values[k] = values[k].scale(4)
        perturbed = HomElement(self.model, HOM, tuple(values))
        flagged, _ = hom_axioms(perturbed)
        self.assertEqual(flagged.flags['galois_stable'], FAILED)


class LogarithmTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.rng = np.random.default_rng(23)

    def test_constant(self):
        f = big_l(HomElement.constant(self.model, PREC))
        self.assertTrue(all(value.is_zero() for value in f.values))

    def test_central_group_like(self):
        u = self.model.group_like(0, gamma=1, prec=PREC)
        f = big_l(det_hom(u, sigmas=()))
        self.assertTrue(all(value.is_zero() for value in f.values))

    def test_additive(self):
        u = self.model.random_unit(self.rng, PREC)
        v = self.model.random_unit(self.rng, PREC)
        self.assertEqual(
            big_l(det_hom(u * v, sigmas=())),
            big_l(det_hom(u, sigmas=())) + big_l(det_hom(v, sigmas=())),
        )

    def test_split_form_agrees(self):
        f = det_hom(self.model.random_unit(self.rng, 6), sigmas=())
        self.assertEqual(big_l_split(f), big_l(f))

    def test_twist_compatible(self):
        f = big_l(det_hom(self.model.random_unit(self.rng, PREC)))
        _, report = hom_axioms(f)
        self.assertEqual(report['twist_compatible'], VERIFIED)
        self.assertEqual(report['galois_stable'], VERIFIED)


class IntegralLogTests(SimpleTestCase):

    def setUp(self):
        marking, model = modeled('heisenberg')
        self.submodel = ModeledGroup.subgroup_of(marking, model.level)

    def test_one(self):
        self.assertTrue(integral_log_unit(self.submodel.one(PREC)).is_zero())

    def test_group_like(self):
        self.assertTrue(integral_log_unit(self.submodel.group_like(1, gamma=2, prec=PREC)).is_zero())

    def test_principal_unit(self):
        rng = np.random.default_rng(1)
        y = self.submodel.one(PREC) + random_element(self.submodel, rng).scale(3)
        self.assertEqual(integral_log_unit(y).prec, PREC - 1)


class DeflationTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.quotient = GroupService.abelianization(self.model.group)
        self.target = ModeledGroup.quotient_of(self.model, self.quotient)
        self.rng = np.random.default_rng(29)

    def test_group_like(self):
        g = self.model.group.element('x*y')
        image = self.quotient(g)
        self.assertEqual(
            deflate(tau(self.model.group_like(g, prec=PREC)), self.quotient, self.target),
            tau(self.target.group_like(image, prec=PREC)),
        )

    def test_commutes_with_trace(self):
        t = tau(random_element(self.model, self.rng))
        self.assertEqual(
            deflate(tr_hom(t), self.quotient, self.target),
            tr_hom(deflate(t, self.quotient, self.target)),
        )

    def test_commutes_with_det_and_log(self):
        u = self.model.random_unit(self.rng, PREC)
        deflated = deflate(u, self.quotient, self.target)
        self.assertEqual(deflate(det_hom(u, sigmas=()), self.quotient, self.target), det_hom(deflated, sigmas=()))
        self.assertEqual(
            deflate(big_l(det_hom(u, sigmas=())), self.quotient, self.target),
            big_l(det_hom(deflated, sigmas=())),
        )

    def test_identity_quotient(self):
        marking, model = modeled('abelian(9,3)')
        identity = GroupService.quotient(model.group, [0])
        target = ModeledGroup.quotient_of(model, identity)
        u = model.random_unit(self.rng, PREC)
        self.assertTrue(np.array_equal(deflate(u, identity, target).coeffs, u.coeffs))


class RestrictionOfScalarsTests(SimpleTestCase):

    def setUp(self):
        self.marking, self.model = modeled('heisenberg')
        self.submodel = ModeledGroup.subgroup_of(self.marking, self.model.level)
        self.rng = np.random.default_rng(31)

    def test_one(self):
        f = restrict_scalars(self.model.one(PREC), self.marking, self.submodel)
        self.assertEqual(f, HomElement.constant(self.submodel, PREC))

    def test_random_unit_matches_induced_values(self):
        u = self.model.random_unit(self.rng, PREC)
        restrict_scalars(u, self.marking, self.submodel)

    def test_transversal_generator_matrix(self):
        group = self.model.group
        a = self.marking.a
        matrix = restriction_matrix(self.model.group_like(a, prec=PREC), self.marking, self.submodel)
        a_cubed = self.marking.gprime_group.local(group.power(a, 3))
        for i in range(3):
            for j in range(3):
                if j == i + 1:
                    expected = self.submodel.one(PREC)
                elif (i, j) == (2, 0):
                    expected = self.submodel.group_like(a_cubed, prec=PREC)
                else:
                    expected = self.submodel.zero(PREC)
                self.assertEqual(matrix[i][j], expected)

    def test_gprime_element_is_diagonal(self):
        group = self.model.group
        g = self.marking.gprime[1]
        matrix = restriction_matrix(self.model.group_like(int(g), prec=PREC), self.marking, self.submodel)
        sub = self.marking.gprime_group
        for i, t in enumerate(self.marking.transversal):
            conjugate = group.mul(t, int(g), group.inv(t))
            self.assertEqual(matrix[i][i], self.submodel.group_like(sub.local(conjugate), prec=PREC))

    def test_norm_determinant_agrees(self):
        u = self.model.random_unit(self.rng, PREC)
        norm = restricted_norm(u, self.marking, self.submodel)
        self.assertEqual(det_hom(norm, sigmas=()), restricted_determinant(u, self.marking, self.submodel, sigmas=()))
