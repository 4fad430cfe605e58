import numpy as np
from django.test import SimpleTestCase

from .exceptions import InconsistentPresentation, NotInSubgroup, SizeCap, UnknownName
from .services import (
    GroupService,
    build_group,
    catalog_group,
    find_abelian_index_l,
    hat_a_power,
    m_index,
    transfer,
)
from .words import parse_word

HEISENBERG = """
gen x order 3
gen y order 3
gen z order 3
rel [x,y] = z
central z
"""


class WordParserTests(SimpleTestCase):

    def test_powers_and_commutators(self):
        self.assertEqual(parse_word('x^2*y', ['x', 'y']), [0, 0, 2])
        self.assertEqual(parse_word('x^-1', ['x']), [1])
        self.assertEqual(parse_word('[x,y]', ['x', 'y']), [1, 3, 0, 2])
        self.assertEqual(parse_word('1', ['x']), [])

    def test_unknown_generator(self):
        with self.assertRaises(InconsistentPresentation):
            parse_word('x*w', ['x'])


class BuildGroupTests(SimpleTestCase):

    def test_single_generator(self):
        group = build_group('a: order 3')
        self.assertEqual(group.order, 3)
        self.assertTrue(group.is_abelian())

    def test_heisenberg_presentation(self):
        group = build_group(HEISENBERG)
        self.assertEqual(group.order, 27)
        self.assertFalse(group.is_abelian())
        self.assertTrue(group.check_associativity())
        x, y, z = (group.element(n) for n in 'xyz')
        self.assertEqual(group.commutator(x, y), z)
        self.assertEqual(group.label(group.mul(x, y)), 'x*y')

    def test_identity_is_index_zero(self):
        group = build_group(HEISENBERG)
        self.assertEqual(group.label(0), '1')
        self.assertTrue(np.array_equal(group.table[0], np.arange(27)))

    def test_collapsing_relation_rejected(self):
        with self.assertRaises(InconsistentPresentation):
            build_group('gen x order 3\ngen y order 3\nrel [x,y] = x')

    def test_relations_may_cut_the_order(self):
        group = build_group('gen x order 9\ngen y order 9\nrel [x,y] = 1\nrel x^3 = y^3')
        self.assertEqual(group.order, 27)
        self.assertEqual(group.declared_order, 81)
        self.assertTrue(group.is_abelian())
        self.assertEqual(group.exponent, 9)
        self.assertTrue(group.check_associativity())
        self.assertEqual(len(set(group.labels)), 27)
        x, y = group.element('x'), group.element('y')
        self.assertEqual(group.power(x, 3), group.power(y, 3))

    def test_order_above_the_generator_product(self):
        group = build_group('gen x order 3\ngen y order 3\nrel [[x,y],x] = 1\nrel [[x,y],y] = 1')
        self.assertEqual(group.order, 27)
        self.assertEqual(group.declared_order, 9)
        self.assertFalse(group.is_abelian())
        self.assertEqual(len(set(group.labels)), 27)
        self.assertEqual(group.label(0), '1')

    def test_mixed_primes_rejected(self):
        with self.assertRaises(InconsistentPresentation):
            build_group('gen x order 3\ngen y order 5')

    def test_size_cap(self):
        with self.assertRaises(SizeCap):
            build_group('gen x order 3\ngen y order 3\ngen z order 3', size_cap_exponent=2)


class CatalogTests(SimpleTestCase):

    def test_heisenberg_classes(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=2)
        self.assertEqual(group.order, 27)
        self.assertEqual(group.exponent, 3)
        self.assertEqual(len(group.classes), 11)
        self.assertEqual(int(group.classes.sizes.sum()), 27)
        self.assertTrue(marking.is_abelian())
        self.assertEqual(len(marking.gprime), 9)

    def test_heisenberg_five(self):
        group, _ = catalog_group('heisenberg', 5, gamma_exponent=1)
        self.assertEqual(group.order, 125)
        self.assertEqual(len(group.classes), 5 + 24)

    def test_modular_group_has_cyclic_gprime(self):
        group, marking = catalog_group('modular_l3', 3, gamma_exponent=2)
        self.assertEqual(group.order, 27)
        self.assertEqual(group.exponent, 9)
        sub = marking.gprime_group.group
        self.assertEqual(sub.order, 9)
        self.assertEqual(sub.exponent, 9)

    def test_abelian_marking(self):
        group, marking = catalog_group('abelian(9)', 3, gamma_exponent=2)
        self.assertEqual(len(marking.gprime), 3)
        for g in range(group.order):
            self.assertEqual(group.conj(g, marking.a), g)

    def test_non_abelian_gprime(self):
        _, marking = catalog_group('heisenberg_by_cyclic', 3, gamma_exponent=1)
        self.assertFalse(marking.is_abelian())

    def test_unknown_names(self):
        with self.assertRaises(UnknownName):
            catalog_group('dihedral', 3)
        with self.assertRaises(UnknownName):
            catalog_group('sporadic', 3)

    def test_orders_must_match_the_prime(self):
        with self.assertRaises(InconsistentPresentation):
            catalog_group('abelian(9)', 5, gamma_exponent=1)


class MarkingTests(SimpleTestCase):

    def test_counts_of_abelian_index_l_subgroups(self):
        heisenberg, _ = catalog_group('heisenberg', 3, gamma_exponent=1)
        cyclic, _ = catalog_group('abelian(9)', 3, gamma_exponent=1)
        plane, _ = catalog_group('elem_abelian(2)', 3, gamma_exponent=1)
        self.assertEqual(len(find_abelian_index_l(heisenberg, 1)), 4)
        self.assertEqual(len(find_abelian_index_l(cyclic, 1)), 1)
        self.assertEqual(len(find_abelian_index_l(plane, 1)), 4)

    def test_m_index(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        self.assertEqual(m_index(group.element('y'), marking), 0)
        self.assertEqual(m_index(group.element('x'), marking), 1)
        for g in range(group.order):
            self.assertLessEqual(m_index(g, marking), 1)
            for h in marking.gprime:
                self.assertEqual(m_index(group.mul(g, h), marking), m_index(g, marking))

    def test_hat_a_power(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        y, z = group.element('y'), group.element('z')
        self.assertEqual(hat_a_power(y, marking), 0)
        self.assertEqual(hat_a_power(z, marking), group.power(z, 3))
        with self.assertRaises(NotInSubgroup):
            hat_a_power(group.element('x'), marking)

    def test_derived_subgroup_killed_by_hat_a(self):
        for name in ('heisenberg', 'modular_l3'):
            group, marking = catalog_group(name, 3, gamma_exponent=1)
            for c in group.derived_subgroup:
                self.assertEqual(hat_a_power(int(c), marking), 0)

    def test_transfer(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        y = group.element('y')
        self.assertEqual(transfer(y, marking), hat_a_power(y, marking))
        z = group.element('z')
        self.assertEqual(transfer(z, marking), group.power(z, 3))
        derived = set(group.derived_subgroup.tolist())
        x = group.element('x')
        correction = group.mul(group.inv(group.power(x, 3)), transfer(x, marking))
        self.assertIn(correction, derived)

    def test_transfer_is_homomorphism(self):
        for name in ('heisenberg', 'modular_l3'):
            group, marking = catalog_group(name, 3, gamma_exponent=1)
            values = [transfer(g, marking) for g in range(group.order)]
            for g in range(group.order):
                for h in range(group.order):
                    self.assertEqual(values[group.mul(g, h)], group.mul(values[g], values[h]))

    def test_abelianization(self):
        group, _ = catalog_group('heisenberg', 3, gamma_exponent=1)
        quotient = GroupService.abelianization(group)
        self.assertEqual(quotient.target.order, 9)
        self.assertTrue(quotient.target.is_abelian())

    def test_homomorphism_count(self):
        group, _ = catalog_group('modular_l3', 3, gamma_exponent=1)
        self.assertEqual(len(GroupService.homomorphisms(group, 9)), 9)
