import numpy as np
from django.test import SimpleTestCase

from lgroups.services import catalog_group

from .services import CharacterService, adams, character_table, defect_char, induce, inner_product, restrict, wtype_chars


def faithful_on(sub_table, local_element):
    """An irreducible of G′ not trivial on the given element"""
    for chi in sub_table.irreducibles():
        if chi.value_at(local_element) != 1:
            return chi
    raise AssertionError('no such character')


class CharacterTableTests(SimpleTestCase):

    def test_heisenberg_degrees(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        table = character_table(group, marking)
        self.assertEqual(sorted(table.degrees.tolist()), [1] * 9 + [3, 3])

    def test_modular_degrees(self):
        group, marking = catalog_group('modular_l3', 3, gamma_exponent=1)
        table = character_table(group, marking)
        self.assertEqual(len(table.linear_indices), 9)
        self.assertEqual(len(table.induced_indices), 2)

    def test_abelian_is_all_linear(self):
        group, marking = catalog_group('abelian(9,3)', 3, gamma_exponent=1)
        table = character_table(group, marking)
        self.assertEqual(len(table), 27)
        self.assertTrue((table.degrees == 1).all())

    def test_non_abelian_gprime_table(self):
        group, marking = catalog_group('heisenberg_by_cyclic', 3, gamma_exponent=1)
        table = character_table(group, marking)
        self.assertEqual(int((table.degrees ** 2).sum()), 81)

    def test_orthogonality(self):
        for name in ('heisenberg', 'modular_l3'):
            group, marking = catalog_group(name, 3, gamma_exponent=1)
            table = character_table(group, marking)
            for k in range(len(table)):
                totals = table.inner_products(table.values[k])
                expected = np.zeros(len(table), dtype=np.int64)
                expected[k] = group.order
                self.assertTrue(np.array_equal(totals[:, 0], expected))
                self.assertFalse(totals[:, 1:].any())

    def test_galois_permutes_irreducibles(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        table = character_table(group, marking)
        chi = table.irreducible(table.induced_indices[0])
        self.assertTrue(chi.galois(2).is_irreducible())
        self.assertEqual(chi.galois(2).galois(2), chi)

    def test_monomial_representation(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        table = character_table(group, marking)
        k = table.induced_indices[0]
        rep = table.monomial(k)
        ring = table.ring
        values = table.element_values(k)
        for g in range(group.order):
            trace = ring.exponent_vectors(rep.trace_exponents(g)).sum(axis=0)
            self.assertTrue(np.array_equal(trace, values[g]))
        x, y = group.element('x'), group.element('y')
        xy = group.mul(x, y)
        # column j of ρ(x)ρ(y) sits in row rows[x, rows[y, j]]
        for j in range(3):
            self.assertEqual(rep.rows[xy, j], rep.rows[x, rep.rows[y, j]])
            self.assertEqual(
                rep.exponents[xy, j] % 3,
                (rep.exponents[y, j] + rep.exponents[x, rep.rows[y, j]]) % 3,
            )


class InductionTests(SimpleTestCase):

    def setUp(self):
        self.group, self.marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        self.table, self.sub_table = CharacterService.tables(self.marking)
        self.sub = self.marking.gprime_group

    def test_induced_trivial(self):
        induced = induce(self.sub_table.trivial(), self.marking)
        for g in range(self.group.order):
            expected = 3 if self.marking.contains(g) else 0
            self.assertEqual(induced.value_at(g), expected)

    def test_faithful_induces_irreducible(self):
        z = self.sub.local(self.group.element('z'))
        chi_prime = faithful_on(self.sub_table, z)
        induced = induce(chi_prime, self.marking)
        self.assertEqual(inner_product(induced, induced), 1)
        centre = set(self.group.centre.tolist())
        for g in range(self.group.order):
            if g not in centre:
                self.assertEqual(induced.value_at(g), 0)

    def test_additive(self):
        first, second = self.sub_table.irreducible(1), self.sub_table.irreducible(4)
        self.assertEqual(induce(first + second, self.marking), induce(first, self.marking) + induce(second, self.marking))

    def test_frobenius_reciprocity(self):
        for chi_prime in self.sub_table.irreducibles():
            induced = induce(chi_prime, self.marking)
            for chi in self.table.irreducibles():
                self.assertEqual(
                    inner_product(induced, chi),
                    inner_product(chi_prime, restrict(chi, self.marking)),
                )


class AdamsTests(SimpleTestCase):

    def test_identity(self):
        group, marking = catalog_group('modular_l3', 3, gamma_exponent=1)
        table = character_table(group, marking)
        for chi in table.irreducibles():
            self.assertEqual(adams(chi, 1), chi)

    def test_exponent_l_group(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        table = character_table(group, marking)
        for chi in table.irreducibles():
            self.assertEqual(adams(chi, 3), table.trivial() * chi.degree)

    def test_linear_twist(self):
        group, marking = catalog_group('modular_l3', 3, gamma_exponent=1)
        table = character_table(group, marking)
        rho = table.irreducible(table.linear_indices[1])
        for chi in table.irreducibles():
            self.assertEqual(adams(rho * chi, 3), adams(rho, 3) * adams(chi, 3))


class DefectCharacterTests(SimpleTestCase):

    def test_heisenberg_faithful(self):
        group, marking = catalog_group('heisenberg', 3, gamma_exponent=1)
        _, sub_table = CharacterService.tables(marking)
        z = marking.gprime_group.local(group.element('z'))
        defect = defect_char(faithful_on(sub_table, z), marking)
        for g in range(group.order):
            self.assertEqual(defect.value_at(g), 0 if marking.contains(g) else 3)
        self.assertFalse(defect.is_zero())

    def test_cyclic_trivial(self):
        group, marking = catalog_group('abelian(9)', 3, gamma_exponent=1)
        _, sub_table = CharacterService.tables(marking)
        defect = defect_char(sub_table.trivial(), marking)
        for g in range(group.order):
            self.assertEqual(defect.value_at(g), 0 if marking.contains(g) else 3)

    def test_degree_zero_and_killed_by_adams(self):
        for name in ('heisenberg', 'modular_l3', 'abelian(9,3)'):
            group, marking = catalog_group(name, 3, gamma_exponent=1)
            _, sub_table = CharacterService.tables(marking)
            for chi_prime in sub_table.irreducibles():
                defect = defect_char(chi_prime, marking)
                self.assertEqual(defect.degree, 0)
                self.assertTrue(adams(defect, 3).is_zero())


class WTypeTests(SimpleTestCase):

    def test_count_and_trivial(self):
        _, marking = catalog_group('heisenberg', 3, gamma_exponent=2)
        characters = wtype_chars(marking)
        self.assertEqual(len(characters), 9)
        self.assertEqual(characters[0].character, characters[0].character.table.trivial())

    def test_restriction_is_wtype(self):
        _, marking = catalog_group('modular_l3', 3, gamma_exponent=2)
        for w in wtype_chars(marking):
            self.assertEqual(restrict(w.character, marking), w.restricted)
