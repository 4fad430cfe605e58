import numpy as np
import sympy
from django.test import SimpleTestCase

from rings.models import CycloScalar

from .exceptions import NoConvergence, OutOfModel
from .models import GammaAlgebra
from .services import log_one_plus, plog, psi, twist_sharp


class GammaAlgebraTests(SimpleTestCase):

    def setUp(self):
        self.algebra = GammaAlgebra(l=3, gamma_exponent=2, level=2, prec=5)
        self.rng = np.random.default_rng(11)

    def test_group_like_multiplication(self):
        g2 = self.algebra.group_like(2)
        g8 = self.algebra.group_like(8)
        self.assertEqual(g2 * g8, self.algebra.group_like(1))

    def test_ring_axioms(self):
        for _ in range(3):
            x, y, z = (self.algebra.random_element(self.rng) for _ in range(3))
            self.assertEqual((x * y) * z, x * (y * z))
            self.assertEqual(x * (y + z), x * y + x * z)
            self.assertEqual(x * y, y * x)

    def test_inverse(self):
        x = self.algebra.random_element(self.rng, unit=True)
        self.assertEqual(x * x.inverse(), 1)
        with self.assertRaises(OutOfModel):
            self.algebra.group_like(0, 3).inverse()

    def test_zeta_coefficient(self):
        zeta = CycloScalar.zeta(self.algebra.ring, 1, 5)
        x = self.algebra.group_like(4, zeta)
        self.assertEqual(x ** 9, self.algebra.group_like(0))


class PsiTests(SimpleTestCase):

    def setUp(self):
        self.algebra = GammaAlgebra(l=3, gamma_exponent=2, level=2, prec=4)
        self.rng = np.random.default_rng(5)

    def test_group_like(self):
        self.assertEqual(psi(self.algebra.group_like(2)), self.algebra.group_like(6))
        self.assertEqual(psi(self.algebra.one()), 1)

    def test_multiplicative(self):
        x = self.algebra.random_element(self.rng)
        y = self.algebra.random_element(self.rng)
        self.assertEqual(psi(x * y), psi(x) * psi(y))
        self.assertEqual(psi(x + y), psi(x) + psi(y))

    def test_commutes_with_galois(self):
        x = self.algebra.random_element(self.rng)
        for u in (2, 4, 5):
            self.assertEqual(psi(x.galois(u)), psi(x).galois(u))

    def test_twist_compatibility(self):
        x = self.algebra.random_element(self.rng)
        for sigma in range(9):
            self.assertEqual(psi(twist_sharp(3 * sigma, x)), twist_sharp(sigma, psi(x)))


class TwistTests(SimpleTestCase):

    def setUp(self):
        self.algebra = GammaAlgebra(l=3, gamma_exponent=2, level=2, prec=4)
        self.rng = np.random.default_rng(9)

    def test_trivial_character(self):
        x = self.algebra.random_element(self.rng)
        self.assertEqual(twist_sharp(0, x), x)

    def test_group_like(self):
        zeta = CycloScalar.zeta(self.algebra.ring, 2 * 5, 4)
        self.assertEqual(twist_sharp(2, self.algebra.group_like(5)), self.algebra.group_like(5, zeta))

    def test_composition_and_ring_map(self):
        x = self.algebra.random_element(self.rng)
        y = self.algebra.random_element(self.rng)
        self.assertEqual(twist_sharp(7, twist_sharp(4, x)), twist_sharp(11, x))
        self.assertEqual(twist_sharp(4, x * y), twist_sharp(4, x) * twist_sharp(4, y))

    def test_needs_enough_roots_of_unity(self):
        small = GammaAlgebra(l=3, gamma_exponent=2, level=1, prec=4)
        with self.assertRaises(OutOfModel):
            twist_sharp(1, small.group_like(1))


class LogTests(SimpleTestCase):

    def setUp(self):
        self.algebra = GammaAlgebra(l=3, gamma_exponent=2, level=2, prec=6)
        self.rng = np.random.default_rng(3)

    def test_log_of_one(self):
        self.assertTrue(plog(self.algebra.one(), 6).is_zero())

    def test_rational_series(self):
        modulus = 3 ** 6
        for u in (1, 2, 5, 13):
            x = self.algebra.group_like(0, 1 + 3 * u)
            expected = sum(
                sympy.Rational((-1) ** (k + 1) * (3 * u) ** k, k) for k in range(1, 40)
            )
            residue = int(expected.p * pow(int(expected.q), -1, modulus)) % modulus
            self.assertEqual(log_one_plus(x), self.algebra.group_like(0, residue))

    def test_torsion_has_zero_log(self):
        value = plog(self.algebra.group_like(1), 6)
        self.assertTrue(value.is_zero())
        self.assertEqual(value.prec, 4)

    def test_teichmuller_units_have_zero_log(self):
        self.assertTrue(plog(self.algebra.group_like(0, -1), 6).is_zero())

    def principal_unit(self, gamma, residue):
        """residue · γ · (1 + 3w) for random w"""
        w = self.algebra.random_element(self.rng)
        return self.algebra.group_like(gamma, residue) * (self.algebra.one() + w.scale(3))

    def test_additive(self):
        for gamma, residue in ((1, 1), (4, 2), (0, 2)):
            x = self.principal_unit(gamma, residue)
            y = self.principal_unit(3, 1)
            self.assertEqual(plog(x * y, 6), plog(x, 6) + plog(y, 6))

    def test_non_unit(self):
        with self.assertRaises(NoConvergence):
            plog(self.algebra.group_like(0, 3), 6)
