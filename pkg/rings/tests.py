import numpy as np
from django.test import SimpleTestCase

from .exceptions import BadUnit, NotDivisible, PrecisionExhausted
from .models import CycloRing, CycloScalar, IntMatrix, PadicScalar
from .services import laplace_determinant, smith_normal_form, teichmuller


class PadicScalarTests(SimpleTestCase):

    def test_arithmetic_reduces_mod_l_power(self):
        a = PadicScalar(3, 25, 3)
        b = PadicScalar(3, 5, 2)
        self.assertEqual((a + b).prec, 2)
        self.assertEqual((a * b).value, (25 * 5) % 9)

    def test_exact_division_loses_precision(self):
        x = PadicScalar(3, 18, 4).exact_div_l(2)
        self.assertEqual(x.value, 2)
        self.assertEqual(x.prec, 2)

    def test_division_of_non_multiple_fails(self):
        with self.assertRaises(NotDivisible):
            PadicScalar(3, 4, 4).exact_div_l(1)

    def test_non_multiple_fails_before_precision_runs_out(self):
        with self.assertRaises(NotDivisible):
            PadicScalar(3, 1, 1).exact_div_l(1)

    def test_division_past_precision_fails(self):
        with self.assertRaises(PrecisionExhausted):
            PadicScalar(3, 0, 2).exact_div_l(2)

    def test_inverse(self):
        x = PadicScalar(5, 7, 3)
        self.assertEqual((x * x.inverse()).value, 1)
        with self.assertRaises(BadUnit):
            PadicScalar(5, 10, 3).inverse()


class CycloRingTests(SimpleTestCase):

    def setUp(self):
        self.ring = CycloRing(3, 2)

    def test_dimensions(self):
        self.assertEqual(self.ring.order, 9)
        self.assertEqual(self.ring.degree, 6)

    def test_roots_sum_to_zero(self):
        total = sum(self.ring.root(k) for k in range(9))
        self.assertFalse(np.any(total))

    def test_zeta_has_order_l_power(self):
        zeta = CycloScalar.zeta(self.ring)
        self.assertEqual(zeta ** 9, 1)
        self.assertNotEqual(zeta ** 3, 1)

    def test_galois_is_a_ring_map(self):
        a = CycloScalar(self.ring, [1, 2, 0, 0, 5, 1])
        b = CycloScalar(self.ring, [0, 1, 1, 3, 0, 0])
        self.assertEqual((a * b).galois(2), a.galois(2) * b.galois(2))

    def test_galois_needs_unit_exponent(self):
        with self.assertRaises(BadUnit):
            CycloScalar.zeta(self.ring).galois(3)

    def test_embed_lower_level(self):
        lower = CycloRing(3, 1)
        omega = self.ring.embed(lower.root(1), 1)
        self.assertTrue(np.array_equal(omega, self.ring.root(3)))

    def test_rotate_rows(self):
        rows = np.stack([self.ring.one(), self.ring.one()])
        rotated = self.ring.rotate_rows(rows, [1, 8])
        self.assertTrue(np.array_equal(rotated[0], self.ring.root(1)))
        self.assertTrue(np.array_equal(rotated[1], self.ring.root(8)))

    def test_truncated_equality(self):
        a = CycloScalar.from_int(self.ring, 1, 3)
        b = CycloScalar.from_int(self.ring, 28, 4)
        self.assertEqual(a, b)


class SmithNormalFormTests(SimpleTestCase):

    def test_diagonal_and_unimodular(self):
        matrix = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        U, D, V = smith_normal_form(matrix)
        self.assertEqual(D.diagonal(), (2, 6, 12))
        self.assertTrue(D.is_diagonal())
        self.assertIn(abs(U.determinant()), (1,))
        self.assertIn(abs(V.determinant()), (1,))

    def test_coprime_diagonal_merges(self):
        _, D, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
        self.assertEqual(D.diagonal(), (1, 6))

    def test_identity_and_zero(self):
        _, D, _ = smith_normal_form(IntMatrix.identity(3))
        self.assertEqual(D, IntMatrix.identity(3))
        _, D, _ = smith_normal_form(IntMatrix.zeros(2, 3))
        self.assertEqual(D, IntMatrix.zeros(2, 3))

    def test_random_matrices_reproduce(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            matrix = IntMatrix.from_rows(rng.integers(-9, 10, size=(6, 5)).tolist())
            U, D, V = smith_normal_form(matrix)
            self.assertEqual(U @ matrix @ V, D)
            diagonal = [d for d in D.diagonal()]
            for first, second in zip(diagonal, diagonal[1:]):
                if first:
                    self.assertEqual(second % first, 0)
                else:
                    self.assertEqual(second, 0)

    def test_rank_deficient(self):
        matrix = IntMatrix.from_rows([[3, 3], [3, 3]])
        _, D, _ = smith_normal_form(matrix)
        self.assertEqual(D.diagonal(), (3, 0))


class ServiceTests(SimpleTestCase):

    def test_laplace_determinant_over_integers(self):
        self.assertEqual(laplace_determinant([[2, 1, 0], [1, 3, 1], [0, 1, 4]]), 18)

    def test_laplace_determinant_over_cyclotomics(self):
        ring = CycloRing(3, 1)
        zeta = CycloScalar.zeta(ring, 1, 5)
        one = CycloScalar.from_int(ring, 1, 5)
        det = laplace_determinant([[one, zeta], [zeta, one]])
        self.assertEqual(det, one - zeta * zeta)

    def test_teichmuller_is_root_of_unity(self):
        w = teichmuller(2, 3, 4)
        self.assertEqual(w % 3, 2)
        self.assertEqual(pow(w, 2, 81), 1)
