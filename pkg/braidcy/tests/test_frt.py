from fractions import Fraction

from django.test import SimpleTestCase

from braidcy.exceptions import NotScalar
from braidcy.frt import (
    action_matrices,
    apply_diagonal,
    coassociativity_check,
    diagonal_action,
    h_linearity_check,
    homological_matrix,
    quantum_label,
    rtt_check,
    scalar_action_check,
    stability_check,
)
from braidcy.linalg import Mat

from .fixtures import example2, pipeline, qp2, qp3_mixed, scalar_braiding, swap_table, trivial1


class ActionMatricesTests(SimpleTestCase):
    def test_quantum_plane(self):
        af = action_matrices(qp2(2))
        self.assertEqual(af.generator(0, 0), Mat.diagonal([1, 2]))
        self.assertEqual(af.generator(1, 1), Mat.diagonal([Fraction(1, 2), 1]))
        self.assertTrue(af.generator(0, 1).is_zero())
        self.assertTrue(af.generator(1, 0).is_zero())

    def test_entries_follow_coefficients(self):
        b = example2()
        af = action_matrices(b)
        for (i, j, m, n), value in b.nonzero():
            self.assertEqual(af.A[n][i][m, j], value)
            self.assertEqual(af.tensor[n, i, m, j], value)

    def test_degree_one(self):
        af = action_matrices(qp3_mixed())
        self.assertEqual(diagonal_action(af, 2, 2, 1), af.A[2][2])
        with self.assertRaises(ValueError):
            diagonal_action(af, 0, 0, 0)

    def test_degree_two_for_diagonal(self):
        af = action_matrices(qp2(2))
        self.assertEqual(diagonal_action(af, 0, 0, 2), Mat.diagonal([1, 2, 2, 4]))
        self.assertTrue(diagonal_action(af, 0, 1, 2).is_zero())

    def test_contracted_action_matches_matrices(self):
        p = pipeline(qp3_mixed())
        w = p.hd.w
        for upper in range(3):
            images = apply_diagonal(p.af, upper, w, 3)
            for lower in range(3):
                expected = diagonal_action(p.af, lower, upper, 3).apply(w)
                self.assertEqual(list(images[lower]), expected)


class StructuralChecksTests(SimpleTestCase):
    def test_rtt_holds_for_braidings(self):
        for b in (qp2(2), qp3_mixed(), example2(), trivial1()):
            self.assertTrue(rtt_check(b, action_matrices(b)))

    def test_rtt_fails_without_braid_equation(self):
        b = swap_table()
        self.assertFalse(rtt_check(b, action_matrices(b)))

    def test_c_is_linear(self):
        for b in (qp3_mixed(), example2()):
            self.assertTrue(h_linearity_check(b, action_matrices(b)))

    def test_graded_pieces_are_stable(self):
        p = pipeline(example2(), cap=5)
        for n in range(1, p.gp.gldim + 1):
            self.assertTrue(stability_check(p.af, p.gp.K[n], n))
        for n in range(2, 4):
            self.assertTrue(stability_check(p.af, p.gp.J[n], n))

    def test_coassociativity(self):
        af = action_matrices(qp3_mixed())
        self.assertTrue(coassociativity_check(af, 1, 1))
        self.assertTrue(coassociativity_check(af, 1, 2))
        self.assertTrue(coassociativity_check(af, 2, 1))


class QuantumLabelTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(quantum_label(1, 4), 1)
        self.assertEqual(quantum_label(1, 3), -1)
        self.assertEqual(quantum_label(2, 2), Fraction(1, 4))
        self.assertEqual(quantum_label(3, 1), Fraction(-1, 3))
        self.assertEqual(quantum_label(5, 0), 1)

    def test_negative_degree(self):
        with self.assertRaises(ValueError):
            quantum_label(1, -1)


class HomologicalMatrixTests(SimpleTestCase):
    def test_example2(self):
        p = pipeline(example2())
        self.assertEqual((p.hd.d, p.hd.Q), (4, 1))
        self.assertEqual(p.hd.D, -Mat.identity(4))

    def test_quantum_plane(self):
        p = pipeline(qp2(2))
        self.assertEqual((p.hd.d, p.hd.Q), (2, 1))
        self.assertEqual(p.hd.D, Mat.diagonal([2, Fraction(1, 2)]))

    def test_mixed_quantum_space(self):
        p = pipeline(qp3_mixed())
        self.assertEqual((p.hd.d, p.hd.Q), (3, -1))
        self.assertEqual(p.hd.D, Mat.diagonal([6, Fraction(1, 6), 1]))

    def test_polynomial_ring(self):
        p = pipeline(trivial1())
        self.assertEqual((p.hd.d, p.hd.Q), (1, -1))
        self.assertEqual(p.hd.D, Mat.identity(1))

    def test_scaled_line(self):
        p = pipeline(scalar_braiding(3))
        self.assertEqual(p.q, 3)
        self.assertEqual(p.hd.Q, Fraction(-1, 3))
        self.assertEqual(p.hd.D, Mat.from_rows([[3]]))

    def test_agrees_with_full_matrices(self):
        for b in (qp2(Fraction(1, 3)), qp3_mixed(), example2()):
            p = pipeline(b, cap=5)
            self.assertTrue(scalar_action_check(p.af, p.gp.K[p.gp.gldim], p.hd))

    def test_top_must_be_a_line(self):
        p = pipeline(qp2(2))
        with self.assertRaises(NotScalar):
            homological_matrix(p.af, p.gp.K[1], p.q, 1)
