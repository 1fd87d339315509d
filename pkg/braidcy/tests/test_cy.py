from fractions import Fraction

from django.test import SimpleTestCase

from braidcy.cy import (
    cy_check,
    cy_verdict,
    dualizing_descriptor,
    phi_automorphism,
    scalar_condition,
)
from braidcy.exceptions import InconsistentResult
from braidcy.families import diagonal
from braidcy.linalg import Mat

from .fixtures import QP3_MIXED, example2, pipeline, qp2, qp3_mixed, scalar_braiding, trivial1


class PhiTests(SimpleTestCase):
    def test_example2(self):
        p = pipeline(example2())
        self.assertEqual(phi_automorphism(p.b, p.hd, p.q), Mat.identity(4))

    def test_quantum_plane(self):
        p = pipeline(qp2(2))
        self.assertEqual(phi_automorphism(p.b, p.hd, p.q), Mat.diagonal([-2, Fraction(-1, 2)]))

    def test_polynomial_ring(self):
        p = pipeline(trivial1())
        self.assertEqual(phi_automorphism(p.b, p.hd, p.q), Mat.identity(1))

    def test_scaled_line(self):
        p = pipeline(scalar_braiding(3))
        self.assertEqual(phi_automorphism(p.b, p.hd, p.q), Mat.identity(1))

    def test_mismatched_nakayama(self):
        p = pipeline(qp2(2))
        with self.assertRaises(InconsistentResult):
            phi_automorphism(p.b, p.hd, p.q, nakayama=Mat.identity(2))


class VerdictTests(SimpleTestCase):
    def test_sign_depends_on_parity(self):
        self.assertTrue(cy_verdict(-Mat.identity(2), 2))
        self.assertFalse(cy_verdict(Mat.identity(2), 2))
        self.assertTrue(cy_verdict(Mat.identity(3), 3))

    def test_calabi_yau_inputs(self):
        for b in (trivial1(), qp2(1), scalar_braiding(3)):
            p = pipeline(b)
            result = cy_check(p.b, p.hd, p.q)
            self.assertTrue(result.is_cy)
            self.assertTrue(result.scalar_condition)
            self.assertTrue(result.descriptor.is_trivial)

    def test_example2_twist_is_minus_identity(self):
        p = pipeline(example2())
        result = cy_check(p.b, p.hd, p.q)
        self.assertFalse(result.is_cy)
        self.assertFalse(result.scalar_condition)
        self.assertEqual(result.descriptor.twist, -Mat.identity(4))
        self.assertEqual(
            result.descriptor.text,
            "_{φε^5}R[4](−4) with φε^5 = [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]",
        )

    def test_quantum_planes_away_from_one(self):
        p = pipeline(qp2(2))
        result = cy_check(p.b, p.hd, p.q)
        self.assertFalse(result.is_cy)
        self.assertFalse(scalar_condition(p.b, p.hd, p.q))

    def test_mixed_quantum_space(self):
        p = pipeline(qp3_mixed())
        result = cy_check(p.b, p.hd, p.q)
        self.assertFalse(result.is_cy)
        self.assertEqual(result.phi, Mat.diagonal([6, Fraction(1, 6), 1]))


class DescriptorTests(SimpleTestCase):
    def test_trivial_twist(self):
        descriptor = dualizing_descriptor(-Mat.identity(4), 4)
        self.assertEqual(descriptor.text, "R[4](−4)")
        self.assertEqual((descriptor.shift, descriptor.internal_shift), (4, -4))
        self.assertEqual(descriptor.as_dict()["twist_name"], "id")

    def test_quantum_plane(self):
        descriptor = dualizing_descriptor(Mat.diagonal([-2, Fraction(-1, 2)]), 2)
        self.assertEqual(descriptor.twist, Mat.diagonal([2, Fraction(1, 2)]))
        self.assertEqual(descriptor.text, "_{φε^3}R[2](−2) with φε^3 = [[2, 0], [0, 1/2]]")
        self.assertEqual(descriptor.as_dict()["twist"], [["2", "0"], ["0", "1/2"]])

    def test_diagonal_twist_is_row_products(self):
        qmatrices = [
            QP3_MIXED,
            [[1, 2], ["1/2", 1]],
            [[1, "2/3", 5], ["3/2", 1, "1/7"], ["1/5", 7, 1]],
        ]
        for qmatrix in qmatrices:
            b = diagonal(qmatrix).braiding()
            p = pipeline(b, cap=5)
            result = cy_check(p.b, p.hd, p.q)
            rows = [[Fraction(x) for x in row] for row in qmatrix]
            products = []
            for row in rows:
                value = Fraction(1)
                for x in row:
                    value *= x
                products.append(value)
            self.assertEqual(result.descriptor.twist, Mat.diagonal(products))
            self.assertEqual(result.is_cy, all(x == 1 for x in products))
