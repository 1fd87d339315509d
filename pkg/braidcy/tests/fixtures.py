from collections import namedtuple
from fractions import Fraction

from braidcy import families
from braidcy.braiding import Braiding, verify_label
from braidcy.frt import action_matrices, homological_matrix
from braidcy.linalg import Mat
from braidcy.nichols import build_quadratic, graded_profile

QP3_MIXED = [[1, 2, 3], ["1/2", 1, "1/3"], ["1/3", 3, 1]]

Pipeline = namedtuple("Pipeline", "b q qd gp af hd")


def qp2(q):
    q = Fraction(q)
    return families.diagonal([[1, q], [1 / q, 1]]).braiding()


def qp3_mixed():
    return families.diagonal(QP3_MIXED).braiding()


def example2():
    return families.example2().braiding()


def trivial1():
    return families.trivial1().braiding()


def scalar_braiding(value, label=None):
    """N = 1 with c(v⊗v) = value·v⊗v."""
    return Braiding(1, Mat.from_rows([[value]]), None if label is None else Fraction(label))


def swap_table():
    """c(v1⊗v1) = v1⊗v2, c(v1⊗v2) = v1⊗v1, other basis vectors fixed."""
    rows = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return Braiding(2, Mat.from_rows(rows))


def three_eigenvalue_table():
    """Diagonal braiding with q_11 = 2: eigenvalues 2, 1 and -1 on V⊗V."""
    return Braiding(2, Mat.from_rows(families.diagonal_table(((Fraction(2), 1), (1, 1)))))


def mutated(b, row, col, factor=2):
    entries = dict(b.coeffs.items())
    entries[row, col] = entries[row, col] * factor
    size = b.dimension ** 2
    return Braiding(b.dimension, Mat.from_dict(size, size, entries), b.label, b.name)


def pipeline(b, cap=6):
    q = verify_label(b, b.label)
    qd = build_quadratic(b, q, cap)
    gp = graded_profile(qd, cap)
    af = action_matrices(b)
    hd = homological_matrix(af, gp.K[gp.gldim], q, gp.gldim)
    return Pipeline(b, q, qd, gp, af, hd)
