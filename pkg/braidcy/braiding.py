"""
Braided vector spaces of Hecke type.

A braiding on V (dim N) is stored as its coefficient table: row (i, j) is the
input pair, column (m, n) the output pair, and the entry is c^{mn}_{ij}, so that
c(v_i⊗v_j) = Σ c^{mn}_{ij} v_m⊗v_n. Composite pairs are indexed i*N + j.
"""
import dataclasses
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import BadLabel, InconsistentResult, LabelAmbiguous, NotHecke
from .linalg import Mat, from_qq, image, intersect, kron, reversal, rref

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Braiding:
    dimension: int
    coeffs: Mat
    label: Fraction = None
    name: str = ""

    def __post_init__(self):
        size = self.dimension ** 2
        if self.coeffs.shape != (size, size):
            raise ValueError(f"coefficient table must be {size}x{size}, got {self.coeffs.shape}")

    @classmethod
    def from_operator(cls, operator, dimension, label=None, name=""):
        return cls(dimension, operator.T, label, name)

    def coefficient(self, i, j, m, n):
        """c^{mn}_{ij}, zero-based."""
        N = self.dimension
        return self.coeffs[i * N + j, m * N + n]

    def nonzero(self):
        """Yields ((i, j, m, n), c^{mn}_{ij}) over the nonzero coefficients."""
        N = self.dimension
        for (row, col), value in self.coeffs.items():
            i, j = divmod(row, N)
            m, n = divmod(col, N)
            yield (i, j, m, n), value

    def tensor(self):
        """Object array t with t[i, j, m, n] = c^{mn}_{ij}."""
        N = self.dimension
        t = np.full((N, N, N, N), Fraction(0), dtype=object)
        for index, value in self.nonzero():
            t[index] = value
        return t

    def with_label(self, label):
        return dataclasses.replace(self, label=Fraction(label))


@dataclass(frozen=True)
class HeckeSplit:
    ker_plus: object
    ker_q: object


def operator_on_V2(b):
    return b.coeffs.T


def is_invertible(b):
    C = operator_on_V2(b)
    return C.rank() == C.rows


def validate_braid_equation(b):
    C = operator_on_V2(b)
    I = Mat.identity(b.dimension)
    left, right = kron(C, I), kron(I, C)
    holds = left @ right @ left == right @ left @ right
    logger.debug("braid equation on %s: %s", b.name or "braiding", holds)
    return holds


def _admissible(q):
    if q == 0:
        raise BadLabel("label 0 makes the braiding singular", label=q)
    if q == -1:
        raise BadLabel("label -1 is a root of unity", label=q)
    return q


def verify_label(b, q_hint=None):
    C = operator_on_V2(b)
    I = Mat.identity(C.rows)
    square = C @ C
    if q_hint is not None:
        q = Fraction(q_hint)
        if square - C.scale(q - 1) - I.scale(q) != Mat.zeros(C.rows, C.cols):
            raise NotHecke(f"(c - {q})(c + 1) != 0", label=q)
        return _admissible(q)

    if C == -I:
        raise LabelAmbiguous("c = -id fits every label; pass the label explicitly")

    lhs = (square + C).dod()
    rhs = (C + I).dod()
    q = None
    positions = {(i, j) for dod in (lhs, rhs) for i, row in dod.items() for j in row}
    for i, j in sorted(positions):
        numerator = lhs.get(i, {}).get(j)
        denominator = rhs.get(i, {}).get(j)
        if not denominator:
            if numerator:
                raise NotHecke("c^2 + c and c + 1 are not proportional", row=i, col=j)
            continue
        candidate = (from_qq(numerator) if numerator else Fraction(0)) / from_qq(denominator)
        if q is None:
            q = candidate
        elif candidate != q:
            raise NotHecke(f"entries force both {q} and {candidate} as label", row=i, col=j)
    logger.info("detected Hecke label %s", q)
    return _admissible(q)


def hecke_split(b, q=None):
    if q is None:
        q = verify_label(b, b.label)
    C = operator_on_V2(b)
    I = Mat.identity(C.rows)
    ker_plus = rref(C + I).kernel
    ker_q = rref(C - I.scale(q)).kernel
    if ker_plus.dim + ker_q.dim != C.rows or not intersect([ker_plus, ker_q]).is_zero():
        raise InconsistentResult("eigenspaces of c do not split V⊗V")
    if ker_plus != image(C - I.scale(q)):
        raise InconsistentResult("ker(c + 1) differs from im(c - q)")
    return HeckeSplit(ker_plus, ker_q)


def rigidity_matrix(b):
    """Matrix of c^b: entry at output (n, k), input (i, j) is c^{in}_{jk}."""
    N = b.dimension
    entries = {}
    for (j, k, i, n), value in b.nonzero():
        entries[n * N + k, i * N + j] = value
    return Mat.from_dict(N * N, N * N, entries)


def _reshaped_rigidity_matrix(b):
    N = b.dimension
    flat = np.transpose(b.tensor(), (3, 1, 2, 0)).reshape(N * N, N * N)
    return Mat.from_rows(flat.tolist(), N * N)


def rigidity_check(b):
    cb = rigidity_matrix(b)
    if cb != _reshaped_rigidity_matrix(b):
        raise InconsistentResult("c^b differs from the reshaped coefficient tensor")
    return cb.rank() == cb.rows


def dual_braiding(b, q=None):
    """The braiding -q^{-1} c^t on V*, transposed through the reversed pairing."""
    if q is None:
        q = verify_label(b, b.label)
    swap = reversal(b.dimension, 2)
    adjoint = operator_on_V2(b).T.select_rows(swap).select_columns(swap)
    operator = adjoint.scale(-1 / Fraction(q))
    return Braiding.from_operator(operator, b.dimension, 1 / Fraction(q), f"{b.name}*" if b.name else "")
