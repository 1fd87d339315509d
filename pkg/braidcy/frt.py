"""
Action of the FRT generators T^n_i on V and on its tensor powers.

T^n_i acts on V through the matrix A[n][i] with A[n][i][m][j] = c^{mn}_{ij}.
On V^{⊗m} the action is diagonal along Δ(T^j_i) = Σ_k T^k_i ⊗ T^j_k.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braiding import operator_on_V2
from .exceptions import NotInvariant, NotScalar
from .linalg import Mat, acts_as_scalar, kron

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ActionFamily:
    dimension: int
    A: tuple
    tensor: np.ndarray = field(repr=False)
    _powers: dict = field(default_factory=dict, repr=False)

    def generator(self, upper, lower):
        """Matrix of T^upper_lower on V."""
        return self.A[upper][lower]


def action_matrices(b):
    N = b.dimension
    # t[i, j, m, n] = c^{mn}_{ij}  ->  stacked[n, i, m, j]
    stacked = np.transpose(b.tensor(), (3, 0, 2, 1))
    entries = [[{} for _ in range(N)] for _ in range(N)]
    for (i, j, m, n), value in b.nonzero():
        entries[n][i][m, j] = value
    A = tuple(tuple(Mat.from_dict(N, N, entries[n][i]) for i in range(N)) for n in range(N))
    return ActionFamily(N, A, stacked)


def diagonal_action(af, i, j, m):
    """M_m(T^j_i) on V^{⊗m}: M_1(T^j_i) = A[j][i], M_m(T^j_i) = Σ_k A[k][i] ⊗ M_{m-1}(T^j_k)."""
    if m < 1:
        raise ValueError("diagonal actions start in degree 1")
    key = (i, j, m)
    if key not in af._powers:
        if m == 1:
            af._powers[key] = af.A[j][i]
        else:
            size = af.dimension ** m
            total = Mat.zeros(size, size)
            for k in range(af.dimension):
                if af.A[k][i].is_zero():
                    continue
                total = total + kron(af.A[k][i], diagonal_action(af, k, j, m - 1))
            af._powers[key] = total
    return af._powers[key]


def _on_leg(op, tensor, leg):
    return np.moveaxis(np.tensordot(op, tensor, axes=([1], [leg])), 0, leg)


def apply_diagonal(af, upper, vector, degree):
    """
    M_degree(T^upper_i)·vector for every lower index i, contracted leg by leg
    from the right without forming the N^degree square matrix.
    """
    N = af.dimension
    tensor = np.array(list(vector), dtype=object).reshape((N,) * degree)
    chain = [_on_leg(af.tensor[upper, k], tensor, degree - 1) for k in range(N)]
    for leg in range(degree - 2, -1, -1):
        chain = [
            sum(
                (_on_leg(af.tensor[k, previous], chain[k], leg) for k in range(N)),
                np.full((N,) * degree, Fraction(0), dtype=object),
            )
            for previous in range(N)
        ]
    return [tuple(part.reshape(-1)) for part in chain]


def rtt_check(b, af):
    """Σ c^{kl}_{ij} A[m][k]A[n][l] == Σ A[k][i]A[l][j] c^{mn}_{kl} for all i, j, m, n."""
    t = b.tensor()
    stacked = af.tensor
    # products[a, b, r, c, e, s] = (A[a][b] @ A[c][e])[r, s]
    products = np.tensordot(stacked, stacked, axes=([3], [2]))
    lhs = np.tensordot(t, products, axes=([2, 3], [1, 4]))
    rhs = np.tensordot(products, t, axes=([0, 3], [0, 1]))
    rhs = np.transpose(rhs, (0, 2, 4, 1, 5, 3))
    holds = bool(np.array_equal(lhs, rhs))
    logger.debug("RTT relations: %s", holds)
    return holds


def h_linearity_check(b, af):
    """c commutes with the diagonal action of every generator on V⊗V."""
    C = operator_on_V2(b)
    N = af.dimension
    for i in range(N):
        for j in range(N):
            M = diagonal_action(af, i, j, 2)
            if C @ M != M @ C:
                logger.warning("c is not linear for T^%s_%s", j, i)
                return False
    return True


def stability_check(af, space, degree):
    """Every M_degree(T^j_i) maps ``space`` ⊆ V^{⊗degree} into itself."""
    if space.is_zero():
        return True
    N = af.dimension
    for i in range(N):
        for j in range(N):
            images = (diagonal_action(af, i, j, degree) @ space.basis.T).T
            if not space.contains(images):
                logger.warning("T^%s_%s does not preserve the degree-%s subspace", j, i, degree)
                return False
    return True


def coassociativity_check(af, a, b):
    """M_{a+b}(T^j_i) == Σ_k M_a(T^k_i) ⊗ M_b(T^j_k)."""
    N = af.dimension
    size = N ** (a + b)
    for i in range(N):
        for j in range(N):
            total = Mat.zeros(size, size)
            for k in range(N):
                total = total + kron(diagonal_action(af, i, k, a), diagonal_action(af, k, j, b))
            if total != diagonal_action(af, i, j, a + b):
                return False
    return True


def quantum_label(q, d):
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return (-1 / Fraction(q)) ** d


@dataclass(frozen=True)
class HomologicalData:
    d: int
    Q: Fraction
    D: Mat
    w: tuple


def _scalar_on(image, vector):
    pivot = next(k for k, x in enumerate(vector) if x)
    value = image[pivot] / vector[pivot]
    if any(y != value * x for x, y in zip(vector, image)):
        raise NotInvariant("generator does not preserve the top dual component")
    return value


def homological_matrix(af, top, q, d):
    """D[i][j] = hdet(T^i_j), the scalar by which T^i_j acts on the line K_d."""
    if top.dim != 1:
        raise NotScalar(f"top dual component has dimension {top.dim}, expected 1")
    N = af.dimension
    w = tuple(top.basis.entries)
    entries = {}
    for upper in range(N):
        images = apply_diagonal(af, upper, w, d)
        for lower, image in enumerate(images):
            entries[upper, lower] = _scalar_on(image, w)
    D = Mat.from_dict(N, N, entries)
    logger.info("homological matrix computed on K_%s", d)
    return HomologicalData(d, quantum_label(q, d), D, w)


def scalar_action_check(af, top, hd):
    """D read from full matrices with acts_as_scalar agrees with the contracted D."""
    N = af.dimension
    for upper in range(N):
        for lower in range(N):
            value = acts_as_scalar(diagonal_action(af, lower, upper, hd.d), top)
            if value != hd.D[upper, lower]:
                return False
    return True
