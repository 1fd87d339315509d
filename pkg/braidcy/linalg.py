"""
Exact linear algebra over the rationals.

Matrices wrap sympy's sparse ``DomainMatrix`` over ``QQ``; entries cross the
module boundary as ``fractions.Fraction``. Subspaces are stored by the reduced
row echelon form of a spanning set, so two subspaces are equal exactly when
their basis tables are equal.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import NotInvariant, NotScalar

logger = logging.getLogger(__name__)

Scalar = Fraction


def to_qq(value):
    if isinstance(value, QQ.dtype):
        return value
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(element):
    return Fraction(int(element.numerator), int(element.denominator))


class Mat:
    """Immutable exact matrix. Row-major ``entries`` of ``Fraction``."""

    __slots__ = ("dm",)

    def __init__(self, dm):
        if dm.rep.fmt != "sparse":
            dm = dm.to_sparse()
        self.dm = dm

    @classmethod
    def from_dict(cls, rows, cols, entries):
        dod = {}
        for (i, j), value in entries.items():
            if value:
                dod.setdefault(i, {})[j] = to_qq(value)
        return cls(DomainMatrix.from_dod(dod, (rows, cols), QQ))

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
            for j, value in enumerate(row):
                if value:
                    entries[i, j] = value
        return cls.from_dict(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(DomainMatrix.zeros((rows, cols), QQ))

    @classmethod
    def identity(cls, n):
        return cls(DomainMatrix.eye(n, QQ))

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        return cls.from_dict(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @property
    def rows(self):
        return self.dm.shape[0]

    @property
    def cols(self):
        return self.dm.shape[1]

    @property
    def shape(self):
        return self.dm.shape

    def dod(self):
        cleaned = {}
        for i, row in self.dm.to_dod().items():
            row = {j: e for j, e in row.items() if e}
            if row:
                cleaned[i] = row
        return cleaned

    def items(self):
        """Nonzero entries in row-major order."""
        for i, row in sorted(self.dod().items()):
            for j in sorted(row):
                yield (i, j), from_qq(row[j])

    def __getitem__(self, key):
        i, j = key
        element = self.dm.rep.getitem(i, j)
        return from_qq(element)

    @property
    def entries(self):
        flat = [Fraction(0)] * (self.rows * self.cols)
        for (i, j), value in self.items():
            flat[i * self.cols + j] = value
        return tuple(flat)

    def to_lists(self):
        table = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), value in self.items():
            table[i][j] = value
        return table

    def row(self, i):
        return {j: from_qq(e) for j, e in self.dm.to_dod().get(i, {}).items() if e}

    def rows_dict(self):
        """Nonzero entries as {row: {col: Fraction}}."""
        return {i: {j: from_qq(e) for j, e in row.items()} for i, row in self.dod().items()}

    def is_zero(self):
        return not any(self.dod().values())

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.dod() == other.dod()

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.to_lists()!r})"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if not self.rows or not other.cols or not self.cols:
            return Mat.zeros(self.rows, other.cols)
        return Mat(self.dm.matmul(other.dm))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.dm + other.dm)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {other.shape} from {self.shape}")
        return Mat(self.dm - other.dm)

    def __neg__(self):
        return Mat(-self.dm)

    def scale(self, value):
        return Mat(self.dm.scalarmul(to_qq(value)))

    @property
    def T(self):
        return Mat(self.dm.transpose())

    def vstack(self, *others):
        parts = [m for m in (self, *others) if m.rows]
        if not parts:
            return Mat.zeros(0, self.cols)
        if len(parts) == 1:
            return parts[0]
        return Mat(parts[0].dm.vstack(*(p.dm for p in parts[1:])))

    def select_columns(self, columns):
        """New column ``a`` is old column ``columns[a]``."""
        columns = list(columns)
        targets = {}
        for new, old in enumerate(columns):
            targets.setdefault(old, []).append(new)
        entries = {}
        for i, row in self.dod().items():
            for j, e in row.items():
                for new in targets.get(j, ()):
                    entries[i, new] = e
        dod = {}
        for (i, j), e in entries.items():
            dod.setdefault(i, {})[j] = e
        return Mat(DomainMatrix.from_dod(dod, (self.rows, len(columns)), QQ))

    def select_rows(self, rows):
        rows = list(rows)
        source = self.dod()
        dod = {new: dict(source[old]) for new, old in enumerate(rows) if source.get(old)}
        return Mat(DomainMatrix.from_dod(dod, (len(rows), self.cols), QQ))

    def apply(self, vector):
        column = Mat.from_dict(len(vector), 1, {(i, 0): v for i, v in enumerate(vector) if v})
        return [value for value in (self @ column).entries]

    def rank(self):
        return len(echelon(self)[1])

    def inverse(self):
        if self.rows != self.cols or self.rank() != self.rows:
            raise ValueError(f"matrix of shape {self.shape} is not invertible")
        if not self.rows:
            return self
        return Mat(self.dm.inv())


def kron(a, b):
    """Kronecker product with lexicographic composite indexing."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    b_dod = b.dod()
    dod = {}
    for i, a_row in a.dod().items():
        for k, b_row in b_dod.items():
            target = dod.setdefault(i * b.rows + k, {})
            for j, x in a_row.items():
                offset = j * b.cols
                for l, y in b_row.items():
                    target[offset + l] = x * y
    return Mat(DomainMatrix.from_dod(dod, (rows, cols), QQ))


def reversal(n, legs):
    """Permutation of V^{⊗legs} coordinates sending (i1, ..., ik) to (ik, ..., i1)."""
    if legs == 0:
        return [0]
    grid = np.arange(n ** legs).reshape((n,) * legs)
    return [int(x) for x in grid.T.reshape(-1)]


@dataclass(frozen=True)
class Reduction:
    rank: int
    echelon: Mat
    pivots: tuple
    kernel: "Subspace"


def echelon(m):
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return Mat.zeros(m.rows, m.cols), ()
    dm, pivots = m.dm.rref()
    return Mat(dm), tuple(pivots)


def rref(m):
    reduced, pivots = echelon(m)
    logger.debug("rref %sx%s rank %s", m.rows, m.cols, len(pivots))
    pivot_set = set(pivots)
    free = {f: k for k, f in enumerate(j for j in range(m.cols) if j not in pivot_set)}
    entries = {(k, f): 1 for f, k in free.items()}
    for r, row in reduced.dod().items():
        for j, value in row.items():
            if j in free:
                entries[free[j], pivots[r]] = -from_qq(value)
    kernel = Subspace.span(m.cols, Mat.from_dict(len(free), m.cols, entries))
    return Reduction(len(pivots), reduced, pivots, kernel)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of Q^ambient_dim held by its canonical RREF basis rows."""

    ambient_dim: int
    basis: Mat

    @classmethod
    def span(cls, ambient_dim, vectors):
        if vectors.cols != ambient_dim:
            raise ValueError(f"vectors of length {vectors.cols} in ambient dimension {ambient_dim}")
        reduced, pivots = echelon(vectors)
        return cls(ambient_dim, reduced.select_rows(range(len(pivots))))

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, Mat.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, Mat.identity(ambient_dim))

    @property
    def dim(self):
        return self.basis.rows

    @cached_property
    def pivots(self):
        return tuple(min(self.basis.row(r)) for r in range(self.dim))

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def vector(self, r):
        return self.basis.row(r)

    def try_coordinates(self, vectors):
        """Coordinates of each row of ``vectors`` in this basis, or None if one lies outside."""
        coords = vectors.select_columns(self.pivots)
        if coords @ self.basis != vectors:
            return None
        return coords

    def contains(self, vectors):
        return self.try_coordinates(vectors) is not None

    def contains_space(self, other):
        return self.contains(other.basis)

    def __add__(self, other):
        return Subspace.span(self.ambient_dim, self.basis.vstack(other.basis))

    def tensor(self, left, right):
        """The subspace Q^left ⊗ self ⊗ Q^right, still in canonical form."""
        basis = kron(kron(Mat.identity(left), self.basis), Mat.identity(right))
        return Subspace(left * self.ambient_dim * right, basis)


def _meet(u, w):
    if u.is_zero() or w.is_full():
        return u
    if w.is_zero() or u.is_full():
        return w
    stacked = u.basis.vstack(w.basis)
    relations = rref(stacked.T).kernel
    if relations.is_zero():
        return Subspace.zero(u.ambient_dim)
    left = relations.basis.select_columns(range(u.dim))
    return Subspace.span(u.ambient_dim, left @ u.basis)


def intersect(spaces, ambient_dim=None):
    spaces = list(spaces)
    if not spaces:
        if ambient_dim is None:
            raise ValueError("intersection of no subspaces needs an ambient dimension")
        return Subspace.full(ambient_dim)
    dims = {space.ambient_dim for space in spaces}
    if len(dims) != 1:
        raise ValueError(f"subspaces live in different ambient spaces: {sorted(dims)}")
    result = spaces[0]
    for space in spaces[1:]:
        result = _meet(result, space)
    return result


def annihilator(space, pairing=None):
    """Covectors F with F(pairing·w) = 0 for all w in ``space``; (pairing·w)[a] = w[pairing[a]]."""
    rows = space.basis if pairing is None else space.basis.select_columns(pairing)
    return rref(rows).kernel


def image(m):
    """Column space of ``m`` as a subspace of Q^rows."""
    return Subspace.span(m.rows, m.T)


def acts_as_scalar(m, space):
    if space.is_zero():
        raise ValueError("scalar action needs a nonzero subspace")
    images = (m @ space.basis.T).T
    coords = space.try_coordinates(images)
    if coords is None:
        raise NotInvariant("operator does not map the subspace into itself")
    value = images[0, space.pivots[0]]
    if coords != Mat.identity(space.dim).scale(value):
        raise NotScalar("operator restricted to the subspace is not a scalar")
    return value
