"""
Quadratic data of the Nichols algebra R = T(V)/(ker(c + 1)) of a Hecke braiding.

R_n is never reduced inside V^{⊗n}. Each degree is built as the quotient of
R_{n-1}⊗V by the image of R_{n-2}⊗I, which has the same normal monomials as the
reduced row echelon form of J_n; J_n itself is read off the normal forms.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .braiding import hecke_split, verify_label
from .exceptions import CapExceeded, InconsistentResult, NotASRegular, NotExact
from .linalg import Mat, Subspace, annihilator, echelon, intersect, kron, reversal

logger = logging.getLogger(__name__)


def default_cap(dimension, budget=30000, min_cap=4, max_cap=16):
    """Largest n with dimension**n <= budget, clamped to [min_cap, max_cap]."""
    cap = 0
    while cap < max_cap and dimension ** (cap + 1) <= budget:
        cap += 1
    return max(min_cap, min(cap, max_cap))


def word_index(word, generators):
    index = 0
    for letter in word:
        index = index * generators + letter
    return index


class NormalWords:
    """
    Graded pieces of T(W)/(relations) up to degree ``top``, W of dimension
    ``generators`` and relations a subspace of W⊗W.

    ``words[n]`` lists the normal monomials of degree n in lexicographic order,
    ``projections[n]`` maps (degree n-1 piece)⊗W onto degree n, and ``forms[n]``
    sends every monomial of degree n to its normal form.
    """

    def __init__(self, generators, relations, top):
        self.generators = generators
        self.relations = relations
        self.top = top
        self.words = [((),)]
        self.projections = [Mat.identity(1)]
        self.forms = [Mat.identity(1)]
        for degree in range(1, top + 1):
            self._extend(degree)

    def dim(self, degree):
        return len(self.words[degree])

    def _extend(self, degree):
        N = self.generators
        previous = self.dim(degree - 1)
        if degree == 1:
            projection = Mat.identity(N)
            normal = list(range(N))
        else:
            lifted = kron(self.projections[degree - 1], Mat.identity(N))
            spread = kron(Mat.identity(self.dim(degree - 2)), self.relations.basis.T)
            reduced, pivots = echelon((lifted @ spread).T)
            pivot_set = set(pivots)
            normal = [c for c in range(previous * N) if c not in pivot_set]
            position = {c: k for k, c in enumerate(normal)}
            entries = {(k, c): 1 for c, k in position.items()}
            for r, row in reduced.rows_dict().items():
                for c, value in row.items():
                    if c in position:
                        entries[position[c], pivots[r]] = -value
            projection = Mat.from_dict(len(normal), previous * N, entries)
        self.projections.append(projection)
        self.words.append(tuple(self.words[degree - 1][c // N] + (c % N,) for c in normal))
        self.forms.append(projection @ kron(self.forms[degree - 1], Mat.identity(N)))
        logger.debug("degree %s: %s normal words", degree, len(normal))

    def normal_form(self, word):
        """Coordinates of the monomial ``word`` in the normal basis of its degree."""
        column = word_index(word, self.generators)
        return self.forms[len(word)].select_columns([column])

    def right_multiplication(self, degree, letter):
        """Matrix of x -> x·w_letter from degree ``degree`` to degree + 1."""
        N = self.generators
        return self.projections[degree + 1].select_columns(
            [alpha * N + letter for alpha in range(self.dim(degree))]
        )

    def left_multiplication(self, degree, letter):
        """Matrix of x -> w_letter·x from degree ``degree`` to degree + 1."""
        N = self.generators
        offset = letter * N ** degree
        return self.forms[degree + 1].select_columns(
            [offset + word_index(word, N) for word in self.words[degree]]
        )

    def product(self, left, right):
        """Normal-form coordinates of the product of two normal words."""
        return self.normal_form(tuple(left) + tuple(right))

    def ideal_component(self, degree):
        """J_degree as a canonical subspace of W^{⊗degree}."""
        N = self.generators
        ambient = N ** degree
        normal = [word_index(word, N) for word in self.words[degree]]
        normal_set = set(normal)
        form = self.forms[degree].dod()
        by_column = {}
        for k, row in form.items():
            for column, value in row.items():
                by_column.setdefault(column, {})[k] = value
        entries = {}
        r = 0
        for column in range(ambient):
            if column in normal_set:
                continue
            entries[r, column] = 1
            for k, value in by_column.get(column, {}).items():
                entries[r, normal[k]] = -value
            r += 1
        # rows are e_μ − nf(μ) over the non-normal μ: already reduced row echelon
        return Subspace(ambient, Mat.from_dict(r, ambient, entries))


@dataclass(frozen=True, eq=False)
class QuadraticData:
    dimension: int
    q: object
    relations: Subspace
    relations_perp: Subspace
    cap: int = None

    @property
    def I(self):
        return self.relations

    @property
    def I_perp(self):
        return self.relations_perp


def build_quadratic(b, q=None, cap=None):
    if q is None:
        q = verify_label(b, b.label)
    split = hecke_split(b, q)
    relations = split.ker_plus
    perp = annihilator(relations, reversal(b.dimension, 2))
    logger.info("quadratic data: dim I = %s, dim I^⊥ = %s", relations.dim, perp.dim)
    return QuadraticData(b.dimension, q, relations, perp, cap)


@dataclass(frozen=True, eq=False)
class GradedProfile:
    cap: int
    dims_R: tuple
    dims_dual: tuple
    K: tuple
    gldim: int = None
    tower: NormalWords = field(default=None, repr=False)

    @property
    def exceeds_cap(self):
        return self.gldim is None

    @property
    def gldim_label(self):
        return "exceeds cap" if self.gldim is None else self.gldim

    @cached_property
    def J(self):
        return tuple(self.tower.ideal_component(n) for n in range(self.cap + 1))


def graded_profile(qd, cap):
    if cap < 2:
        raise ValueError("the cap must be at least 2")
    N = qd.dimension
    tower = NormalWords(N, qd.relations, cap)
    K = [Subspace.full(1), Subspace.full(N), qd.relations]
    for n in range(2, cap):
        current = K[n]
        if current.is_zero():
            K.append(Subspace.zero(N ** (n + 1)))
            continue
        K.append(intersect([current.tensor(N, 1), current.tensor(1, N)]))
    K = tuple(K[: cap + 1])
    nonzero = [n for n, space in enumerate(K) if not space.is_zero()]
    top = max(nonzero)
    gldim = top if top < cap else None
    if gldim is None:
        logger.warning("R^! does not vanish up to degree %s", cap)
    return GradedProfile(
        cap=cap,
        dims_R=tuple(tower.dim(n) for n in range(cap + 1)),
        dims_dual=tuple(space.dim for space in K),
        K=K,
        gldim=gldim,
        tower=tower,
    )


def require_finite(gp):
    if gp.gldim is None:
        raise CapExceeded(f"global dimension exceeds the cap {gp.cap}", cap=gp.cap)
    return gp.gldim


def splitting_coefficients(K, degree, generators):
    """
    For each letter k, the matrix whose column β holds the coordinates in K_{degree-1}
    of the slice (w_β)_k, where w_β = Σ_k v_k⊗(w_β)_k runs over the basis of K_degree.
    """
    width = generators ** (degree - 1)
    coefficients = []
    for k in range(generators):
        slices = K[degree].basis.select_columns(range(k * width, (k + 1) * width))
        coords = K[degree - 1].try_coordinates(slices)
        if coords is None:
            raise InconsistentResult(f"K_{degree} is not contained in V⊗K_{degree - 1}")
        coefficients.append(coords.T)
    return coefficients


@dataclass(frozen=True)
class KoszulTable:
    homology: dict
    checked_degrees: tuple

    @property
    def exact(self):
        return all(
            dim == (1 if (t, m) == (0, 0) else 0)
            for t, dims in self.homology.items()
            for m, dim in enumerate(dims)
        )


def _rank(m):
    return m.rank() if m.rows and m.cols else 0


def koszul_check(qd, gp):
    d = require_finite(gp)
    N = qd.dimension
    tower = gp.tower
    coefficients = {m: splitting_coefficients(gp.K, m, N) for m in range(1, d + 1)}
    homology = {}
    for t in range(gp.cap + 1):
        top = min(t, d)
        sizes = [tower.dim(t - m) * gp.K[m].dim for m in range(top + 1)]
        differentials = {}
        for m in range(1, top + 1):
            a = t - m
            blocks = [
                kron(tower.right_multiplication(a, k), coefficients[m][k]) for k in range(N)
            ]
            total = blocks[0]
            for block in blocks[1:]:
                total = total + block
            differentials[m] = total
            if m >= 2 and not (differentials[m - 1] @ total).is_zero():
                raise InconsistentResult(f"d∘d != 0 at internal degree {t}, position {m}")
        ranks = {m: _rank(differentials[m]) for m in differentials}
        dims = []
        for m in range(top + 1):
            dim = sizes[m] - ranks.get(m, 0) - ranks.get(m + 1, 0)
            expected = 1 if (t, m) == (0, 0) else 0
            if dim != expected:
                raise NotExact(t, m)
            dims.append(dim)
        homology[t] = tuple(dims)
        logger.debug("Koszul complex exact in internal degree %s", t)
    return KoszulTable(homology, tuple(range(gp.cap + 1)))


def hilbert_identity(gp):
    n = gp.cap + 1
    signs = np.array([(-1) ** k for k in range(n)], dtype=np.int64)
    dual = signs * np.array(gp.dims_dual[:n], dtype=np.int64)
    product = np.convolve(dual, np.array(gp.dims_R[:n], dtype=np.int64))[:n]
    expected = np.zeros(n, dtype=np.int64)
    expected[0] = 1
    return bool(np.array_equal(product, expected))


def hilbert_series(gp):
    if gp.gldim is None:
        return None
    terms = []
    for k, dim in enumerate(gp.dims_dual[: gp.gldim + 1]):
        if not dim:
            continue
        coefficient = dim if k % 2 == 0 else -dim
        power = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        magnitude = abs(coefficient)
        body = power if magnitude == 1 and power else f"{magnitude}{power}"
        sign = "-" if coefficient < 0 else "+"
        terms.append((sign, body))
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return f"1/({text})"


@dataclass(frozen=True)
class ASRegularity:
    window: tuple
    ext: dict

    @property
    def top(self):
        return {key: dim for key, dim in self.ext.items() if dim}


def as_regularity_check(qd, gp):
    d = require_finite(gp)
    N = qd.dimension
    tower = gp.tower
    coefficients = {m: splitting_coefficients(gp.K, m, N) for m in range(1, d + 1)}
    low = d - gp.cap
    ext = {}
    for t in range(low, d + 1):
        first = max(t, 0)
        positions = range(first, d + 1)
        sizes = {m: gp.K[m].dim * tower.dim(m - t) for m in positions}
        codifferentials = {}
        for m in range(first, d):
            s = m - t
            blocks = [
                kron(coefficients[m + 1][k].T, tower.left_multiplication(s, k)) for k in range(N)
            ]
            total = blocks[0]
            for block in blocks[1:]:
                total = total + block
            codifferentials[m] = total
            if m - 1 in codifferentials and not (total @ codifferentials[m - 1]).is_zero():
                raise InconsistentResult(f"δ∘δ != 0 at internal degree {t}, position {m}")
        ranks = {m: _rank(op) for m, op in codifferentials.items()}
        for m in positions:
            dim = sizes[m] - ranks.get(m, 0) - ranks.get(m - 1, 0)
            expected = 1 if (m, t) == (d, d) else 0
            if dim != expected:
                raise NotASRegular(m, t)
            ext[m, t] = dim
    logger.info("Ext_R(k, R) is one-dimensional at position %s, internal degree %s", d, d)
    return ASRegularity((low, d), ext)
