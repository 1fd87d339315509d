"""
Brute-force Frobenius data of the quadratic dual R^! = T(V*)/(I^⊥).

Everything here is computed from explicit multiplication tables, independently
of the closed formulas in ``frt`` and ``cy``, so the two can be compared.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exceptions import DegenerateForm, InconsistentResult, NotFrobeniusShape, NotMultiplicative
from .linalg import Mat, kron
from .nichols import NormalWords, require_finite, word_index

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DualAlgebraTables:
    d: int
    tower: NormalWords

    @property
    def dims(self):
        return tuple(self.tower.dim(k) for k in range(self.d + 2))

    @property
    def bases(self):
        return tuple(self.tower.words[k] for k in range(self.d + 1))

    @property
    def top_word(self):
        """The normal word spanning R^!_d."""
        return self.tower.words[self.d][0]

    @cached_property
    def mult(self):
        """(a, b) -> matrix of R^!_a ⊗ R^!_b -> R^!_{a+b}, columns indexed α*dim_b + β."""
        tables = {}
        N = self.tower.generators
        for a in range(self.d + 1):
            for b in range(self.d + 2 - a):
                offset = N ** b
                columns = [
                    word_index(left, N) * offset + word_index(right, N)
                    for left in self.tower.words[a]
                    for right in self.tower.words[b]
                ]
                tables[a, b] = self.tower.forms[a + b].select_columns(columns)
        return tables

    def multiply(self, a, x, b, y):
        """Product of x ∈ R^!_a and y ∈ R^!_b given as coordinate tuples."""
        column = kron(_column(x), _column(y))
        return (self.mult[a, b] @ column).entries


def _column(vector):
    return Mat.from_dict(len(vector), 1, {(k, 0): v for k, v in enumerate(vector) if v})


def build_dual_tables(qd, gp):
    d = require_finite(gp)
    tower = NormalWords(qd.dimension, qd.I_perp, d + 1)
    tables = DualAlgebraTables(d, tower)
    dims = tables.dims
    if dims[d] != 1:
        raise NotFrobeniusShape(f"R^!_{d} has dimension {dims[d]}, expected 1", dims=dims)
    if dims[d + 1] != 0:
        raise NotFrobeniusShape(f"R^!_{d + 1} does not vanish", dims=dims)
    if dims != tuple(gp.dims_dual[: d + 2]):
        raise InconsistentResult(
            f"dual tables give dimensions {dims}, K_n give {tuple(gp.dims_dual[: d + 2])}"
        )
    logger.info("R^! tables built up to degree %s, top word %s", d, tables.top_word)
    return tables


def associativity_check(tables):
    mult = tables.mult
    dims = tables.dims
    d = tables.d
    for a in range(d + 1):
        for b in range(d + 1 - a):
            for c in range(d + 1 - a - b):
                left = mult[a + b, c] @ kron(mult[a, b], Mat.identity(dims[c]))
                right = mult[a, b + c] @ kron(Mat.identity(dims[a]), mult[b, c])
                if left != right:
                    logger.warning("R^! tables not associative in degrees %s, %s, %s", a, b, c)
                    return False
    return all(mult[0, b] == Mat.identity(dims[b]) for b in range(d + 1))


@dataclass(frozen=True)
class FrobeniusForm:
    """``blocks[k][α, β]`` is the λ̌-coefficient of (basis α of degree k)·(basis β of degree d-k)."""

    d: int
    blocks: tuple

    def __call__(self, k, alpha, beta):
        return self.blocks[k][alpha, beta]


def frobenius_form(tables):
    d = tables.d
    dims = tables.dims
    blocks = []
    for k in range(d + 1):
        row = tables.mult[k, d - k]
        block = Mat.from_dict(
            dims[k],
            dims[d - k],
            {divmod(col, dims[d - k]): value for (_, col), value in row.items()},
        )
        if block.rank() != dims[k] or dims[k] != dims[d - k]:
            raise DegenerateForm(k)
        blocks.append(block)
    return FrobeniusForm(d, tuple(blocks))


def nakayama_bruteforce(tables, form):
    """
    The graded η with B(x, y) = B(y, η(x)). In degree k this reads
    G_kᵀ = G_{d-k}·η_k, so η_k = G_{d-k}^{-1}·G_kᵀ; columns are images of basis words.
    """
    d = tables.d
    eta = tuple(form.blocks[d - k].inverse() @ form.blocks[k].T for k in range(d + 1))
    mult = tables.mult
    for a in range(d + 1):
        for b in range(d + 1 - a):
            if eta[a + b] @ mult[a, b] != mult[a, b] @ kron(eta[a], eta[b]):
                raise NotMultiplicative(f"η is not multiplicative in degrees {a}, {b}")
    if eta[0] != Mat.identity(1) or eta[d].is_zero():
        raise NotMultiplicative("η does not fix the unit and the top line")
    logger.info("Nakayama automorphism solved in degrees 0..%s", d)
    return eta


def nakayama_formula_deg1(b, hd, q):
    """E[l][i] = -q^{-1}·Q·Σ_{j,k} d_ik·c^{jk}_{jl}, so that η(v_i*) = Σ_l E[l][i] v_l*."""
    N = b.dimension
    scale = -hd.Q / Fraction(q)
    # trace[k][l] = Σ_j c^{jk}_{jl}
    trace = {}
    for (j, l, m, k), value in b.nonzero():
        if m == j:
            trace[k, l] = trace.get((k, l), 0) + value
    contracted = hd.D @ Mat.from_dict(N, N, trace)
    return contracted.T.scale(scale)


def quantum_label_from_tables(tables, q):
    """Apply ψ: v* -> -q^{-1}v* letter by letter to λ̌ and read off the scalar."""
    word = tables.top_word
    generator = -1 / Fraction(q)
    N = tables.tower.generators
    vector = (Fraction(1),)
    degree = 0
    for letter in word:
        step = tuple(generator if x == letter else Fraction(0) for x in range(N))
        vector = tables.multiply(degree, vector, 1, step)
        degree += 1
    return vector[0]


def modular_facts(tables):
    """
    λ̌·x = ε(x)λ̌ = x·λ̌. The unit and the generators are multiplied against λ̌
    directly; the remaining positive-degree basis words are products of
    generators, so they are covered through associativity of the tables.
    """
    d = tables.d
    dims = tables.dims
    top = (Fraction(1),)
    unit = (Fraction(1),)
    if tables.multiply(0, unit, d, top) != top or tables.multiply(d, top, 0, unit) != top:
        raise InconsistentResult("the unit does not fix λ̌")
    for letter in range(dims[1]):
        x = tuple(Fraction(1 if k == letter else 0) for k in range(dims[1]))
        if any(tables.multiply(1, x, d, top)) or any(tables.multiply(d, top, 1, x)):
            raise InconsistentResult("a generator does not annihilate λ̌")
    return {
        "alpha_equals_counit": True,
        "checked_generators": dims[1],
        "covered_basis_elements": sum(dims[1:d]),
    }


@dataclass(frozen=True)
class OracleResult:
    tables: DualAlgebraTables
    form: FrobeniusForm
    eta: tuple
    formula: Mat
    agrees: bool
    Q: Fraction
    modular: dict


def run_oracle(qd, gp, b, hd):
    tables = build_dual_tables(qd, gp)
    if not associativity_check(tables):
        raise InconsistentResult("R^! multiplication tables are not associative")
    form = frobenius_form(tables)
    eta = nakayama_bruteforce(tables, form)
    formula = nakayama_formula_deg1(b, hd, qd.q)
    agrees = eta[1] == formula
    if not agrees:
        logger.warning("brute-force η on V* differs from the closed formula")
    Q = quantum_label_from_tables(tables, qd.q)
    if Q != hd.Q:
        raise InconsistentResult(f"ψ scales λ̌ by {Q}, expected {hd.Q}")
    return OracleResult(tables, form, eta, formula, agrees, Q, modular_facts(tables))
