"""Built-in braidings: diagonal (quantum spaces), example2 and trivial1."""
import logging
from fractions import Fraction

from .exceptions import BadFamilyParams
from .forms import FamilyParamsForm, InputSpec
from .utils import format_scalar, parse_scalar

logger = logging.getLogger(__name__)

# c(v_a⊗v_b) for the four-dimensional involutive permutation braiding, zero-based
EXAMPLE2_PERMUTATION = (0, 11, 7, 12, 14, 5, 9, 2, 13, 6, 10, 1, 3, 8, 4, 15)

# the six relations of the example, as pairs (i, j) = (m, n) of zero-based letters
EXAMPLE2_RELATIONS = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (3, 0)),
    ((1, 0), (3, 2)),
    ((1, 2), (2, 1)),
    ((2, 0), (3, 1)),
)

# verdicts stated alongside the built-in tables; a report flags any it does not reproduce
CLAIMED_VERDICTS = {
    "example2": {"is_cy": True, "descriptor": "R[4](−4)"},
}


def diagonal_table(qmatrix):
    """c^{mn}_{ij} = q_ij δ_mj δ_ni, i.e. c(v_i⊗v_j) = q_ij v_j⊗v_i."""
    N = len(qmatrix)
    table = [[Fraction(0)] * (N * N) for _ in range(N * N)]
    for i in range(N):
        for j in range(N):
            table[i * N + j][j * N + i] = qmatrix[i][j]
    return tuple(tuple(row) for row in table)


def check_qmatrix(qmatrix):
    N = len(qmatrix)
    if N == 0 or any(len(row) != N for row in qmatrix):
        raise BadFamilyParams("qmatrix must be a nonempty square matrix")
    for i in range(N):
        if qmatrix[i][i] != 1:
            raise BadFamilyParams(f"q_{i + 1}{i + 1} = {format_scalar(qmatrix[i][i])}, expected 1", i=i)
        for j in range(i + 1, N):
            if qmatrix[i][j] * qmatrix[j][i] != 1:
                raise BadFamilyParams(
                    f"q_{i + 1}{j + 1}·q_{j + 1}{i + 1} = "
                    f"{format_scalar(qmatrix[i][j] * qmatrix[j][i])}, expected 1",
                    i=i,
                    j=j,
                )


def diagonal(qmatrix, name=None, cap=None):
    try:
        qmatrix = tuple(tuple(parse_scalar(x) for x in row) for row in qmatrix)
    except TypeError:
        raise BadFamilyParams("qmatrix must be a list of rows")
    check_qmatrix(qmatrix)
    N = len(qmatrix)
    if name is None:
        off = ",".join(format_scalar(qmatrix[i][j]) for i in range(N) for j in range(i + 1, N))
        name = f"QP{N}({off})" if off else f"QP{N}"
    return InputSpec(
        name=name,
        dimension=N,
        table=diagonal_table(qmatrix),
        label=Fraction(1),
        cap=cap,
        family={"family": "diagonal", "qmatrix": [[format_scalar(x) for x in row] for row in qmatrix]},
    )


def example2(cap=None):
    table = [[Fraction(0)] * 16 for _ in range(16)]
    for row, col in enumerate(EXAMPLE2_PERMUTATION):
        table[row][col] = Fraction(1)
    return InputSpec("example2", 4, tuple(tuple(row) for row in table), cap=cap, family={"family": "example2"})


def trivial1(cap=None):
    return InputSpec("trivial1", 1, ((Fraction(1),),), cap=cap, family={"family": "trivial1"})


FAMILIES = {
    "diagonal": diagonal,
    "example2": example2,
    "trivial1": trivial1,
}


FAMILY_KEYS = {
    "diagonal": {"qmatrix", "name", "cap"},
    "example2": {"cap"},
    "trivial1": {"cap"},
}


def builtin(name, params=None):
    params = dict(params or {})
    if not isinstance(name, str) or name not in FAMILIES:
        raise BadFamilyParams(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}")
    unexpected = sorted(set(params) - FAMILY_KEYS[name])
    if unexpected:
        raise BadFamilyParams(f"family {name} does not take {unexpected}")
    form = FamilyParamsForm(data=params)
    if not form.is_valid():
        field, errors = next(iter(form.errors.items()))
        raise BadFamilyParams(f"{field}: {' '.join(errors)}")
    cleaned = form.cleaned_data
    if name == "diagonal":
        if cleaned["qmatrix"] is None:
            raise BadFamilyParams("the diagonal family needs a qmatrix")
        spec = diagonal(cleaned["qmatrix"], cleaned["name"] or None, cleaned["cap"])
    else:
        spec = FAMILIES[name](cap=cleaned["cap"])
    logger.info("expanded built-in family %s (N=%s)", name, spec.dimension)
    return spec
