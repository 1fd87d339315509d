"""Twisting automorphism of the rigid dualizing complex and the Calabi-Yau verdict."""
import logging
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import InconsistentResult
from .linalg import Mat
from .utils import format_matrix

logger = logging.getLogger(__name__)


def _sign(d):
    return 1 if (d + 1) % 2 == 0 else -1


def phi_automorphism(b, hd, q, nakayama=None):
    """
    Φ[l][i] = -q^{-1}·Q·Σ_{j,k} d_lk·c^{jk}_{ji}, so that φ(v_i) = Σ_l Φ[l][i] v_l.
    When the degree-one Nakayama matrix is given, Φ must be its transpose.
    """
    N = b.dimension
    # gamma[k][i] = Σ_j c^{jk}_{ji}
    gamma = {}
    for (j, i, m, k), value in b.nonzero():
        if m == j:
            gamma[k, i] = gamma.get((k, i), 0) + value
    phi = (hd.D @ Mat.from_dict(N, N, gamma)).scale(-hd.Q / Fraction(q))
    if nakayama is not None and phi != nakayama.T:
        raise InconsistentResult("φ is not the transpose of the Nakayama matrix on V*")
    return phi


def cy_verdict(phi, d):
    return phi == Mat.identity(phi.rows).scale(_sign(d))


def scalar_condition(b, hd, q):
    """
    The entrywise criterion: -q^{-1}·Q·Σ_{j,k} d_lk·c^{jk}_{ji} equals (-1)^{d+1}
    when l = i and 0 otherwise. Evaluated term by term, without matrix products.
    """
    N = b.dimension
    scale = -hd.Q / Fraction(q)
    sums = {}
    for (j, i, m, k), value in b.nonzero():
        if m != j:
            continue
        for l in range(N):
            sums[l, i] = sums.get((l, i), 0) + hd.D[l, k] * value
    target = _sign(hd.d)
    return all(
        scale * sums.get((l, i), 0) == (target if l == i else 0)
        for l in range(N)
        for i in range(N)
    )


@dataclass(frozen=True)
class Descriptor:
    twist: Mat
    shift: int
    internal_shift: int
    text: str

    @property
    def is_trivial(self):
        return self.twist == Mat.identity(self.twist.rows)

    def as_dict(self):
        return {
            "internal_shift": self.internal_shift,
            "shift": self.shift,
            "text": self.text,
            "twist": format_matrix(self.twist),
            "twist_name": "id" if self.is_trivial else f"φε^{self.shift + 1}",
        }


def dualizing_descriptor(phi, d):
    """The complex _{φε^{d+1}}R[d](−d); ε^{d+1} acts on V as (−1)^{d+1}."""
    twist = phi.scale(_sign(d))
    base = f"R[{d}](−{d})"
    if twist == Mat.identity(twist.rows):
        text = base
    else:
        rendered = ", ".join("[" + ", ".join(row) + "]" for row in format_matrix(twist))
        text = f"_{{φε^{d + 1}}}{base} with φε^{d + 1} = [{rendered}]"
    return Descriptor(twist, d, -d, text)


@dataclass(frozen=True)
class CYResult:
    phi: Mat
    d: int
    is_cy: bool
    descriptor: Descriptor
    scalar_condition: bool


def cy_check(b, hd, q, nakayama=None):
    phi = phi_automorphism(b, hd, q, nakayama)
    verdict = cy_verdict(phi, hd.d)
    condition = scalar_condition(b, hd, q)
    if verdict != condition:
        raise InconsistentResult("matrix and entrywise Calabi-Yau criteria disagree")
    descriptor = dualizing_descriptor(phi, hd.d)
    if descriptor.is_trivial != verdict:
        raise InconsistentResult("twist is trivial exactly when R is Calabi-Yau")
    logger.info("Calabi-Yau: %s, descriptor %s", verdict, descriptor.text)
    return CYResult(phi, hd.d, verdict, descriptor, condition)
