"""Three-dimensional parallelisms: the mixing complex structure and mixed normality.

Conventions. A parallelism is an ordered triple ``(xi1*, xi2*, xi3*)`` whose
last vector is the distinguished direction. The complex structure on
``g* + g`` sends ``xi1* -> xi2*``, ``xi3* -> xi3``, ``xi1 -> xi2`` and is
completed by squaring to ``-I``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import linalg as la
from .errors import DimensionMismatch, NotSubalgebraSpan, NotASubalgebra, WrongCorank
from .fpk import (
    EndoTensor,
    FpkStructure,
    ResidualReport,
    group_factor,
    build_product_J,
    condition_star,
    is_integrable,
    nijenhuis,
    nijenhuis_residuals,
    parallelism_algebra,
    validate_fpk,
)
from .lie_core import LieAlgebra, bracket, direct_sum, subalgebra
from .linalg import ZERO, Vec

STAR_LABELS = ("xi1*", "xi2*", "xi3*")
GROUP_LABELS = ("xi1", "xi2", "xi3")


@dataclass(frozen=True)
class RealEigen:
    """``[xi3*, .]`` acts on ``span{xi1*, xi2*}`` as ``gamma * I``."""

    gamma: Fraction
    admissible = True
    kind = "real"


@dataclass(frozen=True)
class ComplexEigen:
    """``[xi3*, .]`` acts on ``span{xi1*, xi2*}`` as a rotation-dilation.

    ``xi1* + i xi2*`` is an eigenvector for ``alpha + orientation * beta * i``
    with ``beta > 0``; in the basis ``(xi1*, xi2*)`` the block is
    ``[[alpha, orientation*beta], [-orientation*beta, alpha]]``.
    """

    alpha: Fraction
    beta: Fraction
    orientation: int
    admissible = True
    kind = "complex"


@dataclass(frozen=True)
class NotAdmissible:
    reason: str
    code: str
    admissible = False
    kind = "none"


AdmissibilityResult = Union[RealEigen, ComplexEigen, NotAdmissible]


def _parallelism3(g: LieAlgebra, par: Sequence[Vec]) -> tuple[Vec, Vec, Vec]:
    if len(par) != 3:
        raise DimensionMismatch(f"expected 3 parallelism vectors, got {len(par)}")
    par = tuple(la.vec(v) for v in par)
    try:
        subalgebra(g, par)
    except NotASubalgebra as exc:
        raise NotSubalgebraSpan(str(exc)) from None
    return par


def check_admissibility(g: LieAlgebra, par: Sequence[Vec]) -> AdmissibilityResult:
    """Decide whether the mixing structure on ``g* + g`` can be integrable.

    The test is rational: ``span{xi1*, xi2*}`` must be invariant under
    ``A = [xi3*, .]`` and the restricted block must commute with the quarter
    turn ``xi1* -> xi2* -> -xi1*``, i.e. be ``alpha I + c R``. ``c = 0`` is the
    common real eigenvalue case, ``c != 0`` the complex one.
    """
    x1, x2, x3 = _parallelism3(g, par)
    # coordinates of [xi3*, xi1*], [xi3*, xi2*] in the parallelism basis
    a = la.coordinates((x1, x2, x3), bracket(g, x3, x1))
    b = la.coordinates((x1, x2, x3), bracket(g, x3, x2))
    if a[2] or b[2]:
        return NotAdmissible("span{xi1*, xi2*} is not invariant under [xi3*, .]", "span_not_invariant")
    # block [[a11, a12], [a21, a22]], columns are the images
    a11, a21, a12, a22 = a[0], a[1], b[0], b[1]
    if a11 == a22 and a21 == -a12:
        alpha, c = a11, a21
        if c == 0:
            return RealEigen(alpha)
        # A = alpha I + c R with R = [[0, -1], [1, 0]]; eigenvalue on xi1* + i xi2* is alpha - c i
        return ComplexEigen(alpha, abs(c), -1 if c > 0 else 1)
    trace = a11 + a22
    disc = trace * trace - 4 * (a11 * a22 - a12 * a21)
    if disc == 0:
        return NotAdmissible("[xi3*, .] has a nontrivial Jordan block on span{xi1*, xi2*}", "jordan_block")
    if disc > 0:
        return NotAdmissible("[xi3*, .] has two distinct real eigenvalues on span{xi1*, xi2*}", "eigenvalue_mismatch")
    return NotAdmissible(
        "complex eigenvalues, but (xi1*, xi2*) is not a real/imaginary pair of an eigenvector",
        "eigenvector_misalignment",
    )


def script_J_matrix() -> EndoTensor:
    """The mixing structure in the basis ``(xi1*, xi2*, xi3*, xi1, xi2, xi3)``."""
    images = [
        (0, 1, 0, 0, 0, 0),   # xi1* -> xi2*
        (-1, 0, 0, 0, 0, 0),  # xi2* -> -xi1*
        (0, 0, 0, 0, 0, 1),   # xi3* -> xi3
        (0, 0, 0, 0, 1, 0),   # xi1 -> xi2
        (0, 0, 0, -1, 0, 0),  # xi2 -> -xi1
        (0, 0, -1, 0, 0, 0),  # xi3 -> -xi3*
    ]
    return EndoTensor.from_images([la.vec(v) for v in images])


def build_script_J(g: LieAlgebra, par: Sequence[Vec]) -> tuple[LieAlgebra, EndoTensor]:
    """``g* + g`` written in parallelism coordinates, with the mixing structure.

    Both copies carry the brackets of ``span(par)`` expressed in the basis
    ``par``; the first copy is the starred one.
    """
    par = _parallelism3(g, par)
    h_star = subalgebra(g, par, STAR_LABELS)
    h = subalgebra(g, par, GROUP_LABELS)
    return direct_sum(h_star, h), script_J_matrix()


DESIGNATED_PAIRS = ((2, 0), (2, 1))


def reduced_integrability(g: LieAlgebra, par: Sequence[Vec]) -> bool:
    """Nijenhuis tensor of the mixing structure on ``(xi3*, xi1*)`` and ``(xi3*, xi2*)`` only."""
    product, J = build_script_J(g, par)
    return all(
        la.is_zero(nijenhuis(product, J, product.basis(i), product.basis(j))) for i, j in DESIGNATED_PAIRS
    )


# -- codimension-one modification ---------------------------------------------


def _require_p3(fpk: FpkStructure) -> None:
    if fpk.p != 3:
        raise WrongCorank(f"need exactly 3 parallelism vectors, structure has {fpk.p}")


def phi_hat(fpk: FpkStructure) -> EndoTensor:
    """``phi`` on ``im phi``, ``xi1* -> xi2* -> -xi1*``, ``xi3* -> 0``."""
    _require_p3(fpk)
    x1, x2, x3 = fpk.parallelism
    e1, e2, e3 = fpk.eta
    out = EndoTensor(la.mat_sub(la.mat_add(fpk.phi.matrix, la.outer(x2, e1)), la.outer(x1, e2)))
    assert out @ out == -EndoTensor.identity(fpk.ambient.dim) + EndoTensor(la.outer(x3, e3))
    return out


def psi() -> EndoTensor:
    """Mirror of the rotation on the group factor: ``xi1 -> xi2 -> -xi1``, ``xi3 -> 0``."""
    return EndoTensor(((0, -1, 0), (1, 0, 0), (0, 0, 0)))


def codim_one_structure(fpk: FpkStructure) -> FpkStructure:
    """``(ambient, phi_hat, [xi3*])`` as an f.pk-structure with one-dimensional kernel."""
    return validate_fpk(fpk.ambient, phi_hat(fpk), [fpk.parallelism[2]])


def build_J_hat(fpk: FpkStructure, g: LieAlgebra | None = None) -> tuple[LieAlgebra, EndoTensor]:
    """``J^(X, Y) = (phi_hat X - lambda3(Y) xi3*, psi Y + eta3(X) xi3)`` on ``ambient + g``."""
    _require_p3(fpk)
    if g is None:
        g = parallelism_algebra(fpk, GROUP_LABELS)
    elif g.dim != 3:
        raise DimensionMismatch(f"group factor must be 3-dimensional, got {g.dim}")
    g = group_factor(fpk, g)
    n = fpk.ambient.dim
    xi3 = fpk.parallelism[2]
    eta3 = fpk.eta[2]
    ph = phi_hat(fpk).matrix
    ps = psi().matrix
    top = [list(ph[k]) + [ZERO, ZERO, -xi3[k]] for k in range(n)]
    bottom = [[ZERO] * n + list(ps[0]), [ZERO] * n + list(ps[1]), list(eta3) + list(ps[2])]
    J = EndoTensor(top + bottom)
    assert (J @ J) == -EndoTensor.identity(n + 3)
    return direct_sum(fpk.ambient, g), J


def d_eta_distinguished(fpk: FpkStructure, x: Vec, y: Vec) -> Vec:
    """``d eta3(x, y) xi3* = -eta3([x, y]) xi3*``."""
    _require_p3(fpk)
    c = la.dot(fpk.eta[2], bracket(fpk.ambient, x, y))
    return la.scale(-c, fpk.parallelism[2])


def condition_double_star(fpk: FpkStructure) -> ResidualReport:
    """Mixed normality: ``[phi_hat, phi_hat] + d eta3 (x) xi3* = 0`` on every basis pair."""
    g = fpk.ambient
    tensor = nijenhuis_residuals(g, phi_hat(fpk))
    terms = {(i, j): (v, d_eta_distinguished(fpk, g.basis(i), g.basis(j))) for (i, j), v in tensor.items()}
    residuals = {k: la.add(*t) for k, t in terms.items()}
    return ResidualReport("mixed-normal", g.labels, residuals, terms=terms)


@dataclass(frozen=True)
class EquivalenceRecord:
    """Four independently computed verdicts that must coincide."""

    mixed_normal: bool
    codim_one_normal: bool
    codim_one_product_integrable: bool
    j_hat_integrable: bool

    @property
    def verdicts(self) -> tuple[bool, bool, bool, bool]:
        return (self.mixed_normal, self.codim_one_normal, self.codim_one_product_integrable, self.j_hat_integrable)

    @property
    def all_equal(self) -> bool:
        return len(set(self.verdicts)) == 1


def equivalence_harness(fpk: FpkStructure, g: LieAlgebra | None = None) -> EquivalenceRecord:
    """Mixed normality computed four ways.

    1. the tensor condition on ``phi_hat``;
    2. normality of the codimension-one structure ``(phi_hat, xi3*)``;
    3. integrability of its product structure over a line;
    4. integrability of ``J^`` on ``ambient + g``.
    """
    codim = codim_one_structure(fpk)
    line = LieAlgebra(1, ("t",), ())
    return EquivalenceRecord(
        condition_double_star(fpk).verdict,
        condition_star(codim).verdict,
        is_integrable(*build_product_J(codim, line)).verdict,
        is_integrable(*build_J_hat(fpk, g)).verdict,
    )
