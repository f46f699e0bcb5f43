"""Left-invariant f.pk-structures and their normality.

Everything lives on a Lie algebra ``ambient`` standing in for the left-invariant
vector fields of a group manifold, so tensors are constant matrices and the
Nijenhuis tensor is determined by its values on basis pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Callable, Sequence

from . import linalg as la
from .errors import (
    DependentParallelism,
    DimensionMismatch,
    KernelMismatch,
    NotAHomomorphism,
    NotAlmostComplex,
    NotASubalgebra,
    OddRank,
    PhiCubicFails,
)
from .lie_core import LieAlgebra, bracket, change_of_basis, direct_sum, same_brackets, subalgebra
from .linalg import ZERO, Mat, Vec

Pair = tuple[int, int]


@dataclass(frozen=True)
class EndoTensor:
    """A (1,1) tensor, i.e. a square matrix acting on coordinate vectors."""

    matrix: Mat

    def __post_init__(self):
        m = la.mat(self.matrix)
        if any(len(r) != len(m) for r in m):
            raise DimensionMismatch("endomorphism matrix must be square")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def zero(cls, n: int) -> EndoTensor:
        return cls(la.zero_matrix(n))

    @classmethod
    def identity(cls, n: int) -> EndoTensor:
        return cls(la.identity(n))

    @classmethod
    def from_images(cls, images: Sequence[Vec]) -> EndoTensor:
        """Tensor sending ``e_j`` to ``images[j]``."""
        return cls(la.from_columns(images))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Vec) -> Vec:
        return la.mat_vec(self.matrix, v)

    def __matmul__(self, other: EndoTensor) -> EndoTensor:
        return EndoTensor(la.mat_mul(self.matrix, other.matrix))

    def __add__(self, other: EndoTensor) -> EndoTensor:
        return EndoTensor(la.mat_add(self.matrix, other.matrix))

    def __sub__(self, other: EndoTensor) -> EndoTensor:
        return EndoTensor(la.mat_sub(self.matrix, other.matrix))

    def __neg__(self) -> EndoTensor:
        return EndoTensor(la.mat_scale(Fraction(-1), self.matrix))

    def is_zero(self) -> bool:
        return la.is_zero_matrix(self.matrix)

    def conjugate(self, P: Mat) -> EndoTensor:
        """The same map written in the basis given by the columns of ``P``."""
        return EndoTensor(la.mat_mul(la.inverse(P), la.mat_mul(self.matrix, P)))


@dataclass(frozen=True)
class FpkStructure:
    """A validated f.pk-structure; build it with :func:`validate_fpk`.

    ``eta[i]`` is the covector dual to ``parallelism[i]`` that kills ``im phi``,
    ``d_basis`` a basis of ``im phi``.
    """

    ambient: LieAlgebra
    phi: EndoTensor
    parallelism: tuple[Vec, ...]
    eta: tuple[Vec, ...]
    d_basis: tuple[Vec, ...]

    @property
    def p(self) -> int:
        return len(self.parallelism)

    @property
    def n(self) -> int:
        return len(self.d_basis) // 2

    def eta_projector(self) -> Mat:
        """``sum_i xi_i* (x) eta_i``, the projection onto ``ker phi`` along ``im phi``."""
        m = la.zero_matrix(self.ambient.dim)
        for xi, eta in zip(self.parallelism, self.eta):
            m = la.mat_add(m, la.outer(xi, eta))
        return m

    def eta_value(self, x: Vec) -> Vec:
        """Coordinates ``(eta_1(x), ..., eta_p(x))``, i.e. the g-valued form."""
        return tuple(la.dot(e, x) for e in self.eta)


@dataclass(frozen=True)
class ResidualReport:
    """Residual vectors of a tensor condition on every basis pair ``i < j``.

    ``parallelism_residuals`` is only filled for the normality condition, where
    it holds the residuals on pairs of parallelism vectors (indexed by their
    position in the parallelism). ``terms`` splits each residual into its
    Nijenhuis part and its exterior-derivative part when there is one.
    """

    condition: str
    labels: tuple[str, ...]
    residuals: dict[Pair, Vec]
    parallelism_residuals: dict[Pair, Vec] = field(default_factory=dict)
    terms: dict[Pair, tuple[Vec, Vec]] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return not any(any(v) for v in self.residuals.values()) and not any(
            any(v) for v in self.parallelism_residuals.values()
        )

    def nonzero(self) -> dict[Pair, Vec]:
        return {k: v for k, v in self.residuals.items() if any(v)}

    @property
    def witness(self) -> Pair | None:
        return next(iter(sorted(self.nonzero())), None)

    @property
    def parallelism_witness(self) -> Pair | None:
        return next((k for k, v in sorted(self.parallelism_residuals.items()) if any(v)), None)

    def residual(self, a: int | str, b: int | str) -> Vec:
        """Residual on a basis pair given by index or label, in either order."""
        i = self.labels.index(a) if isinstance(a, str) else a
        j = self.labels.index(b) if isinstance(b, str) else b
        if i == j:
            return la.zeros(len(self.labels))
        return self.residuals[(i, j)] if i < j else la.neg(self.residuals[(j, i)])


# -- validation ---------------------------------------------------------------


def validate_fpk(ambient: LieAlgebra, phi: EndoTensor | Mat, parallelism: Sequence[Vec]) -> FpkStructure:
    """Check the f.pk axioms exactly and compute the dual forms ``eta_i``.

    Failures are reported in a fixed order: cubic identity, rank parity, kernel
    match, independence of the parallelism, closure under the bracket.
    """
    if not isinstance(phi, EndoTensor):
        phi = EndoTensor(phi)
    n = ambient.dim
    parallelism = tuple(la.vec(v) for v in parallelism)
    if phi.dim != n or any(len(v) != n for v in parallelism):
        raise DimensionMismatch("phi and parallelism must match the ambient dimension")

    phi2 = phi @ phi
    if not (phi2 @ phi + phi).is_zero():
        raise PhiCubicFails("phi^3 + phi != 0")
    d_basis = tuple(la.column_space_basis(phi.matrix))
    if len(d_basis) % 2:
        raise OddRank(f"rank of phi is {len(d_basis)}, not even")
    kernel_dim = n - len(d_basis)
    outside = [i for i, v in enumerate(parallelism) if not la.is_zero(phi(v))]
    if outside:
        raise KernelMismatch(f"parallelism vector {outside[0]} is not in ker phi")
    if len(parallelism) != kernel_dim:
        raise KernelMismatch(f"ker phi has dimension {kernel_dim}, parallelism has {len(parallelism)} vectors")
    if la.rank_of_vectors(parallelism) != len(parallelism):
        raise DependentParallelism("parallelism vectors are linearly dependent")
    if parallelism:
        try:
            subalgebra(ambient, parallelism)
        except NotASubalgebra as exc:
            raise NotASubalgebra(f"parallelism does not span a subalgebra: {exc}") from None

    # rows of the inverse of [D | xi*] are the dual basis; the last p rows are eta_i
    frame_inv = la.inverse(la.from_columns(d_basis + parallelism))
    eta = tuple(frame_inv[len(d_basis):])
    fpk = FpkStructure(ambient, phi, parallelism, eta, d_basis)
    assert la.mat_add(phi2.matrix, la.identity(n)) == fpk.eta_projector()
    return fpk


def parallelism_algebra(fpk: FpkStructure, labels: Sequence[str] | None = None) -> LieAlgebra:
    """The Lie algebra spanned by the parallelism, in the parallelism basis."""
    if labels is None:
        labels = [f"xi{i + 1}" for i in range(fpk.p)]
    return subalgebra(fpk.ambient, fpk.parallelism, labels)


def transport(fpk: FpkStructure, P: Mat) -> FpkStructure:
    """Rewrite the structure in the ambient basis given by the columns of ``P``."""
    P_inv = la.inverse(P)
    return validate_fpk(
        change_of_basis(fpk.ambient, P),
        fpk.phi.conjugate(P),
        [la.mat_vec(P_inv, v) for v in fpk.parallelism],
    )


# -- tensors ------------------------------------------------------------------


def nijenhuis(g: LieAlgebra, T: EndoTensor, x: Vec, y: Vec) -> Vec:
    """``T^2[x,y] + [Tx,Ty] - T[Tx,y] - T[x,Ty]``."""
    if T.dim != g.dim:
        raise DimensionMismatch("tensor and algebra dimensions differ")
    Tx, Ty = T(x), T(y)
    inner = la.sub(la.sub(T(bracket(g, x, y)), bracket(g, Tx, y)), bracket(g, x, Ty))
    return la.add(T(inner), bracket(g, Tx, Ty))


def pairwise(dim: int, fn: Callable[[int, int], Vec]) -> dict[Pair, Vec]:
    return {(i, j): fn(i, j) for i, j in combinations(range(dim), 2)}


def _common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, v.denominator)
    return d


def nijenhuis_residuals(g: LieAlgebra, T: EndoTensor) -> dict[Pair, Vec]:
    """Nijenhuis tensor of ``T`` on every basis pair, in integer arithmetic.

    The tensor is quadratic in ``T`` and linear in the structure constants, so
    both are scaled to integers and the result divided by ``dT^2 dC`` once.
    """
    n = g.dim
    if T.dim != n:
        raise DimensionMismatch("tensor and algebra dimensions differ")
    dT = _common_denominator(x for row in T.matrix for x in row)
    dC = _common_denominator(c for *_, c in g.constants)
    t = [[int(x * dT) for x in row] for row in T.matrix]
    tcols = [[t[r][a] for r in range(n)] for a in range(n)]
    # ad[a][k][j]: coefficient of e_k in [e_a, e_j]
    ad = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, c in g.constants:
        ci = int(c * dC)
        ad[i][k][j] += ci
        ad[j][k][i] -= ci
    nz_ad = [(a, ad[a]) for a in range(n) if any(any(r) for r in ad[a])]
    # m[a] = ad(T e_a)
    m = []
    for a in range(n):
        acc = [[0] * n for _ in range(n)]
        for c, adc in nz_ad:
            f = tcols[a][c]
            if f:
                for k in range(n):
                    row, src = acc[k], adc[k]
                    for j in range(n):
                        if src[j]:
                            row[j] += f * src[j]
        m.append(acc)

    def matvec(rows, v):
        nzv = [(j, x) for j, x in enumerate(v) if x]
        return [sum(r[j] * x for j, x in nzv) for r in rows]

    scale = dT * dT * dC
    out = {}
    for a, b in combinations(range(n), 2):
        inner = matvec(t, [ad[a][k][b] for k in range(n)])
        v = [inner[k] - m[a][k][b] + m[b][k][a] for k in range(n)]
        w = matvec(t, v)
        extra = matvec(m[a], tcols[b])
        out[(a, b)] = tuple(Fraction(x + y, scale) if x + y else ZERO for x, y in zip(w, extra))
    return out


def d_eta_star(fpk: FpkStructure, x: Vec, y: Vec) -> Vec:
    """``-sum_i eta_i([x, y]) xi_i*``; derivative terms vanish for invariant forms."""
    coeffs = fpk.eta_value(bracket(fpk.ambient, x, y))
    return la.neg(la.combine(coeffs, fpk.parallelism, fpk.ambient.dim))


def on_vectors(residuals: dict[Pair, Vec], x: Vec, y: Vec, n: int) -> Vec:
    """Evaluate an antisymmetric bilinear map known on basis pairs at ``(x, y)``."""
    coeffs, vectors = [], []
    for (i, j), r in residuals.items():
        c = x[i] * y[j] - x[j] * y[i]
        if c and any(r):
            coeffs.append(c)
            vectors.append(r)
    return la.combine(coeffs, vectors, n)


def condition_star(fpk: FpkStructure) -> ResidualReport:
    """Normality: ``[phi, phi] + d eta* = 0`` on every basis pair.

    Also records the residual on each pair of parallelism vectors; there it
    reduces to ``-[xi_i*, xi_j*]``, so a non-abelian parallelism always shows
    up as a ``parallelism_witness``.
    """
    g = fpk.ambient
    tensor = nijenhuis_residuals(g, fpk.phi)
    terms = {(i, j): (v, d_eta_star(fpk, g.basis(i), g.basis(j))) for (i, j), v in tensor.items()}
    residuals = {k: la.add(*t) for k, t in terms.items()}
    par = fpk.parallelism
    par_residuals = pairwise(fpk.p, lambda i, j: on_vectors(residuals, par[i], par[j], g.dim))
    return ResidualReport("normal", g.labels, residuals, par_residuals, terms)


def group_factor(fpk: FpkStructure, g: LieAlgebra | None) -> LieAlgebra:
    if g is None:
        return parallelism_algebra(fpk)
    if g.dim != fpk.p:
        raise DimensionMismatch(f"group factor has dimension {g.dim}, parallelism has {fpk.p} vectors")
    if not same_brackets(g, parallelism_algebra(fpk)):
        raise NotAHomomorphism("xi_i -> xi_i* does not preserve brackets")
    return g


def build_product_J(fpk: FpkStructure, g: LieAlgebra | None = None) -> tuple[LieAlgebra, EndoTensor]:
    """The almost complex structure ``J(X, xi) = (phi X - xi*, eta X)``.

    ``g`` defaults to the parallelism algebra; basis vector ``i`` of ``g`` is
    identified with ``parallelism[i]``.
    """
    g = group_factor(fpk, g)
    n, p = fpk.ambient.dim, fpk.p
    top = [list(r) + [-xi[k] for xi in fpk.parallelism] for k, r in enumerate(fpk.phi.matrix)]
    bottom = [list(e) + [0] * p for e in fpk.eta]
    product = direct_sum(fpk.ambient, g)
    J = EndoTensor(top + bottom)
    assert (J @ J) == -EndoTensor.identity(n + p)
    return product, J


def is_almost_complex(T: EndoTensor) -> bool:
    return (T @ T) == -EndoTensor.identity(T.dim)


def is_integrable(g: LieAlgebra, J: EndoTensor) -> ResidualReport:
    """Vanishing of the Nijenhuis tensor of ``J`` on all basis pairs."""
    if J.dim != g.dim:
        raise DimensionMismatch("tensor and algebra dimensions differ")
    if not is_almost_complex(J):
        raise NotAlmostComplex("J^2 != -I")
    return ResidualReport("integrable", g.labels, nijenhuis_residuals(g, J))
