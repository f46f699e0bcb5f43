"""Finite-dimensional Lie algebras given by rational structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from . import linalg as la
from .errors import (
    DependentVectors,
    DimensionMismatch,
    DuplicateEntry,
    IndexOutOfRange,
    InvalidDimension,
    InvalidEntry,
    JacobiViolation,
    NotASubalgebra,
)
from .linalg import ZERO, Mat, RationalLike, Vec

MAX_DIM = 64

Constant = tuple[int, int, int, Fraction]


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c e_k`` stored for ``i < j``.

    Construct through :func:`validate_lie_algebra` to get the Jacobi identity
    checked; the bare constructor only normalizes storage so that derived
    algebras (basis changes of arbitrary tables, for instance) can be built.
    """

    dim: int
    labels: tuple[str, ...]
    constants: tuple[Constant, ...]

    def __post_init__(self):
        if not 0 < self.dim <= MAX_DIM:
            raise InvalidDimension(f"dimension must be in 1..{MAX_DIM}, got {self.dim}")
        if len(self.labels) != self.dim:
            raise DimensionMismatch(f"{len(self.labels)} labels for dimension {self.dim}")
        if len(set(self.labels)) != self.dim:
            raise InvalidEntry("basis labels must be unique")
        object.__setattr__(self, "constants", _normalize(self.constants, self.dim))

    @cached_property
    def table(self) -> tuple[tuple[int, int, tuple[tuple[int, Fraction], ...]], ...]:
        """Nonzero brackets grouped by pair: ``((i, j, ((k, c), ...)), ...)``."""
        grouped: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for i, j, k, c in self.constants:
            grouped.setdefault((i, j), []).append((k, c))
        return tuple((i, j, tuple(terms)) for (i, j), terms in grouped.items())

    def basis(self, i: int) -> Vec:
        return la.unit(self.dim, i)

    def zero(self) -> Vec:
        return la.zeros(self.dim)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def vector(self, **coords: RationalLike) -> Vec:
        """Vector from label keywords, e.g. ``g.vector(xi1=1, xi3='1/2')``."""
        out = [ZERO] * self.dim
        for name, c in coords.items():
            out[self.index(name)] = la.rational(c)
        return tuple(out)

    @property
    def is_abelian(self) -> bool:
        return not self.constants


def _normalize(entries: Iterable, dim: int) -> tuple[Constant, ...]:
    seen = set()
    out = []
    for entry in entries:
        try:
            i, j, k, c = entry
        except (TypeError, ValueError):
            raise InvalidEntry(f"structure constant must be (i, j, k, c), got {entry!r}") from None
        for idx in (i, j, k):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < dim:
                raise IndexOutOfRange(f"index {idx!r} out of range for dimension {dim}")
        c = la.rational(c)
        if i == j:
            if c:
                raise InvalidEntry(f"[e_{i}, e_{i}] must vanish")
            continue
        if i > j:
            i, j, c = j, i, -c
        if (i, j, k) in seen:
            raise DuplicateEntry(f"duplicate entry for ({i}, {j}, {k})")
        seen.add((i, j, k))
        if c:
            out.append((i, j, k, c))
    return tuple(sorted(out))


def lie_algebra(
    constants: Iterable[tuple[int, int, int, RationalLike]],
    dim: int,
    labels: Sequence[str] | None = None,
) -> LieAlgebra:
    if labels is None:
        labels = [f"e{i + 1}" for i in range(dim)]
    return LieAlgebra(dim, tuple(labels), tuple(constants))


def jacobi_residual(g: LieAlgebra, i: int, j: int, k: int) -> Vec:
    x, y, z = g.basis(i), g.basis(j), g.basis(k)
    return la.add(
        la.add(bracket(g, x, bracket(g, y, z)), bracket(g, y, bracket(g, z, x))),
        bracket(g, z, bracket(g, x, y)),
    )


def jacobi_violation(g: LieAlgebra) -> tuple[int, int, int, Vec] | None:
    """First basis triple ``i < j < k`` with a nonzero Jacobi sum, or None."""
    for i, j, k in combinations(range(g.dim), 3):
        r = jacobi_residual(g, i, j, k)
        if not la.is_zero(r):
            return i, j, k, r
    return None


def check_jacobi(g: LieAlgebra) -> LieAlgebra:
    bad = jacobi_violation(g)
    if bad is not None:
        raise JacobiViolation(*bad)
    return g


def validate_lie_algebra(
    constants: Iterable[tuple[int, int, int, RationalLike]],
    dim: int,
    labels: Sequence[str] | None = None,
) -> LieAlgebra:
    """Build an algebra from sparse constants and verify the Jacobi identity.

    Trilinearity and antisymmetry make basis triples ``i < j < k`` sufficient.
    """
    return check_jacobi(lie_algebra(constants, dim, labels))


def _check_vec(g: LieAlgebra, *vs: Vec) -> None:
    for v in vs:
        if len(v) != g.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {g.dim}-dimensional algebra")


def bracket(g: LieAlgebra, x: Vec, y: Vec) -> Vec:
    _check_vec(g, x, y)
    out = [ZERO] * g.dim
    for i, j, terms in g.table:
        xi, xj, yi, yj = x[i], x[j], y[i], y[j]
        a = (xi * yj if xi and yj else 0) - (xj * yi if xj and yi else 0)
        if a:
            for k, c in terms:
                out[k] += a * c
    return tuple(out)


def adjoint_matrix(g: LieAlgebra, x: Vec) -> Mat:
    """Matrix of ``[x, .]``; column ``j`` is ``[x, e_j]``."""
    _check_vec(g, x)
    rows = [[ZERO] * g.dim for _ in range(g.dim)]
    for i, j, terms in g.table:
        # [x, e_j] picks x_i c_ij^k, [x, e_i] picks -x_j c_ij^k
        for k, c in terms:
            if x[i]:
                rows[k][j] += x[i] * c
            if x[j]:
                rows[k][i] -= x[j] * c
    return tuple(tuple(r) for r in rows)


def _disjoint_labels(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    b = list(b)
    while set(a) & set(b) or len(set(b)) != len(b):
        b = [s + "'" for s in b]
    return tuple(a) + tuple(b)


def direct_sum(g: LieAlgebra, h: LieAlgebra, labels: Sequence[str] | None = None) -> LieAlgebra:
    """``g + h`` with the ``g`` block first; mixed brackets vanish."""
    n = g.dim
    constants = list(g.constants) + [(i + n, j + n, k + n, c) for i, j, k, c in h.constants]
    if labels is None:
        labels = _disjoint_labels(g.labels, h.labels)
    return LieAlgebra(n + h.dim, tuple(labels), tuple(constants))


def _from_brackets(dim: int, labels: Sequence[str], pair_values: dict[tuple[int, int], Vec]) -> LieAlgebra:
    constants = [(i, j, k, c) for (i, j), v in pair_values.items() for k, c in enumerate(v) if c]
    return LieAlgebra(dim, tuple(labels), tuple(constants))


def change_of_basis(g: LieAlgebra, P: Mat, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Re-express ``g`` in the basis formed by the columns of ``P``.

    New coordinates ``x`` correspond to old coordinates ``P x``, so the new
    bracket is ``P^-1 [P x, P y]``.
    """
    if len(P) != g.dim or any(len(r) != g.dim for r in P):
        raise DimensionMismatch("basis change must be a square matrix of the algebra's dimension")
    P_inv = la.inverse(P)
    cols = [la.column(P, j) for j in range(g.dim)]
    values = {
        (i, j): la.mat_vec(P_inv, bracket(g, cols[i], cols[j]))
        for i, j in combinations(range(g.dim), 2)
    }
    return _from_brackets(g.dim, labels or g.labels, values)


class SubalgebraCheck(NamedTuple):
    is_subalgebra: bool
    is_abelian: bool


def _require_independent(vectors: Sequence[Vec]) -> None:
    if la.rank_of_vectors(vectors) != len(vectors):
        raise DependentVectors("vectors are linearly dependent")


def spans_subalgebra(g: LieAlgebra, vectors: Sequence[Vec]) -> SubalgebraCheck:
    _check_vec(g, *vectors)
    _require_independent(vectors)
    closed, abelian = True, True
    for u, v in combinations(vectors, 2):
        b = bracket(g, u, v)
        if la.is_zero(b):
            continue
        abelian = False
        if la.coordinates(vectors, b) is None:
            closed = False
    return SubalgebraCheck(closed, abelian)


def subalgebra(g: LieAlgebra, vectors: Sequence[Vec], labels: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra spanned by ``vectors``, written in that basis."""
    _check_vec(g, *vectors)
    _require_independent(vectors)
    values = {}
    for i, j in combinations(range(len(vectors)), 2):
        coords = la.coordinates(vectors, bracket(g, vectors[i], vectors[j]))
        if coords is None:
            raise NotASubalgebra(f"bracket of vectors {i} and {j} leaves their span")
        values[(i, j)] = coords
    if labels is None:
        labels = [f"f{i + 1}" for i in range(len(vectors))]
    return _from_brackets(len(vectors), labels, values)


def same_brackets(g: LieAlgebra, h: LieAlgebra) -> bool:
    return g.dim == h.dim and g.constants == h.constants
