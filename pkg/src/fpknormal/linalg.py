"""Dense exact linear algebra over ``Fraction``.

Vectors are tuples of Fractions; matrices are tuples of row tuples, so
``M[i][j]`` is row ``i`` column ``j`` and column ``j`` is the image of ``e_j``.
Everything here is small-dimensional (the algebras are capped at 64), so plain
Gaussian elimination is all we need.
"""

from __future__ import annotations

import re
from math import lcm
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, ParseError, SingularMatrix

Vec = tuple  # tuple[Fraction, ...]
Mat = tuple  # tuple[Vec, ...]
RationalLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats and malformed strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value.replace("−", "-"))
        if not m:
            raise ParseError(f"not a rational: {value!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def vec(values: Iterable[RationalLike]) -> Vec:
    return tuple(rational(v) for v in values)


def mat(rows: Iterable[Iterable[RationalLike]]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged matrix")
    return out


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_matrix(n: int, m: int | None = None) -> Mat:
    return tuple(zeros(n if m is None else m) for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def is_zero_matrix(m: Mat) -> bool:
    return not any(any(r) for r in m)


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def neg(v: Vec) -> Vec:
    return tuple(-a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Vec], n: int) -> Vec:
    """Return ``sum(c_i * v_i)``; ``n`` is the ambient length for empty input."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def mat_vec(m: Mat, v: Vec) -> Vec:
    if m and len(m[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(m[0])} columns, vector has length {len(v)}")
    nz = [(j, a) for j, a in enumerate(v) if a]
    return tuple(sum((row[j] * a for j, a in nz if row[j]), ZERO) for row in m)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def column(m: Mat, j: int) -> Vec:
    return tuple(row[j] for row in m)


def from_columns(cols: Sequence[Vec]) -> Mat:
    return transpose(tuple(tuple(c) for c in cols))


def _to_integers(m: Mat) -> tuple[list[list[int]], int]:
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, x.denominator)
    return [[x.numerator * (d // x.denominator) for x in row] for row in m], d


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    ai, da = _to_integers(a)
    bi, db = _to_integers(b)
    bt = list(zip(*bi))
    d = da * db
    out = []
    for row in ai:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(Fraction(sum(x * col[k] for k, x in nz), d) for col in bt))
    return tuple(out)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(c: Fraction, m: Mat) -> Mat:
    return tuple(scale(c, r) for r in m)


def outer(u: Vec, v: Vec) -> Mat:
    """Rank-one matrix ``u v^T``, i.e. the map ``x -> v(x) u``."""
    return tuple(tuple(a * b for b in v) for a in u)


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def rank_of_vectors(vectors: Sequence[Vec]) -> int:
    return rank(tuple(vectors)) if vectors else 0


def kernel(m: Mat) -> list[Vec]:
    """Basis of the right null space ``{x : m x = 0}``."""
    n = len(m[0]) if m else 0
    rows, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def column_space_basis(m: Mat) -> list[Vec]:
    """Pivot columns of ``m``, a basis of its image."""
    _, pivots = rref(m)
    return [column(m, j) for j in pivots]


def solve(m: Mat, b: Vec) -> Vec | None:
    """One solution of ``m x = b``, or None when the system is inconsistent."""
    n = len(m[0]) if m else 0
    aug = [list(r) + [bi] for r, bi in zip(m, b)]
    rows, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = rows[r][n]
    return tuple(x)


def coordinates(vectors: Sequence[Vec], v: Vec) -> Vec | None:
    """Coefficients expressing ``v`` in the (independent) ``vectors``, or None."""
    if not vectors:
        return () if is_zero(v) else None
    return solve(from_columns(vectors), v)


def inverse(m: Mat) -> Mat:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return tuple(tuple(r[n:]) for r in rows)

