"""Named algebras and structures with their known verdicts.

``bianchi_lista_1`` .. ``bianchi_lista_7`` are the seven three-dimensional
algebras whose listed basis makes the mixing structure on ``g* + g``
integrable. They are numbered in the order of that list, which is *not* the
classical Bianchi numbering. Each carries the trivial structure ``phi = 0``
with the listed basis as parallelism (the group acting on itself).

``example2_5d`` and ``nonexample_5d`` are five-dimensional matrix algebras
containing a Heisenberg algebra ``span{p*, q*, r*}``, with ``phi`` rotating
``s -> t``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

from . import linalg as la
from .errors import InvalidParameter, UnknownName
from .fpk import FpkStructure, validate_fpk
from .lie_core import LieAlgebra, validate_lie_algebra
from .linalg import Mat, RationalLike, Vec

XI = ("xi1", "xi2", "xi3")
FIVE = ("s", "t", "p*", "q*", "r*")


@dataclass(frozen=True)
class Expected:
    admissible: str | None  # "real", "complex", "none"; None when not applicable
    normal: bool | None
    mixed_normal: bool | None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    parallelism: tuple[Vec, ...] | None
    phi: Mat | None
    expected: Expected
    note: str
    theta: Fraction | None = None

    def structure(self) -> FpkStructure:
        if self.phi is None or self.parallelism is None:
            raise InvalidParameter(f"{self.name} has no f.pk payload")
        return validate_fpk(self.algebra, self.phi, self.parallelism)


def _three(name: str, constants, admissible: str, note: str, theta: Fraction | None = None) -> CatalogEntry:
    g = validate_lie_algebra(constants, 3, XI)
    basis = tuple(g.basis(i) for i in range(3))
    return CatalogEntry(
        name,
        g,
        basis,
        la.zero_matrix(3),
        Expected(admissible, normal=g.is_abelian, mixed_normal=True),
        note,
        theta,
    )


# (i, j, k, c): [xi_{i+1}, xi_{j+1}] has coefficient c on xi_{k+1}
def _lista_1(_):
    return _three("bianchi_lista_1", [], "real", "abelian R^3")


def _lista_2(_):
    return _three("bianchi_lista_2", [(0, 1, 0, 1)], "real", "[xi1,xi2]=xi1; upper-triangular 2x2 matrices t(2)")


def _lista_3(_):
    return _three("bianchi_lista_3", [(0, 1, 2, 1)], "real", "[xi1,xi2]=xi3; Heisenberg algebra h3")


def _lista_4(_):
    return _three(
        "bianchi_lista_4", [(0, 2, 0, 1), (1, 2, 1, 1)], "real", "[xi1,xi3]=xi1, [xi2,xi3]=xi2; Poincare algebra p(1,1)"
    )


def _lista_5(theta):
    theta = Fraction(1) if theta is None else la.rational(theta)
    if theta == 0:
        raise InvalidParameter("bianchi_lista_5 requires theta != 0")
    constants = [(0, 2, 0, theta), (0, 2, 1, -1), (1, 2, 0, 1), (1, 2, 1, theta)]
    return _three(
        "bianchi_lista_5",
        constants,
        "complex",
        f"[xi1,xi3]=theta xi1 - xi2, [xi2,xi3]=xi1 + theta xi2 with theta={theta}",
        theta,
    )


def _lista_6(_):
    return _three(
        "bianchi_lista_6", [(0, 1, 2, 1), (0, 2, 1, 1), (1, 2, 0, -1)], "complex", "[xi1,xi3]=xi2, [xi2,xi3]=-xi1, [xi1,xi2]=xi3"
    )


def _lista_7(_):
    return _three(
        "bianchi_lista_7", [(0, 1, 2, 1), (0, 2, 1, -1), (1, 2, 0, 1)], "complex", "[xi1,xi3]=-xi2, [xi2,xi3]=xi1, [xi1,xi2]=xi3"
    )


def _five(name: str, constants, mixed_normal: bool, note: str) -> CatalogEntry:
    g = validate_lie_algebra(constants, 5, FIVE)
    phi = la.mat([[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [0] * 5, [0] * 5, [0] * 5])
    parallelism = tuple(g.basis(i) for i in (2, 3, 4))
    return CatalogEntry(name, g, parallelism, phi, Expected("real", normal=False, mixed_normal=mixed_normal), note)


def _example2(_):
    # s = E14, t = E45, p* = E13, q* = E35, r* = E15 in 5x5 matrices
    return _five(
        "example2_5d",
        [(0, 1, 4, 1), (2, 3, 4, 1)],
        True,
        "[s,t]=r*, [p*,q*]=r*; phi s=t, phi t=-s, parallelism (p*, q*, r*)",
    )


def _nonexample(_):
    # s = E11, t = E55, p* = E13, q* = E35, r* = E15 in 5x5 matrices; the
    # realization also forces [s,p*]=p* and [t,q*]=-q*, needed for Jacobi
    return _five(
        "nonexample_5d",
        [(0, 4, 4, 1), (1, 4, 4, -1), (0, 2, 2, 1), (1, 3, 3, -1), (2, 3, 4, 1)],
        False,
        "[s,r*]=[r*,t]=r*, [p*,q*]=r*, [s,p*]=p*, [q*,t]=q*; phi and parallelism as in example2_5d",
    )


_BUILDERS: dict[str, Callable] = {
    "bianchi_lista_1": _lista_1,
    "bianchi_lista_2": _lista_2,
    "bianchi_lista_3": _lista_3,
    "bianchi_lista_4": _lista_4,
    "bianchi_lista_5": _lista_5,
    "bianchi_lista_6": _lista_6,
    "bianchi_lista_7": _lista_7,
    "example2_5d": _example2,
    "nonexample_5d": _nonexample,
    "heisenberg3": _lista_3,
}
PARAMETRIC = {"bianchi_lista_5"}


def list_entries() -> list[str]:
    return sorted(_BUILDERS)


def get_entry(name: str, theta: RationalLike | None = None) -> CatalogEntry:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}") from None
    if theta is not None and name not in PARAMETRIC:
        raise InvalidParameter(f"{name} takes no theta parameter")
    entry = builder(theta)
    return replace(entry, name=name) if entry.name != name else entry
