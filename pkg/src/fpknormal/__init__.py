"""Exact normality and mixed normality checks for left-invariant f.pk-structures."""

from .catalog import CatalogEntry, Expected, get_entry, list_entries
from .errors import (
    DependentParallelism,
    DependentVectors,
    DimensionMismatch,
    DuplicateEntry,
    IndexOutOfRange,
    InvalidDimension,
    InvalidEntry,
    InvalidParameter,
    JacobiViolation,
    KernelMismatch,
    NotAHomomorphism,
    NotAlmostComplex,
    NotASubalgebra,
    NotSubalgebraSpan,
    OddRank,
    ParseError,
    PhiCubicFails,
    SingularMatrix,
    StructureError,
    UnknownName,
    WrongCorank,
)
from .fpk import (
    EndoTensor,
    FpkStructure,
    ResidualReport,
    build_product_J,
    condition_star,
    d_eta_star,
    is_almost_complex,
    is_integrable,
    nijenhuis,
    nijenhuis_residuals,
    parallelism_algebra,
    transport,
    validate_fpk,
)
from .lie_core import (
    LieAlgebra,
    adjoint_matrix,
    bracket,
    change_of_basis,
    direct_sum,
    jacobi_violation,
    lie_algebra,
    spans_subalgebra,
    subalgebra,
    validate_lie_algebra,
)
from .mixed3 import (
    ComplexEigen,
    EquivalenceRecord,
    NotAdmissible,
    RealEigen,
    build_J_hat,
    build_script_J,
    check_admissibility,
    codim_one_structure,
    condition_double_star,
    d_eta_distinguished,
    equivalence_harness,
    phi_hat,
    psi,
    reduced_integrability,
)

__all__ = [name for name in dir() if not name.startswith("_") and name not in {"catalog", "errors", "fpk", "lie_core", "linalg", "mixed3"}]
