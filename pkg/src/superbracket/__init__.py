"""Exact symbolic computation in free generalized Poisson superalgebras,
free superalgebras of Jordan brackets, and free generic Poisson
superalgebras, with the Kantor double and the reduction of polynomial
identities to customary form."""

from .core import (
    AlgebraError,
    Alphabet,
    Bracket,
    Gen,
    Generator,
    Prod,
    Sum,
    Var,
    koszul_merge_sign,
    multidegree,
    term_parity,
)
from .elements import Element
from .engine import GENP, JB, DegreeGuardError, FreeAlgebra, dim_multilinear
from .genericpoisson import GpAlgebra, gp_normal_form, jacobi_defect
from .concrete import StructureAlgebra
from .farkas import CustomaryPolynomial, PoissonPolynomial

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "Alphabet",
    "Bracket",
    "CustomaryPolynomial",
    "DegreeGuardError",
    "Element",
    "FreeAlgebra",
    "GENP",
    "Gen",
    "Generator",
    "GpAlgebra",
    "JB",
    "PoissonPolynomial",
    "Prod",
    "StructureAlgebra",
    "Sum",
    "Var",
    "dim_multilinear",
    "gp_normal_form",
    "jacobi_defect",
    "koszul_merge_sign",
    "multidegree",
    "term_parity",
]
