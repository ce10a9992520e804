"""Computational tools around Brauer groups of Q: group cohomology, Hilbert
symbols and quaternion classes, quadratic forms, the Lind-Reichardt
obstruction and the Bogomolov p-group."""
from .arith import REAL, PAdicApprox, Place, hensel_lift
from .brauer import (InvariantVector, QuaternionClass, conic_point, descent_split_trace,
                     hilbert_symbol, is_split, local_invariants, product_formula_check)
from .cohomology import cohomology, cyclic_cohomology, permutation_module
from .errors import BrauerkitError
from .groups import AbelianInvariants, FiniteGroup, GModule
from .quadform import (IsotropyCertificate, QuadraticForm, clifford_invariant, diagonalize,
                       discriminant, global_isotropy, local_isotropy)

__version__ = "0.1.0"

__all__ = [
    "REAL", "PAdicApprox", "Place", "hensel_lift",
    "InvariantVector", "QuaternionClass", "conic_point", "descent_split_trace",
    "hilbert_symbol", "is_split", "local_invariants", "product_formula_check",
    "cohomology", "cyclic_cohomology", "permutation_module",
    "BrauerkitError", "AbelianInvariants", "FiniteGroup", "GModule",
    "IsotropyCertificate", "QuadraticForm", "clifford_invariant", "diagonalize",
    "discriminant", "global_isotropy", "local_isotropy",
]
