"""Finite p-group computations centred on groups of maximal class."""
from pmaxclass.core import (
    BudgetExceeded,
    CapExceeded,
    Group,
    GroupError,
    GroupSpec,
    Homomorphism,
    PreconditionError,
    SpecError,
    Subgroup,
    build_group,
)
from pmaxclass.kernels import BACKEND

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CapExceeded",
    "Group",
    "GroupError",
    "GroupSpec",
    "Homomorphism",
    "PreconditionError",
    "SpecError",
    "Subgroup",
    "build_group",
]
