"""Exact cohomology of symmetric groups with coefficients in the standard representation."""

from .cohomology import (
    BudgetExceeded,
    Cocycle,
    CohomologyGroup,
    RelationViolation,
    h_k,
    h_k_bar,
    h_k_cyclic,
    schur_multiplier,
)
from .exactlin import FinAbGroup, IntMatrix, kernel_mod, smith_normal_form, solve_mod
from .gmodule import GModule, ModuleMap, dual_standard_module, standard_module, trivial_module
from .kernels import BACKEND
from .symgroup import Perm, SubgroupTable, symmetric_group

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "Cocycle",
    "CohomologyGroup",
    "FinAbGroup",
    "GModule",
    "IntMatrix",
    "ModuleMap",
    "Perm",
    "RelationViolation",
    "SubgroupTable",
    "dual_standard_module",
    "h_k",
    "h_k_bar",
    "h_k_cyclic",
    "kernel_mod",
    "schur_multiplier",
    "smith_normal_form",
    "solve_mod",
    "standard_module",
    "symmetric_group",
    "trivial_module",
]
