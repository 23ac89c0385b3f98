"""Equivariant birational invariants of finite group actions on rational surfaces."""

from .brauer import brute_force, build_system, solve
from .burnside import compare_inc, compare_nfca, inc_class, is_incompressible, nfca
from .config import ActionConfig, ConfigError, load, parse, serialize, validate_standard_form
from .finabelian import FinAbGroup, IntMatrixHom, Subgroup, cokernel, image, kernel, quotient, snf
from .groupcoh import FiniteGroupSpec, bar_oracle, cohomology, sylow_check
from .report import InconsistencyError, compute_report, h2_residue_character

__all__ = [
    "ActionConfig", "ConfigError", "FinAbGroup", "FiniteGroupSpec", "InconsistencyError",
    "IntMatrixHom", "Subgroup", "bar_oracle", "brute_force", "build_system", "cohomology",
    "cokernel", "compare_inc", "compare_nfca", "compute_report", "h2_residue_character",
    "image", "inc_class", "is_incompressible", "kernel", "load", "nfca", "parse", "quotient",
    "serialize", "snf", "solve", "sylow_check", "validate_standard_form",
]
__version__ = "0.1.0"
