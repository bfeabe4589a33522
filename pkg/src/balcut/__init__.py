"""Balanced graph cuts (Cheeger and sparsest) by simple inverse power iterations."""
__version__ = "0.1.0"

from .errors import (BalcutError, ContractViolation, DomainError, GsetParseError,  # noqa: E402
                     PartitionError, SizeGuardError)
from .graph import (BinaryCut, Graph, MuScheme, TernaryPartition, balanced_cut_value,  # noqa: E402
                    is_discrete_local_min, load_gset, parse_gset, theta_cut_value)
from .functionals import objective_B, objective_T  # noqa: E402
from .solver import (CutType, InitKind, SolverConfig, multi_run, sip_perturb,  # noqa: E402
                     sip_run, sip_theta_run)
from .oracle import brute_force_h, brute_force_h_theta, theta_curve  # noqa: E402

__all__ = [
    "BalcutError", "ContractViolation", "DomainError", "GsetParseError", "PartitionError",
    "SizeGuardError", "BinaryCut", "Graph", "MuScheme", "TernaryPartition",
    "balanced_cut_value", "is_discrete_local_min", "load_gset", "parse_gset", "theta_cut_value",
    "objective_B", "objective_T", "CutType", "InitKind", "SolverConfig", "multi_run",
    "sip_perturb", "sip_run", "sip_theta_run", "brute_force_h", "brute_force_h_theta",
    "theta_curve", "__version__",
]
