"""Co-diagonalization of commuting degenerate observables via matrix pencils,
exact measurement-context extraction, and contextuality hypergraph analysis."""

from .exact import (
    ExactMatrix,
    GaussianRational,
    Ray,
    commutator_is_zero,
    inner_product,
    is_product_state,
    tensor,
)
from .logic import (
    ContextHypergraph,
    SubsetSweepResult,
    TwoValuedState,
    classify_contexts,
    enumerate_contexts,
    is_separating,
    noncolorable_subsets,
    orthogonality_graph,
    to_dot,
    two_valued_states,
)
from .parity import (
    ContradictionReport,
    ParityError,
    ParityScenario,
    analyze,
    classical_bruteforce,
    eigenstate_table,
)
from .pauli import PauliString, commutes, multiply, parse_pauli, realization, serial_product
from .pencil import (
    Context,
    DegeneratePencilError,
    Pencil,
    PencilError,
    SnapError,
    VerificationError,
    build,
    default_coefficients,
    evaluate,
    hermitian_eigensystem,
    joint_context,
    snap_to_ray,
)

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix",
    "GaussianRational",
    "Ray",
    "commutator_is_zero",
    "inner_product",
    "is_product_state",
    "tensor",
    "ContextHypergraph",
    "SubsetSweepResult",
    "TwoValuedState",
    "classify_contexts",
    "enumerate_contexts",
    "is_separating",
    "noncolorable_subsets",
    "orthogonality_graph",
    "to_dot",
    "two_valued_states",
    "ContradictionReport",
    "ParityError",
    "ParityScenario",
    "analyze",
    "classical_bruteforce",
    "eigenstate_table",
    "PauliString",
    "commutes",
    "multiply",
    "parse_pauli",
    "realization",
    "serial_product",
    "Context",
    "DegeneratePencilError",
    "Pencil",
    "PencilError",
    "SnapError",
    "VerificationError",
    "build",
    "default_coefficients",
    "evaluate",
    "hermitian_eigensystem",
    "joint_context",
    "snap_to_ray",
]
