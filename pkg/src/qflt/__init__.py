"""Quantum circuit synthesis for GF(2^n) inversion via Fermat's little
theorem, with classical reversible verification and resource analysis."""

__version__ = "0.1.0"

from .circuit import (
    Circuit,
    CircuitParseError,
    Gate,
    ResourceReport,
    analyze,
    block_counts,
    circuit_to_text,
    compose,
    decompose,
    inverse,
    parse_circuit,
    read_circuit,
    write_circuit,
)
from .flt import (
    InversionPlan,
    VARIANTS,
    build,
    build_baseline,
    build_naive,
    build_waterfall,
    plan,
    with_uncompute,
)
from .gf2x import (
    BinaryPoly,
    FieldSpec,
    inv_eea,
    inv_flt_classical,
    is_irreducible,
    mulmod,
    squaremod,
)
from .linsynth import GF2Matrix, squaring_matrix, synth_cnot
from .pipeline import (
    ComparisonRow,
    VerificationResult,
    compare_fields,
    comparison_csv,
    comparison_table,
    deltas_csv,
    verify_variant,
)
from .qarith import RegisterRef, modmult, mulx_inplace, square_inplace, xor_add
from .reference import ReferenceRow, get_reference
from .registry import load_registry, resolve_field, smallest_irreducible
from .revsim import BasisState, run_basis, run_basis_batch, unitary_of

__all__ = [
    "__version__",
    "BasisState",
    "BinaryPoly",
    "Circuit",
    "CircuitParseError",
    "ComparisonRow",
    "FieldSpec",
    "GF2Matrix",
    "Gate",
    "InversionPlan",
    "RegisterRef",
    "ReferenceRow",
    "ResourceReport",
    "VARIANTS",
    "VerificationResult",
    "analyze",
    "block_counts",
    "build",
    "build_baseline",
    "build_naive",
    "build_waterfall",
    "circuit_to_text",
    "compare_fields",
    "comparison_csv",
    "comparison_table",
    "compose",
    "decompose",
    "deltas_csv",
    "get_reference",
    "inv_eea",
    "inv_flt_classical",
    "inverse",
    "is_irreducible",
    "load_registry",
    "modmult",
    "mulmod",
    "mulx_inplace",
    "parse_circuit",
    "plan",
    "read_circuit",
    "resolve_field",
    "run_basis",
    "run_basis_batch",
    "smallest_irreducible",
    "square_inplace",
    "squaremod",
    "squaring_matrix",
    "synth_cnot",
    "unitary_of",
    "verify_variant",
    "with_uncompute",
    "write_circuit",
]
