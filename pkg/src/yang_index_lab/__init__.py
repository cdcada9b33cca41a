"""Valid sign matrices, GF(2) chains with a free involution, and Yang index bounds."""

from .bounds import compute_table, diff_against_reference, emit_table
from .chains import (
    GRASSMANN,
    STIEFEL,
    Chain,
    boundary,
    chain_from_template,
    split_invariant,
    tau,
    yang_index_of_chain,
)
from .complex import (
    enumerate_valid_faces,
    invariant_cycle_basis,
    verify_chain_report,
    yang_index_of_complex,
)
from .matrixcore import (
    ChainTemplate,
    SignedMatrix,
    canonical_form,
    expand_template,
    face_of,
    parse_template,
    rotation_equivalent,
)
from .named import build_named_chain
from .validity import (
    certify_valid_general,
    find_circuit,
    gram_determinant,
    induced_matrix,
    invalid_submatrix_filter,
    is_valid,
    is_valid_k2,
    validity_verdict,
)

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ChainTemplate",
    "GRASSMANN",
    "STIEFEL",
    "SignedMatrix",
    "boundary",
    "build_named_chain",
    "canonical_form",
    "certify_valid_general",
    "chain_from_template",
    "compute_table",
    "diff_against_reference",
    "emit_table",
    "enumerate_valid_faces",
    "expand_template",
    "face_of",
    "find_circuit",
    "gram_determinant",
    "induced_matrix",
    "invalid_submatrix_filter",
    "invariant_cycle_basis",
    "is_valid",
    "is_valid_k2",
    "parse_template",
    "rotation_equivalent",
    "split_invariant",
    "tau",
    "validity_verdict",
    "verify_chain_report",
    "yang_index_of_chain",
    "yang_index_of_complex",
]
