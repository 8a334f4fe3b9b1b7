"""weylkit: the Weyl-Heisenberg operator basis and qudit channel simulation.

The package builds the d**2 operators ``X_l Z_k`` on C^d, decomposes
arbitrary operators over them, realizes system-environment interactions as
explicit isometries, and extracts and compares the resulting quantum
channels in Kraus form.  See the module docstrings for the conventions each
layer fixes.
"""

from .channels import (
    QuantumChannel,
    apply_channel,
    channel_from_dilation,
    channel_to_json,
    channels_equal,
    choi_matrix,
    choi_to_json,
    is_trace_preserving,
    json_to_channel,
    kraus_from_isometry,
    kraus_mix,
    unitality_deficit,
    weyl_channel,
)
from .config import DEFAULT_TOLERANCES, Tolerances, replace_tolerance
from .dilation import (
    GammaTable,
    WeylFormTerm,
    ensemble_to_density,
    env_gram,
    env_index,
    evolve_density,
    evolve_pure,
    gamma_to_json,
    json_to_gamma,
    make_isometry,
    weyl_form_of_joint,
)
from .errors import DomainError, ParseError, ShapeError, ValidationError, WeylkitError
from .numerics import (
    basis_ket,
    dagger,
    frobenius_distance,
    frobenius_norm,
    hermitian_eigenvalues,
    json_to_matrix,
    json_to_vector,
    kron,
    matmul,
    matrix_to_json,
    outer,
    partial_trace_env,
    trace,
    validate_density_matrix,
    validate_ket,
    vector_to_json,
)
from .verify import VerifyReport, run_verification
from .weyl import (
    WeylBasis,
    WeylIndex,
    clock_matrix,
    coefficients_to_json,
    commutator_in_basis,
    decompose,
    gram_matrix,
    json_to_coefficients,
    omega,
    reconstruct,
    shift_matrix,
    weyl_basis,
    weyl_element,
)

__version__ = "0.1.0"
