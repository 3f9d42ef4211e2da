"""qclab: a desk-scale numerical laboratory for short-output quantum
cryptography.

Exact dense simulation of small qubit registers, keyed state generators
with verifiers, two-state ensembles, canonical bit commitments, the
explicit attacks that break them at small size, and seeded experiments
that check every bound numerically.
"""

from .caps import DEFAULT_CAP, HARD_CAP, cap_override, qubit_cap
from .errors import (
    AdversaryFailure,
    BadDistribution,
    BudgetOverflow,
    CapExceeded,
    ConfigError,
    DimensionMismatch,
    IndexOutOfRange,
    IoError,
    NetTooLarge,
    NotHermitian,
    ParamTooLarge,
    QclabError,
    SearchExhausted,
)
from .qcore import (
    EPS,
    DensityMatrix,
    HermitianMatrix,
    Projector,
    PureState,
    basis_state,
    fidelity,
    haar_sample,
    induced_mixed_sample,
    maximally_mixed,
    measure,
    partial_trace,
    phase_plus_state,
    plus_state,
    positive_part_projector,
    spectral_decompose,
    swap_test_accept_prob,
    swap_test_sample,
    tensor,
    tensor_power,
    trace_distance,
    trace_norm,
)
from .rng import Rng

__all__ = [
    "AdversaryFailure",
    "BadDistribution",
    "BudgetOverflow",
    "CapExceeded",
    "ConfigError",
    "DEFAULT_CAP",
    "DensityMatrix",
    "DimensionMismatch",
    "EPS",
    "HARD_CAP",
    "HermitianMatrix",
    "IndexOutOfRange",
    "IoError",
    "NetTooLarge",
    "NotHermitian",
    "ParamTooLarge",
    "Projector",
    "PureState",
    "QclabError",
    "Rng",
    "SearchExhausted",
    "basis_state",
    "cap_override",
    "fidelity",
    "haar_sample",
    "induced_mixed_sample",
    "maximally_mixed",
    "measure",
    "partial_trace",
    "phase_plus_state",
    "plus_state",
    "positive_part_projector",
    "qubit_cap",
    "spectral_decompose",
    "swap_test_accept_prob",
    "swap_test_sample",
    "tensor",
    "tensor_power",
    "trace_distance",
    "trace_norm",
]

__version__ = "0.1.0"
