"""History-independent, robust, learning-augmented ordered dictionaries."""

from .core import (
    CapacityError,
    ComparisonTally,
    DuplicateKeyError,
    MissingKeyError,
    derive_seed,
    geometric_from_bits,
    oracle_uniform,
    oracle_value,
)
from .structures import (
    AVLTree,
    CTreap,
    LTreap,
    SearchResult,
    ZipZipTree,
    treap_priority,
    zz_rank,
)
from .thresholding import ThresholdedDict, threshold, threshold_array
from .pairing import PairedDict, GAMMA_EXPECTED_DEPTH, GAMMA_HEIGHT
from .dynamics import (
    CutoffSimulator,
    CutoffState,
    DynamicThresholdDict,
    RebuildDecision,
    amortized_after_delete,
    amortized_after_insert,
    counterexample_structures,
    counterexample_trace,
    whi_after_delete,
    whi_before_insert,
)
from .hiverify import HiReport, fingerprint, shi_check, whi_check

__all__ = [
    "AVLTree", "CTreap", "CapacityError", "ComparisonTally", "CutoffSimulator",
    "CutoffState", "DuplicateKeyError", "DynamicThresholdDict",
    "GAMMA_EXPECTED_DEPTH", "GAMMA_HEIGHT", "HiReport", "LTreap",
    "MissingKeyError", "PairedDict", "RebuildDecision", "SearchResult",
    "ThresholdedDict", "ZipZipTree", "amortized_after_delete",
    "amortized_after_insert", "counterexample_structures", "counterexample_trace",
    "derive_seed", "fingerprint", "geometric_from_bits", "oracle_uniform",
    "oracle_value", "shi_check", "threshold", "threshold_array",
    "treap_priority", "whi_after_delete", "whi_before_insert", "whi_check",
    "zz_rank",
]
