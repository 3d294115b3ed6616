"""Exact computation in towers of alternating groups on two generators.

The package constructs the prime divisor and offset sequences that
define the tower, solves the word problem for the two-generator group
exactly through a lamp-state locality argument, certifies that each
coordinate pair generates its full alternating group, and evaluates the
separation growth bounds the construction is designed to realize.
"""

from .errors import (
    BHNeumannError,
    BudgetExceeded,
    DivisorTooSmall,
    NoAdmissibleResidue,
    ProfileTooSmall,
    SequenceConstructionError,
    SpreadAssertionFailed,
    WitnessCheckFailed,
)
from .words import (
    commutator,
    conjugate,
    enumerate_reduced,
    free_reduce,
    invert,
    is_reduced,
    random_reduced,
)
from .wreath import WreathElement, lamp_data, w_eval, w_identity, w_inv, w_mul
from .perm import (
    Permutation,
    compose,
    cycle_from,
    identity,
    inverse,
    is_even,
    make_generators,
    order,
    power,
    support,
)
from .seqgen import GrowthProfile, SequenceSet, f_of, is_prime, next_prime, sieve
from .schreier import (
    StabilizerChain,
    build_chain,
    contains,
    group_order,
    verify_alt_generation,
)
from .neumann import (
    GroupContext,
    ball,
    coordinate_eval,
    cutoff,
    equal,
    is_trivial,
    signature,
    spread_ok,
    witness,
)
from .growth import (
    BoundTable,
    LogValue,
    bound_table,
    envelope_report,
    exact_sandwich,
    full_rf_upper,
    log_factorial,
    rf_lower_points,
    rf_upper,
    stirling_check,
)

__version__ = "0.1.0"

__all__ = [
    "BHNeumannError",
    "BudgetExceeded",
    "DivisorTooSmall",
    "NoAdmissibleResidue",
    "ProfileTooSmall",
    "SequenceConstructionError",
    "SpreadAssertionFailed",
    "WitnessCheckFailed",
    "commutator",
    "conjugate",
    "enumerate_reduced",
    "free_reduce",
    "invert",
    "is_reduced",
    "random_reduced",
    "WreathElement",
    "lamp_data",
    "w_eval",
    "w_identity",
    "w_inv",
    "w_mul",
    "Permutation",
    "compose",
    "cycle_from",
    "identity",
    "inverse",
    "is_even",
    "make_generators",
    "order",
    "power",
    "support",
    "GrowthProfile",
    "SequenceSet",
    "f_of",
    "is_prime",
    "next_prime",
    "sieve",
    "StabilizerChain",
    "build_chain",
    "contains",
    "group_order",
    "verify_alt_generation",
    "GroupContext",
    "ball",
    "coordinate_eval",
    "cutoff",
    "equal",
    "is_trivial",
    "signature",
    "spread_ok",
    "witness",
    "BoundTable",
    "LogValue",
    "bound_table",
    "envelope_report",
    "exact_sandwich",
    "full_rf_upper",
    "log_factorial",
    "rf_lower_points",
    "rf_upper",
    "stirling_check",
]
