"""Prime counts and prime power sums restricted to arithmetic progressions."""

from .baselines import (
    LiEvaluation,
    MertensFit,
    abel_summation_check,
    estimate_mertens_B,
    li,
    li_from_2,
    li_inverse,
    mertens_ap_sum,
    stieltjes_prime_sum,
)
from .identities import (
    IntegralIdentityReport,
    RaceTally,
    TableRow,
    error_at,
    generate_table,
    race_tally,
    reproduce_published_tables,
    sign_statistics,
    theorem2_partial_integral,
)
from .prime_stats import (
    CheckpointedCounts,
    DomainError,
    PowerSumAccumulator,
    RationalExponent,
    count_primes,
    power_sum,
    power_sum_at_threshold,
    threshold_membership,
)
from .sieve import PrimeStream, ResidueClass, SieveConfig, SieveError, classify, sieve_segment, stream_primes

__version__ = "0.1.0"
