from ._core import (
    BoundExceeded,
    brute_force,
    cdf_at_xi,
    char_fn,
    char_sum_c,
    coeffs,
    h,
    hook_lengths,
    is_triangular,
    limit_cdf,
    limit_char_fn,
    nonconvergence,
    partition_number,
    pmf,
    summary,
    support,
    verify,
)

__all__ = [
    "BoundExceeded",
    "brute_force",
    "cdf_at_xi",
    "char_fn",
    "char_sum_c",
    "coeffs",
    "h",
    "hook_lengths",
    "is_triangular",
    "limit_cdf",
    "limit_char_fn",
    "nonconvergence",
    "partition_number",
    "pmf",
    "summary",
    "support",
    "verify",
]
