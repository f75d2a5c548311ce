"""Longest consecutive switches and longest head runs in fair-coin sequences."""

from .core import (
    BitSequence,
    ScanSummary,
    StreamScanner,
    SwitchCounts,
    longest_constant_run,
    longest_head_run,
    longest_switch_run,
    parse_bits,
    scan,
    switch_counts,
    switch_transform,
    tail_alternating,
    window_max_sum,
)
from .errors import (
    BudgetError,
    ConfigError,
    EmptyInput,
    ParseError,
    PrecisionWarning,
    RangeError,
    ScheduleError,
    SwitchRunsError,
)
from .exact import (
    BoundPair,
    RunLengthPmf,
    ThresholdParams,
    alpha1,
    alpha2,
    count_max_alt_block_le,
    p_value,
    pmf_M,
    pmf_Z,
    prob_M_lt,
    schedule_partial_sum,
    switch_window_prob,
    theorem41_bounds,
    threshold,
)

__version__ = "0.1.0"
