"""Compiled single-pass scanners over uint8 bit arrays.

Scanner state is a length-8 int64 array so that a stream can be fed in
chunks of any size and produce the same statistics as one call on the
concatenation:

    0 n_seen   1 prev_bit   2 cur_alt   3 best_alt
    4 cur_ones 5 best_ones  6 head_sw   7 tail_sw

``cur_alt``/``best_alt`` are lengths of alternating blocks (symbols, not
switches), so the longest-switch statistic is ``best_alt - 1``.
"""

import numpy as np
from numba import njit

STATE_SIZE = 8


def new_state():
    return np.zeros(STATE_SIZE, dtype=np.int64)


@njit(nogil=True, cache=True)
def scan_update(bits, state):
    n = state[0]
    prev = state[1]
    cur_alt = state[2]
    best_alt = state[3]
    cur_ones = state[4]
    best_ones = state[5]
    head = state[6]
    tail = state[7]
    start = 0
    if n == 0 and bits.shape[0] > 0:
        prev = np.int64(bits[0])
        cur_alt = 1
        best_alt = max(best_alt, 1)
        cur_ones = prev
        best_ones = max(best_ones, prev)
        start = 1
    # branch-free body: d is 1 exactly when a switch happens
    for i in range(start, bits.shape[0]):
        b = np.int64(bits[i])
        d = b ^ prev
        cur_alt = cur_alt * d + 1
        head += d & b
        tail += d & (1 - b)
        best_alt = max(best_alt, cur_alt)
        cur_ones = (cur_ones + 1) * b
        best_ones = max(best_ones, cur_ones)
        prev = b
    n += bits.shape[0]
    state[0] = n
    state[1] = prev
    state[2] = cur_alt
    state[3] = best_alt
    state[4] = cur_ones
    state[5] = best_ones
    state[6] = head
    state[7] = tail


@njit(nogil=True, cache=True)
def longest_constant_run(bits):
    best = 0
    cur = 0
    prev = -1
    for i in range(bits.shape[0]):
        b = np.int64(bits[i])
        if b == prev:
            cur += 1
        else:
            cur = 1
            prev = b
        if cur > best:
            best = cur
    return best


@njit(nogil=True, cache=True)
def scan_rows(rows, n_bits):
    """Longest switch run and longest head run for each row of ``rows``.

    Only the first ``n_bits`` columns of each row are used.
    """
    out_m = np.empty(rows.shape[0], dtype=np.int64)
    out_z = np.empty(rows.shape[0], dtype=np.int64)
    state = np.zeros(STATE_SIZE, dtype=np.int64)
    for r in range(rows.shape[0]):
        state[:] = 0
        scan_update(rows[r, :n_bits], state)
        out_m[r] = state[3] - 1
        out_z[r] = state[5]
    return out_m, out_z


@njit(nogil=True, cache=True)
def enumerate_counts(n_bits, start, stop, want_switch):
    """Histogram of M (``want_switch``) or Z over integers ``start..stop-1``.

    Bit i (LSB first) of each integer is toss i+1.
    """
    counts = np.zeros(n_bits + 1, dtype=np.int64)
    bits = np.empty(n_bits, dtype=np.uint8)
    state = np.zeros(STATE_SIZE, dtype=np.int64)
    for x in range(start, stop):
        for i in range(n_bits):
            bits[i] = (x >> i) & 1
        state[:] = 0
        scan_update(bits, state)
        if want_switch:
            counts[state[3] - 1] += 1
        else:
            counts[state[5]] += 1
    return counts
