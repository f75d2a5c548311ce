"""Bit sequences, parsing, and linear-time scanners for switch and head runs.

Positions are 1-based at the API boundary: ``X_1, ..., X_N``.  Internally a
:class:`BitSequence` stores a read-only ``uint8`` numpy array, so position
``i`` lives at array index ``i - 1``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyInput, ParseError, RangeError

_WHITESPACE = frozenset(b" \t\r\n\v\f")


class BitSequence:
    """Immutable finite 0/1 sequence of length >= 1."""

    __slots__ = ("_bits",)

    def __init__(self, bits):
        if isinstance(bits, np.ndarray) and bits.dtype == np.uint8:
            arr = bits.ravel().copy()
        else:
            arr = np.array(bits, dtype=np.int64).ravel()
        if arr.size == 0:
            raise EmptyInput("a bit sequence needs at least one symbol")
        if arr.max() > 1 or arr.min() < 0:
            raise ValueError("bit sequences may only contain 0 and 1")
        arr = arr.astype(np.uint8, copy=False)
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def _wrap(cls, arr):
        # trusted fast path: takes ownership of a fresh, validated uint8 array
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.uint8)
        arr.flags.writeable = False
        obj._bits = arr
        return obj

    @classmethod
    def from_int(cls, value, length):
        """Sequence whose position ``i`` is bit ``i - 1`` (LSB first) of ``value``."""
        if length < 1:
            raise EmptyInput("length must be >= 1")
        if not 0 <= value < (1 << length):
            raise RangeError(f"{value} does not fit in {length} bits")
        arr = (value >> np.arange(length, dtype=object)) & 1
        return cls._wrap(arr.astype(np.uint8))

    @classmethod
    def from_str(cls, text):
        return parse_bits(text.encode("ascii"), "ascii01")

    @property
    def bits(self):
        """Read-only 0-based ``uint8`` view of the symbols."""
        return self._bits

    def at(self, i):
        """Symbol ``X_i`` with 1-based ``i``."""
        if not 1 <= i <= len(self._bits):
            raise RangeError(f"position {i} outside [1, {len(self._bits)}]")
        return int(self._bits[i - 1])

    def complement(self):
        return BitSequence._wrap(1 - self._bits)

    def reversed(self):
        return BitSequence._wrap(self._bits[::-1].copy())

    def to_str(self):
        return (self._bits + ord("0")).tobytes().decode("ascii")

    def __len__(self):
        return len(self._bits)

    def __iter__(self):
        return iter(self._bits.tolist())

    def __eq__(self, other):
        if not isinstance(other, BitSequence):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash(self._bits.tobytes())

    def __repr__(self):
        s = self.to_str()
        if len(s) > 64:
            s = s[:60] + "..."
        return f"BitSequence('{s}', N={len(self)})"


@dataclass(frozen=True)
class SwitchCounts:
    head_switches: int
    tail_switches: int

    @property
    def total(self):
        return self.head_switches + self.tail_switches


@dataclass(frozen=True)
class ScanSummary:
    longest_switch_run: int
    longest_head_run: int
    total_switches: int
    head_switches: int
    tail_switches: int


def parse_bits(raw, format="ascii01"):
    """Parse a byte string into a :class:`BitSequence`.

    Parameters
    ----------
    raw : bytes
        File contents.
    format : {"ascii01", "raw_msb_first"}
        ``ascii01`` accepts '0' and '1' and skips ASCII whitespace.
        ``raw_msb_first`` uses all 8 bits of every byte, most significant
        bit first.  ``"raw"`` is accepted as an alias.
    """
    if isinstance(raw, str):
        raw = raw.encode("latin-1")
    raw = bytes(raw)
    if format == "ascii01":
        buf = np.frombuffer(raw, dtype=np.uint8)
        is_bit = (buf == ord("0")) | (buf == ord("1"))
        bad = np.flatnonzero(~is_bit & ~np.isin(buf, list(_WHITESPACE)))
        if bad.size:
            off = int(bad[0])
            raise ParseError(off, chr(raw[off]))
        bits = buf[is_bit] - ord("0")
    elif format in ("raw_msb_first", "raw"):
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="big")
    else:
        raise ValueError(f"unknown format {format!r}")
    if bits.size == 0:
        raise EmptyInput("no bits in input")
    return BitSequence._wrap(bits)


def _as_seq(seq):
    return seq if isinstance(seq, BitSequence) else BitSequence(seq)


def _window(seq, start, n):
    N = len(seq)
    if start < 1 or n < 1 or start + n - 1 > N:
        raise RangeError(f"window [{start}, {start + n - 1}] outside [1, {N}]")
    return seq.bits[start - 1 : start + n - 1]


def switch_counts(seq, m=1, n=None):
    """Head (0->1) and tail (1->0) switches inside ``X_m, ..., X_{m+n-1}``."""
    seq = _as_seq(seq)
    if n is None:
        n = len(seq) - m + 1
    w = _window(seq, m, n).astype(np.int8)
    d = np.diff(w)
    return SwitchCounts(int(np.count_nonzero(d == 1)), int(np.count_nonzero(d == -1)))


def scan(seq, start=1, n=None):
    """One pass over a window computing every pointwise statistic."""
    seq = _as_seq(seq)
    if n is None:
        n = len(seq) - start + 1
    state = _kernels.new_state()
    _kernels.scan_update(_window(seq, start, n), state)
    return ScanSummary(
        longest_switch_run=int(state[3] - 1),
        longest_head_run=int(state[5]),
        total_switches=int(state[6] + state[7]),
        head_switches=int(state[6]),
        tail_switches=int(state[7]),
    )


def longest_switch_run(seq, i=1, n=None):
    """Number of switches in the longest run of consecutive switches.

    This is the length of the longest fully alternating block inside the
    window ``[i, i+n-1]`` minus one, so a window of one symbol gives 0.
    """
    return scan(seq, i, n).longest_switch_run


def longest_head_run(seq):
    return scan(seq).longest_head_run


def window_max_sum(seq, K):
    """Largest number of ones in any window of ``K`` consecutive symbols."""
    seq = _as_seq(seq)
    N = len(seq)
    if not 1 <= K <= N:
        raise RangeError(f"K={K} outside [1, {N}]")
    s = np.concatenate(([0], np.cumsum(seq.bits, dtype=np.int64)))
    return int(np.max(s[K:] - s[:-K]))


def switch_transform(seq, flip_odd=True):
    """Flip every other symbol so alternating blocks become constant blocks.

    With 0-based index ``j``, ``Y_j = X_j`` for even ``j`` and ``1 - X_j`` for
    odd ``j``.  ``flip_odd=False`` flips the even indices instead, which gives
    the complement of the default output.
    """
    seq = _as_seq(seq)
    y = seq.bits.copy()
    y[1 if flip_odd else 0 :: 2] ^= 1
    return BitSequence._wrap(y)


def longest_constant_run(seq):
    return int(_kernels.longest_constant_run(_as_seq(seq).bits))


def tail_alternating(seq, L):
    """True iff the last ``L`` symbols form a fully alternating block."""
    seq = _as_seq(seq)
    N = len(seq)
    if not 1 <= L <= N:
        raise RangeError(f"L={L} outside [1, {N}]")
    tail = seq.bits[N - L :]
    return bool(np.all(tail[1:] != tail[:-1]))


class StreamScanner:
    """Constant-memory scanner fed chunk by chunk.

    After feeding the first ``n`` symbols of a stream, the properties report
    the statistics of that prefix.
    """

    def __init__(self):
        self._state = _kernels.new_state()

    def update(self, bits):
        _kernels.scan_update(np.ascontiguousarray(bits, dtype=np.uint8), self._state)
        return self

    @property
    def n(self):
        return int(self._state[0])

    @property
    def longest_switch_run(self):
        return int(self._state[3] - 1) if self._state[0] else 0

    @property
    def longest_head_run(self):
        return int(self._state[5])

    @property
    def trailing_alternating(self):
        """Length of the alternating block ending at the last symbol seen."""
        return int(self._state[2])

    def summary(self):
        s = self._state
        return ScanSummary(
            longest_switch_run=self.longest_switch_run,
            longest_head_run=int(s[5]),
            total_switches=int(s[6] + s[7]),
            head_switches=int(s[6]),
            tail_switches=int(s[7]),
        )
