"""Pointwise statistics of a coin-toss sequence.

M is the number of switches in the longest block of consecutive switches
(the longest alternating block, minus one); Z is the longest run of heads.
"""

import numpy as np

from switchruns import (
    BitSequence,
    StreamScanner,
    longest_constant_run,
    longest_head_run,
    longest_switch_run,
    parse_bits,
    scan,
    switch_counts,
    switch_transform,
)

# %% parse an ascii file body; whitespace is ignored
seq = parse_bits(b"0110 1010 1100\n")
print("tosses    ", seq.to_str())
print("M         ", longest_switch_run(seq))  # block 1010101 -> 6 switches
print("Z         ", longest_head_run(seq))

# %% head switches are T->H, tail switches H->T
c = switch_counts(seq, 1, len(seq))
print("switches   total", c.total, "head", c.head_switches, "tail", c.tail_switches)

# %% windows use 1-based start and length
print("M in tosses 4..8:", longest_switch_run(seq, 4, 5))

# %% flipping every other toss turns alternating blocks into constant runs,
# so M(X) is always one less than the longest constant run of Y
y = switch_transform(seq)
print("Y         ", y.to_str())
print("longest constant run of Y:", longest_constant_run(y))

# %% a million fair tosses, scanned once, and again in uneven chunks
rng = np.random.default_rng(1)
bits = rng.integers(0, 2, size=1_000_000, dtype=np.uint8)
whole = scan(BitSequence(bits))
sc = StreamScanner()
for chunk in np.array_split(bits, [3, 1000, 77_777, 500_001]):
    sc.update(chunk)
print("one pass :", whole)
print("chunked  :", sc.summary())
assert whole == sc.summary()
